#include "modshift/norms.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "modshift/error.hpp"
#include "modshift/text.hpp"

namespace modshift {

std::optional<double> WordNorms::lookup(const std::unordered_map<std::string, double>& m,
                                        const std::string& word) {
  const auto it = m.find(word);
  if (it == m.end()) return std::nullopt;
  return it->second;
}

bool WordNorms::complete(const std::string& word) const {
  return concreteness.contains(word) && valence.contains(word) && arousal.contains(word) &&
         dominance.contains(word) && frequency.contains(word);
}

namespace {

struct Range {
  double lo;
  double hi;
};

// Reads `word` plus the listed value columns of a TSV; values outside `range`
// reject the row. Returns the number of accepted rows.
template <std::size_t N>
std::size_t read_columns(const std::filesystem::path& path, std::size_t word_col,
                         const std::array<std::size_t, N>& cols, Range range,
                         const std::array<std::unordered_map<std::string, double>*, N>& dest,
                         NormsLoadReport& report) {
  const std::string content = text::read_file(path);
  const auto rows = text::lines(content);
  std::size_t accepted = 0;
  const std::size_t needed = std::max(word_col, *std::max_element(cols.begin(), cols.end())) + 1;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (text::trim(rows[i]).empty()) continue;
    const auto fields = text::split(rows[i], '\t');
    std::array<double, N> vals{};
    bool ok = fields.size() >= needed;
    for (std::size_t c = 0; ok && c < N; ++c) {
      const auto v = text::parse_double(text::trim(fields[cols[c]]));
      ok = v.has_value() && std::isfinite(*v);
      if (ok) vals[c] = *v;
    }
    const std::string word = ok ? std::string(text::trim(fields[word_col])) : std::string();
    if (!ok || word.empty()) {
      // A non-numeric first line is a header, not a bad row.
      if (i != 0) ++report.rejected_malformed;
      continue;
    }
    // Multi-word entries cannot match a single-token vocabulary.
    if (word.find(' ') != std::string::npos) {
      ++report.rejected_malformed;
      continue;
    }
    const bool in_range = std::all_of(vals.begin(), vals.end(), [&](double v) {
      return v >= range.lo && v <= range.hi;
    });
    if (!in_range) {
      ++report.rejected_out_of_range;
      continue;
    }
    if (dest[0]->contains(word)) {
      ++report.duplicates_ignored;
      continue;
    }
    for (std::size_t c = 0; c < N; ++c) dest[c]->emplace(word, vals[c]);
    ++accepted;
  }
  if (accepted == 0) throw DataError(path.string() + ": zero usable rows");
  return accepted;
}

}  // namespace

WordNorms load_norms(const NormsPaths& paths) {
  WordNorms norms;
  auto& r = norms.report;
  r.concreteness_rows = read_columns<1>(
      paths.concreteness, paths.concreteness_columns.word, {paths.concreteness_columns.value},
      {1.0, 5.0}, {&norms.concreteness}, r);
  const auto& vc = paths.vad_columns;
  r.vad_rows = read_columns<3>(paths.vad, vc.word, {vc.valence, vc.arousal, vc.dominance},
                               {0.0, 1.0}, {&norms.valence, &norms.arousal, &norms.dominance}, r);
  r.frequency_rows = read_columns<1>(paths.frequency, paths.frequency_columns.word,
                                     {paths.frequency_columns.value},
                                     {0.0, HUGE_VAL}, {&norms.frequency}, r);
  return norms;
}

}  // namespace modshift

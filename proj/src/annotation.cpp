#include "modshift/annotation.hpp"

#include <set>

#include "modshift/error.hpp"
#include "modshift/ranking.hpp"
#include "modshift/text.hpp"

namespace modshift {

AnnotationTable::AnnotationTable(std::vector<std::string> seeds,
                                 std::vector<std::string> neighbors)
    : seeds_(std::move(seeds)), neighbors_(std::move(neighbors)) {
  if (seeds_.size() != neighbors_.size())
    throw DataError("annotation table: seed/neighbor length mismatch");
}

std::span<const double> AnnotationTable::column(const std::string& name) const {
  const auto it = index_.find(name);
  if (it == index_.end()) throw DataError("unknown annotation column: " + name);
  return columns_[it->second];
}

void AnnotationTable::add_column(std::string name, std::vector<double> values) {
  if (values.size() != rows()) throw DataError("annotation column '" + name + "' has wrong length");
  if (index_.contains(name)) throw DataError("duplicate annotation column: " + name);
  index_.emplace(name, columns_.size());
  names_.push_back(std::move(name));
  columns_.push_back(std::move(values));
}

namespace {

constexpr std::array<const char*, 5> kNumeric = {"concreteness", "frequency", "valence",
                                                 "arousal", "dominance"};
constexpr std::array<const char*, 2> kRoles = {"seed", "neighbor"};

}  // namespace

std::vector<std::string> word_feature_names(const std::string& role) {
  std::vector<std::string> out;
  for (const char* n : kNumeric) out.push_back(role + "." + n);
  for (auto s : kSupersenseNames) out.push_back(role + ".supersense." + std::string(s));
  return out;
}

std::vector<std::string> word_level_features() {
  std::vector<std::string> out;
  for (const char* role : kRoles) {
    auto names = word_feature_names(role);
    out.insert(out.end(), names.begin(), names.end());
  }
  return out;
}

std::vector<std::string> all_feature_names() {
  auto out = word_level_features();
  for (auto r : kWordNetRelationNames) out.push_back("pair.wordnet." + std::string(r));
  for (auto r : kConceptNetRelationNames) out.push_back("pair.conceptnet." + std::string(r));
  return out;
}

AnnotationTable annotate(const PairSet& pairs, const Lexicon& lex) {
  std::vector<std::string> seeds;
  std::vector<std::string> neighbors;
  for (const auto& p : pairs.pairs) {
    seeds.push_back(p.seed);
    neighbors.push_back(p.neighbor);
  }
  AnnotationTable table(seeds, neighbors);
  const std::size_t n = pairs.size();

  const std::array<const std::unordered_map<std::string, double>*, 5> sources = {
      &lex.norms.concreteness, &lex.norms.frequency, &lex.norms.valence, &lex.norms.arousal,
      &lex.norms.dominance};

  for (const char* role : kRoles) {
    const auto& words = std::string_view(role) == "seed" ? seeds : neighbors;
    for (std::size_t k = 0; k < kNumeric.size(); ++k) {
      std::vector<double> raw(n);
      for (std::size_t i = 0; i < n; ++i) {
        const auto v = WordNorms::lookup(*sources[k], words[i]);
        if (!v)
          throw DataError(std::string("pair ") + std::to_string(i) + ": no " + kNumeric[k] +
                          " for '" + words[i] + "'");
        raw[i] = *v;
      }
      table.add_column(std::string(role) + "." + kNumeric[k], rank_transform(raw));
    }
    std::vector<std::vector<double>> ss(kSupersenseCount, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
      const auto v = supersenses(lex.wordnet, words[i]);
      if (v.missing) throw DataError("pair " + std::to_string(i) + ": '" + words[i] +
                                     "' not in WordNet");
      for (std::size_t s = 0; s < kSupersenseCount; ++s) ss[s][i] = v.labels[s] ? 1.0 : 0.0;
    }
    for (std::size_t s = 0; s < kSupersenseCount; ++s)
      table.add_column(std::string(role) + ".supersense." + std::string(kSupersenseNames[s]),
                       std::move(ss[s]));
  }

  std::vector<std::vector<double>> wn(kWordNetRelationCount, std::vector<double>(n));
  std::vector<std::vector<double>> cn(kConceptNetRelationCount, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto w = wordnet_relations(lex.wordnet, seeds[i], neighbors[i]);
    const auto c = conceptnet_relations(lex.conceptnet, seeds[i], neighbors[i]);
    for (std::size_t r = 0; r < kWordNetRelationCount; ++r) wn[r][i] = w[r] ? 1.0 : 0.0;
    for (std::size_t r = 0; r < kConceptNetRelationCount; ++r) cn[r][i] = c[r] ? 1.0 : 0.0;
  }
  for (std::size_t r = 0; r < kWordNetRelationCount; ++r)
    table.add_column("pair.wordnet." + std::string(kWordNetRelationNames[r]), std::move(wn[r]));
  for (std::size_t r = 0; r < kConceptNetRelationCount; ++r)
    table.add_column("pair.conceptnet." + std::string(kConceptNetRelationNames[r]),
                     std::move(cn[r]));
  return table;
}

void write_annotations(const AnnotationTable& table, const std::filesystem::path& path) {
  std::string out = "seed\tneighbor";
  for (const auto& name : table.names()) out += '\t' + name;
  out += '\n';
  for (std::size_t i = 0; i < table.rows(); ++i) {
    out += table.seeds()[i] + '\t' + table.neighbors()[i];
    for (const auto& name : table.names()) {
      out += '\t';
      out += text::format_double(table.column(name)[i]);
    }
    out += '\n';
  }
  text::write_file_atomic(path, out);
}

AnnotationTable read_annotations(const std::filesystem::path& path) {
  const std::string content = text::read_file(path);
  const auto rows = text::lines(content);
  if (rows.empty()) throw DataError(path.string() + ": empty annotation file");
  const auto header = text::split(rows[0], '\t');
  if (header.size() < 2 || header[0] != "seed" || header[1] != "neighbor")
    throw DataError(path.string() + ": bad annotation header");
  std::vector<std::string> seeds;
  std::vector<std::string> neighbors;
  std::vector<std::vector<double>> cols(header.size() - 2);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].empty()) continue;
    const auto f = text::split(rows[i], '\t');
    if (f.size() != header.size())
      throw DataError(path.string() + ":" + std::to_string(i + 1) + ": wrong column count");
    seeds.emplace_back(f[0]);
    neighbors.emplace_back(f[1]);
    for (std::size_t c = 2; c < f.size(); ++c) {
      const auto v = text::parse_double(f[c]);
      if (!v) throw DataError(path.string() + ":" + std::to_string(i + 1) + ": bad number");
      cols[c - 2].push_back(*v);
    }
  }
  AnnotationTable table(std::move(seeds), std::move(neighbors));
  for (std::size_t c = 0; c < cols.size(); ++c)
    table.add_column(std::string(header[c + 2]), std::move(cols[c]));
  return table;
}

PredictorSet concreteness_baseline() {
  return {"concreteness", {"seed.concreteness", "neighbor.concreteness"}};
}

PredictorSet frequency_baseline() {
  return {"frequency", {"seed.frequency", "neighbor.frequency"}};
}

PredictorSet combined_baseline() {
  return {"concreteness+frequency",
          {"seed.concreteness", "neighbor.concreteness", "seed.frequency", "neighbor.frequency"}};
}

PredictorSet taxonomic_group() {
  PredictorSet s{"taxonomic", {}};
  for (const char* role : kRoles)
    for (auto ss : kSupersenseNames)
      s.features.push_back(std::string(role) + ".supersense." + std::string(ss));
  return s;
}

PredictorSet vad_group() {
  PredictorSet s{"vad", {}};
  for (const char* role : kRoles)
    for (const char* d : {"valence", "arousal", "dominance"})
      s.features.push_back(std::string(role) + "." + d);
  return s;
}

PredictorSet wordnet_relation_group() {
  PredictorSet s{"wordnet_relations", {}};
  for (auto r : kWordNetRelationNames) s.features.push_back("pair.wordnet." + std::string(r));
  return s;
}

PredictorSet conceptnet_relation_group() {
  PredictorSet s{"conceptnet_relations", {}};
  for (auto r : kConceptNetRelationNames)
    s.features.push_back("pair.conceptnet." + std::string(r));
  return s;
}

std::vector<PredictorSet> standard_groups() {
  return {taxonomic_group(), vad_group(), wordnet_relation_group(), conceptnet_relation_group()};
}

PredictorSet standard_group(const std::string& name) {
  for (auto& g : standard_groups())
    if (g.name == name) return g;
  throw ConfigError("unknown predictor group: " + name);
}

void validate_predictor_set(const PredictorSet& set) {
  if (set.features.empty()) throw ConfigError("predictor set '" + set.name + "' is empty");
  static const auto known = [] {
    const auto names = all_feature_names();
    return std::set<std::string>(names.begin(), names.end());
  }();
  std::set<std::string> seen;
  for (const auto& f : set.features) {
    if (!known.contains(f))
      throw ConfigError("predictor set '" + set.name + "': unknown feature '" + f + "'");
    if (!seen.insert(f).second)
      throw ConfigError("predictor set '" + set.name + "': duplicate feature '" + f + "'");
  }
}

}  // namespace modshift

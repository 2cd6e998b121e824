#include "modshift/pairs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <utility>

#include <nlohmann/json.hpp>

#include "modshift/error.hpp"
#include "modshift/parallel.hpp"
#include "modshift/text.hpp"

namespace modshift {

std::vector<std::string> seed_words(const EmbeddingSpace& space, std::size_t k) {
  if (k > space.size())
    throw DataError("seed_words: vocab has " + std::to_string(space.size()) +
                    " words, fewer than k = " + std::to_string(k));
  return {space.vocab().begin(), space.vocab().begin() + static_cast<std::ptrdiff_t>(k)};
}

NeighborSearch::NeighborSearch(const EmbeddingSpace& space) : space_(space) {
  sq_norms_.reserve(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) {
    double s = 0.0;
    for (double x : space.row(i)) s += x * x;
    sq_norms_.push_back(s);
  }
}

std::vector<std::size_t> NeighborSearch::query(std::size_t row, std::size_t n) const {
  const std::size_t vocab = space_.size();
  n = std::min(n, vocab - 1);
  const auto q = space_.row(row);
  const double q_norm = std::sqrt(sq_norms_[row]);

  std::vector<std::pair<double, std::size_t>> scored;
  scored.reserve(vocab - 1);
  for (std::size_t j = 0; j < vocab; ++j) {
    if (j == row) continue;
    const auto v = space_.row(j);
    double dot = 0.0;
    for (std::size_t t = 0; t < q.size(); ++t) dot += q[t] * v[t];
    const double d = std::clamp(1.0 - dot / (q_norm * std::sqrt(sq_norms_[j])), 0.0, 2.0);
    scored.emplace_back(d, j);
  }
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(n),
                    scored.end());
  std::vector<std::size_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = scored[i].second;
  return out;
}

std::vector<std::string> nearest_neighbors(const EmbeddingSpace& space, const std::string& word,
                                           std::size_t n) {
  const auto row = space.find(word);
  if (!row) throw DataError("nearest_neighbors: unknown word: " + word);
  std::vector<std::string> out;
  for (std::size_t j : NeighborSearch(space).query(*row, n)) out.push_back(space.vocab()[j]);
  return out;
}

bool passes(PairFilter filter, const WordPair& p, const Lexicon& lex) {
  switch (filter) {
    case PairFilter::noun:
      return lex.is_noun(p.seed) && lex.is_noun(p.neighbor);
    case PairFilter::substring:
      return p.seed.find(p.neighbor) == std::string::npos &&
             p.neighbor.find(p.seed) == std::string::npos;
    case PairFilter::lemma:
      return lex.wordnet.base_lemma(p.seed) != lex.wordnet.base_lemma(p.neighbor);
  }
  return false;
}

PairSet raw_pairs(const EmbeddingSpace& space, std::size_t k, std::size_t n) {
  if (k == 0 || n == 0) throw ConfigError("pair building needs positive k and n");
  const auto seeds = seed_words(space, k);
  const NeighborSearch search(space);
  std::vector<std::vector<std::size_t>> neighbors(k);
  parallel_for(k, [&](std::size_t i) { neighbors[i] = search.query(i, n); });

  PairSet out;
  out.provenance.source_space = space.meta().model_id;
  out.provenance.k = k;
  out.provenance.n = n;
  std::set<std::pair<std::string, std::string>> seen;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t r = 0; r < neighbors[i].size(); ++r) {
      ++out.provenance.raw;
      WordPair p{seeds[i], space.vocab()[neighbors[i][r]], i, r + 1};
      if (!seen.emplace(p.seed, p.neighbor).second) {
        ++out.provenance.duplicates;
        continue;
      }
      out.pairs.push_back(std::move(p));
    }
  }
  return out;
}

namespace {

void count_reversed(PairSet& set) {
  std::set<std::pair<std::string, std::string>> all;
  for (const auto& p : set.pairs) all.emplace(p.seed, p.neighbor);
  std::size_t reversed = 0;
  for (const auto& p : set.pairs)
    if (p.seed < p.neighbor && all.contains({p.neighbor, p.seed})) ++reversed;
  set.provenance.reversed_duplicates = reversed;
}

}  // namespace

PairSet apply_filters(PairSet set, const Lexicon& lex, std::array<PairFilter, 3> order) {
  std::vector<WordPair> kept;
  kept.reserve(set.pairs.size());
  for (auto& p : set.pairs) {
    bool ok = true;
    for (PairFilter f : order) {
      if (passes(f, p, lex)) continue;
      ok = false;
      switch (f) {
        case PairFilter::noun: ++set.provenance.dropped_noun; break;
        case PairFilter::substring: ++set.provenance.dropped_substring; break;
        case PairFilter::lemma: ++set.provenance.dropped_lemma; break;
      }
      break;
    }
    if (ok) kept.push_back(std::move(p));
  }
  set.pairs = std::move(kept);
  count_reversed(set);
  return set;
}

PairSet build_pairs(const EmbeddingSpace& space, const Lexicon& lex, const PairBuildConfig& cfg) {
  return apply_filters(raw_pairs(space, cfg.k, cfg.n), lex, cfg.filter_order);
}

PairSet prune_to_complete(PairSet set, const Lexicon& lex) {
  const auto complete = [&](const std::string& w) {
    return lex.norms.complete(w) && !lex.wordnet.senses(w).empty();
  };
  const std::size_t before = set.pairs.size();
  std::erase_if(set.pairs, [&](const WordPair& p) {
    return !complete(p.seed) || !complete(p.neighbor);
  });
  set.provenance.dropped_incomplete += before - set.pairs.size();
  count_reversed(set);
  return set;
}

PairSet restrict_to_spaces(PairSet set, std::span<const EmbeddingSpace* const> spaces) {
  const std::size_t before = set.pairs.size();
  std::erase_if(set.pairs, [&](const WordPair& p) {
    return std::any_of(spaces.begin(), spaces.end(), [&](const EmbeddingSpace* s) {
      return !s->contains(p.seed) || !s->contains(p.neighbor);
    });
  });
  set.provenance.dropped_coverage += before - set.pairs.size();
  count_reversed(set);
  return set;
}

long first_invalid_pair(const PairSet& set, const Lexicon& lex) {
  std::set<std::pair<std::string, std::string>> seen;
  for (std::size_t i = 0; i < set.pairs.size(); ++i) {
    const auto& p = set.pairs[i];
    const bool ok = p.seed != p.neighbor && seen.emplace(p.seed, p.neighbor).second &&
                    std::all_of(kDefaultFilterOrder.begin(), kDefaultFilterOrder.end(),
                                [&](PairFilter f) { return passes(f, p, lex); });
    if (!ok) return static_cast<long>(i);
  }
  return -1;
}

namespace {

nlohmann::ordered_json provenance_json(const PairProvenance& p) {
  nlohmann::ordered_json j;
  j["source_space"] = p.source_space;
  j["k"] = p.k;
  j["n"] = p.n;
  j["raw"] = p.raw;
  j["duplicates"] = p.duplicates;
  j["dropped_noun"] = p.dropped_noun;
  j["dropped_substring"] = p.dropped_substring;
  j["dropped_lemma"] = p.dropped_lemma;
  j["dropped_incomplete"] = p.dropped_incomplete;
  j["dropped_coverage"] = p.dropped_coverage;
  j["reversed_duplicates"] = p.reversed_duplicates;
  return j;
}

}  // namespace

void write_pairs(const PairSet& set, const std::filesystem::path& path) {
  std::string out = "seed\tneighbor\tseed_rank\tneighbor_sim_rank\n";
  for (const auto& p : set.pairs) {
    out += p.seed + '\t' + p.neighbor + '\t' + std::to_string(p.seed_rank) + '\t' +
           std::to_string(p.neighbor_sim_rank) + '\n';
  }
  text::write_file_atomic(path, out);
  auto meta = provenance_json(set.provenance);
  meta["pairs"] = set.pairs.size();
  auto sidecar = path;
  sidecar += ".json";
  text::write_file_atomic(sidecar, meta.dump(2) + "\n");
}

PairSet read_pairs(const std::filesystem::path& path) {
  PairSet set;
  const std::string content = text::read_file(path);
  const auto rows = text::lines(content);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].empty()) continue;
    const auto f = text::split(rows[i], '\t');
    const auto sr = f.size() == 4 ? text::parse_int(f[2]) : std::nullopt;
    const auto nr = f.size() == 4 ? text::parse_int(f[3]) : std::nullopt;
    if (!sr || !nr || *sr < 0 || *nr < 0)
      throw DataError(path.string() + ":" + std::to_string(i + 1) + ": malformed pair row");
    set.pairs.push_back({std::string(f[0]), std::string(f[1]), static_cast<std::size_t>(*sr),
                         static_cast<std::size_t>(*nr)});
  }
  auto sidecar = path;
  sidecar += ".json";
  if (std::filesystem::exists(sidecar)) {
    try {
      const auto j = nlohmann::json::parse(text::read_file(sidecar));
      auto& p = set.provenance;
      p.source_space = j.value("source_space", "");
      p.k = j.value("k", std::size_t{0});
      p.n = j.value("n", std::size_t{0});
      p.raw = j.value("raw", std::size_t{0});
      p.duplicates = j.value("duplicates", std::size_t{0});
      p.dropped_noun = j.value("dropped_noun", std::size_t{0});
      p.dropped_substring = j.value("dropped_substring", std::size_t{0});
      p.dropped_lemma = j.value("dropped_lemma", std::size_t{0});
      p.dropped_incomplete = j.value("dropped_incomplete", std::size_t{0});
      p.dropped_coverage = j.value("dropped_coverage", std::size_t{0});
      p.reversed_duplicates = j.value("reversed_duplicates", std::size_t{0});
    } catch (const nlohmann::json::exception& e) {
      throw DataError(sidecar.string() + ": " + e.what());
    }
  }
  return set;
}

}  // namespace modshift

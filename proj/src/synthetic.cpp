#include "modshift/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include <nlohmann/json.hpp>

#include "modshift/conceptnet.hpp"
#include "modshift/error.hpp"
#include "modshift/ranking.hpp"
#include "modshift/text.hpp"
#include "modshift/wordnet.hpp"

namespace modshift::synthetic {

namespace fs = std::filesystem;

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
  has_spare_ = true;
  return r * std::cos(2.0 * std::numbers::pi * u2);
}

std::size_t Rng::below(std::size_t bound) {
  return static_cast<std::size_t>(uniform() * static_cast<double>(bound));
}

WorldSpec fixture_spec() {
  WorldSpec s;
  s.clusters = 40;
  s.satellites = 4;
  s.dim = 16;
  s.seed = 20240601;
  s.non_noun_rate = 0.04;
  s.plural_rate = 0.03;
  s.lemma_rate = 0.05;
  s.missing_norm_rate = 0.04;
  s.spaces = {
      {"fasttext", Modality::text, Variant::iso, true, false},
      {"mbert_iso", Modality::text, Variant::iso, false, false},
      {"xlmr_avg_last", Modality::text, Variant::avg_last, false, false},
      {"clip_iso", Modality::multimodal, Variant::iso, false, true},
      {"clip_ctx", Modality::multimodal, Variant::ctx_avg, false, true},
  };
  s.comparisons = {
      {"fasttext", "clip_iso"},      {"mbert_iso", "clip_iso"},
      {"xlmr_avg_last", "clip_iso"}, {"fasttext", "clip_ctx"},
      {"mbert_iso", "clip_ctx"},     {"fasttext", "mbert_iso"},
      {"fasttext", "xlmr_avg_last"}, {"mbert_iso", "xlmr_avg_last"},
      {"clip_iso", "clip_ctx"},
  };
  return s;
}

WorldSpec planted_spec(bool permute_concreteness) {
  WorldSpec s;
  s.clusters = 100;
  s.satellites = 19;
  s.dim = 32;
  s.seed = 4242;
  s.permute_concreteness = permute_concreteness;
  s.spaces = {
      {"fasttext", Modality::text, Variant::iso, true, false},
      {"clip_iso", Modality::multimodal, Variant::iso, false, true},
  };
  s.comparisons = {{"fasttext", "clip_iso"}};
  return s;
}

namespace {

struct Word {
  std::string text;
  std::size_t cluster = 0;
  bool is_seed = false;
  bool in_wordnet = true;
  bool in_noun_list = true;
  bool has_vad = true;
  double base_radius = 1.0;  // shared across spaces
};

std::string random_word(Rng& rng, std::set<std::string>& used, std::size_t len) {
  while (true) {
    std::string w;
    for (std::size_t i = 0; i < len; ++i) w += static_cast<char>('a' + rng.below(26));
    if (used.insert(w).second) return w;
  }
}

struct SynthSynset {
  int lex_file = 3;
  std::vector<std::string> words;
  // symbol, target synset index, source word, target word
  std::vector<std::tuple<std::string, std::size_t, int, int>> pointers;
};

std::string hex2(int v) {
  static constexpr char kHex[] = "0123456789abcdef";
  return {kHex[(v >> 4) & 0xF], kHex[v & 0xF]};
}

std::string offset8(std::size_t v) {
  std::string s = std::to_string(v);
  return std::string(8 - std::min<std::size_t>(8, s.size()), '0') + s;
}

std::string format_synset(const SynthSynset& s, std::size_t self,
                          const std::vector<std::size_t>& offsets) {
  std::string line = offset8(offsets[self]) + " " + (s.lex_file < 10 ? "0" : "") +
                     std::to_string(s.lex_file) + " n " + hex2(static_cast<int>(s.words.size()));
  for (const auto& w : s.words) line += " " + w + " 0";
  const auto n = s.pointers.size();
  line += " " + std::string(n < 100 ? (n < 10 ? "00" : "0") : "") + std::to_string(n);
  for (const auto& [sym, target, src, tgt] : s.pointers)
    line += " " + sym + " " + offset8(offsets[target]) + " n " + hex2(src) + hex2(tgt);
  line += " | synthetic gloss  \n";
  return line;
}

constexpr const char* kLicense =
    "  1 This file is synthetic test data in the Princeton WordNet 3.0 format.\n"
    "  2 It contains no WordNet content.\n";

void write_wordnet(const std::vector<Word>& words, Rng& rng, const fs::path& dir,
                   std::vector<std::string>& noun_list) {
  fs::create_directories(dir);
  std::vector<SynthSynset> synsets;
  // Three category synsets per lexicographer file act as shared hypernyms.
  std::vector<std::vector<std::size_t>> categories(kSupersenseCount);
  for (std::size_t lf = 0; lf < kSupersenseCount; ++lf)
    for (int c = 0; c < 3; ++c) {
      categories[lf].push_back(synsets.size());
      synsets.push_back({static_cast<int>(lf) + kFirstNounLexFile,
                         {"category_" + std::string(kSupersenseNames[lf]) + "_" + std::to_string(c)},
                         {}});
    }

  std::map<std::string, std::vector<std::size_t>> senses;
  std::map<std::size_t, std::size_t> first_sense;  // word index -> synset
  const auto link = [&](std::size_t child, std::size_t parent) {
    synsets[child].pointers.emplace_back("@", parent, 0, 0);
    synsets[parent].pointers.emplace_back("~", child, 0, 0);
  };
  for (std::size_t i = 0; i < words.size(); ++i) {
    const auto& w = words[i];
    if (!w.in_wordnet) continue;
    const std::size_t n_senses = 1 + (rng.uniform() < 0.35 ? 1 : 0) + (rng.uniform() < 0.1 ? 1 : 0);
    for (std::size_t k = 0; k < n_senses; ++k) {
      const std::size_t lf = rng.below(kSupersenseCount);
      const std::size_t id = synsets.size();
      synsets.push_back({static_cast<int>(lf) + kFirstNounLexFile, {w.text}, {}});
      link(id, categories[lf][rng.below(3)]);
      senses[w.text].push_back(id);
      if (k == 0) first_sense[i] = id;
    }
  }

  // Cluster-internal structure: shared synsets, direct hyponymy, antonymy.
  std::map<std::size_t, std::size_t> seed_of_cluster;
  for (std::size_t i = 0; i < words.size(); ++i)
    if (words[i].is_seed) seed_of_cluster[words[i].cluster] = i;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const auto& w = words[i];
    if (w.is_seed || !w.in_wordnet) continue;
    const std::size_t s = seed_of_cluster.at(w.cluster);
    if (!words[s].in_wordnet) continue;
    const double u = rng.uniform();
    const std::size_t mine = first_sense.at(i);
    const std::size_t theirs = first_sense.at(s);
    if (u < 0.08) {
      synsets[mine].words.push_back(words[s].text);
      senses[words[s].text].push_back(mine);
    } else if (u < 0.18) {
      link(mine, theirs);
    } else if (u < 0.24) {
      synsets[mine].pointers.emplace_back("!", theirs, 1, 1);
      synsets[theirs].pointers.emplace_back("!", mine, 1, 1);
    }
  }

  std::vector<std::size_t> offsets(synsets.size(), 0);
  std::size_t pos = std::string(kLicense).size();
  for (std::size_t i = 0; i < synsets.size(); ++i) {
    offsets[i] = pos;
    pos += format_synset(synsets[i], i, offsets).size();
  }
  std::string data = kLicense;
  for (std::size_t i = 0; i < synsets.size(); ++i) data += format_synset(synsets[i], i, offsets);
  text::write_file_atomic(dir / "data.noun", data);

  for (std::size_t i = 0; i < synsets.size(); ++i)
    for (const auto& w : synsets[i].words)
      if (w.starts_with("category_")) senses[w].push_back(i);

  std::string index = kLicense;
  for (const auto& [lemma, ids] : senses) {
    std::set<std::string> symbols;
    for (auto id : ids)
      for (const auto& p : synsets[id].pointers) symbols.insert(std::get<0>(p));
    index += lemma + " n " + std::to_string(ids.size()) + " " + std::to_string(symbols.size());
    for (const auto& s : symbols) index += " " + s;
    index += " " + std::to_string(ids.size()) + " 0";
    for (auto id : ids) index += " " + offset8(offsets[id]);
    index += "  \n";
    if (!lemma.starts_with("category_")) noun_list.push_back(lemma);
  }
  text::write_file_atomic(dir / "index.noun", index);
  text::write_file_atomic(dir / "noun.exc", "synthetica synthetic\n");
}

void write_conceptnet(const std::vector<Word>& words, Rng& rng, const fs::path& path) {
  std::map<std::size_t, std::vector<std::size_t>> clusters;
  for (std::size_t i = 0; i < words.size(); ++i) clusters[words[i].cluster].push_back(i);
  std::string out;
  const auto emit = [&](const std::string& rel, const std::string& a, const std::string& b) {
    out += "/a/[" + rel + "/," + a + "/," + b + "/]\t" + rel + "\t" + a + "\t" + b +
           "\t{\"dataset\": \"/d/synthetic\", \"weight\": 1.0}\n";
  };
  for (const auto& [c, members] : clusters) {
    for (std::size_t x = 0; x < members.size(); ++x)
      for (std::size_t y = 0; y < members.size(); ++y) {
        if (x == y || rng.uniform() >= 0.12) continue;
        const auto rel = "/r/" + std::string(kConceptNetRelationNames[rng.below(kConceptNetRelationCount)]);
        const auto& a = words[members[x]].text;
        const auto& b = words[members[y]].text;
        emit(rel, "/c/en/" + a, "/c/en/" + b + (rng.uniform() < 0.5 ? "/n" : ""));
        // Rows the loader must ignore.
        if (rng.uniform() < 0.2) emit("/r/HasA", "/c/en/" + a, "/c/en/" + b);
        if (rng.uniform() < 0.2) emit(rel, "/c/fr/" + a, "/c/en/" + b);
        if (rng.uniform() < 0.1) emit(rel, "/c/en/" + a + "_thing", "/c/en/" + b);
      }
  }
  text::write_file_atomic(path, out);
}

}  // namespace

fs::path write_world(const WorldSpec& spec, const fs::path& dir) {
  if (spec.spaces.empty()) throw ConfigError("synthetic world needs at least one space");
  fs::create_directories(dir);
  Rng rng(spec.seed);
  std::set<std::string> used;

  // Words: seeds first (frequency order), then satellites.
  std::vector<Word> words;
  for (std::size_t c = 0; c < spec.clusters; ++c) {
    Word w{random_word(rng, used, 6), c, true};
    if (rng.uniform() < spec.lemma_rate) {
      used.erase(w.text);
      w.text.back() = 'y';
      while (!used.insert(w.text).second) w.text = random_word(rng, used, 5) + "y";
    }
    words.push_back(w);
  }
  std::vector<Word> sats;
  for (std::size_t c = 0; c < spec.clusters; ++c) {
    const auto& seed = words[c].text;
    for (std::size_t k = 0; k < spec.satellites; ++k) {
      Word w{random_word(rng, used, 6), c, false};
      if (k == 0 && seed.back() == 'y' && spec.lemma_rate > 0.0) {
        w.text = seed.substr(0, seed.size() - 1) + "ies";
        w.in_wordnet = false;
      } else if (rng.uniform() < spec.plural_rate) {
        w.text = seed + "s";
        w.in_wordnet = false;
      } else if (rng.uniform() < spec.non_noun_rate) {
        w.in_wordnet = false;
        w.in_noun_list = false;
      } else if (rng.uniform() < spec.missing_norm_rate) {
        w.has_vad = false;
      }
      used.insert(w.text);
      sats.push_back(w);
    }
  }
  rng.shuffle(sats);
  words.insert(words.end(), sats.begin(), sats.end());
  const std::size_t n_words = words.size();
  for (auto& w : words) w.base_radius = std::exp(0.2 * rng.normal());

  // Norms. Concreteness drives the planted stretch through the seed's rank.
  std::vector<double> concreteness(n_words);
  std::vector<double> valence(n_words), arousal(n_words), dominance(n_words), freq(n_words);
  for (std::size_t i = 0; i < n_words; ++i) {
    concreteness[i] = std::round((1.0 + 4.0 * rng.uniform()) * 100.0) / 100.0;
    valence[i] = std::round(rng.uniform() * 1000.0) / 1000.0;
    arousal[i] = std::round(rng.uniform() * 1000.0) / 1000.0;
    dominance[i] = std::round(rng.uniform() * 1000.0) / 1000.0;
    freq[i] = std::round(1e6 / static_cast<double>(i + 1) * std::exp(0.3 * rng.normal()));
  }
  std::vector<double> seed_conc(concreteness.begin(),
                                concreteness.begin() + static_cast<std::ptrdiff_t>(spec.clusters));
  const auto seed_rank = rank_transform(seed_conc);
  std::vector<double> stretch(spec.clusters);
  for (std::size_t c = 0; c < spec.clusters; ++c) {
    const double q = (seed_rank[c] - 0.5) / static_cast<double>(spec.clusters);
    stretch[c] = std::exp(spec.stretch * (q - 0.5));
  }

  // Spaces.
  std::vector<std::vector<double>> centers(spec.clusters, std::vector<double>(spec.dim));
  for (auto& c : centers) {
    double n = 0.0;
    for (auto& x : c) {
      x = rng.normal();
      n += x * x;
    }
    for (auto& x : c) x /= std::sqrt(n);
  }
  std::vector<std::vector<double>> directions(n_words, std::vector<double>(spec.dim));
  for (auto& d : directions) {
    double n = 0.0;
    for (auto& x : d) {
      x = rng.normal();
      n += x * x;
    }
    for (auto& x : d) x /= std::sqrt(n);
  }

  nlohmann::ordered_json cfg;
  auto& cfg_spaces = cfg["spaces"] = nlohmann::ordered_json::array();
  for (std::size_t si = 0; si < spec.spaces.size(); ++si) {
    const auto& ss = spec.spaces[si];
    std::vector<std::string> vocab;
    std::vector<double> values;
    std::vector<std::size_t> order(n_words);
    for (std::size_t i = 0; i < n_words; ++i) order[i] = i;
    if (si > 0) rng.shuffle(order);
    for (std::size_t i : order) {
      const auto& w = words[i];
      vocab.push_back(w.text);
      double r = w.is_seed ? 0.05 : spec.radius * w.base_radius;
      if (!w.is_seed && ss.planted) r *= stretch[w.cluster];
      if (!w.is_seed) r *= std::exp(spec.noise * rng.normal());
      for (std::size_t t = 0; t < spec.dim; ++t) {
        const double jitter = 0.15 * rng.normal() / std::sqrt(static_cast<double>(spec.dim));
        values.push_back(centers[w.cluster][t] + r * (directions[i][t] + jitter));
      }
    }
    EmbeddingSpace space({ss.id, ss.variant, ss.modality}, spec.dim, std::move(vocab),
                         std::move(values));
    const std::string file = ss.id + (ss.fasttext_format ? ".vec" : ".tsv");
    if (ss.fasttext_format) {
      write_fasttext_text(space, dir / file);
      // No metadata slot in the format; the sidecar carries it.
      nlohmann::ordered_json side{{"model_id", ss.id},
                                  {"variant", to_string(ss.variant)},
                                  {"modality", to_string(ss.modality)}};
      text::write_file_atomic(dir / (file + ".json"), side.dump(2) + "\n");
    } else {
      write_tsv_embeddings(space, dir / file);
    }
    cfg_spaces.push_back({{"id", ss.id}, {"path", file}});
  }

  // Lexical resources.
  std::vector<std::string> noun_list;
  write_wordnet(words, rng, dir / "wordnet", noun_list);
  for (const auto& w : words)
    if (!w.in_wordnet && w.in_noun_list) noun_list.push_back(w.text);
  std::sort(noun_list.begin(), noun_list.end());
  std::string nouns;
  for (const auto& w : noun_list) nouns += w + "\n";
  text::write_file_atomic(dir / "nouns.txt", nouns);
  write_conceptnet(words, rng, dir / "conceptnet.csv");

  std::vector<double> written_conc = concreteness;
  if (spec.permute_concreteness) rng.shuffle(written_conc);
  std::string conc = "Word\tBigram\tConc.M\tConc.SD\n";
  std::string vad = "Word\tValence\tArousal\tDominance\n";
  std::string fq;
  for (std::size_t i = 0; i < n_words; ++i) {
    const auto& w = words[i].text;
    conc += w + "\t0\t" + text::format_fixed(written_conc[i], 2) + "\t0.5\n";
    if (words[i].has_vad)
      vad += w + "\t" + text::format_fixed(valence[i], 3) + "\t" + text::format_fixed(arousal[i], 3) +
             "\t" + text::format_fixed(dominance[i], 3) + "\n";
    fq += w + "\t" + text::format_fixed(freq[i], 0) + "\n";
  }
  // A couple of rows the loader must reject.
  conc += "outofrange\t0\t7.00\t0.5\n";
  vad += "outofrange\t1.500\t0.5\t0.5\n";
  text::write_file_atomic(dir / "concreteness.tsv", conc);
  text::write_file_atomic(dir / "vad.tsv", vad);
  text::write_file_atomic(dir / "frequency.tsv", fq);

  cfg["pair_source"] = spec.spaces.front().id;
  cfg["resources"] = {
      {"wordnet_dir", "wordnet"},
      {"conceptnet", "conceptnet.csv"},
      {"noun_list", "nouns.txt"},
      {"concreteness", {{"path", "concreteness.tsv"}, {"word_col", 0}, {"value_col", 2}}},
      {"vad", {{"path", "vad.tsv"}}},
      {"frequency", {{"path", "frequency.tsv"}}},
  };
  cfg["pairs"] = {{"k", spec.clusters}, {"n", spec.satellites}};
  auto& comps = cfg["comparisons"] = nlohmann::ordered_json::array();
  for (const auto& [a, b] : spec.comparisons) comps.push_back({{"a", a}, {"b", b}});
  cfg["groups"] = {"taxonomic", "vad", "wordnet_relations", "conceptnet_relations"};
  cfg["contributions"] = {{"mode", "single_over_baseline"}, {"baseline", "frequency"}};
  cfg["output_dir"] = "run";
  const auto cfg_path = dir / "config.json";
  text::write_file_atomic(cfg_path, cfg.dump(2) + "\n");
  return cfg_path;
}

}  // namespace modshift::synthetic

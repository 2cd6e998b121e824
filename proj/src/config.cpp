#include "modshift/config.hpp"

#include <set>

#include "modshift/error.hpp"
#include "modshift/text.hpp"

namespace modshift {

using json = nlohmann::json;

PredictorSet contribution_baseline(ContributionBaseline b) {
  switch (b) {
    case ContributionBaseline::intercept: return {"intercept", {}};
    case ContributionBaseline::frequency: return frequency_baseline();
    case ContributionBaseline::concreteness: return concreteness_baseline();
    case ContributionBaseline::combined: return combined_baseline();
  }
  return frequency_baseline();
}

namespace {

std::string_view to_string(ContributionBaseline b) {
  switch (b) {
    case ContributionBaseline::intercept: return "intercept";
    case ContributionBaseline::frequency: return "frequency";
    case ContributionBaseline::concreteness: return "concreteness";
    case ContributionBaseline::combined: return "concreteness+frequency";
  }
  return "frequency";
}

ContributionBaseline parse_baseline(const std::string& s) {
  if (s == "intercept") return ContributionBaseline::intercept;
  if (s == "frequency") return ContributionBaseline::frequency;
  if (s == "concreteness") return ContributionBaseline::concreteness;
  if (s == "concreteness+frequency" || s == "combined") return ContributionBaseline::combined;
  throw ConfigError("unknown contribution baseline: " + s);
}

std::string_view to_string(TableFormat f) {
  switch (f) {
    case TableFormat::csv: return "csv";
    case TableFormat::md: return "md";
    case TableFormat::json: return "json";
  }
  return "csv";
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return (path.is_absolute() ? path : base / path).lexically_normal();
}

template <class T>
T get(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field '") + key + "': " + e.what());
  }
}

std::string require_string(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j.at(key).is_string())
    throw ConfigError(where + ": missing string field '" + key + "'");
  return j.at(key).get<std::string>();
}

}  // namespace

const SpaceConfig& RunConfig::space(const std::string& id) const {
  for (const auto& s : spaces)
    if (s.id == id) return s;
  throw ConfigError("unknown space id: " + id);
}

std::vector<ResolvedComparison> RunConfig::resolved_comparisons() const {
  std::vector<ResolvedComparison> out;
  for (const auto& c : comparisons) {
    const auto& sa = space(c.a);
    const auto& sb = space(c.b);
    ResolvedComparison r{c.a, c.b, "", classify(sa.meta.modality, sb.meta.modality)};
    if (c.direction == RatioDirection::text_over_multimodal &&
        sa.meta.modality == Modality::multimodal && sb.meta.modality == Modality::text)
      std::swap(r.numerator, r.denominator);
    r.anchor = c.anchor.value_or(r.denominator);
    if (r.anchor != r.numerator && r.anchor != r.denominator)
      throw ConfigError("comparison " + c.a + "/" + c.b + ": anchor '" + r.anchor +
                        "' is not one of its spaces");
    out.push_back(std::move(r));
  }
  return out;
}

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json j;
  auto& sp = j["spaces"] = nlohmann::ordered_json::array();
  for (const auto& s : spaces) {
    nlohmann::ordered_json e;
    e["id"] = s.id;
    e["path"] = s.path.string();
    e["format"] = s.format == EmbeddingFormat::fasttext ? "fasttext" : "tsv";
    e["model_id"] = s.meta.model_id;
    e["variant"] = modshift::to_string(s.meta.variant);
    e["modality"] = modshift::to_string(s.meta.modality);
    sp.push_back(std::move(e));
  }
  j["pair_source"] = pair_source;
  auto& lx = j["resources"];
  lx["wordnet_dir"] = lexicon.wordnet_dir.string();
  lx["conceptnet"] = lexicon.conceptnet.string();
  lx["conceptnet_lang"] = lexicon.conceptnet_lang;
  lx["noun_list"] = lexicon.noun_list ? json(lexicon.noun_list->string()) : json(nullptr);
  const auto& n = lexicon.norms;
  lx["concreteness"] = {{"path", n.concreteness.string()},
                        {"word_col", n.concreteness_columns.word},
                        {"value_col", n.concreteness_columns.value}};
  lx["vad"] = {{"path", n.vad.string()},
               {"word_col", n.vad_columns.word},
               {"valence_col", n.vad_columns.valence},
               {"arousal_col", n.vad_columns.arousal},
               {"dominance_col", n.vad_columns.dominance}};
  lx["frequency"] = {{"path", n.frequency.string()},
                     {"word_col", n.frequency_columns.word},
                     {"value_col", n.frequency_columns.value}};
  j["pairs"] = {{"k", pairs.k}, {"n", pairs.n}};
  auto& cmp = j["comparisons"] = nlohmann::ordered_json::array();
  for (const auto& r : resolved_comparisons())
    cmp.push_back({{"numerator", r.numerator},
                   {"denominator", r.denominator},
                   {"anchor", r.anchor},
                   {"modality_class", modshift::to_string(r.modality_class)}});
  auto& gs = j["groups"] = nlohmann::ordered_json::array();
  for (const auto& g : groups) gs.push_back({{"name", g.name}, {"features", g.features}});
  j["contributions"] = {{"mode", modshift::to_string(contribution_mode)},
                        {"baseline", to_string(contribution_baseline_kind)},
                        {"features", contribution_features}};
  j["eps"] = eps;
  j["bins"] = bins;
  auto& tf = j["table_formats"] = nlohmann::ordered_json::array();
  for (auto f : table_formats) tf.push_back(to_string(f));
  j["seed"] = seed;
  return j;
}

RunConfig parse_config(const json& j, const std::filesystem::path& base) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig cfg;
  try {
    for (const auto& s : j.value("spaces", json::array())) {
      SpaceConfig sc;
      sc.id = require_string(s, "id", "space");
      sc.path = resolve(base, require_string(s, "path", "space '" + sc.id + "'"));
      const auto fmt = s.value("format", sc.path.extension() == ".vec" ? "fasttext" : "tsv");
      if (fmt == "fasttext") sc.format = EmbeddingFormat::fasttext;
      else if (fmt == "tsv") sc.format = EmbeddingFormat::tsv;
      else throw ConfigError("space '" + sc.id + "': unknown format " + fmt);
      // Explicit fields win over the sidecar, which wins over defaults.
      if (auto side = read_sidecar(sc.path)) sc.meta = *side;
      sc.meta.model_id = s.value("model_id", sc.meta.model_id == "unknown" ? sc.id : sc.meta.model_id);
      if (s.contains("variant")) sc.meta.variant = parse_variant(s.at("variant").get<std::string>());
      if (s.contains("modality"))
        sc.meta.modality = parse_modality(s.at("modality").get<std::string>());
      cfg.spaces.push_back(std::move(sc));
    }
    cfg.pair_source = get<std::string>(j, "pair_source",
                                       cfg.spaces.empty() ? std::string() : cfg.spaces[0].id);

    const json res = j.value("resources", json::object());
    auto& lx = cfg.lexicon;
    lx.wordnet_dir = resolve(base, require_string(res, "wordnet_dir", "resources"));
    lx.conceptnet = resolve(base, require_string(res, "conceptnet", "resources"));
    lx.conceptnet_lang = res.value("conceptnet_lang", "en");
    if (res.contains("noun_list") && !res.at("noun_list").is_null())
      lx.noun_list = resolve(base, res.at("noun_list").get<std::string>());
    const auto norms_file = [&](const char* key, NormsColumns cols) {
      if (!res.contains(key)) throw ConfigError(std::string("resources: missing '") + key + "'");
      const auto& e = res.at(key);
      if (e.is_string()) return std::pair{resolve(base, e.get<std::string>()), cols};
      cols.word = e.value("word_col", cols.word);
      cols.value = e.value("value_col", cols.value);
      return std::pair{resolve(base, require_string(e, "path", key)), cols};
    };
    std::tie(lx.norms.concreteness, lx.norms.concreteness_columns) =
        norms_file("concreteness", {0, 1});
    std::tie(lx.norms.frequency, lx.norms.frequency_columns) = norms_file("frequency", {0, 1});
    if (!res.contains("vad")) throw ConfigError("resources: missing 'vad'");
    const auto& vad = res.at("vad");
    if (vad.is_string()) {
      lx.norms.vad = resolve(base, vad.get<std::string>());
    } else {
      lx.norms.vad = resolve(base, require_string(vad, "path", "vad"));
      auto& vc = lx.norms.vad_columns;
      vc.word = vad.value("word_col", vc.word);
      vc.valence = vad.value("valence_col", vc.valence);
      vc.arousal = vad.value("arousal_col", vc.arousal);
      vc.dominance = vad.value("dominance_col", vc.dominance);
    }

    const json pj = j.value("pairs", json::object());
    const auto k = pj.value("k", static_cast<long long>(cfg.pairs.k));
    const auto n = pj.value("n", static_cast<long long>(cfg.pairs.n));
    if (k <= 0 || n <= 0) throw ConfigError("pairs: k and n must be positive");
    cfg.pairs.k = static_cast<std::size_t>(k);
    cfg.pairs.n = static_cast<std::size_t>(n);

    for (const auto& c : j.value("comparisons", json::array())) {
      ComparisonConfig cc;
      if (c.is_array() && c.size() == 2) {
        cc.a = c[0].get<std::string>();
        cc.b = c[1].get<std::string>();
      } else {
        cc.a = require_string(c, "a", "comparison");
        cc.b = require_string(c, "b", "comparison");
        if (c.contains("anchor")) cc.anchor = c.at("anchor").get<std::string>();
        const auto dir = c.value("direction", "text_over_multimodal");
        if (dir == "as_given") cc.direction = RatioDirection::as_given;
        else if (dir != "text_over_multimodal")
          throw ConfigError("comparison: unknown direction " + dir);
      }
      cfg.comparisons.push_back(std::move(cc));
    }

    if (j.contains("groups")) {
      cfg.groups.clear();
      for (const auto& g : j.at("groups")) {
        if (g.is_string()) {
          cfg.groups.push_back(standard_group(g.get<std::string>()));
        } else {
          cfg.groups.push_back({require_string(g, "name", "group"),
                                g.value("features", std::vector<std::string>{})});
        }
      }
    }

    const json cj = j.value("contributions", json::object());
    cfg.contribution_mode =
        parse_contribution_mode(cj.value("mode", std::string(to_string(cfg.contribution_mode))));
    cfg.contribution_baseline_kind = parse_baseline(cj.value("baseline", "frequency"));
    if (cj.contains("features"))
      cfg.contribution_features = cj.at("features").get<std::vector<std::string>>();

    cfg.eps = get<double>(j, "eps", cfg.eps);
    cfg.bins = get<std::size_t>(j, "bins", cfg.bins);
    if (j.contains("table_formats")) {
      cfg.table_formats.clear();
      for (const auto& f : j.at("table_formats"))
        cfg.table_formats.push_back(parse_table_format(f.get<std::string>()));
    }
    if (j.contains("output_dir"))
      cfg.output_dir = resolve(base, j.at("output_dir").get<std::string>());
    else
      cfg.output_dir = resolve(base, "run");
    cfg.seed = get<std::uint64_t>(j, "seed", 0);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const DataError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  json j;
  try {
    j = json::parse(text::read_file(path));
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  } catch (const DataError& e) {
    throw ConfigError(e.what());
  }
  auto cfg = parse_config(j, std::filesystem::absolute(path).parent_path());
  cfg.source = std::filesystem::absolute(path);
  return cfg;
}

void validate(const RunConfig& cfg) {
  const auto must_exist = [](const std::filesystem::path& p, const std::string& what) {
    if (!std::filesystem::exists(p)) throw ConfigError(what + " not found: " + p.string());
  };
  if (cfg.spaces.empty()) throw ConfigError("config lists no embedding spaces");
  std::set<std::string> ids;
  for (const auto& s : cfg.spaces) {
    if (s.id.empty()) throw ConfigError("space with empty id");
    if (!ids.insert(s.id).second) throw ConfigError("duplicate space id: " + s.id);
    must_exist(s.path, "embedding file for '" + s.id + "'");
  }
  if (!ids.contains(cfg.pair_source))
    throw ConfigError("pair_source '" + cfg.pair_source + "' is not a configured space");
  must_exist(cfg.lexicon.wordnet_dir / "index.noun", "WordNet index.noun");
  must_exist(cfg.lexicon.wordnet_dir / "data.noun", "WordNet data.noun");
  must_exist(cfg.lexicon.conceptnet, "ConceptNet dump");
  must_exist(cfg.lexicon.norms.concreteness, "concreteness norms");
  must_exist(cfg.lexicon.norms.vad, "VAD norms");
  must_exist(cfg.lexicon.norms.frequency, "frequency counts");
  if (cfg.lexicon.noun_list) must_exist(*cfg.lexicon.noun_list, "noun list");
  if (cfg.pairs.k == 0 || cfg.pairs.n == 0) throw ConfigError("pairs: k and n must be positive");
  if (cfg.comparisons.empty()) throw ConfigError("config lists no comparisons");
  for (const auto& c : cfg.comparisons) {
    if (!ids.contains(c.a) || !ids.contains(c.b))
      throw ConfigError("comparison references unknown space: " + c.a + "/" + c.b);
    if (c.a == c.b) throw ConfigError("comparison of a space with itself: " + c.a);
  }
  (void)cfg.resolved_comparisons();
  if (cfg.groups.empty()) throw ConfigError("config lists no predictor groups");
  for (const auto& g : cfg.groups) validate_predictor_set(g);
  validate_predictor_set({"contributions", cfg.contribution_features});
  if (!(cfg.eps >= 0.0)) throw ConfigError("eps must be nonnegative");
  if (cfg.bins == 0) throw ConfigError("bins must be positive");
  if (cfg.table_formats.empty()) throw ConfigError("no table formats requested");
}

}  // namespace modshift

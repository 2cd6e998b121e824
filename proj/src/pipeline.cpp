#include "modshift/pipeline.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <chrono>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>

#include "modshift/annotation.hpp"
#include "modshift/digest.hpp"
#include "modshift/error.hpp"
#include "modshift/geometry.hpp"
#include "modshift/parallel.hpp"
#include "modshift/text.hpp"

namespace modshift {

using ojson = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string_view to_string(Stage s) {
  switch (s) {
    case Stage::ingest: return "ingest";
    case Stage::pairs: return "pairs";
    case Stage::annotate: return "annotate";
    case Stage::distances: return "distances";
    case Stage::regress: return "regress";
    case Stage::report: return "report";
  }
  return "ingest";
}

Stage parse_stage(std::string_view s) {
  for (Stage st : kStages)
    if (to_string(st) == s) return st;
  throw ConfigError("unknown stage: " + std::string(s));
}

// ---------------------------------------------------------------------------
// Artifacts

void write_distances(const DistanceArtifact& d, const fs::path& path) {
  std::string out = "pair_id\tseed\tneighbor";
  for (const auto& s : d.spaces) out += "\tdist." + s;
  for (const auto& c : d.comparisons) out += "\tratio." + c + "\trank." + c;
  out += '\n';
  for (std::size_t i = 0; i < d.seeds.size(); ++i) {
    out += std::to_string(i) + '\t' + d.seeds[i] + '\t' + d.neighbors[i];
    for (const auto& s : d.spaces) out += '\t' + text::format_double(d.distances.at(s)[i]);
    for (const auto& c : d.comparisons)
      out += '\t' + text::format_double(d.ratios.at(c)[i]) + '\t' +
             text::format_double(d.ranks.at(c)[i]);
    out += '\n';
  }
  text::write_file_atomic(path, out);
}

DistanceArtifact read_distances(const fs::path& path) {
  const std::string content = text::read_file(path);
  const auto rows = text::lines(content);
  if (rows.empty()) throw DataError(path.string() + ": empty distance table");
  const auto header = text::split(rows[0], '\t');
  if (header.size() < 3 || header[0] != "pair_id")
    throw DataError(path.string() + ": bad distance table header");
  DistanceArtifact d;
  std::vector<std::vector<double>*> targets;
  for (std::size_t c = 3; c < header.size(); ++c) {
    const std::string h(header[c]);
    if (h.starts_with("dist.")) {
      d.spaces.push_back(h.substr(5));
      targets.push_back(&d.distances[h.substr(5)]);
    } else if (h.starts_with("ratio.")) {
      d.comparisons.push_back(h.substr(6));
      targets.push_back(&d.ratios[h.substr(6)]);
    } else if (h.starts_with("rank.")) {
      targets.push_back(&d.ranks[h.substr(5)]);
    } else {
      throw DataError(path.string() + ": unknown column " + h);
    }
  }
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].empty()) continue;
    const auto f = text::split(rows[i], '\t');
    if (f.size() != header.size())
      throw DataError(path.string() + ":" + std::to_string(i + 1) + ": wrong column count");
    d.seeds.emplace_back(f[1]);
    d.neighbors.emplace_back(f[2]);
    for (std::size_t c = 3; c < f.size(); ++c) {
      const auto v = text::parse_double(f[c]);
      if (!v) throw DataError(path.string() + ":" + std::to_string(i + 1) + ": bad number");
      targets[c - 3]->push_back(*v);
    }
  }
  return d;
}

namespace {

ojson number(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

double number_from(const nlohmann::json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

ModalityClass parse_class(const std::string& s) {
  for (auto c : {ModalityClass::text_text, ModalityClass::text_multimodal,
                 ModalityClass::multimodal_multimodal})
    if (to_string(c) == s) return c;
  throw DataError("unknown modality class: " + s);
}

ojson result_to_json(const RegressionResult& r) {
  ojson j;
  j["n"] = r.n;
  j["p"] = r.p;
  j["columns"] = r.columns;
  ojson coef = ojson::array();
  for (double c : r.coefficients) coef.push_back(number(c));
  j["coefficients"] = std::move(coef);
  ojson se = ojson::array();
  for (double s : r.std_errors) se.push_back(number(s));
  j["std_errors"] = std::move(se);
  j["dropped"] = r.dropped;
  j["r2"] = number(r.r2);
  j["adj_r2"] = number(r.adj_r2);
  j["f_stat"] = r.f_stat == std::numeric_limits<double>::infinity() ? ojson("inf") : number(r.f_stat);
  j["p_value"] = number(r.p_value);
  return j;
}

RegressionResult result_from_json(const nlohmann::json& j) {
  RegressionResult r;
  r.n = j.at("n").get<std::size_t>();
  r.p = j.at("p").get<std::size_t>();
  r.columns = j.at("columns").get<std::vector<std::string>>();
  for (const auto& c : j.at("coefficients")) r.coefficients.push_back(number_from(c));
  for (const auto& s : j.at("std_errors")) r.std_errors.push_back(number_from(s));
  r.dropped = j.at("dropped").get<std::vector<std::string>>();
  r.r2 = number_from(j.at("r2"));
  r.adj_r2 = number_from(j.at("adj_r2"));
  const auto& f = j.at("f_stat");
  r.f_stat = f.is_string() ? std::numeric_limits<double>::infinity() : number_from(f);
  r.p_value = number_from(j.at("p_value"));
  return r;
}

}  // namespace

std::vector<ContributionRecord> RegressArtifact::feature_records() const {
  std::vector<ContributionRecord> out;
  for (const auto& c : contributions)
    for (const auto& f : c.features)
      out.push_back({c.comparison, c.modality_class, f.feature, f.delta});
  return out;
}

std::vector<ContributionRecord> RegressArtifact::group_records() const {
  std::vector<ContributionRecord> out;
  for (const auto& c : comparisons)
    for (const auto& row : c.analysis.rows)
      if (row.delta) out.push_back({c.a + "/" + c.b, c.modality_class, row.name, *row.delta});
  return out;
}

void write_analysis(const RegressArtifact& a, const fs::path& path) {
  ojson j;
  j["contribution_mode"] = a.contribution_mode;
  j["contribution_baseline"] = a.contribution_baseline;
  ojson comps = ojson::array();
  for (std::size_t i = 0; i < a.comparisons.size(); ++i) {
    const auto& c = a.comparisons[i];
    ojson e;
    e["numerator"] = c.a;
    e["denominator"] = c.b;
    e["anchor"] = c.anchor;
    e["modality_class"] = to_string(c.modality_class);
    ojson rows = ojson::array();
    for (const auto& r : c.analysis.rows) {
      ojson row;
      row["name"] = r.name;
      row["delta"] = r.delta ? number(*r.delta) : ojson(nullptr);
      row["result"] = result_to_json(r.result);
      rows.push_back(std::move(row));
    }
    e["rows"] = std::move(rows);
    ojson contribs = ojson::array();
    if (i < a.contributions.size()) {
      for (const auto& f : a.contributions[i].features)
        contribs.push_back({{"feature", f.feature},
                            {"delta", number(f.delta)},
                            {"adj_r2_with", number(f.adj_r2_with)},
                            {"adj_r2_without", number(f.adj_r2_without)},
                            {"dropped", f.dropped}});
    }
    e["contributions"] = std::move(contribs);
    comps.push_back(std::move(e));
  }
  j["comparisons"] = std::move(comps);
  text::write_file_atomic(path, j.dump(2) + "\n");
}

RegressArtifact read_analysis(const fs::path& path) {
  RegressArtifact a;
  try {
    const auto j = nlohmann::json::parse(text::read_file(path));
    a.contribution_mode = j.at("contribution_mode").get<std::string>();
    a.contribution_baseline = j.at("contribution_baseline").get<std::string>();
    for (const auto& e : j.at("comparisons")) {
      ComparisonAnalysis c;
      c.a = e.at("numerator").get<std::string>();
      c.b = e.at("denominator").get<std::string>();
      c.anchor = e.at("anchor").get<std::string>();
      c.modality_class = parse_class(e.at("modality_class").get<std::string>());
      for (const auto& row : e.at("rows")) {
        AnalysisRow r;
        r.name = row.at("name").get<std::string>();
        if (!row.at("delta").is_null()) r.delta = row.at("delta").get<double>();
        r.result = result_from_json(row.at("result"));
        c.analysis.rows.push_back(std::move(r));
      }
      ComparisonContributions cc{c.a + "/" + c.b, c.modality_class, {}};
      for (const auto& f : e.at("contributions"))
        cc.features.push_back({f.at("feature").get<std::string>(), number_from(f.at("delta")),
                               number_from(f.at("adj_r2_with")),
                               number_from(f.at("adj_r2_without")), f.at("dropped").get<bool>()});
      a.comparisons.push_back(std::move(c));
      a.contributions.push_back(std::move(cc));
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  return a;
}

// ---------------------------------------------------------------------------
// Orchestration

namespace {

class RunLock {
 public:
  explicit RunLock(const fs::path& dir) {
    const auto path = dir / ".lock";
    fd_ = ::open(path.c_str(), O_CREAT | O_RDWR, 0644);
    if (fd_ < 0) throw ConfigError("cannot create lock file in " + dir.string());
    if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
      ::close(fd_);
      throw ConfigError("run directory is in use by another process: " + dir.string());
    }
  }
  ~RunLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  RunLock(const RunLock&) = delete;
  RunLock& operator=(const RunLock&) = delete;

 private:
  int fd_ = -1;
};

class RunContext {
 public:
  RunContext(const RunConfig& cfg, fs::path dir) : cfg_(cfg), dir_(std::move(dir)) {}

  const RunConfig& cfg() const { return cfg_; }
  const fs::path& dir() const { return dir_; }
  fs::path artifact(Stage s, const std::string& name) const {
    return dir_ / std::string(to_string(s)) / name;
  }

  const EmbeddingSpace& space(const std::string& id) {
    auto it = spaces_.find(id);
    if (it == spaces_.end()) {
      const auto& sc = cfg_.space(id);
      auto space = sc.format == EmbeddingFormat::fasttext ? load_fasttext_text(sc.path, sc.meta)
                                                          : load_tsv_embeddings(sc.path, sc.meta);
      it = spaces_.emplace(id, std::move(space)).first;
    }
    return it->second;
  }
  std::vector<const EmbeddingSpace*> all_spaces() {
    std::vector<const EmbeddingSpace*> out;
    for (const auto& s : cfg_.spaces) out.push_back(&space(s.id));
    return out;
  }
  const Lexicon& lexicon() {
    if (!lexicon_) lexicon_.emplace(load_lexicon(cfg_.lexicon));
    return *lexicon_;
  }
  const PairSet& pairs() {
    if (!pairs_) pairs_ = read_pairs(artifact(Stage::pairs, "pairs.tsv"));
    return *pairs_;
  }
  const AnnotationTable& annotations() {
    if (!annotations_) annotations_ = read_annotations(artifact(Stage::annotate, "annotations.tsv"));
    return *annotations_;
  }
  const DistanceArtifact& distances() {
    if (!distances_) distances_ = read_distances(artifact(Stage::distances, "distances.tsv"));
    return *distances_;
  }
  const RegressArtifact& analysis() {
    if (!analysis_) analysis_ = read_analysis(artifact(Stage::regress, "analysis.json"));
    return *analysis_;
  }

  std::optional<PairSet> pairs_;
  std::optional<AnnotationTable> annotations_;
  std::optional<DistanceArtifact> distances_;
  std::optional<RegressArtifact> analysis_;

 private:
  const RunConfig& cfg_;
  fs::path dir_;
  std::map<std::string, EmbeddingSpace> spaces_;
  std::optional<Lexicon> lexicon_;
};

using StageFn = std::function<std::vector<fs::path>(RunContext&, ojson& counts)>;

std::vector<fs::path> stage_ingest(RunContext& ctx, ojson& counts) {
  ojson spaces = ojson::array();
  for (const auto& sc : ctx.cfg().spaces) {
    const auto& s = ctx.space(sc.id);
    spaces.push_back({{"id", sc.id},
                      {"model_id", s.meta().model_id},
                      {"variant", to_string(s.meta().variant)},
                      {"modality", to_string(s.meta().modality)},
                      {"dim", s.dim()},
                      {"words", s.size()}});
    counts["words." + sc.id] = s.size();
  }
  const auto all = ctx.all_spaces();
  const auto common = vocab_intersection(all);
  counts["vocab_intersection"] = common.size();
  const auto& lex = ctx.lexicon();
  ojson resources;
  resources["wordnet"] = {{"index_entries", lex.wordnet.report().index_entries},
                          {"synsets", lex.wordnet.report().synsets},
                          {"dangling_pointers", lex.wordnet.report().dangling_pointers},
                          {"exceptions", lex.wordnet.report().exceptions},
                          {"sense_scope", "noun senses only"}};
  const auto& cn = lex.conceptnet.report();
  resources["conceptnet"] = {{"lines", cn.lines},
                             {"kept", cn.kept},
                             {"other_relation", cn.other_relation},
                             {"other_language_or_multiword", cn.other_language},
                             {"malformed", cn.malformed}};
  const auto& nr = lex.norms.report;
  resources["norms"] = {{"concreteness_rows", nr.concreteness_rows},
                        {"vad_rows", nr.vad_rows},
                        {"frequency_rows", nr.frequency_rows},
                        {"rejected_out_of_range", nr.rejected_out_of_range},
                        {"rejected_malformed", nr.rejected_malformed},
                        {"duplicates_ignored", nr.duplicates_ignored}};
  resources["noun_test"] = lex.noun_list ? "external noun list" : "WordNet noun senses";
  const auto path = ctx.artifact(Stage::ingest, "inputs.json");
  text::write_file_atomic(path, ojson{{"spaces", spaces},
                                      {"vocab_intersection", common.size()},
                                      {"resources", resources}}
                                        .dump(2) + "\n");
  return {path};
}

std::vector<fs::path> stage_pairs(RunContext& ctx, ojson& counts) {
  const auto& cfg = ctx.cfg();
  const auto& lex = ctx.lexicon();
  auto set = build_pairs(ctx.space(cfg.pair_source), lex, cfg.pairs);
  set = prune_to_complete(std::move(set), lex);
  set = restrict_to_spaces(std::move(set), ctx.all_spaces());
  if (set.pairs.empty()) throw DataError("no word pairs survive filtering");
  const auto& p = set.provenance;
  counts["raw"] = p.raw;
  counts["duplicates"] = p.duplicates;
  counts["dropped_noun"] = p.dropped_noun;
  counts["dropped_substring"] = p.dropped_substring;
  counts["dropped_lemma"] = p.dropped_lemma;
  counts["dropped_incomplete"] = p.dropped_incomplete;
  counts["dropped_coverage"] = p.dropped_coverage;
  counts["reversed_duplicates"] = p.reversed_duplicates;
  counts["pairs"] = set.size();
  const auto path = ctx.artifact(Stage::pairs, "pairs.tsv");
  write_pairs(set, path);
  ctx.pairs_ = std::move(set);
  auto sidecar = path;
  sidecar += ".json";
  return {path, sidecar};
}

std::vector<fs::path> stage_annotate(RunContext& ctx, ojson& counts) {
  auto table = annotate(ctx.pairs(), ctx.lexicon());
  counts["rows"] = table.rows();
  counts["columns"] = table.names().size();
  const auto path = ctx.artifact(Stage::annotate, "annotations.tsv");
  write_annotations(table, path);
  ctx.annotations_ = std::move(table);
  return {path};
}

std::vector<fs::path> stage_distances(RunContext& ctx, ojson& counts) {
  const auto& cfg = ctx.cfg();
  const auto& pairs = ctx.pairs();
  DistanceArtifact d;
  for (const auto& p : pairs.pairs) {
    d.seeds.push_back(p.seed);
    d.neighbors.push_back(p.neighbor);
  }
  for (const auto& sc : cfg.spaces) {
    d.spaces.push_back(sc.id);
    d.distances[sc.id] = pair_distances(ctx.space(sc.id), pairs);
  }
  for (const auto& c : cfg.resolved_comparisons()) {
    auto rr = ratio_ranks(d.distances.at(c.numerator), d.distances.at(c.denominator), cfg.eps);
    d.comparisons.push_back(c.label());
    d.ratios[c.label()] = std::move(rr.ratios);
    d.ranks[c.label()] = std::move(rr.ranks);
  }
  counts["pairs"] = d.seeds.size();
  counts["spaces"] = d.spaces.size();
  counts["comparisons"] = d.comparisons.size();
  const auto path = ctx.artifact(Stage::distances, "distances.tsv");
  write_distances(d, path);
  ctx.distances_ = std::move(d);
  return {path};
}

std::vector<fs::path> stage_regress(RunContext& ctx, ojson& counts) {
  const auto& cfg = ctx.cfg();
  const auto& table = ctx.annotations();
  const auto& dist = ctx.distances();
  if (dist.seeds != table.seeds() || dist.neighbors != table.neighbors())
    throw DataError("annotation and distance tables disagree on pair order");
  const auto comparisons = cfg.resolved_comparisons();
  const auto baseline = contribution_baseline(cfg.contribution_baseline_kind);

  RegressArtifact art;
  art.contribution_mode = std::string(to_string(cfg.contribution_mode));
  art.contribution_baseline = baseline.name;
  art.comparisons.resize(comparisons.size());
  art.contributions.resize(comparisons.size());
  parallel_for(comparisons.size(), [&](std::size_t i) {
    const auto& c = comparisons[i];
    const auto it = dist.ranks.find(c.label());
    if (it == dist.ranks.end()) throw DataError("distance table lacks comparison " + c.label());
    const auto& ranks = it->second;
    auto& ca = art.comparisons[i];
    ca.a = c.numerator;
    ca.b = c.denominator;
    ca.anchor = c.anchor;
    ca.modality_class = c.modality_class;
    ca.analysis = grouped_analysis(table, ranks, cfg.groups);
    art.contributions[i] = {c.label(), c.modality_class,
                            single_feature_contributions(table, ranks, cfg.contribution_features,
                                                         baseline, cfg.contribution_mode)};
  });

  std::size_t fits = 0;
  std::size_t dropped = 0;
  for (const auto& c : art.comparisons)
    for (const auto& r : c.analysis.rows) {
      ++fits;
      dropped += r.result.dropped.size();
    }
  counts["comparisons"] = art.comparisons.size();
  counts["grouped_fits"] = fits;
  counts["constant_columns_dropped"] = dropped;
  counts["contribution_features"] = cfg.contribution_features.size();

  const auto json_path = ctx.artifact(Stage::regress, "analysis.json");
  write_analysis(art, json_path);
  std::string tsv = "comparison\tmodality_class\tfeature\tdelta\tadj_r2_with\tadj_r2_without\tdropped\n";
  for (const auto& c : art.contributions)
    for (const auto& f : c.features)
      tsv += c.comparison + '\t' + std::string(to_string(c.modality_class)) + '\t' + f.feature +
             '\t' + text::format_double(f.delta) + '\t' + text::format_double(f.adj_r2_with) +
             '\t' + text::format_double(f.adj_r2_without) + '\t' + (f.dropped ? "1" : "0") + '\n';
  const auto tsv_path = ctx.artifact(Stage::regress, "contributions.tsv");
  text::write_file_atomic(tsv_path, tsv);
  ctx.analysis_ = std::move(art);
  return {json_path, tsv_path};
}

std::vector<fs::path> stage_report(RunContext& ctx, ojson& counts) {
  const auto& cfg = ctx.cfg();
  const auto& art = ctx.analysis();
  const auto dir = ctx.dir() / "report";
  std::vector<fs::path> out;
  for (auto f : cfg.table_formats) {
    auto files = emit_table(art.comparisons, f, dir);
    out.insert(out.end(), files.begin(), files.end());
  }
  const auto features = art.feature_records();
  auto fb = emit_boxplot_data(features, dir, "boxplot_features",
                              "single-feature contribution to adjusted R^2 (" +
                                  art.contribution_mode + ", baseline " +
                                  art.contribution_baseline + ")");
  out.insert(out.end(), fb.begin(), fb.end());
  const auto groups = art.group_records();
  auto gb = emit_boxplot_data(groups, dir, "boxplot_groups",
                              "group contribution to adjusted R^2 over concreteness+frequency");
  out.insert(out.end(), gb.begin(), gb.end());

  const auto& dist = ctx.distances();
  std::vector<SimilarityHistogram> hists;
  for (const auto& s : dist.spaces)
    hists.push_back(similarity_histogram(s, dist.distances.at(s), cfg.bins));
  auto hb = emit_distance_distributions(hists, dir);
  out.insert(out.end(), hb.begin(), hb.end());
  counts["files"] = out.size();
  return out;
}

StageFn stage_fn(Stage s) {
  switch (s) {
    case Stage::ingest: return stage_ingest;
    case Stage::pairs: return stage_pairs;
    case Stage::annotate: return stage_annotate;
    case Stage::distances: return stage_distances;
    case Stage::regress: return stage_regress;
    case Stage::report: return stage_report;
  }
  return stage_ingest;
}

ojson input_hashes(const RunConfig& cfg) {
  ojson j = ojson::object();
  const auto add = [&](const fs::path& p) {
    if (fs::exists(p)) j[p.string()] = sha256_file(p);
  };
  for (const auto& s : cfg.spaces) {
    add(s.path);
    auto side = s.path;
    side += ".json";
    add(side);
  }
  add(cfg.lexicon.wordnet_dir / "index.noun");
  add(cfg.lexicon.wordnet_dir / "data.noun");
  add(cfg.lexicon.wordnet_dir / "noun.exc");
  add(cfg.lexicon.conceptnet);
  add(cfg.lexicon.norms.concreteness);
  add(cfg.lexicon.norms.vad);
  add(cfg.lexicon.norms.frequency);
  if (cfg.lexicon.noun_list) add(*cfg.lexicon.noun_list);
  return j;
}

ojson record_json(const StageRecord& r) {
  ojson j;
  j["name"] = r.name;
  j["status"] = r.status;
  j["fingerprint"] = r.fingerprint;
  j["outputs"] = r.outputs;
  j["counts"] = r.counts;
  j["seconds"] = r.seconds;
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

std::optional<ojson> previous_stage(const fs::path& manifest, const std::string& name) {
  if (!fs::exists(manifest)) return std::nullopt;
  try {
    const auto j = ojson::parse(text::read_file(manifest));
    for (const auto& s : j.at("stages"))
      if (s.at("name") == name) return ojson(s);
  } catch (const nlohmann::json::exception&) {
  }
  return std::nullopt;
}

bool outputs_intact(const fs::path& dir, const ojson& outputs) {
  for (const auto& [rel, hash] : outputs.items()) {
    const auto p = dir / rel;
    if (!fs::exists(p) || sha256_file(p) != hash.get<std::string>()) return false;
  }
  return true;
}

template <class E>
[[noreturn]] void rethrow_named(const std::string& stage, const E& e) {
  throw E("stage '" + stage + "' failed: " + e.what());
}

}  // namespace

PipelineResult run_pipeline(const RunConfig& cfg, const PipelineOptions& opts) {
  validate(cfg);
  const fs::path dir = cfg.output_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());
  RunLock lock(dir);

  const fs::path manifest_path = dir / "manifest.json";
  ojson manifest;
  manifest["tool"] = "modshift";
  manifest["config"] = cfg.to_json();
  if (!cfg.source.empty()) manifest["config_file"] = cfg.source.string();
  manifest["inputs"] = input_hashes(cfg);
  manifest["assumptions"] = {
      "supersenses and WordNet relations consider noun senses only",
      "supersense labels use any-sense membership",
      "hypernym and hyponym relations are direct (one edge)",
      "ConceptNet relations are order-insensitive; multi-word concepts are ignored",
  };
  manifest["stages"] = ojson::array();

  // Read the previous manifest before it is overwritten by this run.
  std::map<std::string, ojson> previous;
  if (opts.resume)
    for (Stage s : kStages)
      if (auto p = previous_stage(manifest_path, std::string(to_string(s))))
        previous.emplace(std::string(to_string(s)), std::move(*p));

  RunContext ctx(cfg, dir);
  PipelineResult result{dir, {}};
  std::string chain = sha256_hex(manifest["config"].dump() + manifest["inputs"].dump());

  for (Stage s : kStages) {
    StageRecord rec;
    rec.name = std::string(to_string(s));
    rec.fingerprint = sha256_hex(chain + rec.name);
    chain = rec.fingerprint;
    fs::create_directories(dir / rec.name);
    const auto t0 = std::chrono::steady_clock::now();

    const auto prev = previous.find(rec.name);
    if (opts.resume && prev != previous.end() &&
        prev->second.value("fingerprint", "") == rec.fingerprint &&
        prev->second.value("status", "") != "failed" &&
        outputs_intact(dir, prev->second.at("outputs"))) {
      rec.status = "resumed";
      rec.outputs = prev->second.at("outputs");
      rec.counts = prev->second.value("counts", ojson::object());
    } else {
      try {
        const auto files = stage_fn(s)(ctx, rec.counts);
        for (const auto& f : files)
          rec.outputs[fs::relative(f, dir).generic_string()] = sha256_file(f);
        rec.status = "completed";
      } catch (const std::exception& e) {
        rec.status = "failed";
        rec.error = e.what();
        rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        manifest["stages"].push_back(record_json(rec));
        text::write_file_atomic(manifest_path, manifest.dump(2) + "\n");
        if (const auto* c = dynamic_cast<const ConfigError*>(&e)) rethrow_named(rec.name, *c);
        if (const auto* d = dynamic_cast<const DataError*>(&e)) rethrow_named(rec.name, *d);
        if (const auto* n = dynamic_cast<const NumericalError*>(&e)) rethrow_named(rec.name, *n);
        throw;
      }
    }
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (opts.log)
      *opts.log << "[" << rec.name << "] " << rec.status << " (" << rec.counts.dump() << ")\n";
    manifest["stages"].push_back(record_json(rec));
    text::write_file_atomic(manifest_path, manifest.dump(2) + "\n");
    result.stages.push_back(std::move(rec));
    if (s == opts.until) break;
  }
  return result;
}

}  // namespace modshift

#include "modshift/report.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <nlohmann/json.hpp>

#include "modshift/error.hpp"
#include "modshift/text.hpp"

namespace modshift {

using ojson = nlohmann::ordered_json;

std::string_view to_string(ModalityClass c) {
  switch (c) {
    case ModalityClass::text_text: return "text-text";
    case ModalityClass::text_multimodal: return "text-multimodal";
    case ModalityClass::multimodal_multimodal: return "multimodal-multimodal";
  }
  return "text-text";
}

ModalityClass classify(Modality a, Modality b) {
  if (a == Modality::text && b == Modality::text) return ModalityClass::text_text;
  if (a == Modality::multimodal && b == Modality::multimodal)
    return ModalityClass::multimodal_multimodal;
  return ModalityClass::text_multimodal;
}

std::string format_percent(double value) {
  if (!std::isfinite(value)) return "n/a";
  return text::format_fixed(100.0 * value, 2);
}

std::string format_cell(double value, std::optional<double> delta) {
  std::string out = format_percent(value);
  if (delta) {
    const std::string d = format_percent(*delta);
    out += " (";
    out += d.front() == '-' || d == "n/a" ? d : "+" + d;
    out += ")";
  }
  return out;
}

TableFormat parse_table_format(std::string_view s) {
  if (s == "csv") return TableFormat::csv;
  if (s == "md") return TableFormat::md;
  if (s == "json") return TableFormat::json;
  throw ConfigError("unknown table format: " + std::string(s));
}

namespace {

ojson number(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

ojson result_json(const RegressionResult& r) {
  ojson j;
  j["n"] = r.n;
  j["p"] = r.p;
  j["r2"] = number(r.r2);
  j["adj_r2"] = number(r.adj_r2);
  j["f_stat"] = number(r.f_stat);
  j["p_value"] = number(r.p_value);
  j["significance_test"] = "overall F-test";
  ojson coefs = ojson::array();
  for (std::size_t i = 0; i < r.coefficients.size(); ++i) {
    ojson c;
    c["column"] = i < r.columns.size() ? r.columns[i] : "x" + std::to_string(i);
    c["estimate"] = number(r.coefficients[i]);
    c["std_error"] = number(i < r.std_errors.size() ? r.std_errors[i] : NAN);
    coefs.push_back(std::move(c));
  }
  j["coefficients"] = std::move(coefs);
  j["dropped_constant_columns"] = r.dropped;
  return j;
}

std::string file_safe(const std::string& s) {
  std::string out;
  for (char c : s) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
  return out;
}

struct AnchorTable {
  std::string anchor;
  std::vector<const ComparisonAnalysis*> comparisons;
  std::vector<std::string> row_names;
};

std::vector<AnchorTable> group_by_anchor(std::span<const ComparisonAnalysis> results) {
  std::vector<AnchorTable> tables;
  for (const auto& c : results) {
    auto it = std::find_if(tables.begin(), tables.end(),
                           [&](const AnchorTable& t) { return t.anchor == c.anchor; });
    if (it == tables.end()) {
      tables.push_back({c.anchor, {}, {}});
      it = std::prev(tables.end());
    }
    it->comparisons.push_back(&c);
    for (const auto& row : c.analysis.rows)
      if (std::find(it->row_names.begin(), it->row_names.end(), row.name) == it->row_names.end())
        it->row_names.push_back(row.name);
  }
  return tables;
}

std::string other_side(const ComparisonAnalysis& c) { return c.anchor == c.a ? c.b : c.a; }

const AnalysisRow* find_row(const ComparisonAnalysis& c, const std::string& name) {
  for (const auto& r : c.analysis.rows)
    if (r.name == name) return &r;
  return nullptr;
}

std::string cell_text(const ComparisonAnalysis& c, const std::string& row) {
  const AnalysisRow* r = find_row(c, row);
  return r == nullptr ? "" : format_cell(r->result.adj_r2, r->delta);
}

}  // namespace

std::vector<std::filesystem::path> emit_table(std::span<const ComparisonAnalysis> results,
                                              TableFormat format,
                                              const std::filesystem::path& out_dir) {
  std::vector<std::filesystem::path> written;
  for (const auto& t : group_by_anchor(results)) {
    const std::string stem = "table_" + file_safe(t.anchor);
    std::string out;
    std::filesystem::path path;
    switch (format) {
      case TableFormat::csv: {
        path = out_dir / (stem + ".csv");
        out = t.anchor + " vs.";
        for (const auto* c : t.comparisons) out += "," + other_side(*c);
        out += '\n';
        for (const auto& row : t.row_names) {
          out += row;
          for (const auto* c : t.comparisons) out += "," + cell_text(*c, row);
          out += '\n';
        }
        break;
      }
      case TableFormat::md: {
        path = out_dir / (stem + ".md");
        out = "| " + t.anchor + " vs. |";
        for (const auto* c : t.comparisons) out += " " + other_side(*c) + " |";
        out += "\n|---|";
        for (std::size_t i = 0; i < t.comparisons.size(); ++i) out += "---|";
        out += '\n';
        for (const auto& row : t.row_names) {
          out += "| " + row + " |";
          for (const auto* c : t.comparisons) out += " " + cell_text(*c, row) + " |";
          out += '\n';
        }
        out += "\nAdjusted R^2 (% of variance in distance-ratio rank); "
               "parentheses give the change over concreteness+frequency.\n";
        break;
      }
      case TableFormat::json: {
        path = out_dir / (stem + ".json");
        ojson j;
        j["anchor"] = t.anchor;
        j["value"] = "adjusted R^2";
        ojson cols = ojson::array();
        for (const auto* c : t.comparisons) {
          ojson col;
          col["space"] = other_side(*c);
          col["ratio"] = c->a + "/" + c->b;
          col["modality_class"] = to_string(c->modality_class);
          ojson rows = ojson::array();
          for (const auto& r : c->analysis.rows) {
            ojson row;
            row["name"] = r.name;
            row["cell"] = format_cell(r.result.adj_r2, r.delta);
            row["delta"] = r.delta ? number(*r.delta) : ojson(nullptr);
            row["result"] = result_json(r.result);
            rows.push_back(std::move(row));
          }
          col["rows"] = std::move(rows);
          cols.push_back(std::move(col));
        }
        j["columns"] = std::move(cols);
        out = j.dump(2) + "\n";
        break;
      }
    }
    text::write_file_atomic(path, out);
    written.push_back(path);
  }
  return written;
}

double quantile_linear(std::vector<double> values, double q) {
  if (values.empty()) throw NumericalError("quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double h = static_cast<double>(values.size() - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

BoxplotSummary boxplot_summary(std::span<const double> values, double whisker_iqr) {
  std::vector<double> v(values.begin(), values.end());
  BoxplotSummary s;
  s.count = v.size();
  s.median = quantile_linear(v, 0.5);
  s.q1 = quantile_linear(v, 0.25);
  s.q3 = quantile_linear(v, 0.75);
  const double iqr = s.q3 - s.q1;
  s.whisker_low = s.q1 - whisker_iqr * iqr;
  s.whisker_high = s.q3 + whisker_iqr * iqr;
  std::sort(v.begin(), v.end());
  for (double x : v)
    if (x < s.whisker_low || x > s.whisker_high) s.outliers.push_back(x);
  return s;
}

std::vector<std::filesystem::path> emit_boxplot_data(std::span<const ContributionRecord> records,
                                                     const std::filesystem::path& out_dir,
                                                     const std::string& stem,
                                                     const std::string& label) {
  constexpr std::array<ModalityClass, 3> kClasses = {ModalityClass::text_text,
                                                     ModalityClass::text_multimodal,
                                                     ModalityClass::multimodal_multimodal};
  std::vector<std::string> features;
  std::map<std::pair<std::string, ModalityClass>, std::vector<double>> values;
  for (const auto& r : records) {
    if (std::find(features.begin(), features.end(), r.feature) == features.end())
      features.push_back(r.feature);
    values[{r.feature, r.modality_class}].push_back(r.delta);
  }

  ojson j;
  j["label"] = label;
  j["whisker_iqr"] = 0.5;
  j["quartile_method"] = "linear";
  ojson feats = ojson::object();
  ojson warnings = ojson::array();
  for (const auto& f : features) {
    ojson entry = ojson::object();
    for (auto cls : kClasses) {
      const auto it = values.find({f, cls});
      if (it == values.end()) continue;
      if (it->second.size() < 2) {
        warnings.push_back("feature '" + f + "': class " + std::string(to_string(cls)) +
                           " has fewer than 2 comparisons; omitted");
        continue;
      }
      const auto s = boxplot_summary(it->second);
      ojson b;
      b["count"] = s.count;
      b["median"] = number(s.median);
      b["q1"] = number(s.q1);
      b["q3"] = number(s.q3);
      b["whisker_low"] = number(s.whisker_low);
      b["whisker_high"] = number(s.whisker_high);
      b["outliers"] = s.outliers;
      entry[std::string(to_string(cls))] = std::move(b);
    }
    feats[f] = std::move(entry);
  }
  j["features"] = std::move(feats);
  j["warnings"] = std::move(warnings);

  const auto json_path = out_dir / (stem + ".json");
  const auto csv_path = out_dir / (stem + ".csv");
  text::write_file_atomic(json_path, j.dump(2) + "\n");
  std::string csv = "comparison,modality_class,feature,delta\n";
  for (const auto& r : records)
    csv += r.comparison + "," + std::string(to_string(r.modality_class)) + "," + r.feature + "," +
           text::format_double(r.delta) + "\n";
  text::write_file_atomic(csv_path, csv);
  return {json_path, csv_path};
}

SimilarityHistogram similarity_histogram(const std::string& space,
                                         std::span<const double> distances, std::size_t bins) {
  if (bins == 0) throw ConfigError("histogram needs at least one bin");
  SimilarityHistogram h;
  h.space = space;
  h.counts.assign(bins, 0);
  for (std::size_t i = 0; i <= bins; ++i)
    h.edges.push_back(-1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(bins));
  double sum = 0.0;
  for (double d : distances) {
    const double s = 1.0 - d;
    sum += s;
    auto bin = static_cast<long>(std::floor((s + 1.0) / 2.0 * static_cast<double>(bins)));
    bin = std::clamp<long>(bin, 0, static_cast<long>(bins) - 1);
    ++h.counts[static_cast<std::size_t>(bin)];
  }
  if (!distances.empty()) {
    h.mean = sum / static_cast<double>(distances.size());
    double ss = 0.0;
    for (double d : distances) ss += (1.0 - d - h.mean) * (1.0 - d - h.mean);
    h.stddev = std::sqrt(ss / static_cast<double>(distances.size()));
  }
  return h;
}

std::vector<std::filesystem::path> emit_distance_distributions(
    std::span<const SimilarityHistogram> histograms, const std::filesystem::path& out_dir) {
  ojson j = ojson::array();
  std::string csv = "space,bin_low,bin_high,count\n";
  for (const auto& h : histograms) {
    ojson e;
    e["space"] = h.space;
    e["edges"] = h.edges;
    e["counts"] = h.counts;
    e["mean"] = number(h.mean);
    e["stddev"] = number(h.stddev);
    j.push_back(std::move(e));
    for (std::size_t b = 0; b < h.counts.size(); ++b)
      csv += h.space + "," + text::format_double(h.edges[b]) + "," +
             text::format_double(h.edges[b + 1]) + "," + std::to_string(h.counts[b]) + "\n";
  }
  const auto json_path = out_dir / "similarity_distributions.json";
  const auto csv_path = out_dir / "similarity_distributions.csv";
  text::write_file_atomic(json_path, j.dump(2) + "\n");
  text::write_file_atomic(csv_path, csv);
  return {json_path, csv_path};
}

}  // namespace modshift

#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "modshift/config.hpp"
#include "modshift/error.hpp"
#include "modshift/geometry.hpp"
#include "modshift/pairs.hpp"
#include "modshift/pipeline.hpp"
#include "modshift/ranking.hpp"
#include "modshift/regression.hpp"
#include "modshift/report.hpp"

namespace py = pybind11;
using namespace modshift;

namespace {

EmbeddingMeta make_meta(const std::string& model_id, const std::string& variant,
                        const std::string& modality) {
  return {model_id, parse_variant(variant), parse_modality(modality)};
}

std::vector<double> as_vector(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 1) throw py::value_error("expected a 1-D array");
  return {a.data(), a.data() + a.size()};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Embedding-space change analysis core";

  static py::exception<ConfigError> config_error(m, "ConfigError", PyExc_ValueError);
  static py::exception<DataError> data_error(m, "DataError", PyExc_ValueError);
  static py::exception<NumericalError> numerical_error(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ConfigError& e) {
      py::set_error(config_error, e.what());
    } catch (const DataError& e) {
      py::set_error(data_error, e.what());
    } catch (const NumericalError& e) {
      py::set_error(numerical_error, e.what());
    }
  });

  py::class_<EmbeddingSpace>(m, "EmbeddingSpace")
      .def(py::init([](std::vector<std::string> vocab,
                       py::array_t<double, py::array::c_style | py::array::forcecast> vectors,
                       const std::string& model_id, const std::string& variant,
                       const std::string& modality) {
             if (vectors.ndim() != 2) throw py::value_error("vectors must be 2-D");
             const auto dim = static_cast<std::size_t>(vectors.shape(1));
             std::vector<double> values(vectors.data(), vectors.data() + vectors.size());
             return EmbeddingSpace(make_meta(model_id, variant, modality), dim, std::move(vocab),
                                   std::move(values));
           }),
           py::arg("vocab"), py::arg("vectors"), py::arg("model_id") = "unknown",
           py::arg("variant") = "iso", py::arg("modality") = "text")
      .def_property_readonly("vocab", &EmbeddingSpace::vocab)
      .def_property_readonly("dim", &EmbeddingSpace::dim)
      .def_property_readonly("model_id", [](const EmbeddingSpace& s) { return s.meta().model_id; })
      .def_property_readonly("variant",
                             [](const EmbeddingSpace& s) { return std::string(to_string(s.meta().variant)); })
      .def_property_readonly("modality",
                             [](const EmbeddingSpace& s) { return std::string(to_string(s.meta().modality)); })
      .def("__len__", &EmbeddingSpace::size)
      .def("__contains__", [](const EmbeddingSpace& s, const std::string& w) { return s.contains(w); })
      .def("vector",
           [](const EmbeddingSpace& s, const std::string& w) {
             const auto v = s.vector(w);
             return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
           })
      .def("vectors", [](const EmbeddingSpace& s) {
        py::array_t<double> out({static_cast<py::ssize_t>(s.size()), static_cast<py::ssize_t>(s.dim())});
        auto* dst = out.mutable_data();
        for (std::size_t i = 0; i < s.size(); ++i) {
          const auto r = s.row(i);
          std::copy(r.begin(), r.end(), dst + i * s.dim());
        }
        return out;
      });

  m.def("load_fasttext_text",
        [](const std::filesystem::path& path, const std::string& model_id, const std::string& variant,
           const std::string& modality) {
          return load_fasttext_text(path, make_meta(model_id, variant, modality));
        },
        py::arg("path"), py::arg("model_id") = "unknown", py::arg("variant") = "iso",
        py::arg("modality") = "text");
  m.def("load_tsv_embeddings",
        [](const std::filesystem::path& path, std::optional<std::string> model_id,
           std::optional<std::string> variant, std::optional<std::string> modality) {
          EmbeddingMeta meta = read_sidecar(path).value_or(EmbeddingMeta{});
          if (model_id) meta.model_id = *model_id;
          if (variant) meta.variant = parse_variant(*variant);
          if (modality) meta.modality = parse_modality(*modality);
          return load_tsv_embeddings(path, meta);
        },
        py::arg("path"), py::arg("model_id") = py::none(), py::arg("variant") = py::none(),
        py::arg("modality") = py::none());

  m.def("cosine_distance",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& u,
           const py::array_t<double, py::array::c_style | py::array::forcecast>& v) {
          const auto a = as_vector(u);
          const auto b = as_vector(v);
          return cosine_distance(a, b);
        });
  m.def("nearest_neighbors", &nearest_neighbors, py::arg("space"), py::arg("word"), py::arg("n"));
  m.def("rank_transform", [](const std::vector<double>& v) { return rank_transform(v); });
  m.def("ratio_ranks",
        [](const std::vector<double>& a, const std::vector<double>& b, double eps) {
          auto r = ratio_ranks(a, b, eps);
          return py::make_tuple(r.ratios, r.ranks);
        },
        py::arg("d_a"), py::arg("d_b"), py::arg("eps") = kDefaultRatioEps);

  py::class_<RegressionResult>(m, "RegressionResult")
      .def_readonly("n", &RegressionResult::n)
      .def_readonly("p", &RegressionResult::p)
      .def_readonly("columns", &RegressionResult::columns)
      .def_readonly("coefficients", &RegressionResult::coefficients)
      .def_readonly("std_errors", &RegressionResult::std_errors)
      .def_readonly("r2", &RegressionResult::r2)
      .def_readonly("adj_r2", &RegressionResult::adj_r2)
      .def_readonly("f_stat", &RegressionResult::f_stat)
      .def_readonly("p_value", &RegressionResult::p_value);
  m.def("ols_fit",
        [](const Eigen::MatrixXd& x, const std::vector<double>& y) { return ols_fit(x, y); },
        py::arg("x"), py::arg("y"),
        "Least squares fit; `x` must include the intercept column first.");
  m.def("adjusted_r2", &adjusted_r2, py::arg("r2"), py::arg("n"), py::arg("p"));
  m.def("format_cell", &format_cell, py::arg("value"), py::arg("delta") = py::none());

  m.def("run_pipeline",
        [](const std::filesystem::path& config, std::optional<std::filesystem::path> out,
           const std::string& until, bool resume) {
          auto cfg = load_config(config);
          if (out) cfg.output_dir = std::filesystem::absolute(*out);
          validate(cfg);
          PipelineOptions opts;
          opts.until = parse_stage(until);
          opts.resume = resume;
          PipelineResult r;
          {
            py::gil_scoped_release release;
            r = run_pipeline(cfg, opts);
          }
          py::dict stages;
          for (const auto& s : r.stages) stages[py::str(s.name)] = s.status;
          return py::make_tuple(r.run_dir, stages);
        },
        py::arg("config"), py::arg("out") = py::none(), py::arg("until") = "report",
        py::arg("resume") = false,
        "Runs the pipeline; returns (run_dir, {stage: status}).");
}

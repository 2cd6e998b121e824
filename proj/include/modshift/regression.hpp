#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "modshift/annotation.hpp"

namespace modshift {

/// Regression design: column 0 is always the intercept.
struct DesignMatrix {
  Eigen::MatrixXd x;
  std::vector<std::string> columns;  // parallel to x's columns; columns[0] == "intercept"
  std::vector<std::string> dropped;  // requested columns removed for zero variance
};

/// Intercept followed by `features` in order, skipping repeats and dropping
/// constant columns. Throws NumericalError if features were requested but
/// every one of them is constant.
DesignMatrix design_matrix(const AnnotationTable& table, std::span<const std::string> features);

/// Intercept, then the four concreteness/frequency baseline columns when
/// `baseline` is set, then the set's columns.
DesignMatrix design_matrix(const AnnotationTable& table, const PredictorSet& set, bool baseline);

struct RegressionResult {
  std::size_t n = 0;  // observations
  std::size_t p = 0;  // predictors, intercept excluded
  std::vector<std::string> columns;
  std::vector<double> coefficients;
  std::vector<double> std_errors;
  std::vector<std::string> dropped;
  double r2 = 0.0;
  double adj_r2 = 0.0;
  double f_stat = 0.0;   // overall F test against the intercept-only model
  double p_value = 1.0;
};

/// 1 - (1 - r2)(n - 1)/(n - p - 1). Throws NumericalError unless n > p + 1.
double adjusted_r2(double r2, std::size_t n, std::size_t p);

/// Least squares via column-pivoted Householder QR. `x` must carry the
/// intercept in column 0. Throws NumericalError for rank-deficient designs,
/// n <= p + 1, or a constant response.
RegressionResult ols_fit(const Eigen::MatrixXd& x, std::span<const double> y);
RegressionResult ols_fit(const DesignMatrix& design, std::span<const double> y);

/// I_x(a, b), evaluated with a continued fraction (modified Lentz).
double regularized_incomplete_beta(double a, double b, double x);

/// P(F > f) for F ~ F(d1, d2).
double f_distribution_sf(double f, double d1, double d2);

}  // namespace modshift

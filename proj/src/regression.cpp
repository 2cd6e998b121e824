#include "modshift/regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <Eigen/QR>

#include "modshift/error.hpp"

namespace modshift {

DesignMatrix design_matrix(const AnnotationTable& table, std::span<const std::string> features) {
  const std::size_t n = table.rows();
  DesignMatrix d;
  std::vector<std::span<const double>> kept;
  std::set<std::string> seen;
  std::size_t requested = 0;
  for (const auto& f : features) {
    if (!seen.insert(f).second) continue;
    ++requested;
    const auto col = table.column(f);
    const bool constant =
        std::all_of(col.begin(), col.end(), [&](double v) { return v == col.front(); });
    if (constant) {
      d.dropped.push_back(f);
      continue;
    }
    kept.push_back(col);
    d.columns.push_back(f);
  }
  if (requested > 0 && kept.empty())
    throw NumericalError("design matrix: all requested columns are constant");

  d.columns.insert(d.columns.begin(), "intercept");
  d.x.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(kept.size() + 1));
  d.x.col(0).setOnes();
  for (std::size_t j = 0; j < kept.size(); ++j)
    for (std::size_t i = 0; i < n; ++i)
      d.x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j + 1)) = kept[j][i];
  return d;
}

DesignMatrix design_matrix(const AnnotationTable& table, const PredictorSet& set, bool baseline) {
  std::vector<std::string> features;
  if (baseline) features = combined_baseline().features;
  features.insert(features.end(), set.features.begin(), set.features.end());
  return design_matrix(table, features);
}

double adjusted_r2(double r2, std::size_t n, std::size_t p) {
  if (n <= p + 1)
    throw NumericalError("adjusted R^2 needs n > p + 1 (n = " + std::to_string(n) +
                         ", p = " + std::to_string(p) + ")");
  const double nn = static_cast<double>(n);
  const double pp = static_cast<double>(p);
  return 1.0 - (1.0 - r2) * (nn - 1.0) / (nn - pp - 1.0);
}

RegressionResult ols_fit(const Eigen::MatrixXd& x, std::span<const double> y_in) {
  const auto n = static_cast<std::size_t>(x.rows());
  const auto cols = static_cast<std::size_t>(x.cols());
  if (cols == 0) throw NumericalError("ols_fit: design has no columns");
  if (y_in.size() != n) throw NumericalError("ols_fit: response length does not match design");
  const std::size_t p = cols - 1;
  if (n <= p + 1)
    throw NumericalError("ols_fit: need n > p + 1 (n = " + std::to_string(n) +
                         ", p = " + std::to_string(p) + ")");

  const Eigen::Map<const Eigen::VectorXd> y(y_in.data(), static_cast<Eigen::Index>(n));
  const double mean = y.mean();
  const double tss = (y.array() - mean).square().sum();
  if (tss == 0.0) throw NumericalError("ols_fit: response is constant");

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  qr.setThreshold(1e-10);
  if (qr.rank() < x.cols())
    throw NumericalError("ols_fit: design is rank deficient (rank " + std::to_string(qr.rank()) +
                         " < " + std::to_string(cols) + " columns)");

  const Eigen::VectorXd beta = qr.solve(y);
  const Eigen::VectorXd resid = y - x * beta;
  const double ssr = resid.squaredNorm();

  RegressionResult r;
  r.n = n;
  r.p = p;
  r.coefficients.assign(beta.data(), beta.data() + beta.size());
  r.r2 = p == 0 ? 0.0 : 1.0 - ssr / tss;
  r.adj_r2 = adjusted_r2(r.r2, n, p);

  const double df = static_cast<double>(n - p - 1);
  const double sigma = std::sqrt(ssr / df);
  // (X'X)^-1 = P R^-1 R^-T P'
  const auto c = static_cast<Eigen::Index>(cols);
  const Eigen::MatrixXd rmat = qr.matrixR().topLeftCorner(c, c).triangularView<Eigen::Upper>();
  const Eigen::MatrixXd rinv =
      rmat.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(c, c));
  r.std_errors.assign(cols, 0.0);
  const auto& perm = qr.colsPermutation().indices();
  for (Eigen::Index k = 0; k < c; ++k)
    r.std_errors[static_cast<std::size_t>(perm(k))] = sigma * rinv.row(k).norm();

  if (p == 0) {
    r.f_stat = 0.0;
    r.p_value = 1.0;
  } else if (ssr == 0.0 || r.r2 >= 1.0) {
    r.f_stat = std::numeric_limits<double>::infinity();
    r.p_value = 0.0;
  } else {
    r.f_stat = (r.r2 / static_cast<double>(p)) / ((1.0 - r.r2) / df);
    r.p_value = r.f_stat <= 0.0 ? 1.0 : f_distribution_sf(r.f_stat, static_cast<double>(p), df);
  }
  return r;
}

RegressionResult ols_fit(const DesignMatrix& design, std::span<const double> y) {
  auto r = ols_fit(design.x, y);
  r.columns = design.columns;
  r.dropped = design.dropped;
  return r;
}

namespace {

// Continued fraction for I_x(a, b); converges fast for x < (a + 1)/(a + b + 2).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 10000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw NumericalError("incomplete beta: continued fraction did not converge");
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw NumericalError("incomplete beta: a, b must be positive");
  if (!(x >= 0.0 && x <= 1.0)) throw NumericalError("incomplete beta: x outside [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double f_distribution_sf(double f, double d1, double d2) {
  if (!(d1 > 0.0) || !(d2 > 0.0)) throw NumericalError("F distribution: bad degrees of freedom");
  if (std::isnan(f)) throw NumericalError("F distribution: NaN statistic");
  if (f <= 0.0) return 1.0;
  if (std::isinf(f)) return 0.0;
  const double x = d2 / (d2 + d1 * f);
  return std::clamp(regularized_incomplete_beta(0.5 * d2, 0.5 * d1, x), 0.0, 1.0);
}

}  // namespace modshift

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "monoidlab/bijection.hpp"
#include "monoidlab/errors.hpp"
#include "monoidlab/natural.hpp"
#include "monoidlab/opspec.hpp"

namespace monoidlab {

struct GrowthDemoRecord {
  int n = 1;
  Natural input_value{1};   // a = (2n)^{2n}
  Natural output_value{1};  // f_ω(a, a), computed through the conjugate
  Natural expected{1};      // (4n)^{4n} for plus, (4n²)^{4n²} for times
  double ratio_log2 = 0.0;  // log₂(output / a²), high precision from exact values
};

enum class GrowthOp { plus, times };

/// Exact demonstrations that the even-power conjugates of + and · outgrow
/// a² along a = (2n)^{2n}: computes f_ω(a,a) through the bijection and
/// checks it equals the closed form.
inline std::vector<GrowthDemoRecord> conjugate_growth_demo(GrowthOp which, int n_max) {
  if (n_max < 1 || n_max > 6) throw InvalidSpec("growth demo supports 1 <= n_max <= 6");
  const BijectionProgram omega = BijectionProgram::even_power();
  const OpSpec base = (which == GrowthOp::plus) ? OpSpec::add() : OpSpec::mul();
  const OpSpec conj = OpSpec::conjugate(base, omega);
  std::vector<GrowthDemoRecord> records;
  for (int n = 1; n <= n_max; ++n) {
    const BigInt two_n = 2 * BigInt(n);
    const Natural a(big_pow(two_n, two_n));
    // re-assert the bijection prerequisite on the value actually used
    if (omega.inverse(a) != Natural(two_n) || omega.forward(Natural(two_n)) != a)
      throw InvalidSpec("even-power bijection failed its round trip");
    GrowthDemoRecord rec;
    rec.n = n;
    rec.input_value = a;
    rec.output_value = eval_op(conj, a, a);
    if (which == GrowthOp::plus) {
      const BigInt four_n = 4 * BigInt(n);
      rec.expected = Natural(big_pow(four_n, four_n));
    } else {
      const BigInt four_n2 = 4 * BigInt(n) * BigInt(n);
      rec.expected = Natural(big_pow(four_n2, four_n2));
    }
    rec.ratio_log2 = log2_nat(rec.output_value) - 2.0 * log2_nat(rec.input_value);
    records.push_back(std::move(rec));
  }
  return records;
}

struct RatioRecord {
  int n = 1;
  Natural ratio{1};  // f_ω(a,a) / a², an exact integer for both demos
};

/// The ratio f_ω(a,a)/a² at a = (2n)^{2n}. Both demos simplify to exact
/// integers: 2^{4n} for plus and (2n)^{8n²−4n} for times; their growth
/// supports the limsup = ∞ claims.
inline std::vector<RatioRecord> ratio_stream(GrowthOp which, int n_max) {
  if (n_max < 1 || n_max > 6) throw InvalidSpec("ratio stream supports 1 <= n_max <= 6");
  std::vector<RatioRecord> records;
  for (int n = 1; n <= n_max; ++n) {
    const BigInt two_n = 2 * BigInt(n);
    BigInt value;
    if (which == GrowthOp::plus) {
      // (4n)^{4n} / (2n)^{4n} = 2^{4n}
      value = big_pow(BigInt(2), 4 * BigInt(n));
    } else {
      // (4n²)^{4n²} / (2n)^{4n} = (2n)^{8n²} / (2n)^{4n} = (2n)^{8n²−4n}
      value = big_pow(two_n, 8 * BigInt(n) * BigInt(n) - 4 * BigInt(n));
    }
    records.push_back(RatioRecord{n, Natural(value)});
    // exactness cross-check against the demo quotient
    const BigInt a = big_pow(two_n, two_n);
    const BigInt out = (which == GrowthOp::plus)
                           ? big_pow(4 * BigInt(n), 4 * BigInt(n))
                           : big_pow(4 * BigInt(n) * BigInt(n), 4 * BigInt(n) * BigInt(n));
    if (out != value * a * a) throw InvalidSpec("ratio simplification failed exactness check");
  }
  for (std::size_t i = 0; i + 1 < records.size(); ++i)
    if (!(records[i].ratio < records[i + 1].ratio))
      throw InvalidSpec("ratio stream is not strictly increasing");
  return records;
}

struct SelfcomposeReport {
  Natural alpha{1}, beta{1};
  int n_checked = 0;
  bool identity_exact = false;    // (g∘g)(n) = α^{β+1} n^{β²} on the range
  bool ratio_constant = false;    // (g∘g)(n)/g(n) constant on the range
  bool ratio_increasing = false;  // strictly increasing on the range
  Natural ratio_first{1};
  Natural ratio_last{1};  // the maximal C with g∘g ≤ C·g on the tested range
};

/// The self-composition dichotomy for g(n) = α·n^β: (g∘g)(n) = α^{β+1}·n^{β²}
/// exactly, and the ratio (g∘g)/g = α^β·n^{β²−β} is constant iff β = 1 and
/// strictly increasing otherwise.
inline SelfcomposeReport selfcompose_growth_check(const Natural& alpha, const Natural& beta,
                                                  int n_max) {
  if (n_max < 1) throw InvalidSpec("selfcompose check needs n_max >= 1");
  SelfcomposeReport report;
  report.alpha = alpha;
  report.beta = beta;
  report.n_checked = n_max;
  report.identity_exact = true;
  report.ratio_constant = true;
  report.ratio_increasing = true;
  const BigInt& al = alpha.value();
  const BigInt& be = beta.value();
  BigInt prev_ratio = -1;
  for (int n = 1; n <= n_max; ++n) {
    const BigInt g = al * big_pow(BigInt(n), be);
    const BigInt gg = al * big_pow(g, be);
    const BigInt closed = big_pow(al, be + 1) * big_pow(BigInt(n), be * be);
    if (gg != closed) report.identity_exact = false;
    const BigInt ratio = gg / g;  // α^β n^{β²−β}, always divides exactly
    if (ratio * g != gg) throw InvalidSpec("self-composition ratio is not an integer");
    if (n == 1) report.ratio_first = Natural(ratio);
    if (n == n_max) report.ratio_last = Natural(ratio);
    if (prev_ratio >= 0) {
      if (ratio != prev_ratio) report.ratio_constant = false;
      if (!(ratio > prev_ratio)) report.ratio_increasing = false;
    }
    prev_ratio = ratio;
  }
  if (n_max == 1) report.ratio_increasing = false;
  return report;
}

struct ExponentEstimate {
  double alpha_hat = 0.0;  // smallest consecutive log-log slope
  double beta_hat = 0.0;   // largest consecutive log-log slope
  double ls_slope = 0.0;   // least-squares slope over the whole grid
  double residual = 0.0;   // RMS residual of the least-squares fit
  std::string sample_grid;
  double tolerance = 0.1;
  bool check_alpha_le_beta = false;     // α̂ ≤ β̂
  bool check_alpha_sq_le_beta = false;  // α̂² ≤ β̂ + tol
  bool check_alpha_le_beta_sq = false;  // α̂ ≤ β̂² + tol
};

/// Discrete polynomial-growth exponent estimate: evaluates f(a, c·b) exactly
/// over the grid and fits log₂ f against log₂ c. The smallest and largest
/// consecutive slopes bracket the scaling exponent; the inequality flags are
/// the discrete versions of the exponent constraints bilinear growth obeys.
inline ExponentEstimate estimate_growth_exponents(const OpSpec& op, const Natural& a_fixed,
                                                  const Natural& b_fixed,
                                                  const std::vector<Natural>& c_grid,
                                                  double tolerance = 0.1,
                                                  const EvalLimits& limits = {}) {
  if (c_grid.size() < 4) throw NonPositiveGrid("exponent estimation needs at least 4 grid points");
  for (std::size_t i = 0; i + 1 < c_grid.size(); ++i)
    if (!(c_grid[i] < c_grid[i + 1])) throw NonPositiveGrid("grid must be strictly increasing");

  std::vector<double> xs, ys;
  std::string grid_desc = "c in {";
  for (std::size_t i = 0; i < c_grid.size(); ++i) {
    const Natural cb = c_grid[i] * b_fixed;
    const Natural y = eval_op(op, a_fixed, cb, limits);
    xs.push_back(log2_nat(c_grid[i]));
    ys.push_back(log2_nat(y));
    grid_desc += (i ? "," : "") + c_grid[i].str();
  }
  grid_desc += "}, a=" + a_fixed.str() + ", b=" + b_fixed.str();

  ExponentEstimate est;
  est.sample_grid = grid_desc;
  est.tolerance = tolerance;

  double min_slope = std::numeric_limits<double>::infinity();
  double max_slope = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double s = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
    min_slope = std::min(min_slope, s);
    max_slope = std::max(max_slope, s);
  }
  est.alpha_hat = min_slope;
  est.beta_hat = max_slope;

  const double m = static_cast<double>(xs.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  est.ls_slope = sxy / sxx;
  const double intercept = my - est.ls_slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (intercept + est.ls_slope * xs[i]);
    ss += r * r;
  }
  est.residual = std::sqrt(ss / m);

  est.check_alpha_le_beta = est.alpha_hat <= est.beta_hat;
  est.check_alpha_sq_le_beta = est.alpha_hat * est.alpha_hat <= est.beta_hat + tolerance;
  est.check_alpha_le_beta_sq = est.alpha_hat <= est.beta_hat * est.beta_hat + tolerance;
  return est;
}

}  // namespace monoidlab

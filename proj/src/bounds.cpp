#include "ubqp/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ubqp {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double penalty(double m, double denominator) {
  if (m == 0.0) return 0.0;
  if (denominator <= 0.0) return std::numeric_limits<double>::infinity();
  return m * m / denominator;
}

void check_m(double m) {
  if (!(m >= 0.0)) throw std::domain_error("m must be non-negative");
}

}  // namespace

std::string_view to_string(RateFunction rate) noexcept {
  return rate == RateFunction::annealed ? "annealed" : "conditional";
}

double entropy(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::domain_error("alpha must lie in [0, 1]");
  }
  if (alpha == 0.0 || alpha == 1.0) return 0.0;
  return -alpha * std::log(alpha) - (1.0 - alpha) * std::log1p(-alpha);
}

double rate_annealed(double alpha, double m) {
  check_m(m);
  const double p = penalty(m, 2.0 * alpha * alpha);
  const double i = entropy(alpha);
  return std::isinf(p) ? kNegInf : i - p;
}

double rate_conditional(double alpha, double m) {
  check_m(m);
  const double p = penalty(m, 2.0 * alpha * alpha * (1.0 - alpha * alpha));
  const double i = entropy(alpha);
  return std::isinf(p) ? kNegInf : i - p;
}

double rate_value(RateFunction rate, double alpha, double m) {
  return rate == RateFunction::annealed ? rate_annealed(alpha, m)
                                        : rate_conditional(alpha, m);
}

AlphaMaximum golden_section_max(RateFunction rate, double m, double lo,
                                double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = rate_value(rate, c, m);
  double fd = rate_value(rate, d, m);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = rate_value(rate, c, m);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = rate_value(rate, d, m);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, rate_value(rate, x, m)};
}

AlphaMaximum maximize_over_alpha(RateFunction rate, double m, double grid_step,
                                 double refine_tol) {
  if (!(grid_step > 0.0 && grid_step < 0.5)) {
    throw std::invalid_argument("grid step must lie in (0, 0.5)");
  }
  const auto cells = static_cast<long>(std::floor(1.0 / grid_step));
  long best_k = 1;
  double best = kNegInf;
  for (long k = 1; k < cells; ++k) {
    const double v = rate_value(rate, static_cast<double>(k) * grid_step, m);
    if (v > best) {
      best = v;
      best_k = k;
    }
  }
  const double lo = static_cast<double>(best_k - 1) * grid_step;
  const double hi = std::min(1.0, static_cast<double>(best_k + 1) * grid_step);
  AlphaMaximum refined = golden_section_max(rate, m, lo, hi, refine_tol);
  if (refined.value < best) {
    refined = {static_cast<double>(best_k) * grid_step, best};
  }
  return refined;
}

BoundResult critical_m(RateFunction rate, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  double lo = kBracketLow;
  double hi = kBracketHigh;
  const double f_lo = maximize_over_alpha(rate, lo).value;
  const double f_hi = maximize_over_alpha(rate, hi).value;
  if (!(f_lo > 0.0 && f_hi < 0.0)) {
    throw std::runtime_error(
        "critical_m bracket failure: max rate at m=" + std::to_string(lo) +
        " is " + std::to_string(f_lo) + ", at m=" + std::to_string(hi) + " is " +
        std::to_string(f_hi));
  }
  // max_alpha rate is strictly decreasing in m.
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (maximize_over_alpha(rate, mid).value > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  BoundResult out;
  out.m_star = 0.5 * (lo + hi);
  out.alpha_star = maximize_over_alpha(rate, out.m_star).alpha;
  out.tolerance = tol;
  return out;
}

std::vector<RateRow> rate_table(double m, double step) {
  if (!(step > 0.0 && step < 1.0)) {
    throw std::invalid_argument("table step must lie in (0, 1)");
  }
  std::vector<RateRow> rows;
  for (long k = 1;; ++k) {
    const double alpha = static_cast<double>(k) * step;
    if (alpha >= 1.0) break;
    rows.push_back({alpha, rate_annealed(alpha, m), rate_conditional(alpha, m)});
  }
  return rows;
}

}  // namespace ubqp

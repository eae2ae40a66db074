#pragma once

// First-moment rate functions for the number of configurations with
// H(eta) < -m N at density alpha, and the critical m where their maximum
// over alpha vanishes. Natural logarithms throughout.

#include <string_view>
#include <vector>

namespace ubqp {

enum class RateFunction {
  annealed,     // F(alpha, m) = I(alpha) - m^2 / (2 alpha^2)
  conditional,  // F1(alpha, m) = I(alpha) - m^2 / (2 alpha^2 (1 - alpha^2))
};

std::string_view to_string(RateFunction rate) noexcept;

// Binary entropy in nats; I(0) = I(1) = 0. Throws std::domain_error outside [0, 1].
double entropy(double alpha);

// Penalties at a vanishing denominator give -infinity when m > 0 and 0 when m = 0.
double rate_annealed(double alpha, double m);
double rate_conditional(double alpha, double m);
double rate_value(RateFunction rate, double alpha, double m);

struct AlphaMaximum {
  double alpha = 0.0;
  double value = 0.0;
};

// Dense grid over (0, 1) with the given step, refined by golden-section
// search on the bracketing grid cells.
AlphaMaximum maximize_over_alpha(RateFunction rate, double m,
                                 double grid_step = 1e-4,
                                 double refine_tol = 1e-8);

// Golden-section search over [lo, hi] for a unimodal function of alpha.
AlphaMaximum golden_section_max(RateFunction rate, double m, double lo,
                                double hi, double tol);

struct BoundResult {
  double m_star = 0.0;
  double alpha_star = 0.0;
  double tolerance = 0.0;
};

inline constexpr double kBracketLow = 0.1;
inline constexpr double kBracketHigh = 1.5;

// Bisection on m over [kBracketLow, kBracketHigh] on the sign of
// max_alpha rate(alpha, m). Throws std::runtime_error on a bad bracket.
BoundResult critical_m(RateFunction rate, double tol = 1e-9);

struct RateRow {
  double alpha;
  double annealed;
  double conditional;
};

// (alpha, F, F1) on alpha = step, 2 step, ..., < 1 for plotting.
std::vector<RateRow> rate_table(double m, double step = 0.01);

}  // namespace ubqp

#pragma once

#include <functional>
#include <limits>
#include <utility>

namespace fdd2d::numerics {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class TailPolicy {
  transform_to_finite,  // x = a + scale * t / (1 - t), t in [0, 1)
  adaptive_truncation,  // integrate doubling panels until a panel is negligible
};

struct QuadratureSpec {
  double relative_tolerance = 1e-9;
  double absolute_tolerance = 1e-12;
  int max_subdivisions = 200;
  TailPolicy infinite_tail_cutoff_policy = TailPolicy::transform_to_finite;

  /// Throws DomainError when a tolerance or the subdivision budget is invalid.
  void validate() const;
};

using Integrand = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (7/15) integration of f over [lower, upper].
///
/// `upper` may be +infinity; `tail_scale` is the characteristic length of the
/// integrand's decay and only matters for infinite ranges. Integrable
/// endpoint singularities of power-law type are handled by repeated bisection
/// (the rule never evaluates the endpoints).
///
/// Throws NumericalError when the requested tolerance is not reached within
/// spec.max_subdivisions bisections.
double integrate(const Integrand& f, double lower, double upper,
                 const QuadratureSpec& spec = {}, double tail_scale = 1.0);

/// Same as integrate() but also reports the final error estimate.
std::pair<double, double> integrate_with_error(const Integrand& f, double lower,
                                               double upper,
                                               const QuadratureSpec& spec = {},
                                               double tail_scale = 1.0);

// Special functions -------------------------------------------------------

/// gamma(m, n) = int_0^n x^(m-1) e^-x dx. Requires m > 0, n >= 0.
double lower_incomplete_gamma(double m, double n);

/// Gamma(m, n) = int_n^inf x^(m-1) e^-x dx. Requires m > 0, n >= 0.
double upper_incomplete_gamma(double m, double n);

/// (erf(x), erfc(x)).
std::pair<double, double> erf_erfc(double x);

/// Gauss hypergeometric 2F1(a, b; c; z) for real z <= 0.
///
/// |z| <= 1/2 sums the series directly, -2 <= z < -1/2 applies the Pfaff
/// transformation z -> z/(z-1), and z < -2 uses the 1/(1-z) connection
/// formula (falling back to Pfaff when a - b is an integer).
double gauss_2f1(double a, double b, double c, double z);

}  // namespace fdd2d::numerics

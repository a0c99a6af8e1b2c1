#include "fdd2d/power_stats.hpp"

#include <cmath>

#include "fdd2d/errors.hpp"
#include "fdd2d/numerics.hpp"

namespace fdd2d {

using numerics::kPi;
using numerics::lower_incomplete_gamma;

PowerLaw::PowerLaw(Mode mode, double p, double k, double S, double eta_c, double x_max)
    : mode_(mode), p_(p), k_(k), S_(S), eta_c_(eta_c), x_max_(x_max) {
  if (!(p > 0.0) || !(k > 0.0) || !(eta_c > 2.0) || !(x_max >= 0.0) || S < 0.0)
    throw DomainError("PowerLaw: invalid parameters");
  if (S == 0.0 || x_max == 0.0) {
    degenerate_ = true;
    return;
  }
  a_ = p * eta_c / 2.0;
  u_ = k * std::pow(x_max / S, 2.0 / eta_c);
  gamma_au_ = lower_incomplete_gamma(a_, u_);
  if (!(gamma_au_ > 0.0)) degenerate_ = true;
}

double PowerLaw::pdf(double x) const {
  if (degenerate_) throw DomainError("PowerLaw::pdf: point mass at 0 has no density");
  if (x <= 0.0 || x > x_max_) return 0.0;
  const double t = k_ * std::pow(x / S_, 2.0 / eta_c_);
  return 2.0 / eta_c_ / x * std::exp(a_ * std::log(t) - t) / gamma_au_;
}

double PowerLaw::cdf(double x) const {
  if (x < 0.0) return 0.0;
  if (degenerate_ || x >= x_max_) return 1.0;
  if (x == 0.0) return 0.0;
  return lower_incomplete_gamma(a_, k_ * std::pow(x / S_, 2.0 / eta_c_)) / gamma_au_;
}

double PowerLaw::moment(double alpha) const {
  if (!(alpha >= 0.0)) throw DomainError("PowerLaw::moment: alpha must be >= 0");
  if (alpha == 0.0) return 1.0;
  if (degenerate_) return 0.0;
  const double beta = alpha * eta_c_ / 2.0;
  return std::pow(S_, alpha) * lower_incomplete_gamma(a_ + beta, u_) /
         (std::pow(k_, beta) * gamma_au_);
}

double PowerLaw::laplace(double s) const {
  if (!(s >= 0.0)) throw DomainError("PowerLaw::laplace: s must be >= 0");
  if (s == 0.0 || degenerate_) return 1.0;
  // y = (x / x_max)^p removes the x^(p-1) endpoint behaviour
  const double sx = s * x_max_;
  auto f = [&](double y) {
    return std::exp(-u_ * std::pow(y, 1.0 / a_) - sx * std::pow(y, 1.0 / p_));
  };
  numerics::QuadratureSpec q;
  q.relative_tolerance = 1e-10;
  q.absolute_tolerance = 1e-15;
  q.max_subdivisions = 400;
  const double pre = std::exp(a_ * std::log(u_)) / (a_ * gamma_au_);
  return pre * numerics::integrate(f, 0.0, 1.0, q);
}

PowerLaw power_law(Mode mode, const NetworkConfig& c, double b) {
  c.validate();
  if (mode == Mode::Cellular)
    return PowerLaw(mode, 2.0 / c.eta_c, kPi * c.lambda, c.rho_c, c.eta_c, c.P_u);
  const double k = mode == Mode::ForwardD2D ? kPi * c.lambda : b;
  return PowerLaw(mode, (2.0 - c.omega) / c.eta_d, k, c.T_d * c.rho_c, c.eta_c,
                  c.power_cap(mode));
}

PowerLaw power_law(Mode mode, const NetworkConfig& c) {
  if (mode == Mode::ReverseD2D) return power_law(mode, c, derive(c).b);
  return power_law(mode, c, 1.0);
}

PowerSet power_set(const NetworkConfig& c, double b) {
  return {power_law(Mode::Cellular, c, b), power_law(Mode::ForwardD2D, c, b),
          power_law(Mode::ReverseD2D, c, b)};
}

double si_laplace(const PowerLaw& law, double zeta, double s) {
  if (law.mode() == Mode::Cellular)
    throw DomainError("si_laplace: cellular links carry no self-interference");
  if (!(s >= 0.0) || !(zeta >= 0.0)) throw DomainError("si_laplace: s and zeta must be >= 0");
  if (zeta == 0.0 || s == 0.0) return 1.0;
  return law.laplace(s * zeta);
}

double si_laplace(Mode mode, const NetworkConfig& c, double s) {
  if (mode == Mode::Cellular)
    throw DomainError("si_laplace: cellular links carry no self-interference");
  if (c.zeta == 0.0 || s == 0.0) return 1.0;
  return si_laplace(power_law(mode, c), c.zeta, s);
}

}  // namespace fdd2d

#include "fdd2d/interference.hpp"

#include <cmath>

#include "fdd2d/errors.hpp"
#include "fdd2d/numerics.hpp"

namespace fdd2d {

using numerics::kPi;

namespace {

// mean received-power ceiling at the BS for interferers of mode kappa
double ip_bound(Mode kappa, const NetworkConfig& c) {
  return kappa == Mode::Cellular ? c.rho_c : c.rho_c * c.T_d;
}

// -log L at a BS
double bs_exponent(double U, double m, double theta_bound, double eta, double s) {
  if (U == 0.0 || s == 0.0 || m == 0.0) return 0.0;
  const double z = -s * theta_bound;
  const double h = numerics::gauss_2f1(1.0, (eta - 2.0) / eta, (2.0 * eta - 2.0) / eta, z);
  return 2.0 * kPi * U * s * m * h * std::pow(theta_bound, 1.0 - 2.0 / eta) / (eta - 2.0);
}

// -log L without exclusion region
double open_exponent(double U, double m, double eta, double s) {
  if (U == 0.0 || s == 0.0 || m == 0.0) return 0.0;
  return kPi * U * std::pow(s, 2.0 / eta) * m * std::tgamma(1.0 + 2.0 / eta) *
         std::tgamma(1.0 - 2.0 / eta);
}

void check_s(double s) {
  if (!(s >= 0.0)) throw DomainError("Laplace argument s must be >= 0");
}

void check_eta_d(const NetworkConfig& c) {
  if (!(c.eta_d > 2.0))
    throw DomainError("eta_d must exceed 2: aggregate D2D-receiver interference diverges");
}

}  // namespace

double transmitter_intensity(Mode kappa, const NetworkConfig& c, const ModeStats& st) {
  switch (kappa) {
    case Mode::Cellular: return c.lambda;
    case Mode::ForwardD2D: return st.U_d;
    case Mode::ReverseD2D: return st.U_e;
  }
  return 0.0;
}

bool interferer_in_scenario(Mode kappa, Scenario s) { return mode_in_scenario(kappa, s); }

double lt_interference(Mode kappa, Mode chi, const NetworkConfig& c, const ModeStats& st,
                       const PowerSet& pw, double s) {
  check_s(s);
  const double U = transmitter_intensity(kappa, c, st);
  if (chi == Mode::Cellular) {
    const double m = pw[kappa].moment(2.0 / c.eta_c);
    return std::exp(-bs_exponent(U, m, ip_bound(kappa, c), c.eta_c, s));
  }
  check_eta_d(c);
  return std::exp(-open_exponent(U, pw[kappa].moment(2.0 / c.eta_d), c.eta_d, s));
}

double lt_interference_eta4(Mode kappa, const NetworkConfig& c, const ModeStats& st,
                            const PowerSet& pw, double s) {
  if (c.eta_c != 4.0) throw DomainError("lt_interference_eta4 requires eta_c = 4");
  check_s(s);
  const double U = transmitter_intensity(kappa, c, st);
  if (U == 0.0 || s == 0.0) return 1.0;
  const double th = ip_bound(kappa, c);
  return std::exp(-kPi * U * std::sqrt(s) * pw[kappa].moment(0.5) * std::atan(std::sqrt(s * th)));
}

double lt_interference_unprotected(Mode kappa, const NetworkConfig& c, const ModeStats& st,
                                   const PowerSet& pw, double s) {
  check_s(s);
  const double U = transmitter_intensity(kappa, c, st);
  return std::exp(-open_exponent(U, pw[kappa].moment(2.0 / c.eta_c), c.eta_c, s));
}

LtTable::LtTable(const NetworkConfig& c, const ModeStats& st, const PowerSet& pw,
                 Scenario scenario)
    : cfg_(c), scenario_(scenario) {
  for (Mode k : kAllModes) {
    U_[index(k)] = transmitter_intensity(k, c, st);
    m_c_[index(k)] = pw[k].moment(2.0 / c.eta_c);
    m_d_[index(k)] = pw[k].moment(2.0 / c.eta_d);
  }
}

double LtTable::exponent(Mode kappa, Mode chi, double s) const {
  if (!interferer_in_scenario(kappa, scenario_)) return 0.0;
  const int k = index(kappa);
  if (chi == Mode::Cellular && cfg_.eta_c == 4.0) {
    if (U_[k] == 0.0 || s == 0.0) return 0.0;
    return kPi * U_[k] * std::sqrt(s) * m_c_[k] * std::atan(std::sqrt(s * ip_bound(kappa, cfg_)));
  }
  if (chi == Mode::Cellular)
    return bs_exponent(U_[k], m_c_[k], ip_bound(kappa, cfg_), cfg_.eta_c, s);
  check_eta_d(cfg_);
  return open_exponent(U_[k], m_d_[k], cfg_.eta_d, s);
}

double LtTable::lt(Mode kappa, Mode chi, double s) const {
  check_s(s);
  return std::exp(-exponent(kappa, chi, s));
}

double LtTable::product(Mode chi, double s) const {
  check_s(s);
  double e = 0.0;
  for (Mode k : kAllModes) e += exponent(k, chi, s);
  return std::exp(-e);
}

}  // namespace fdd2d

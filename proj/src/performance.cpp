#include "fdd2d/performance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fdd2d/errors.hpp"
#include "fdd2d/numerics.hpp"

namespace fdd2d {

namespace {

std::array<LtTable, 3> make_tables(const NetworkConfig& c, const ModeStats& st,
                                   const PowerSet& pw) {
  return {LtTable(c, st, pw, Scenario::FD), LtTable(c, st, pw, Scenario::HD),
          LtTable(c, st, pw, Scenario::Traditional)};
}

double active_probability(Mode m, const ModeStats& st) {
  switch (m) {
    case Mode::Cellular: return 1.0 - st.O_p;
    case Mode::ForwardD2D: return st.P_d;
    case Mode::ReverseD2D: return st.P_e;
  }
  return 0.0;
}

}  // namespace

Analysis::Analysis(const NetworkConfig& cfg)
    : cfg_(cfg),
      derived_(derive(cfg)),
      stats_(mode_stats(cfg, derived_.b)),
      powers_(power_set(cfg, derived_.b)),
      tables_(make_tables(cfg_, stats_, powers_)) {}

void Analysis::check(Mode mode, Scenario scenario, double theta) const {
  if (!mode_in_scenario(mode, scenario))
    throw DomainError("mode " + std::string(to_string(mode)) + " does not exist in the " +
                      std::string(to_string(scenario)) + " scenario");
  if (!(theta >= 0.0) || !std::isfinite(theta))
    throw DomainError("theta must be finite and >= 0");
}

double Analysis::success_without_si(Mode mode, Scenario scenario, double theta) const {
  check(mode, scenario, theta);
  const double s = theta / cfg_.rho(mode);
  return std::exp(-s * cfg_.sigma2) * lt_table(scenario).product(mode, s);
}

double Analysis::success(Mode mode, Scenario scenario, double theta) const {
  const double base = success_without_si(mode, scenario, theta);
  if (scenario != Scenario::FD || mode == Mode::Cellular || cfg_.zeta == 0.0 || base == 0.0)
    return base;
  const double p_mode = active_probability(mode, stats_);
  const double w = p_mode > 0.0 ? std::min(1.0, stats_.P_FD / p_mode) : 0.0;
  if (w == 0.0) return base;
  const double s = theta / cfg_.rho(mode);
  const double si = si_laplace(powers_[mode], cfg_.zeta, s);
  return base * (w * si + (1.0 - w));
}

double Analysis::ergodic_rate(Mode mode, Scenario scenario) const {
  check(mode, scenario, 0.0);
  auto f = [&](double t) { return success(mode, scenario, std::expm1(t)); };
  double upper = 4.0;
  while (f(upper) > 1e-12 && upper < 700.0) upper *= 2.0;
  numerics::QuadratureSpec q;
  q.absolute_tolerance = 1e-13;
  q.max_subdivisions = 400;
  return numerics::integrate(f, 0.0, upper, q);
}

SinrResult Analysis::evaluate(Mode mode, Scenario scenario, double theta) const {
  SinrResult r;
  r.mode = mode;
  r.scenario = scenario;
  r.theta = theta;
  r.success = success(mode, scenario, theta);
  r.outage = 1.0 - r.success;
  r.rate_nats = ergodic_rate(mode, scenario);
  return r;
}

ScenarioMetrics Analysis::scenario_metrics(Scenario scenario, double theta) const {
  ScenarioMetrics out;
  out.scenario = scenario;
  out.theta = theta;
  const auto& c = cfg_;
  const auto& st = stats_;
  out.beta = c.lambda / ((1.0 - st.O_p) * c.lambda_c);

  double users = c.lambda_c;  // Traditional: every user is cellular
  if (scenario == Scenario::FD) users = 2.0 * c.lambda_d + c.lambda_c;
  if (scenario == Scenario::HD) users = c.lambda_d + c.lambda_c;

  double lambda_sum = 0.0, weighted_outage = 0.0, pcr_sum = 0.0;
  for (Mode m : kAllModes) {
    auto& mm = out.modes[index(m)];
    if (!mode_in_scenario(m, scenario)) continue;
    mm.present = true;
    mm.rate_nats = ergodic_rate(m, scenario);
    mm.outage = 1.0 - success(m, scenario, theta);
    if (m == Mode::Cellular) {
      mm.A = c.lambda_c / users * (1.0 - st.O_p);
      mm.PUR = 0.5 * out.beta * mm.rate_nats;
      mm.PCR = mm.rate_nats;
      mm.Lambda = c.lambda;
      mm.Tx = out.beta * powers_.c.moment(1.0);
    } else {
      const double U = m == Mode::ForwardD2D ? st.U_d : st.U_e;
      mm.A = c.lambda_d / users * active_probability(m, st);
      mm.PUR = mm.rate_nats;
      mm.PCR = U / c.lambda * mm.rate_nats;
      mm.Lambda = U;
      mm.Tx = powers_[m].moment(1.0);
    }
    out.T_avg += mm.A * mm.PUR;
    out.P_avg += mm.A * mm.Tx;
    pcr_sum += mm.PCR;
    lambda_sum += mm.Lambda;
    weighted_outage += mm.Lambda * mm.outage;
  }
  out.T_n = c.lambda * pcr_sum;
  out.O_net = lambda_sum > 0.0 ? weighted_outage / lambda_sum : 0.0;
  return out;
}

SinrResult success_probability(Mode mode, Scenario scenario, const NetworkConfig& cfg,
                               double theta, double zeta) {
  NetworkConfig c = cfg;
  c.zeta = zeta;
  return Analysis(c).evaluate(mode, scenario, theta);
}

double ergodic_rate(Mode mode, Scenario scenario, const NetworkConfig& cfg, double zeta) {
  NetworkConfig c = cfg;
  c.zeta = zeta;
  return Analysis(c).ergodic_rate(mode, scenario);
}

ScenarioMetrics scenario_metrics(Scenario scenario, const NetworkConfig& cfg, double zeta,
                                 double theta) {
  NetworkConfig c = cfg;
  c.zeta = zeta;
  return Analysis(c).scenario_metrics(scenario, theta);
}

}  // namespace fdd2d

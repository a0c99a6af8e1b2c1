#include "fdd2d/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "fdd2d/link_geometry.hpp"
#include "fdd2d/numerics.hpp"
#include "fdd2d/performance.hpp"
#include "fdd2d/simulator.hpp"

namespace fdd2d {

using numerics::kPi;

bool ValidationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::string ValidationReport::to_text() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    char buf[96];
    std::snprintf(buf, sizeof buf, " measured=%.6g tol=%.3g", c.measured, c.tolerance);
    os << (c.pass ? "PASS " : "FAIL ") << c.name << buf;
    if (!c.detail.empty()) os << ' ' << c.detail;
    os << '\n';
  }
  return os.str();
}

namespace {

double rel_err(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

CheckResult bound(std::string name, double measured, double tol, std::string detail = {}) {
  return {std::move(name), measured <= tol, measured, tol, std::move(detail)};
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Activity probabilities straight from their defining integral over r_d:
// a transmitter at distance r_c ~ Rayleigh(k) from its BS passes the IP check
// when r_c^eta_c >= r_d^eta_d rho / (T_d rho_c).
double activity_oracle(const NetworkConfig& c, double b, bool f_side, bool e_side) {
  if (c.T_d == 0.0) return 0.0;
  const double R = c.R_bar();
  auto pass = [&](double r, double k, double rho) {
    const double x = std::pow(r, c.eta_d) * rho;
    if (x > c.P_u) return 0.0;
    return std::exp(-k * std::pow(x / (c.T_d * c.rho_c), 2.0 / c.eta_c));
  };
  auto f = [&](double r) {
    double v = geometry::pdf_rd(r, R, c.omega);
    if (f_side) v *= pass(r, kPi * c.lambda, c.rho_d());
    if (e_side) v *= pass(r, b, c.rho_e());
    return v;
  };
  // the indicator kinks where r^eta_d rho = P_u
  std::vector<double> cuts = {0.0};
  for (double rho : {c.rho_d(), c.rho_e()}) {
    const double r = std::pow(c.P_u / rho, 1.0 / c.eta_d);
    if (r < R) cuts.push_back(r);
  }
  cuts.push_back(R);
  std::sort(cuts.begin(), cuts.end());
  numerics::QuadratureSpec q;
  q.relative_tolerance = 1e-11;
  q.max_subdivisions = 2000;
  double total = 0.0;
  for (size_t i = 0; i + 1 < cuts.size(); ++i)
    if (cuts[i + 1] > cuts[i]) total += numerics::integrate(f, cuts[i], cuts[i + 1], q);
  return total;
}

double moment_oracle(const PowerLaw& law, double p, double alpha) {
  // x = x_max y^(1/p) flattens the x^(p-1) endpoint behaviour
  const double xm = law.x_max();
  auto f = [&](double y) {
    const double x = xm * std::pow(y, 1.0 / p);
    return std::pow(x, alpha) * law.pdf(x) * xm / p * std::pow(y, 1.0 / p - 1.0);
  };
  numerics::QuadratureSpec q;
  q.relative_tolerance = 1e-11;
  q.max_subdivisions = 2000;
  return numerics::integrate(f, 0.0, 1.0, q);
}

}  // namespace

ValidationReport validate(const NetworkConfig& cfg, const ValidationOptions& opt) {
  cfg.validate();
  ValidationReport rep;
  auto& out = rep.checks;
  const Analysis an(cfg);
  const auto& st = an.stats();
  const double b = an.derived().b;

  // closed forms against quadrature
  out.push_back(bound("closed_form.P_d", rel_err(st.P_d, activity_oracle(cfg, b, true, false)),
                      1e-6));
  out.push_back(bound("closed_form.P_e",
                      rel_err(prob_r_d2d(cfg, b), activity_oracle(cfg, b, false, true)), 1e-6));
  out.push_back(bound("closed_form.P_FD",
                      rel_err(prob_fd_pair(cfg, b), activity_oracle(cfg, b, true, true)), 1e-6));

  double worst = 0.0;
  for (Mode m : kAllModes) {
    const auto& law = an.powers()[m];
    if (law.degenerate()) continue;
    const double p = m == Mode::Cellular ? 2.0 / cfg.eta_c : (2.0 - cfg.omega) / cfg.eta_d;
    for (double alpha : {2.0 / cfg.eta_c, 2.0 / cfg.eta_d, 1.0})
      worst = std::max(worst, rel_err(law.moment(alpha), moment_oracle(law, p, alpha)));
  }
  out.push_back(bound("closed_form.power_moments", worst, 1e-6));

  if (cfg.eta_c == 4.0) {
    worst = 0.0;
    for (Mode k : kAllModes)
      for (double srho : {0.1, 1.0, 10.0}) {
        const double s = srho / cfg.rho_c;
        worst = std::max(worst, rel_err(lt_interference_eta4(k, cfg, st, an.powers(), s),
                                        lt_interference(k, Mode::Cellular, cfg, st,
                                                        an.powers(), s)));
      }
    out.push_back(bound("closed_form.bs_interference_arctan", worst, 1e-9));
  }

  worst = 0.0;
  for (Scenario sc : kAllScenarios)
    for (Mode k : kAllModes)
      for (Mode x : kAllModes) worst = std::max(worst, std::abs(an.lt_table(sc).lt(k, x, 0.0) - 1.0));
  out.push_back(bound("limit.laplace_at_zero", worst, 1e-15));

  // simulation
  sim::SimulationSpec ss;
  ss.area_km2 = opt.area_km2;
  ss.realizations = opt.realizations;
  ss.seed = opt.seed;
  ss.scenario = Scenario::FD;
  ss.probes_per_mode = opt.probes;
  ss.threads = opt.threads;
  ss.keep_samples = true;
  const auto emp = sim::simulate(cfg, ss);

  auto sigma_check = [&](std::string name, sim::Estimate e, double analytic) {
    const double d = std::abs(e.value - analytic);
    out.push_back(bound(std::move(name), d, 2.0 * e.stderr_,
                        "sim=" + fmt(e.value) + " analytic=" + fmt(analytic)));
  };
  sigma_check("simulation.O_p", emp.O_p(), st.O_p);
  if (cfg.T_d > 0.0) {
    sigma_check("simulation.P_d", emp.P_d(), st.P_d);
    sigma_check("simulation.P_e", emp.P_e(), st.P_e);
    sigma_check("simulation.P_FD", emp.P_FD(), st.P_FD);
  } else {
    out.push_back(bound("simulation.no_d2d_at_zero_T_d",
                        static_cast<double>(emp.n_f_active + emp.n_r_active), 0.0));
  }

  for (Mode m : kAllModes) {
    if (m != Mode::Cellular && cfg.T_d == 0.0) continue;
    double dev = 0.0;
    std::string where;
    for (double db : {-10.0, 0.0, 10.0, 20.0}) {
      const double th = std::pow(10.0, db / 10.0);
      const double a = 1.0 - an.success(m, Scenario::FD, th);
      const double e = sim::empirical_outage(emp, cfg, m, th).value;
      if (where.empty() || std::abs(a - e) > dev) {
        dev = std::abs(a - e);
        where = "worst_at_dB=" + fmt(db);
      }
    }
    out.push_back(bound("simulation.outage_" + std::string(to_string(m)), dev, 0.03, where));
  }

  // interference transforms per receiver class, worst z-score over sources and s
  for (Mode x : kAllModes) {
    if (x != Mode::Cellular && cfg.T_d == 0.0) continue;
    double z = 0.0;
    std::string where;
    for (Mode k : kAllModes)
      for (double srho : {0.1, 1.0, 10.0}) {
        const double s = srho / cfg.rho(x);
        const auto e = sim::empirical_lt(emp, k, x, s);
        const double a = an.lt_table(Scenario::FD).lt(k, x, s);
        const double zz = std::abs(e.value - a) / std::max(e.stderr_, 1e-12);
        if (where.empty() || zz > z) {
          z = zz;
          where = "worst_from=" + std::string(to_string(k)) + " s_rho=" + fmt(srho) +
                  " sim=" + fmt(e.value) + " analytic=" + fmt(a);
        }
      }
    out.push_back(bound("simulation.lt_at_" + std::string(to_string(x)), z, 2.0, where));
  }

  const double R = cfg.R_bar();
  out.push_back(bound("simulation.ks_r_d",
                      sim::ks_distance(emp.rd_samples,
                                       [&](double x) { return geometry::cdf_rd(x, R, cfg.omega); }),
                      0.01, "n=" + std::to_string(emp.rd_samples.size())));
  out.push_back(bound("simulation.ks_r_e",
                      sim::ks_distance(emp.re_samples,
                                       [&](double x) { return geometry::cdf_re(x, b); }),
                      0.05, "n=" + std::to_string(emp.re_samples.size())));
  return rep;
}

}  // namespace fdd2d

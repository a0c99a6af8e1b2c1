// Acceptance suite: one PASS/FAIL line per criterion. `--only N` runs one.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "fdd2d/config.hpp"
#include "fdd2d/interference.hpp"
#include "fdd2d/link_geometry.hpp"
#include "fdd2d/mode_selection.hpp"
#include "fdd2d/performance.hpp"
#include "fdd2d/power_stats.hpp"
#include "fdd2d/simulator.hpp"
#include "fdd2d/validate.hpp"
#include "oracles.hpp"

using namespace fdd2d;

namespace {

struct Outcome {
  bool pass = false;
  std::string summary;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double rel(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

NetworkConfig base(double r1, double r2, double T_d) {
  auto c = NetworkConfig::table3();
  c.r1 = r1;
  c.r2 = r2;
  c.T_d = T_d;
  return c;
}

// ---- 1: activity probabilities and power laws against their integrals -----

// distance-domain weight of an active transmitter and its upper limit
struct Weight {
  std::function<double(double)> w;
  double top, eta, rho;
};

Weight weight(const NetworkConfig& c, Mode m, double b) {
  if (m == Mode::Cellular) {
    const double k = oracle::pi * c.lambda;
    return {[k](double r) { return 2.0 * k * r * std::exp(-k * r * r); },
            std::pow(c.P_u / c.rho_c, 1.0 / c.eta_c), c.eta_c, c.rho_c};
  }
  const double rho = c.rho(m);
  const double k = m == Mode::ForwardD2D ? oracle::pi * c.lambda : b;
  const double R = c.R_bar();
  return {[=](double r) { return oracle::rd_density(r, R, c.omega) * oracle::ip_pass(c, r, k, rho); },
          std::min(R, oracle::r_cut(c, rho)), c.eta_d, rho};
}

Outcome criterion1() {
  double worst = 0.0;
  std::string where;
  auto note = [&](double e, const std::string& what) {
    if (e > worst || where.empty()) worst = e, where = what;
  };
  for (double T_d : {0.05, 0.2, 1.0, 5.0, 20.0})
    for (double r1 : {0.1, 0.2, 1.0, 2.0, 10.0})
      for (double omega : {0.0, 1.0}) {
        auto c = base(r1, 1.0, T_d);
        c.omega = omega;
        const double b = derive(c).b;
        const std::string tag =
            " at T_d=" + fmt("%g", T_d) + " r1=" + fmt("%g", r1) + " omega=" + fmt("%g", omega);
        note(rel(prob_f_d2d(c), oracle::activity(c, b, true, false)), "P_d" + tag);
        note(rel(prob_r_d2d(c, b), oracle::activity(c, b, false, true)), "P_e" + tag);
        note(rel(prob_fd_pair(c, b), oracle::activity(c, b, true, true)), "P_FD" + tag);

        for (Mode m : kAllModes) {
          const auto law = power_law(m, c, b);
          const auto W = weight(c, m, b);
          const double mass = oracle::quad(W.w, 0.0, W.top);
          const std::string lt = " P_" + std::string(to_string(m)) + tag;
          for (double f : {0.01, 0.1, 0.5, 0.9}) {
            const double x = f * law.x_max();
            const double r = std::pow(x / W.rho, 1.0 / W.eta);
            note(rel(law.cdf(x), oracle::quad(W.w, 0.0, r) / mass), "cdf" + lt);
            // density of P = r^eta rho: w(r) dr/dx
            note(rel(law.pdf(x), W.w(r) * r / (W.eta * x) / mass), "pdf" + lt);
          }
          for (double a : {2.0 / c.eta_c, 2.0 / c.eta_d, 1.0})
            note(rel(law.moment(a), oracle::power_moment(c, m, b, a)), "moment" + lt);
        }
      }
  return {worst <= 1e-6, "max relative error " + fmt("%.3g", worst) + " (tol 1e-06), worst " + where};
}

// ---- 2: arctan form of the BS-side transform --------------------------------

Outcome criterion2() {
  double worst = 0.0;
  for (double T_d : {0.2, 1.0, 20.0})
    for (double r1 : {0.2, 1.0}) {
      const auto c = base(r1, 1.0, T_d);
      const Analysis an(c);
      for (Mode k : kAllModes)
        for (double srho : {0.1, 1.0, 10.0}) {
          const double s = srho / c.rho_c;
          worst = std::max(worst, rel(lt_interference_eta4(k, c, an.stats(), an.powers(), s),
                                      lt_interference(k, Mode::Cellular, c, an.stats(),
                                                      an.powers(), s)));
        }
    }
  return {worst <= 1e-9, "max relative error " + fmt("%.3g", worst) + " (tol 1e-09)"};
}

// ---- 3: Rayleigh law of the r-D2D UE's BS distance ----------------------------

Outcome criterion3() {
  bool pass = true;
  std::string s;
  for (double lambda : {5.0, 10.0}) {
    auto c = NetworkConfig::table3();
    c.lambda = lambda * 1e-6;
    sim::SimulationSpec sp;
    sp.area_km2 = 100;
    sp.realizations = 11;
    sp.probes_per_mode = 0;
    sp.seed = 3;
    const auto e = sim::simulate(c, sp);
    const double b = derive(c).b;
    const double ks =
        sim::ks_distance(e.re_samples, [&](double x) { return geometry::cdf_re(x, b); });
    pass = pass && ks <= 0.05 && e.re_samples.size() >= 100000;
    s += "lambda=" + fmt("%g", lambda) + ": KS " + fmt("%.4f", ks) + " over " +
         std::to_string(e.re_samples.size()) + " pairs; ";
  }
  return {pass, s + "tol 0.05"};
}

// ---- 4: analytic vs simulated SINR outage -----------------------------------

Outcome criterion4() {
  struct Case {
    double r1, r2, T_d;
  };
  const std::vector<Case> cases = {{1, 0.5, 0.2}, {1, 2, 0.2},   {0.2, 1, 0.2},
                                   {0.2, 1, 1},   {2, 1, 0.2},   {2, 1, 1}};
  double worst = 0.0;
  std::string s;
  for (const auto& k : cases) {
    const auto c = base(k.r1, k.r2, k.T_d);
    const Analysis an(c);
    sim::SimulationSpec sp;
    sp.area_km2 = 100;
    sp.realizations = 2000;
    sp.probes_per_mode = 50;
    sp.seed = 4;
    sp.keep_samples = false;
    const auto e = sim::simulate(c, sp);
    double dev = 0.0;
    std::string at;
    for (int db = -10; db <= 20; ++db) {
      const double th = std::pow(10.0, db / 10.0);
      for (Mode m : kAllModes) {
        const double d = std::abs(1.0 - an.success(m, Scenario::FD, th) -
                                  sim::empirical_outage(e, c, m, th).value);
        if (d > dev) dev = d, at = std::string(to_string(m)) + "@" + std::to_string(db) + "dB";
      }
    }
    worst = std::max(worst, dev);
    s += "(r1=" + fmt("%g", k.r1) + ",r2=" + fmt("%g", k.r2) + ",T_d=" + fmt("%g", k.T_d) +
         ") " + fmt("%.4f", dev) + " " + at + "; ";
  }
  return {worst <= 0.03, "max deviation " + fmt("%.4f", worst) + " (tol 0.03): " + s};
}

// ---- 5: throughput gains at the best T_d ------------------------------------

// maximum of f over log10(x) in [lo, hi]: grid scan then golden section
double maximize_log(const std::function<double(double)>& f, double lo, double hi, double* arg) {
  const int n = 61;
  int best = 0;
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) {
    v[i] = f(std::pow(10.0, lo + (hi - lo) * i / (n - 1)));
    if (v[i] > v[best]) best = i;
  }
  double a = lo + (hi - lo) * std::max(0, best - 1) / (n - 1);
  double b = lo + (hi - lo) * std::min(n - 1, best + 1) / (n - 1);
  const double g = (std::sqrt(5.0) - 1) / 2;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = f(std::pow(10.0, x1)), f2 = f(std::pow(10.0, x2));
  for (int it = 0; it < 60; ++it) {
    if (f1 < f2) a = x1, x1 = x2, f1 = f2, x2 = a + g * (b - a), f2 = f(std::pow(10.0, x2));
    else b = x2, x2 = x1, f2 = f1, x1 = b - g * (b - a), f1 = f(std::pow(10.0, x1));
  }
  const double top = std::max({f1, f2, v[best]});
  if (arg) *arg = top == v[best] ? std::pow(10.0, lo + (hi - lo) * best / (n - 1))
                                 : std::pow(10.0, f1 > f2 ? x1 : x2);
  return top;
}

double tn(Scenario sc, double r1, double r2, double T_d, double zeta = 0.0, double omega = 1.0) {
  auto c = base(r1, r2, T_d);
  c.zeta = zeta;
  c.omega = omega;
  return Analysis(c).scenario_metrics(sc).T_n;
}

Outcome criterion5() {
  double at_fd, at_hd;
  const double fd = maximize_log([](double t) { return tn(Scenario::FD, 0.2, 0.2, t); }, -3, 3, &at_fd);
  const double hd = maximize_log([](double t) { return tn(Scenario::HD, 0.2, 0.2, t); }, -3, 3, &at_hd);
  const double tr = tn(Scenario::Traditional, 0.2, 0.2, 1.0);
  const double g1 = 100 * (fd / hd - 1), g2 = 100 * (fd / tr - 1), g3 = 100 * (hd / tr - 1);
  const bool pass = std::abs(g1 - 64) <= 15 && std::abs(g2 - 245) <= 35 && std::abs(g3 - 110) <= 20;
  return {pass, "FD/HD " + fmt("%.1f", g1) + "% (64+-15), FD/Trad " + fmt("%.1f", g2) +
                    "% (245+-35), HD/Trad " + fmt("%.1f", g3) + "% (110+-20); best T_d FD " +
                    fmt("%.3g", at_fd) + ", HD " + fmt("%.3g", at_hd)};
}

// ---- 6: structural properties -----------------------------------------------

std::vector<double> logspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = std::pow(10.0, std::log10(a) + (std::log10(b) - std::log10(a)) * i / (n - 1));
  return v;
}

bool interior_max(const std::vector<double>& v) {
  const auto it = std::max_element(v.begin(), v.end());
  return it != v.begin() && it != v.end() - 1;
}

Outcome criterion6() {
  std::vector<std::string> failed;
  std::string info;
  const auto tds = logspace(0.01, 100, 25);
  const double tiny = 1e-12;

  // interior maximum of T_n over T_d
  for (Scenario sc : {Scenario::FD, Scenario::HD}) {
    std::vector<double> v;
    for (double t : tds) v.push_back(tn(sc, 0.2, 0.2, t));
    if (!interior_max(v)) failed.push_back("T_n(T_d) max " + std::string(to_string(sc)));
  }

  // interior maximum of T_avg over r2 and the FD-over-HD margin there
  {
    const auto r2s = logspace(0.001, 10, 25);
    auto tavg = [](Scenario sc, double r2) {
      return Analysis(base(0.01, r2, 1.0)).scenario_metrics(sc).T_avg;
    };
    // r2 only scales the reverse link, so HD is flat and the optimum is FD's
    std::vector<double> v, h;
    for (double r : r2s) v.push_back(tavg(Scenario::FD, r)), h.push_back(tavg(Scenario::HD, r));
    if (!interior_max(v)) failed.push_back("T_avg(r2) max FD");
    if (*std::max_element(h.begin(), h.end()) != *std::min_element(h.begin(), h.end()))
      failed.push_back("T_avg(r2) HD not flat");
    const double fd = maximize_log([&](double r) { return tavg(Scenario::FD, r); }, -3, 1, nullptr);
    const double hd = maximize_log([&](double r) { return tavg(Scenario::HD, r); }, -3, 1, nullptr);
    const double gain = 100 * (fd / hd - 1);
    info += "T_avg FD/HD at optimum " + fmt("%.1f", gain) + "% (18+-8); ";
    if (std::abs(gain - 18) > 8) failed.push_back("T_avg FD/HD gain");
  }

  // T_n nonincreasing in zeta
  for (auto [r1, r2] : {std::pair{1.0, 2.0}, std::pair{0.2, 0.2}})
    for (double t : {0.1, 1.0, 10.0}) {
      double prev = INFINITY;
      for (double z : {0.0, 1e-10, 1e-9, 1e-8, 1e-7}) {
        const double v = tn(Scenario::FD, r1, r2, t, z);
        if (v > prev * (1 + tiny)) failed.push_back("T_n vs zeta at T_d=" + fmt("%g", t));
        prev = v;
      }
    }

  // T_n nondecreasing in omega
  for (double t : {0.1, 1.0, 10.0}) {
    double prev = -INFINITY;
    for (double w : {0.0, 0.5, 1.0, 1.5}) {
      const double v = tn(Scenario::FD, 0.2, 0.2, t, 0.0, w);
      if (v < prev * (1 - tiny)) failed.push_back("T_n vs omega at T_d=" + fmt("%g", t));
      prev = v;
    }
  }

  // outage ordering FD >= HD >= Traditional per mode
  for (double t : logspace(0.01, 100, 9)) {
    const Analysis an(base(0.2, 0.2, t));
    for (int db : {-10, 0, 10, 20}) {
      const double th = std::pow(10.0, db / 10.0);
      for (Mode m : kAllModes) {
        double prev = INFINITY;
        for (Scenario sc : kAllScenarios) {
          if (!mode_in_scenario(m, sc)) continue;
          const double o = 1 - an.success(m, sc, th);
          if (o > prev + tiny)
            failed.push_back("outage order " + std::string(to_string(m)) + " T_d=" + fmt("%g", t));
          prev = o;
        }
      }
    }
  }

  // D2D truncation outage nonincreasing, SINR outage nondecreasing in T_d
  {
    double pd = -1, pe = -1;
    std::array<double, 3> prev{-1, -1, -1};
    for (double t : tds) {
      const Analysis an(base(0.2, 0.2, t));
      if (an.stats().P_d < pd - tiny || an.stats().P_e < pe - tiny)
        failed.push_back("truncation outage at T_d=" + fmt("%g", t));
      pd = an.stats().P_d, pe = an.stats().P_e;
      for (Mode m : kAllModes) {
        const double o = 1 - an.success(m, Scenario::FD, 1.0);
        if (o < prev[index(m)] - tiny)
          failed.push_back("SINR outage " + std::string(to_string(m)) + " at T_d=" + fmt("%g", t));
        prev[index(m)] = o;
      }
    }
  }

  std::string s = info;
  if (failed.empty()) s += "all properties hold";
  else {
    s += std::to_string(failed.size()) + " violations, first: " + failed.front();
  }
  return {failed.empty(), s};
}

// ---- 7: trivial limits -------------------------------------------------------

Outcome criterion7() {
  std::vector<std::string> failed;
  {
    const Analysis an(base(0.2, 0.2, 0.0));
    const auto& st = an.stats();
    if (st.P_d != 0.0 || st.P_e != 0.0 || st.P_FD != 0.0) failed.push_back("T_d=0 activity");
    const auto fd = an.scenario_metrics(Scenario::FD);
    const auto tr = an.scenario_metrics(Scenario::Traditional);
    if (rel(fd.T_n, tr.T_n) > 1e-12 || rel(fd.O_net, tr.O_net) > 1e-12 ||
        rel(fd[Mode::Cellular].rate_nats, tr[Mode::Cellular].rate_nats) > 1e-12 ||
        rel(fd[Mode::Cellular].outage, tr[Mode::Cellular].outage) > 1e-12)
      failed.push_back("T_d=0 FD vs Traditional");
  }
  {
    const auto c = base(0.2, 0.2, 0.2);
    for (Mode m : {Mode::ForwardD2D, Mode::ReverseD2D})
      for (double s : {0.0, 1.0, 1e10, 1e20})
        if (si_laplace(m, c, s) != 1.0) failed.push_back("zeta=0 SI factor");
  }
  for (double t : {0.05, 1.0, 20.0}) {
    auto c = base(1.0, 2.0, t);
    c.zeta = 1e-9;
    const Analysis an(c);
    for (Scenario sc : kAllScenarios) {
      for (Mode k : kAllModes)
        for (Mode x : kAllModes)
          if (an.lt_table(sc).lt(k, x, 0.0) != 1.0) failed.push_back("L(0)");
      for (Mode m : kAllModes)
        if (mode_in_scenario(m, sc) && std::abs(an.success(m, sc, 1e-30) - 1.0) > 1e-9)
          failed.push_back("success(theta->0) " + std::string(to_string(m)));
    }
  }
  return {failed.empty(), failed.empty() ? "all limits hold"
                                         : std::to_string(failed.size()) + " failures, first: " +
                                               failed.front()};
}

// ---- 8: determinism ----------------------------------------------------------

Outcome criterion8() {
  const auto c = NetworkConfig::table3();
  const ValidationOptions o;
  const auto a = validate(c, o), b = validate(c, o);
  bool same = a.checks.size() == b.checks.size() && a.to_text() == b.to_text();
  for (size_t i = 0; same && i < a.checks.size(); ++i)
    same = std::memcmp(&a.checks[i].measured, &b.checks[i].measured, sizeof(double)) == 0;
  return {same, std::to_string(a.checks.size()) + " checks, " +
                    (same ? "identical" : "different") + " across two runs"};
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
    else {
      std::fprintf(stderr, "usage: %s [--only N]\n", argv[0]);
      return 2;
    }
  }
  const std::vector<std::function<Outcome()>> all = {criterion1, criterion2, criterion3,
                                                     criterion4, criterion5, criterion6,
                                                     criterion7, criterion8};
  if (only < 0 || only > int(all.size())) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  bool ok = true;
  for (int k = 1; k <= int(all.size()); ++k) {
    if (only && k != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome r;
    try {
      r = all[k - 1]();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %d %s: %s [%.1f s]\n", k, r.pass ? "PASS" : "FAIL", r.summary.c_str(), secs);
    std::fflush(stdout);
    ok = ok && r.pass;
  }
  return ok ? 0 : 1;
}

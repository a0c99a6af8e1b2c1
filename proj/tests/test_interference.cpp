#include <doctest.h>

#include <cmath>

#include "fdd2d/config.hpp"
#include "fdd2d/errors.hpp"
#include "fdd2d/interference.hpp"
#include "oracles.hpp"

using namespace fdd2d;
using doctest::Approx;

namespace {
struct Setup {
  NetworkConfig c;
  double b;
  ModeStats st;
  PowerSet pw;
  explicit Setup(NetworkConfig cfg)
      : c(cfg), b(derive(cfg).b), st(mode_stats(cfg, b)), pw(power_set(cfg, b)) {}
};

NetworkConfig cfg(double r1, double r2, double T_d, double eta_c = 4.0, double eta_d = 4.0) {
  auto c = NetworkConfig::table3();
  c.r1 = r1;
  c.r2 = r2;
  c.T_d = T_d;
  c.eta_c = eta_c;
  c.eta_d = eta_d;
  return c;
}

// independent -ln L from the PPP functional, moments from the conditioned power draw
double oracle_lt(const Setup& S, Mode k, Mode chi, double s) {
  const auto& c = S.c;
  const double U = transmitter_intensity(k, c, S.st);
  if (U == 0.0 || s == 0.0) return 1.0;
  if (chi == Mode::Cellular) {
    const double th = k == Mode::Cellular ? c.rho_c : c.rho_c * c.T_d;
    const double m = oracle::power_moment(c, k, S.b, 2 / c.eta_c);
    return std::exp(-U * m * oracle::lt_kernel(s, c.eta_c, th));
  }
  const double m = oracle::power_moment(c, k, S.b, 2 / c.eta_d);
  return std::exp(-U * m * oracle::lt_kernel(s, c.eta_d, 0.0));
}
}  // namespace

TEST_CASE("transforms are one at zero") {
  const Setup S(cfg(0.2, 0.2, 0.2));
  for (Mode k : kAllModes)
    for (Mode x : kAllModes) CHECK(lt_interference(k, x, S.c, S.st, S.pw, 0.0) == 1.0);
  for (Mode k : kAllModes) CHECK(lt_interference_eta4(k, S.c, S.st, S.pw, 0.0) == 1.0);
}

TEST_CASE("no reverse interferers without allowance") {
  const Setup S(cfg(0.2, 0.2, 0.0));
  for (Mode x : kAllModes) {
    CHECK(lt_interference(Mode::ReverseD2D, x, S.c, S.st, S.pw, 1e11) == 1.0);
    CHECK(lt_interference(Mode::ForwardD2D, x, S.c, S.st, S.pw, 1e11) == 1.0);
  }
}

TEST_CASE("transforms match the PPP functional") {
  for (double eta_c : {3.0, 4.0, 4.5})
    for (double eta_d : {3.0, 4.0})
      for (double T_d : {0.05, 1.0, 20.0}) {
        const Setup S(cfg(0.2, 0.5, T_d, eta_c, eta_d));
        for (Mode k : kAllModes)
          for (Mode x : {Mode::Cellular, Mode::ForwardD2D})
            for (double srho : {0.01, 0.3, 1.0, 10.0, 300.0}) {
              const double s = srho / S.c.rho(x);
              CHECK(lt_interference(k, x, S.c, S.st, S.pw, s) ==
                    Approx(oracle_lt(S, k, x, s)).epsilon(1e-7));
            }
      }
}

TEST_CASE("arctan form equals the general BS form") {
  for (double T_d : {0.05, 0.2, 5.0}) {
    const Setup S(cfg(1.0, 1.0, T_d));
    for (Mode k : kAllModes)
      for (double srho : {0.1, 1.0, 10.0}) {
        const double s = srho / S.c.rho_c;
        CHECK(lt_interference_eta4(k, S.c, S.st, S.pw, s) ==
              Approx(lt_interference(k, Mode::Cellular, S.c, S.st, S.pw, s)).epsilon(1e-9));
      }
  }
  const Setup S(cfg(1.0, 1.0, 0.2, 3.5));
  CHECK_THROWS_AS(lt_interference_eta4(Mode::Cellular, S.c, S.st, S.pw, 1.0), DomainError);
}

TEST_CASE("table reproduces the free functions") {
  for (double eta_c : {3.5, 4.0}) {
    const Setup S(cfg(0.2, 0.2, 0.7, eta_c));
    const LtTable T(S.c, S.st, S.pw, Scenario::FD);
    for (Mode k : kAllModes)
      for (Mode x : kAllModes)
        for (double srho : {0.1, 1.0, 10.0}) {
          const double s = srho / S.c.rho(x);
          CHECK(T.lt(k, x, s) ==
                Approx(lt_interference(k, x, S.c, S.st, S.pw, s)).epsilon(1e-12));
        }
  }
}

TEST_CASE("both D2D receivers see the same interference") {
  const Setup S(cfg(0.2, 0.2, 0.2));
  const LtTable T(S.c, S.st, S.pw, Scenario::FD);
  for (Mode k : kAllModes)
    for (double s : {1e9, 1e10, 1e11, 1e12})
      CHECK(T.lt(k, Mode::ReverseD2D, s) == T.lt(k, Mode::ForwardD2D, s));
}

TEST_CASE("transforms decrease and are log-convex") {
  const Setup S(cfg(0.2, 0.2, 0.2));
  const LtTable T(S.c, S.st, S.pw, Scenario::FD);
  for (Mode k : kAllModes)
    for (Mode x : kAllModes) {
      std::vector<double> l;
      for (int i = 0; i < 20; ++i) l.push_back(std::log(T.lt(k, x, std::pow(10.0, 8 + 0.25 * i))));
      for (int i = 1; i < 20; ++i) CHECK(l[i] < l[i - 1]);
      // log-convexity on a geometric grid: check on s itself
      for (int i = 1; i < 19; ++i) {
        const double s0 = std::pow(10.0, 8 + 0.25 * (i - 1)), s1 = std::pow(10.0, 8 + 0.25 * i),
                     s2 = std::pow(10.0, 8 + 0.25 * (i + 1));
        const double slope_a = (l[i] - l[i - 1]) / (s1 - s0), slope_b = (l[i + 1] - l[i]) / (s2 - s1);
        CHECK(slope_b >= slope_a - 1e-12 * std::abs(slope_a));
      }
    }
}

TEST_CASE("exclusion around the BS only removes interference") {
  for (double T_d : {0.05, 1.0, 20.0}) {
    const Setup S(cfg(0.2, 0.2, T_d));
    for (Mode k : kAllModes)
      for (double s : {1e9, 1e11, 1e13})
        CHECK(lt_interference(k, Mode::Cellular, S.c, S.st, S.pw, s) >=
              lt_interference_unprotected(k, S.c, S.st, S.pw, s));
  }
}

TEST_CASE("scenario filters") {
  const Setup S(cfg(0.2, 0.2, 0.2));
  const LtTable fd(S.c, S.st, S.pw, Scenario::FD), hd(S.c, S.st, S.pw, Scenario::HD),
      tr(S.c, S.st, S.pw, Scenario::Traditional);
  const double s = 1e11;
  for (Mode x : kAllModes) {
    CHECK(hd.lt(Mode::ReverseD2D, x, s) == 1.0);
    CHECK(hd.lt(Mode::ForwardD2D, x, s) == fd.lt(Mode::ForwardD2D, x, s));
    CHECK(tr.lt(Mode::ForwardD2D, x, s) == 1.0);
    CHECK(tr.lt(Mode::ReverseD2D, x, s) == 1.0);
    CHECK(tr.lt(Mode::Cellular, x, s) == fd.lt(Mode::Cellular, x, s));
    CHECK(fd.product(x, s) ==
          Approx(fd.lt(Mode::Cellular, x, s) * fd.lt(Mode::ForwardD2D, x, s) *
                 fd.lt(Mode::ReverseD2D, x, s)).epsilon(1e-14));
    CHECK(tr.product(x, s) >= hd.product(x, s));
    CHECK(hd.product(x, s) >= fd.product(x, s));
  }
  CHECK_THROWS_AS(fd.lt(Mode::Cellular, Mode::Cellular, -1.0), DomainError);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "elrod/closure.hpp"
#include "elrod/stability.hpp"

using namespace elrod;
using stability::Modulus;
using stability::Verdict;

namespace {

constexpr double kPi = numeric::kPi;

// five-point fourth-order second derivative
double d2(const std::function<double(double)>& f, double t, double h) {
  return (-f(t - 2 * h) + 16 * f(t - h) - 30 * f(t) + 16 * f(t + h) -
          f(t + 2 * h)) /
         (12 * h * h);
}

double lame_residual(const std::function<double(double)>& y, double t,
                     double h_param, int n_order, const Modulus& m) {
  auto [sn, cn, dn] = specfun::jacobi_sn_cn_dn(t, m);
  double q = n_order * (n_order + 1) * m.p * m.p * sn * sn - h_param;
  return d2(y, t, 2e-3) - q * y(t);
}

}  // namespace

TEST_CASE("figure-eight modulus is the 2E = K point") {
  Modulus m = stability::figure_eight_modulus();
  CHECK(m.p == doctest::Approx(0.9089085).epsilon(1e-6));
  CHECK(std::abs(2.0 * specfun::complete_E(m) - specfun::complete_K(m)) <
        1e-12);
  CHECK(std::abs(paramspace::A_of_p(m.p)) < 1e-12);
  CHECK(std::abs(m.p - paramspace::find_p_max()) < 1e-10);
}

TEST_CASE("tabulated eigenfunctions satisfy their equations") {
  for (double p : {0.21, 0.38, 0.55, 0.72, 0.9}) {
    Modulus m(p);
    double K = specfun::complete_K(m);
    auto jac = [&m](double t) { return specfun::jacobi_sn_cn_dn(t, m); };
    std::vector<std::pair<std::function<double(double)>, int>> fns;
    auto p1 = stability::lame_problem(1, m);
    auto p2 = stability::lame_problem(2, m);
    REQUIRE(p1.eigen_table.size() == 3);
    REQUIRE(p2.eigen_table.size() == 3);
    double p2v = p * p;
    CHECK(p1.eigen_table[0].second == doctest::Approx(p2v).epsilon(1e-15));
    CHECK(p1.eigen_table[1].second == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p1.eigen_table[2].second ==
          doctest::Approx(1.0 + p2v).epsilon(1e-15));
    double root = std::sqrt(1.0 - p2v + p2v * p2v);
    std::vector<std::pair<std::function<double(double)>, double>> table1 = {
        {[&](double t) { return jac(t).dn; }, p1.eigen_table[0].second},
        {[&](double t) { return jac(t).cn; }, p1.eigen_table[1].second},
        {[&](double t) { return jac(t).sn; }, p1.eigen_table[2].second},
    };
    std::vector<std::pair<std::function<double(double)>, double>> table2 = {
        {[&](double t) { return jac(t).sn * jac(t).dn; },
         p2.eigen_table[0].second},
        {[&](double t) { return jac(t).cn * jac(t).dn; },
         p2.eigen_table[1].second},
        {[&](double t) {
           double sn = jac(t).sn;
           return 1.0 - (1.0 + p2v - root) * sn * sn;
         },
         p2.eigen_table[2].second},
    };
    CHECK(p2.eigen_table[2].second ==
          doctest::Approx(2.0 * (1.0 + p2v - root)).epsilon(1e-15));
    for (double t : {0.3 * K, 0.9 * K, 1.7 * K, 2.6 * K}) {
      for (const auto& [y, h] : table1) {
        CHECK(std::abs(lame_residual(y, t, h, 1, m)) < 1e-9);
      }
      for (const auto& [y, h] : table2) {
        CHECK(std::abs(lame_residual(y, t, h, 2, m)) < 1e-9);
      }
    }
  }
}

TEST_CASE("second solution: value, equation, Wronskian") {
  Modulus m = stability::figure_eight_modulus();
  double K = specfun::complete_K(m);
  double p2 = m.p * m.p;
  double h = 1.0 + 4.0 * p2;
  auto y1 = [&m](double t) { return stability::lame_second_solution(t, m); };
  CHECK(y1(0.0) == doctest::Approx(1.0).epsilon(1e-14));
  double worst_res = 0.0, worst_w = 0.0, worst_fd = 0.0;
  for (int i = 1; i < 40; ++i) {
    double t = 4.0 * K * i / 40.0;
    worst_res = std::max(worst_res,
                         std::abs(lame_residual(y1, t, h, 2, m)));
    auto [sn, cn, dn] = specfun::jacobi_sn_cn_dn(t, m);
    double y2 = sn * dn;
    double y2p = cn * dn * dn - p2 * sn * sn * cn;
    double y1p = stability::lame_second_solution_deriv(t, m);
    worst_w = std::max(worst_w, std::abs(y1(t) * y2p - y1p * y2 - 1.0));
    double hfd = 1e-5;
    worst_fd = std::max(
        worst_fd, std::abs((y1(t + hfd) - y1(t - hfd)) / (2 * hfd) - y1p));
  }
  CHECK(worst_res < 1e-8);
  CHECK(worst_w < 1e-9);
  CHECK(worst_fd < 1e-6);
}

TEST_CASE("periodic solve at the top eigenvalue reproduces the constants") {
  Modulus m = stability::figure_eight_modulus();
  double p2 = m.p * m.p;
  double K = specfun::complete_K(m);
  auto sol = stability::solve_H_of_h(1.0 + 4.0 * p2, m);
  CHECK(std::abs(sol.c1 - (-0.5)) < 1e-9);
  CHECK(std::abs(sol.integral_nu_cn - K / (2.0 * p2)) <
        1e-7 * K / (2.0 * p2));
  CHECK(std::abs(sol.H - 2.0 * p2 / K) < 1e-7 * 2.0 * p2 / K);
  CHECK(std::abs(sol.nu.front() - sol.nu.back()) < 1e-9);
}

TEST_CASE("H = 0 on the middle-eigenvalue branch") {
  Modulus m = stability::figure_eight_modulus();
  auto sol = stability::solve_H_of_h(1.0 + m.p * m.p, m);
  CHECK(sol.H == 0.0);
  CHECK(sol.integral_nu_cn == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("H strictly increasing with the derivative identity") {
  Modulus m = stability::figure_eight_modulus();
  const double hs[] = {-4.0, -2.0, -1.0, 0.0, 0.5, 1.0, 1.3, 1.6, 2.5, 3.5};
  double prev = -1e300;
  for (double h : hs) {
    auto sol = stability::solve_H_of_h(h, m);
    CHECK(sol.H > prev);
    prev = sol.H;
  }
  // d(1/H)/dh = -int nu^2 over [0,4K]
  for (double h : {0.5, 2.5}) {
    auto sol = stability::solve_H_of_h(h, m);
    double d = 1e-4;
    auto sp = stability::solve_H_of_h(h + d, m);
    auto sm = stability::solve_H_of_h(h - d, m);
    double fd = (sp.integral_nu_cn - sm.integral_nu_cn) / (2.0 * d);
    CHECK(std::abs(fd + sol.integral_nu_sq) <
          1e-5 * std::abs(sol.integral_nu_sq));
  }
}

TEST_CASE("coexistence part of the spectrum is refused") {
  Modulus m = stability::figure_eight_modulus();
  double p2 = m.p * m.p;
  CHECK(std::abs(stability::h_interval_upper(m) - (4.0 + p2)) < 1e-6);
  CHECK_THROWS_AS(stability::solve_H_of_h(5.5, m), DomainError);
  CHECK_THROWS_AS(stability::solve_H_of_h(4.0 + p2, m), DomainError);
}

TEST_CASE("circle threshold and first indefinite mode") {
  auto rep = stability::circle_stability(1.0, 1.0, 1.0, 2.0 * kPi);
  CHECK(rep.threshold == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
  CHECK(rep.verdict == Verdict::Stable);
  CHECK(rep.first_indefinite_mode == 0);

  CHECK(stability::circle_stability(1.0, 1.0, 1.7, 2.0 * kPi).verdict ==
        Verdict::Stable);
  auto unstable = stability::circle_stability(1.0, 1.0, 1.8, 2.0 * kPi);
  CHECK(unstable.verdict == Verdict::Unstable);
  CHECK(unstable.first_indefinite_mode == 2);
  CHECK(stability::circle_stability(1.0, 1.0, 2.0, 2.0 * kPi)
            .first_indefinite_mode == 2);
  CHECK(stability::circle_stability(1.0, 1.0, std::sqrt(3.0), 2.0 * kPi)
            .verdict == Verdict::Critical);
}

TEST_CASE("circle quadratic forms match the determinant criterion") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(0.2, 3.0);
  for (int trial = 0; trial < 40; ++trial) {
    double alpha = U(rng), beta = U(rng), m = U(rng) * 2.0 - 3.0,
           L = U(rng) * 4.0;
    double kappa = 2.0 * kPi / L;
    bool any_indefinite = false;
    for (int n = 2; n <= 10; ++n) {
      // the two mode-n blocks share trace and determinant up to the sign
      // of the coupling, so one eigenvalue computation covers both
      double q11 = alpha * kappa * n * n;
      double q22 = alpha * kappa * (n * n - 1);
      double q12 = beta * m * n;
      double tr = q11 + q22, det = q11 * q22 - q12 * q12;
      double disc = std::sqrt(tr * tr / 4.0 - det);
      bool indefinite = (tr / 2.0 + disc > 0.0) && (tr / 2.0 - disc < 0.0);
      bool criterion = alpha * alpha * kappa * kappa * (n * n - 1) <
                       beta * beta * m * m;
      CHECK(indefinite == (det < 0.0));
      CHECK(indefinite == criterion);
      any_indefinite = any_indefinite || indefinite;
    }
    auto rep = stability::circle_stability(alpha, beta, m, L);
    if (rep.verdict != Verdict::Critical) {
      CHECK((rep.verdict == Verdict::Unstable) == any_indefinite);
    }
  }
}

TEST_CASE("figure-eight verdicts and critical ratio") {
  auto stable = stability::figure_eight_stability(1.0, 3.0);
  CHECK(stable.verdict == Verdict::Stable);
  CHECK(std::abs(stable.threshold - 2.0) < 1e-6);
  CHECK(stability::figure_eight_stability(1.0, 1.0).verdict ==
        Verdict::Unstable);
  CHECK(stability::figure_eight_stability(1.0, 2.0).verdict ==
        Verdict::Critical);
}

TEST_CASE("normal-component periodicity integrals") {
  Modulus m = stability::figure_eight_modulus();
  auto rep = stability::mu_branch_check(m);
  CHECK(std::abs(rep.dn_first) < 1e-10);
  CHECK(std::abs(rep.dn_second) > 1e-3);
  CHECK(std::abs(rep.cn_first) < 1e-10);
  CHECK(std::abs(rep.cn_second) < 1e-10);
}

TEST_CASE("material data from synthesized curves") {
  // constant-torsion centerline: integral of tau is tau * L exactly
  auto rod = closure::solve_constant_torsion_knot(1, 3);
  auto mat = stability::rod_from_curve(rod.curve, 1.0, 2.0);
  const auto& k = rod.curve.constants;
  double tau = 0.5 * k.lambda2;  // c = 0 on the axis
  CHECK(mat.m == doctest::Approx(1.0 * k.lambda2 / 4.0).epsilon(1e-14));
  CHECK(std::abs(mat.L * mat.m - mat.delta_psi - tau * mat.L) < 1e-9);

  // elastic centerline (X = 0): m = 0, so delta_psi = -integral of tau
  auto elastic = rodsynth::synthesize(
      paramspace::DiskPoint::from_polar(0.5, kPi / 2.0), 3, 128);
  auto emat = stability::rod_from_curve(elastic, 1.5, 0.7);
  CHECK(emat.m == 0.0);

  // generic closed rod: balance against an independent composite rule
  auto knot = closure::solve_knot(closure::KnotSpec::make(1, 2));
  auto gmat = stability::rod_from_curve(knot.curve, 1.2, 0.9);
  const auto& gk = knot.curve.constants;
  double t_end = knot.curve.samples.back().t;
  int N = 8192;
  double acc = 0.0;
  for (int i = 0; i < N; ++i) {  // periodic integrand: trapezoid = midpoint
    double t = t_end * (i + 0.5) / N;
    acc += rodsynth::curvature_torsion(t, gk).second;
  }
  double tau_int = 2.0 * gk.w * acc * t_end / N;
  CHECK(std::abs(gmat.L * gmat.m - gmat.delta_psi - tau_int) < 1e-9);

  CHECK_THROWS_AS(stability::rod_from_curve(knot.curve, 1.0, 0.0),
                  DomainError);
}

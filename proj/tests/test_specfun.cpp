#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "elrod/specfun.hpp"

using namespace elrod;
using namespace elrod::specfun;

namespace {

constexpr double kPi = numeric::kPi;

// Quadrature oracle for the Legendre integrals (independent of the Carlson /
// AGM implementation path).
double oracle_F(double xi, double p) {
  return numeric::integrate(
      [p](double t) {
        double s = std::sin(t);
        return 1.0 / std::sqrt(1.0 - p * p * s * s);
      },
      0.0, xi, 1e-14);
}

double oracle_E(double xi, double p) {
  return numeric::integrate(
      [p](double t) {
        double s = std::sin(t);
        return std::sqrt(1.0 - p * p * s * s);
      },
      0.0, xi, 1e-14);
}

// ODE oracle: RK4 on sn' = cn dn, cn' = -sn dn, dn' = -p^2 sn cn.
Jacobi oracle_jacobi(double t, double p) {
  double sn = 0.0, cn = 1.0, dn = 1.0;
  int n = 1 << 18;
  double h = t / n;
  auto f = [p](double s, double c, double d, double* out) {
    out[0] = c * d;
    out[1] = -s * d;
    out[2] = -p * p * s * c;
  };
  for (int i = 0; i < n; ++i) {
    double k1[3], k2[3], k3[3], k4[3];
    f(sn, cn, dn, k1);
    f(sn + 0.5 * h * k1[0], cn + 0.5 * h * k1[1], dn + 0.5 * h * k1[2], k2);
    f(sn + 0.5 * h * k2[0], cn + 0.5 * h * k2[1], dn + 0.5 * h * k2[2], k3);
    f(sn + h * k3[0], cn + h * k3[1], dn + h * k3[2], k4);
    sn += h / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]);
    cn += h / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]);
    dn += h / 6.0 * (k1[2] + 2 * k2[2] + 2 * k3[2] + k4[2]);
  }
  return {sn, cn, dn};
}

// Direct q-series partial sums (40 terms), independent of the library's
// truncation logic.
std::complex<double> oracle_theta(int kind, std::complex<double> v, double q) {
  std::complex<double> sum = (kind == 2) ? 0.0 : 1.0;
  for (int n = 1; n <= 40; ++n) {
    if (kind == 2) {
      double e = (n - 0.5) * (n - 0.5);
      sum += 2.0 * std::pow(q, e) * std::cos((2.0 * n - 1.0) * v);
    } else if (kind == 3) {
      sum += 2.0 * std::pow(q, double(n) * n) * std::cos(2.0 * double(n) * v);
    } else {
      double sgn = (n % 2 == 0) ? 1.0 : -1.0;
      sum += 2.0 * sgn * std::pow(q, double(n) * n) *
             std::cos(2.0 * double(n) * v);
    }
  }
  return sum;
}

}  // namespace

TEST_CASE("complete K") {
  CHECK(complete_K(Modulus(0.0)) == doctest::Approx(kPi / 2).epsilon(1e-14));
  // 2E(p) = K(p) at p = 0.9089085
  Modulus pm(0.9089085);
  CHECK(std::abs(2.0 * complete_E(pm) - complete_K(pm)) < 1e-6);
  // frozen quadrature oracle value for p = 0.5
  CHECK(complete_K(Modulus(0.5)) ==
        doctest::Approx(1.6857503548125960).epsilon(1e-14));
  CHECK(std::abs(complete_K(Modulus(0.5)) - oracle_F(kPi / 2, 0.5)) < 1e-12);
  CHECK_THROWS_AS(complete_K(Modulus(1.0)), DomainError);
  CHECK_THROWS_AS(Modulus(1.5), DomainError);
  CHECK_THROWS_AS(Modulus(-0.1), DomainError);
}

TEST_CASE("complete E") {
  CHECK(complete_E(Modulus(0.0)) == doctest::Approx(kPi / 2).epsilon(1e-14));
  CHECK(complete_E(Modulus(1.0)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(complete_E(Modulus(0.8)) ==
        doctest::Approx(1.2763499431699064).epsilon(1e-14));
  CHECK(std::abs(complete_E(Modulus(0.8)) - oracle_E(kPi / 2, 0.8)) < 1e-12);
}

TEST_CASE("Legendre relation on log-spaced grid") {
  for (int i = 0; i < 50; ++i) {
    double lo = std::log(1e-6), hi = std::log(1.0 - 1e-6);
    double p = std::exp(lo + (hi - lo) * i / 49.0);
    Modulus m(p);
    EllipticBundle b = EllipticBundle::make(m);
    double res = b.E * b.K_prime + b.E_prime * b.K - b.K * b.K_prime - kPi / 2;
    CHECK(std::abs(res) < 1e-12);
  }
}

TEST_CASE("incomplete F") {
  CHECK(incomplete_F(0.0, Modulus(0.9)) == 0.0);
  CHECK(incomplete_F(kPi / 2, Modulus(0.6)) ==
        doctest::Approx(complete_K(Modulus(0.6))).epsilon(1e-13));
  CHECK(incomplete_F(0.7, Modulus(0.3)) ==
        doctest::Approx(0.7047463831779617).epsilon(1e-13));
  CHECK(std::abs(incomplete_F(0.7, Modulus(0.3)) - oracle_F(0.7, 0.3)) <
        1e-12);
  // periodic extension F(xi + pi) = F(xi) + 2K
  Modulus m(0.55);
  CHECK(incomplete_F(0.4 + kPi, m) ==
        doctest::Approx(incomplete_F(0.4, m) + 2 * complete_K(m))
            .epsilon(1e-13));
  CHECK(incomplete_F(-0.7, Modulus(0.3)) ==
        doctest::Approx(-incomplete_F(0.7, Modulus(0.3))).epsilon(1e-14));
  CHECK_THROWS_AS(incomplete_F(0.5, Modulus(1.0)), DomainError);
}

TEST_CASE("incomplete E") {
  CHECK(incomplete_E(0.0, Modulus(0.9)) == 0.0);
  CHECK(incomplete_E(kPi / 2, Modulus(0.6)) ==
        doctest::Approx(complete_E(Modulus(0.6))).epsilon(1e-13));
  CHECK(incomplete_E(1.1, Modulus(0.9)) ==
        doctest::Approx(0.9387616398377667).epsilon(1e-13));
  CHECK(std::abs(incomplete_E(1.1, Modulus(0.9)) - oracle_E(1.1, 0.9)) <
        1e-12);
}

TEST_CASE("incomplete third-kind integral") {
  CHECK(incomplete_Pi(0.0, 0.5, Modulus(0.9)) == 0.0);
  // reference values from 30-digit arithmetic
  CHECK(incomplete_Pi(1.1, 0.3, Modulus(0.4)) ==
        doctest::Approx(1.2596785150510944).epsilon(1e-13));
  CHECK(incomplete_Pi(0.7, 0.95, Modulus(0.6)) ==
        doctest::Approx(0.8596745061979121).epsilon(1e-13));
  CHECK(incomplete_Pi(kPi / 2, 0.3, Modulus(0.4)) ==
        doctest::Approx(1.9677924132520139).epsilon(1e-13));
  // characteristic 0 reduces to the first kind
  CHECK(incomplete_Pi(1.3, 0.0, Modulus(0.7)) ==
        doctest::Approx(incomplete_F(1.3, Modulus(0.7))).epsilon(1e-13));
  // quadrature oracle and periodic extension
  Modulus m(0.55);
  double nc = 0.8;
  for (double xi : {0.4, 1.2, 2.1, 3.7}) {
    double byquad = numeric::integrate(
        [&](double th) {
          double s = std::sin(th);
          return 1.0 / ((1.0 - nc * s * s) *
                        std::sqrt(1.0 - m.p * m.p * s * s));
        },
        0.0, xi, 1e-13);
    CHECK(std::abs(incomplete_Pi(xi, nc, m) - byquad) < 1e-11);
  }
  CHECK(incomplete_Pi(0.4 + kPi, nc, m) ==
        doctest::Approx(incomplete_Pi(0.4, nc, m) +
                        2 * incomplete_Pi(kPi / 2, nc, m))
            .epsilon(1e-13));
  CHECK(incomplete_Pi(-1.2, nc, m) ==
        doctest::Approx(-incomplete_Pi(1.2, nc, m)).epsilon(1e-14));
  CHECK_THROWS_AS(incomplete_Pi(0.5, 1.0, Modulus(0.3)), DomainError);
}

TEST_CASE("incomplete integrals vs quadrature on a grid") {
  for (double p : {0.1, 0.35, 0.62, 0.85, 0.95}) {
    for (double xi : {0.2, 0.8, 1.3, 1.5555, 2.4, 3.0}) {
      CHECK(std::abs(incomplete_F(xi, Modulus(p)) - oracle_F(xi, p)) < 1e-11);
      CHECK(std::abs(incomplete_E(xi, Modulus(p)) - oracle_E(xi, p)) < 1e-11);
    }
  }
}

TEST_CASE("jacobi sn cn dn") {
  // trigonometric degeneration
  Jacobi j0 = jacobi_sn_cn_dn(0.77, Modulus(0.0));
  CHECK(j0.sn == doctest::Approx(std::sin(0.77)).epsilon(1e-15));
  CHECK(j0.cn == doctest::Approx(std::cos(0.77)).epsilon(1e-15));
  CHECK(j0.dn == 1.0);

  // quarter-period values
  Modulus m7(0.7);
  Jacobi jq = jacobi_sn_cn_dn(complete_K(m7), m7);
  CHECK(jq.sn == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(std::abs(jq.cn) < 1e-13);
  CHECK(jq.dn == doctest::Approx(m7.p_prime).epsilon(1e-13));

  // ODE oracle and frozen values at t=0.9, p=0.4
  Jacobi j = jacobi_sn_cn_dn(0.9, Modulus(0.4));
  CHECK(j.sn == doctest::Approx(0.7729760141409410).epsilon(1e-13));
  CHECK(j.cn == doctest::Approx(0.6344352461542342).epsilon(1e-13));
  CHECK(j.dn == doctest::Approx(0.9510001540746696).epsilon(1e-13));
  Jacobi jo = oracle_jacobi(0.9, 0.4);
  CHECK(std::abs(j.sn - jo.sn) < 1e-10);
  CHECK(std::abs(j.cn - jo.cn) < 1e-10);
  CHECK(std::abs(j.dn - jo.dn) < 1e-10);
}

TEST_CASE("jacobi square identities, random sweep") {
  std::mt19937 rng(20231u);
  std::uniform_real_distribution<double> ut(-25.0, 25.0), up(0.0, 0.999);
  for (int i = 0; i < 1000; ++i) {
    double t = ut(rng), p = up(rng);
    Jacobi j = jacobi_sn_cn_dn(t, Modulus(p));
    CHECK(std::abs(j.sn * j.sn + j.cn * j.cn - 1.0) < 1e-12);
    CHECK(std::abs(j.dn * j.dn + p * p * j.sn * j.sn - 1.0) < 1e-12);
  }
}

TEST_CASE("jacobi periodicity 4K") {
  Modulus m(0.63);
  double K = complete_K(m);
  for (double t : {0.0, 0.31, 1.7, 2.9}) {
    Jacobi a = jacobi_sn_cn_dn(t, m);
    Jacobi b = jacobi_sn_cn_dn(t + 4 * K, m);
    CHECK(std::abs(a.sn - b.sn) < 1e-12);
    CHECK(std::abs(a.cn - b.cn) < 1e-12);
  }
}

TEST_CASE("theta Theta (period 2K, zero at iK')") {
  Modulus m(0.5);
  EllipticBundle b = EllipticBundle::make(m);
  double K = b.K;
  for (double t : {0.0, 0.4, 1.1, -0.8}) {
    CHECK(std::abs(theta_Theta(t + 2 * K, m) - theta_Theta(t, m)) < 1e-12);
  }
  std::complex<double> z =
      theta_Theta(std::complex<double>(0.0, b.K_prime * (1.0 - 1e-13)), m);
  CHECK(std::abs(z) < 1e-10);
  CHECK(theta_Theta(0.3, m) ==
        doctest::Approx(0.9695282407412604).epsilon(1e-13));
  CHECK(std::abs(theta_Theta(0.3, m) -
                 oracle_theta(4, kPi * 0.3 / (2 * K), b.q).real()) < 1e-13);
  CHECK_THROWS_AS(theta_Theta(std::complex<double>(0.1, 2.0 * b.K_prime), m),
                  DomainError);
}

TEST_CASE("theta Theta1 (zero at K + iK')") {
  Modulus m(0.6);
  EllipticBundle b = EllipticBundle::make(m);
  std::complex<double> z = theta_Theta1(
      std::complex<double>(b.K, b.K_prime * (1.0 - 1e-13)), m);
  CHECK(std::abs(z) < 1e-10);
  for (double t : {0.2, 0.9, 2.3}) {
    CHECK(std::abs(theta_Theta1(t + 2 * b.K, m) - theta_Theta1(t, m)) < 1e-12);
  }
  std::complex<double> u(0.2, 0.4);
  std::complex<double> got = theta_Theta1(u, m);
  std::complex<double> want(1.0662075102483468, -0.0152885563687314);
  CHECK(std::abs(got - want) < 1e-12);
  CHECK(std::abs(got - oracle_theta(3, kPi * u / (2.0 * b.K), b.q)) < 1e-13);
}

TEST_CASE("theta H1 (zero at K, anti-periodic)") {
  Modulus m(0.5);
  EllipticBundle b = EllipticBundle::make(m);
  CHECK(std::abs(theta_H1(b.K, m)) < 1e-10);
  CHECK(theta_H1(0.0, m) == doctest::Approx(0.7325237221924504).epsilon(1e-13));
  CHECK(theta_H1(0.0, m) > 0.0);
  for (double t : {0.1, 0.7, 1.9}) {
    CHECK(std::abs(theta_H1(t + 2 * b.K, m) + theta_H1(t, m)) < 1e-12);
    CHECK(std::abs(theta_H1(t, m) -
                   oracle_theta(2, kPi * t / (2 * b.K), b.q).real()) < 1e-13);
  }
}

TEST_CASE("jacobi zeta") {
  Modulus m(0.7);
  double K = complete_K(m), E = complete_E(m);
  CHECK(jacobi_zeta(0.0, m) == 0.0);
  CHECK(std::abs(jacobi_zeta(K, m)) < 1e-13);
  CHECK(jacobi_zeta(0.5, m) ==
        doctest::Approx(0.1137543690329162).epsilon(1e-12));
  // oracle: E(am(t), p) - t E/K
  double am = jacobi_am(0.5, m);
  CHECK(std::abs(jacobi_zeta(0.5, m) - (oracle_E(am, 0.7) - 0.5 * E / K)) <
        1e-11);
  // odd, periodic, zero mean over [0, 2K]
  CHECK(jacobi_zeta(-0.8, m) ==
        doctest::Approx(-jacobi_zeta(0.8, m)).epsilon(1e-13));
  CHECK(std::abs(jacobi_zeta(0.8 + 2 * K, m) - jacobi_zeta(0.8, m)) < 1e-12);
  double mean = numeric::integrate([&](double t) { return jacobi_zeta(t, m); },
                                   0.0, 2 * K, 1e-12);
  CHECK(std::abs(mean) < 1e-10);
}

TEST_CASE("heuman lambda") {
  CHECK(heuman_lambda(0.0, Modulus(0.3)) == 0.0);
  for (double p : {0.2, 0.5, 0.8}) {
    CHECK(heuman_lambda(kPi / 2, Modulus(p)) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(heuman_lambda(0.9, Modulus(0.4)) ==
        doctest::Approx(0.7528322430994546).epsilon(1e-12));
  // reflection Lambda0(pi - xi) = 2 - Lambda0(xi)
  Modulus m(0.6);
  CHECK(heuman_lambda(kPi - 0.7, m) ==
        doctest::Approx(2.0 - heuman_lambda(0.7, m)).epsilon(1e-12));
  CHECK_THROWS_AS(heuman_lambda(-0.1, m), DomainError);
  CHECK_THROWS_AS(heuman_lambda(3.5, m), DomainError);
}

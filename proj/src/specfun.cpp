#include "elrod/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iostream>
#include <limits>

namespace elrod::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxThetaTerms = 64;

// Carlson symmetric integral R_F(x,y,z), duplication algorithm.
double carlson_RF(double x, double y, double z) {
  constexpr double ERRTOL = 1e-3;
  constexpr double C1 = 1.0 / 24.0, C2 = 0.1, C3 = 3.0 / 44.0, C4 = 1.0 / 14.0;
  double xt = x, yt = y, zt = z;
  double ave = 0, delx = 0, dely = 0, delz = 0;
  for (int it = 0; it < 128; ++it) {
    double sx = std::sqrt(xt), sy = std::sqrt(yt), sz = std::sqrt(zt);
    double lam = sx * (sy + sz) + sy * sz;
    xt = 0.25 * (xt + lam);
    yt = 0.25 * (yt + lam);
    zt = 0.25 * (zt + lam);
    ave = (xt + yt + zt) / 3.0;
    delx = (ave - xt) / ave;
    dely = (ave - yt) / ave;
    delz = (ave - zt) / ave;
    if (std::max({std::abs(delx), std::abs(dely), std::abs(delz)}) < ERRTOL)
      break;
  }
  double e2 = delx * dely - delz * delz;
  double e3 = delx * dely * delz;
  return (1.0 + (C1 * e2 - C2 - C3 * e3) * e2 + C4 * e3) / std::sqrt(ave);
}

// Carlson symmetric integral R_D(x,y,z).
double carlson_RD(double x, double y, double z) {
  constexpr double ERRTOL = 1e-3;
  constexpr double C1 = 3.0 / 14.0, C2 = 1.0 / 6.0, C3 = 9.0 / 22.0,
                   C4 = 3.0 / 26.0, C5 = 0.25 * C3, C6 = 1.5 * C4;
  double xt = x, yt = y, zt = z;
  double sum = 0.0, fac = 1.0;
  double ave = 0, delx = 0, dely = 0, delz = 0;
  for (int it = 0; it < 128; ++it) {
    double sx = std::sqrt(xt), sy = std::sqrt(yt), sz = std::sqrt(zt);
    double lam = sx * (sy + sz) + sy * sz;
    sum += fac / (sz * (zt + lam));
    fac *= 0.25;
    xt = 0.25 * (xt + lam);
    yt = 0.25 * (yt + lam);
    zt = 0.25 * (zt + lam);
    ave = 0.2 * (xt + yt + 3.0 * zt);
    delx = (ave - xt) / ave;
    dely = (ave - yt) / ave;
    delz = (ave - zt) / ave;
    if (std::max({std::abs(delx), std::abs(dely), std::abs(delz)}) < ERRTOL)
      break;
  }
  double ea = delx * dely;
  double eb = delz * delz;
  double ec = ea - eb;
  double ed = ea - 6.0 * eb;
  double ee = ed + ec + ec;
  return 3.0 * sum +
         fac *
             (1.0 + ed * (-C1 + C5 * ed - C6 * delz * ee) +
              delz * (C2 * ee + delz * (-C3 * ec + delz * C4 * ea))) /
             (ave * std::sqrt(ave));
}

// Carlson degenerate integral R_C(x,y) for y > 0.
double carlson_RC(double x, double y) {
  constexpr double ERRTOL = 1e-4;
  constexpr double C1 = 0.3, C2 = 1.0 / 7.0, C3 = 0.375, C4 = 9.0 / 22.0;
  double xt = x, yt = y;
  double ave = 0, s = 0;
  for (int it = 0; it < 256; ++it) {
    double lam = 2.0 * std::sqrt(xt) * std::sqrt(yt) + yt;
    xt = 0.25 * (xt + lam);
    yt = 0.25 * (yt + lam);
    ave = (xt + yt + yt) / 3.0;
    s = (yt - ave) / ave;
    if (std::abs(s) < ERRTOL) break;
  }
  return (1.0 + s * s * (C1 + s * (C2 + s * (C3 + s * C4)))) / std::sqrt(ave);
}

// Carlson symmetric integral R_J(x,y,z,p), duplication algorithm, p > 0.
double carlson_RJ(double x, double y, double z, double p) {
  constexpr double ERRTOL = 1e-3;
  constexpr double C1 = 3.0 / 14.0, C2 = 1.0 / 3.0, C3 = 3.0 / 22.0,
                   C4 = 3.0 / 26.0, C5 = 0.75 * C3, C6 = 1.5 * C4,
                   C7 = 0.5 * C2, C8 = C3 + C3;
  double xt = x, yt = y, zt = z, pt = p;
  double sum = 0.0, fac = 1.0;
  double ave = 0, delx = 0, dely = 0, delz = 0, delp = 0;
  for (int it = 0; it < 256; ++it) {
    double sx = std::sqrt(xt), sy = std::sqrt(yt), sz = std::sqrt(zt);
    double lam = sx * (sy + sz) + sy * sz;
    double alpha = pt * (sx + sy + sz) + sx * sy * sz;
    alpha *= alpha;
    double beta = pt * (pt + lam) * (pt + lam);
    sum += fac * carlson_RC(alpha, beta);
    fac *= 0.25;
    xt = 0.25 * (xt + lam);
    yt = 0.25 * (yt + lam);
    zt = 0.25 * (zt + lam);
    pt = 0.25 * (pt + lam);
    ave = 0.2 * (xt + yt + zt + 2.0 * pt);
    delx = (ave - xt) / ave;
    dely = (ave - yt) / ave;
    delz = (ave - zt) / ave;
    delp = (ave - pt) / ave;
    if (std::max({std::abs(delx), std::abs(dely), std::abs(delz),
                  std::abs(delp)}) < ERRTOL)
      break;
  }
  double ea = delx * (dely + delz) + dely * delz;
  double eb = delx * dely * delz;
  double ec = delp * delp;
  double ed = ea - 3.0 * ec;
  double ee = eb + 2.0 * delp * (ea - ec);
  return 3.0 * sum +
         fac *
             (1.0 + ed * (-C1 + C5 * ed - C6 * ee) +
              eb * (C7 + delp * (-C8 + delp * C4)) +
              delp * ea * (C2 - delp * C3) - C2 * delp * ec) /
             (ave * std::sqrt(ave));
}

// Principal-range incomplete integrals, 0 <= xi <= pi/2.
double incF0(double xi, double p) {
  double s = std::sin(xi), c = std::cos(xi);
  if (s == 0.0) return 0.0;
  return s * carlson_RF(c * c, 1.0 - p * p * s * s, 1.0);
}

double incE0(double xi, double p) {
  double s = std::sin(xi), c = std::cos(xi);
  if (s == 0.0) return 0.0;
  double y = 1.0 - p * p * s * s;
  return s * carlson_RF(c * c, y, 1.0) -
         (p * p * s * s * s / 3.0) * carlson_RD(c * c, y, 1.0);
}

double incPi0(double xi, double nc, double p) {
  double s = std::sin(xi), c = std::cos(xi);
  if (s == 0.0) return 0.0;
  double y = 1.0 - p * p * s * s;
  return s * carlson_RF(c * c, y, 1.0) +
         (nc / 3.0) * s * s * s *
             carlson_RJ(c * c, y, 1.0, 1.0 - nc * s * s);
}

struct AgmChain {
  std::array<double, 64> a, c;
  int n = 0;
};

AgmChain agm_chain(double p) {
  AgmChain ch;
  double a = 1.0, b = std::sqrt(1.0 - p * p), c = p;
  int n = 0;
  ch.a[0] = a;
  ch.c[0] = c;
  while (std::abs(c) > kEps * a && n < 62) {
    double an = 0.5 * (a + b);
    c = 0.5 * (a - b);
    b = std::sqrt(a * b);
    a = an;
    ++n;
    ch.a[n] = a;
    ch.c[n] = c;
  }
  ch.n = n;
  return ch;
}

void check_strip(std::complex<double> u, double K_prime) {
  if (std::abs(u.imag()) >= K_prime) {
    throw DomainError("theta: |Im u| must be below K' (q-series strip)");
  }
}

void warn_nome(double q) {
  if (q > 0.95) {
    std::cerr << "elrod: warning: nome q = " << q
              << " > 0.95, theta series precision degraded\n";
  }
}

template <typename T>
T theta3_series(T v, double q) {
  T sum(1.0);
  double qn = 1.0;
  for (int n = 1; n <= kMaxThetaTerms; ++n) {
    qn *= std::pow(q, 2 * n - 1);  // q^{n^2} accumulated as q^{1+3+5+...}
    T term = 2.0 * qn * std::cos(2.0 * double(n) * v);
    sum += term;
    if (std::abs(term) < 1e-16 * std::abs(sum) && n > 2) break;
  }
  return sum;
}

template <typename T>
T theta4_series(T v, double q) {
  T sum(1.0);
  double qn = 1.0;
  double sign = -1.0;
  for (int n = 1; n <= kMaxThetaTerms; ++n) {
    qn *= std::pow(q, 2 * n - 1);
    T term = 2.0 * sign * qn * std::cos(2.0 * double(n) * v);
    sum += term;
    sign = -sign;
    if (std::abs(term) < 1e-16 * std::abs(sum) && n > 2) break;
  }
  return sum;
}

template <typename T>
T theta2_series(T v, double q) {
  if (q == 0.0) return T(0.0);
  T sum(0.0);
  double lq = std::log(q);
  for (int n = 0; n <= kMaxThetaTerms; ++n) {
    double qpow = std::exp(lq * (n + 0.5) * (n + 0.5));
    T term = 2.0 * qpow * std::cos(double(2 * n + 1) * v);
    sum += term;
    if (std::abs(term) < 1e-16 * std::abs(sum) && n > 2) break;
  }
  return sum;
}

}  // namespace

double complete_K(const Modulus& m) {
  if (m.p >= 1.0) {
    throw DomainError("complete_K: diverges at p = 1");
  }
  AgmChain ch = agm_chain(m.p);
  return numeric::kPi / (2.0 * ch.a[ch.n]);
}

double complete_E(const Modulus& m) {
  if (m.p == 1.0) return 1.0;
  AgmChain ch = agm_chain(m.p);
  double s = 0.5 * ch.c[0] * ch.c[0];
  double pow2 = 1.0;
  for (int n = 1; n <= ch.n; ++n) {
    s += pow2 * ch.c[n] * ch.c[n];
    pow2 *= 2.0;
  }
  double K = numeric::kPi / (2.0 * ch.a[ch.n]);
  return K * (1.0 - s);
}

EllipticBundle EllipticBundle::make(const Modulus& m) {
  EllipticBundle b{};
  if (m.p == 0.0) {
    b.K = numeric::kPi / 2.0;
    b.E = numeric::kPi / 2.0;
    b.K_prime = std::numeric_limits<double>::infinity();
    b.E_prime = 1.0;
    b.q = 0.0;
    return b;
  }
  Modulus comp(m.p_prime);
  b.K = complete_K(m);
  b.E = complete_E(m);
  b.K_prime = complete_K(comp);
  b.E_prime = complete_E(comp);
  b.q = std::exp(-numeric::kPi * b.K_prime / b.K);
  return b;
}

double incomplete_F(double xi, const Modulus& m) {
  if (!std::isfinite(xi)) throw DomainError("incomplete_F: xi must be finite");
  if (m.p >= 1.0) throw DomainError("incomplete_F: requires p < 1");
  double n = std::floor(xi / numeric::kPi + 0.5);
  double xr = xi - n * numeric::kPi;  // in [-pi/2, pi/2)
  double base = 0.0;
  if (n != 0.0) base = 2.0 * n * complete_K(m);
  double f = incF0(std::abs(xr), m.p);
  return base + (xr < 0 ? -f : f);
}

double incomplete_E(double xi, const Modulus& m) {
  if (!std::isfinite(xi)) throw DomainError("incomplete_E: xi must be finite");
  if (m.p > 1.0) throw DomainError("incomplete_E: requires p <= 1");
  if (m.p == 1.0) {
    // E(xi, 1) = sin(xi) on the principal range; extend by 2E = 2.
    double n = std::floor(xi / numeric::kPi + 0.5);
    double xr = xi - n * numeric::kPi;
    return 2.0 * n + std::sin(xr);
  }
  double n = std::floor(xi / numeric::kPi + 0.5);
  double xr = xi - n * numeric::kPi;
  double base = 0.0;
  if (n != 0.0) base = 2.0 * n * complete_E(m);
  double e = incE0(std::abs(xr), m.p);
  return base + (xr < 0 ? -e : e);
}

Jacobi jacobi_sn_cn_dn(double t, const Modulus& m) {
  if (m.p == 0.0) return {std::sin(t), std::cos(t), 1.0};
  if (m.p == 1.0) {
    double c = 1.0 / std::cosh(t);
    return {std::tanh(t), c, c};
  }
  double phi = jacobi_am(t, m);
  double sn = std::sin(phi), cn = std::cos(phi);
  double dn = std::sqrt(1.0 - m.p * m.p * sn * sn);
  return {sn, cn, dn};
}

double jacobi_am(double t, const Modulus& m) {
  if (m.p == 0.0) return t;
  if (m.p == 1.0) return std::asin(std::tanh(t));
  AgmChain ch = agm_chain(m.p);
  double phi = std::ldexp(ch.a[ch.n] * t, ch.n);
  for (int n = ch.n; n >= 1; --n) {
    double r = std::clamp(ch.c[n] / ch.a[n] * std::sin(phi), -1.0, 1.0);
    phi = 0.5 * (phi + std::asin(r));
  }
  return phi;
}

double incomplete_Pi(double xi, double nc, const Modulus& m) {
  if (!std::isfinite(xi)) throw DomainError("incomplete_Pi: xi must be finite");
  if (m.p >= 1.0) throw DomainError("incomplete_Pi: requires p < 1");
  if (!(nc < 1.0)) {
    throw DomainError("incomplete_Pi: characteristic must be below 1");
  }
  double n = std::floor(xi / numeric::kPi + 0.5);
  double xr = xi - n * numeric::kPi;
  double base = 0.0;
  if (n != 0.0) base = 2.0 * n * incPi0(numeric::kPi / 2.0, nc, m.p);
  double f = incPi0(std::abs(xr), nc, m.p);
  return base + (xr < 0 ? -f : f);
}

double theta_Theta(double u, const Modulus& m) {
  return theta_Theta(u, m, EllipticBundle::make(m));
}

double theta_Theta(double u, const Modulus& m, const EllipticBundle& b) {
  (void)m;
  warn_nome(b.q);
  return theta4_series(numeric::kPi * u / (2.0 * b.K), b.q);
}

double theta_Theta1(double u, const Modulus& m) {
  EllipticBundle b = EllipticBundle::make(m);
  warn_nome(b.q);
  return theta3_series(numeric::kPi * u / (2.0 * b.K), b.q);
}

double theta_H1(double u, const Modulus& m) {
  EllipticBundle b = EllipticBundle::make(m);
  warn_nome(b.q);
  return theta2_series(numeric::kPi * u / (2.0 * b.K), b.q);
}

std::complex<double> theta_Theta(std::complex<double> u, const Modulus& m) {
  EllipticBundle b = EllipticBundle::make(m);
  warn_nome(b.q);
  check_strip(u, b.K_prime);
  return theta4_series(numeric::kPi * u / (2.0 * b.K), b.q);
}

std::complex<double> theta_Theta1(std::complex<double> u, const Modulus& m) {
  EllipticBundle b = EllipticBundle::make(m);
  return theta_Theta1(u, m, b);
}

std::complex<double> theta_Theta1(std::complex<double> u, const Modulus& m,
                                  const EllipticBundle& b) {
  warn_nome(b.q);
  check_strip(u, b.K_prime);
  return theta3_series(numeric::kPi * u / (2.0 * b.K), b.q);
}

std::complex<double> theta_H1(std::complex<double> u, const Modulus& m) {
  EllipticBundle b = EllipticBundle::make(m);
  warn_nome(b.q);
  check_strip(u, b.K_prime);
  return theta2_series(numeric::kPi * u / (2.0 * b.K), b.q);
}

double jacobi_zeta(double t, const Modulus& m) {
  return jacobi_zeta(t, m, EllipticBundle::make(m));
}

double jacobi_zeta(double t, const Modulus& m, const EllipticBundle& b) {
  if (m.p == 0.0) return 0.0;
  double v = numeric::kPi * t / (2.0 * b.K);
  double sum = 0.0;
  double q = b.q;
  double qn = 1.0;
  for (int n = 1; n <= 512; ++n) {
    qn *= q;
    double term = qn / (1.0 - qn * qn) * std::sin(2.0 * n * v);
    sum += term;
    if (std::abs(qn) < 1e-18) break;
  }
  return 2.0 * numeric::kPi / b.K * sum;
}

double heuman_lambda(double xi, const Modulus& m) {
  if (!(xi >= 0.0 && xi <= numeric::kPi)) {
    throw DomainError("heuman_lambda: xi must lie in [0, pi]");
  }
  if (m.p == 0.0) {
    // Limit p -> 0: Lambda0 = sin(xi), reflected through Lambda0(pi-xi)=2-Lambda0.
    return xi <= numeric::kPi / 2.0 ? std::sin(xi) : 2.0 - std::sin(xi);
  }
  EllipticBundle b = EllipticBundle::make(m);
  Modulus comp(m.p_prime);
  double F = incomplete_F(xi, comp);
  double E = incomplete_E(xi, comp);
  return 2.0 / numeric::kPi * (b.E * F + b.K * E - b.K * F);
}

}  // namespace elrod::specfun

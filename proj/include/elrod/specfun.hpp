#pragma once

#include <complex>

#include "elrod/numeric.hpp"

namespace elrod::specfun {

// Elliptic modulus p with its complement p' = sqrt(1 - p^2).
struct Modulus {
  double p;
  double p_prime;

  explicit Modulus(double p_) : p(p_), p_prime(std::sqrt(1.0 - p_ * p_)) {
    if (!(p_ >= 0.0 && p_ <= 1.0)) {
      throw DomainError("Modulus: p must lie in [0,1]");
    }
  }
};

// The complete integrals and nome for one modulus, computed once and reused
// by the theta-function evaluations.
struct EllipticBundle {
  double K;
  double E;
  double K_prime;
  double E_prime;
  double q;  // nome exp(-pi K'/K)

  static EllipticBundle make(const Modulus& m);
};

// Complete elliptic integral of the first kind, AGM iteration.
// Diverges at p = 1.
double complete_K(const Modulus& m);

// Complete elliptic integral of the second kind, AGM iteration.
double complete_E(const Modulus& m);

// Legendre incomplete integrals of the first/second kind with amplitude xi
// (radians, any finite value) via Carlson symmetric forms. F(pi/2, p) = K(p).
double incomplete_F(double xi, const Modulus& m);
double incomplete_E(double xi, const Modulus& m);

// Incomplete integral of the third kind with characteristic nc < 1:
// integral of 1/((1 - nc sin^2) sqrt(1 - p^2 sin^2)) up to amplitude xi.
double incomplete_Pi(double xi, double nc, const Modulus& m);

struct Jacobi {
  double sn;
  double cn;
  double dn;
};

// Jacobi elliptic functions by the AGM descending-phase recurrence.
Jacobi jacobi_sn_cn_dn(double t, const Modulus& m);

// Jacobi amplitude am(t, p), continuous in t.
double jacobi_am(double t, const Modulus& m);

// Theta functions in the rod convention: argument u with period 2K.
//
// Mapping to the classical nome-q functions of argument v = pi*u/(2K):
//   Theta(u)  = theta_4(v, q)   zero at u = i K'
//   Theta1(u) = theta_3(v, q)   zero at u = K + i K'
//   H1(u)     = theta_2(v, q)   zero at u = K, anti-periodic over 2K
//
// Complex arguments must satisfy |Im u| < K' (q-series strip).
double theta_Theta(double u, const Modulus& m);
double theta_Theta1(double u, const Modulus& m);
double theta_H1(double u, const Modulus& m);
std::complex<double> theta_Theta(std::complex<double> u, const Modulus& m);
std::complex<double> theta_Theta1(std::complex<double> u, const Modulus& m);
std::complex<double> theta_H1(std::complex<double> u, const Modulus& m);

// Variants that reuse a precomputed bundle (must match the modulus).
double theta_Theta(double u, const Modulus& m, const EllipticBundle& b);
std::complex<double> theta_Theta1(std::complex<double> u, const Modulus& m,
                                  const EllipticBundle& b);

// Jacobi zeta Z(t) = Theta'(t)/Theta(t); odd, 2K-periodic, zero mean.
double jacobi_zeta(double t, const Modulus& m);
double jacobi_zeta(double t, const Modulus& m, const EllipticBundle& b);

// Heuman's lambda: (2/pi)[E F(xi,p') + K E(xi,p') - K F(xi,p')], xi in [0,pi].
double heuman_lambda(double xi, const Modulus& m);

}  // namespace elrod::specfun

#include "elrod/rodsynth.hpp"

#include <cmath>
#include <complex>

namespace elrod::rodsynth {

using specfun::EllipticBundle;
using specfun::Modulus;

namespace {

constexpr double kPi = numeric::kPi;
constexpr double kTwoPi = 2.0 * numeric::kPi;

// Everything a curve evaluation needs, computed once per parameter point.
struct Ctx {
  RodConstants k;
  Modulus m;         // modulus p
  Modulus mc;        // complement p' used as a modulus
  EllipticBundle b;  // complete integrals for p
  double F_hat, E_hat;
  double sgnN;
  double slope;   // (E/K - 1) F_hat + E_hat
  double dtheta;  // per-period advance, +2pi correction included
  bool degenerate;

  explicit Ctx(const RodConstants& kk)
      : m(kk.p), mc(kk.p_prime), b(EllipticBundle::make(m)) {
    k = kk;
    degenerate = (1.0 - k.M < 1e-6);
    sgnN = (k.N >= 0.0) ? 1.0 : -1.0;
    F_hat = specfun::incomplete_F(k.xi_hat, mc);
    E_hat = specfun::incomplete_E(k.xi_hat, mc);
    slope = (b.E / b.K - 1.0) * F_hat + E_hat;
    dtheta =
        2.0 * b.K * k.U + 2.0 * sgnN * ((b.E - b.K) * F_hat + b.K * E_hat);
  }

  std::complex<double> th1(double t) const {
    return specfun::theta_Theta1({t, F_hat}, m, b);
  }
};

// Continuation of arg Theta1(t + i F_hat) from t0 (value z0) to t1.
// Updates z0 to the value at t1. Bisects until each step turns by < 0.8.
double advance_arg(const Ctx& c, double t0, std::complex<double>& z0,
                   double t1, int depth = 0) {
  std::complex<double> z1 = c.th1(t1);
  double d = std::arg(z1 * std::conj(z0));
  if (std::abs(d) > 0.8 && depth < 40) {
    double tm = 0.5 * (t0 + t1);
    double d0 = advance_arg(c, t0, z0, tm, depth + 1);
    return d0 + advance_arg(c, tm, z0, t1, depth + 1);
  }
  z0 = z1;
  return d;
}

// Integral of the theta derivative U + N/(1 - M sn^2), via the incomplete
// third-kind integral. Valid arbitrarily close to M = 1.
double theta_fallback(const Ctx& c, double t) {
  const RodConstants& k = c.k;
  if (k.M >= 1.0) {
    // exactly on the axis-touching locus: N = 0 and theta advances by pi at
    // each passage through the axis (t = K mod 2K)
    return k.U * t + kPi * std::floor(t / (2.0 * c.b.K) + 0.5);
  }
  return k.U * t +
         k.N * specfun::incomplete_Pi(specfun::jacobi_am(t, c.m), k.M, c.m);
}

}  // namespace

std::pair<double, double> curvature_torsion(double t, const RodConstants& k) {
  Modulus m(k.p);
  double sn = specfun::jacobi_sn_cn_dn(t, m).sn;
  double k2 = 1.0 - (k.p * k.p) / (k.w * k.w) * sn * sn;
  if (k2 <= 0.0) {
    throw DomainError(
        "curvature_torsion: curvature vanishes (figure-eight degeneracy)");
  }
  double kappa = std::sqrt(k2);
  return {kappa, 0.5 * (k.lambda2 + k.c / k2)};
}

double z_of_t(double t, const RodConstants& k) {
  Modulus m(k.p);
  return specfun::jacobi_zeta(t, m) / (k.mu * k.w);
}

double theta_rate(double t, const RodConstants& k) {
  Modulus m(k.p);
  double sn = specfun::jacobi_sn_cn_dn(t, m).sn;
  return k.U + k.N / (1.0 - k.M * sn * sn);
}

double theta_of_t(double t, const RodConstants& k) {
  Ctx c(k);
  if (c.degenerate) return theta_fallback(c, t);
  std::complex<double> z = c.th1(0.0);
  double acc = 0.0;
  int n = std::max(8, int(std::ceil(std::abs(t) / (c.b.K / 8.0))));
  for (int i = 1; i <= n; ++i) {
    acc += advance_arg(c, t * (i - 1) / n, z, t * i / n);
  }
  return (k.U + c.sgnN * c.slope) * t + c.sgnN * acc;
}

double delta_theta_smooth(const RodConstants& k) {
  Modulus m(k.p), mc(k.p_prime);
  EllipticBundle b = EllipticBundle::make(m);
  double F = specfun::incomplete_F(k.xi, mc);
  double Ei = specfun::incomplete_E(k.xi, mc);
  return 2.0 * b.K * k.U - 2.0 * (b.E - b.K) * F - 2.0 * b.K * Ei;
}

double delta_theta(const RodConstants& k) {
  return delta_theta_smooth(k) + (std::cos(k.xi) < 0.0 ? kTwoPi : 0.0);
}

RodCurve synthesize(const DiskPoint& pt, int n_periods, int samples_per_period,
                    const SynthOptions& opts) {
  if (n_periods < 1) throw DomainError("synthesize: n_periods must be >= 1");
  if (samples_per_period < 16) {
    throw DomainError("synthesize: samples_per_period must be >= 16");
  }
  RodConstants k = paramspace::derive_constants(pt);
  Ctx c(k);
  bool quad = opts.force_quadrature || c.degenerate;

  RodCurve curve;
  curve.periods = n_periods;
  curve.constants = k;
  curve.delta_theta = c.dtheta;
  curve.used_quadrature_fallback = quad;

  double P = 2.0 * c.b.K;
  double p2 = k.p * k.p, w2 = k.w * k.w, mu2w2 = k.mu * k.mu * w2;
  double r2_0 = k.X * k.X + w2 - k.U * k.U;  // r^2 mu^2 w^2 at t = 0
  double pref = std::sqrt(2.0 * c.b.K * k.p * k.p_prime / kPi);
  // i F_hat leaves the theta strip exactly in the fallback regime
  double H1F =
      quad ? 0.0
           : specfun::theta_H1(std::complex<double>(0.0, c.F_hat), c.m).real();
  double Lambda = c.dtheta / P;

  auto make_sample = [&](double t, double theta) {
    CurveSample s;
    s.t = t;
    specfun::Jacobi j = specfun::jacobi_sn_cn_dn(t, c.m);
    double sn2 = j.sn * j.sn;
    double k2 = std::max(1.0 - p2 / w2 * sn2, 0.0);
    s.kappa = std::sqrt(k2);
    // c = 0 (constant torsion) must survive the curvature zero at t = K
    s.tau = 0.5 * (k.lambda2 + (k.c == 0.0 ? 0.0 : k.c / k2));
    s.z = specfun::jacobi_zeta(t, c.m, c.b) / (k.mu * k.w);
    s.r = std::sqrt(std::max(r2_0 - p2 * sn2, 0.0) / mu2w2);
    if (!quad) {
      // Cartesian coordinates from the theta-ratio closed form; the sign of
      // the imaginary shift follows the sign of N.
      std::complex<double> wxy =
          pref * std::exp(std::complex<double>(0.0, Lambda * t)) *
          specfun::theta_Theta1({t, c.sgnN * c.F_hat}, c.m, c.b) /
          (k.mu * k.w * specfun::theta_Theta(t, c.m, c.b) * H1F);
      s.x = wxy.real();
      s.y = wxy.imag();
      // keep theta on the unwrapped branch, but pin it to the Cartesian pair
      double principal = std::atan2(s.y, s.x);
      s.theta = principal + kTwoPi * std::round((theta - principal) / kTwoPi);
      s.r = std::abs(wxy);
    } else {
      s.theta = theta;
      s.x = s.r * std::cos(theta);
      s.y = s.r * std::sin(theta);
    }

    // Conserved field from the analytic Frenet frame; |gamma_t| = 2w.
    double ct = std::cos(s.theta), st = std::sin(s.theta);
    double scd = j.sn * j.cn * j.dn;
    double g = -p2 * scd / mu2w2;  // (r^2)'/2
    double gp = -p2 *
                (j.cn * j.cn * j.dn * j.dn - sn2 * j.dn * j.dn -
                 p2 * sn2 * j.cn * j.cn) /
                mu2w2;
    double r = s.r;
    double r_t = g / r;
    double r_tt = gp / r - g * g / (r * r * r);
    double den = 1.0 - k.M * sn2;
    double th_t = k.U + k.N / den;
    double th_tt = 2.0 * k.M * k.N * scd / (den * den);
    double z_t = (j.dn * j.dn - c.b.E / c.b.K) / (k.mu * k.w);
    double z_tt = -2.0 * p2 * scd / (k.mu * k.w);
    double x_t = r_t * ct - r * th_t * st;
    double y_t = r_t * st + r * th_t * ct;
    double x_tt = r_tt * ct - 2.0 * r_t * th_t * st - r * th_tt * st -
                  r * th_t * th_t * ct;
    double y_tt = r_tt * st + 2.0 * r_t * th_t * ct + r * th_tt * ct -
                  r * th_t * th_t * st;
    std::array<double, 3> T{x_t / (2 * k.w), y_t / (2 * k.w), z_t / (2 * k.w)};
    std::array<double, 3> kN{x_tt / (4 * w2), y_tt / (4 * w2), z_tt / (4 * w2)};
    std::array<double, 3> Nv{kN[0] / s.kappa, kN[1] / s.kappa, kN[2] / s.kappa};
    std::array<double, 3> B{T[1] * Nv[2] - T[2] * Nv[1],
                            T[2] * Nv[0] - T[0] * Nv[2],
                            T[0] * Nv[1] - T[1] * Nv[0]};
    double kappa_s = -(p2 / w2) * scd / s.kappa / (2.0 * k.w);
    double cT = 0.5 * (k2 - 2.0 * k.lambda1);
    double cB = s.kappa * (s.tau - k.lambda2);
    for (int i = 0; i < 3; ++i) {
      s.J_vec[i] = cT * T[i] + kappa_s * Nv[i] + cB * B[i];
    }
    return s;
  };

  std::vector<double> pending;
  int total = n_periods * samples_per_period;
  pending.reserve(total);
  for (int j = total; j >= 1; --j) pending.push_back(P * j / samples_per_period);
  double min_dt = P / (samples_per_period * 32.0);

  curve.samples.reserve(total + 1);
  curve.samples.push_back(make_sample(0.0, 0.0));
  std::complex<double> zarg = quad ? std::complex<double>(1.0) : c.th1(0.0);
  double prev_t = 0.0, prev_theta = 0.0;
  while (!pending.empty()) {
    double t1 = pending.back();
    double th1;
    std::complex<double> ztry = zarg;
    if (quad) {
      th1 = theta_fallback(c, t1);
    } else {
      double d = advance_arg(c, prev_t, ztry, t1);
      th1 = prev_theta + (k.U + c.sgnN * c.slope) * (t1 - prev_t) +
            c.sgnN * d;
    }
    // densify where theta advances sharply across one interval
    if (std::abs(th1 - prev_theta) > 0.35 && t1 - prev_t > min_dt) {
      pending.push_back(0.5 * (prev_t + t1));
      continue;
    }
    pending.pop_back();
    zarg = ztry;
    curve.samples.push_back(make_sample(t1, th1));
    prev_t = t1;
    prev_theta = th1;
  }

  const CurveSample& f = curve.samples.front();
  const CurveSample& l = curve.samples.back();
  curve.closure_gap = std::sqrt((f.x - l.x) * (f.x - l.x) +
                                (f.y - l.y) * (f.y - l.y) +
                                (f.z - l.z) * (f.z - l.z));
  return curve;
}

FirstIntegralReport verify_first_integrals(const RodCurve& curve) {
  FirstIntegralReport rep;
  const RodConstants& k = curve.constants;
  double mu = k.mu;
  std::array<double, 3> lo{1e300, 1e300, 1e300}, hi{-1e300, -1e300, -1e300};
  for (const CurveSample& s : curve.samples) {
    double k2 = s.kappa * s.kappa;
    double r1 = k2 * (2.0 * s.tau - k.lambda2) - k.c;
    // kappa_s^2 from the analytic sn-derivative, consistent with synthesis;
    // cn^2/kappa^2 is evaluated as (1-sn^2)/(1-(p^2/w^2)sn^2), which stays
    // finite (-> 1) where the curvature vanishes on the w = p family
    specfun::Jacobi j = specfun::jacobi_sn_cn_dn(s.t, specfun::Modulus(k.p));
    double p2w2 = (k.p * k.p) / (k.w * k.w);
    double sn2 = j.sn * j.sn;
    double den = 1.0 - p2w2 * sn2;
    double ratio2 = den > 1e-12 ? (1.0 - sn2) / den : 1.0;
    double base = p2w2 * j.sn * j.dn / (2.0 * k.w);
    double kappa_s_sq = base * base * ratio2;
    double r2 = kappa_s_sq + 0.25 * (k2 - 2.0 * k.lambda1) *
                                 (k2 - 2.0 * k.lambda1) +
                k2 * (s.tau - k.lambda2) * (s.tau - k.lambda2) - mu * mu;
    double Jn = std::sqrt(s.J_vec[0] * s.J_vec[0] + s.J_vec[1] * s.J_vec[1] +
                          s.J_vec[2] * s.J_vec[2]);
    rep.max_first_integral_1 = std::max(rep.max_first_integral_1, std::abs(r1));
    rep.max_first_integral_2 = std::max(rep.max_first_integral_2, std::abs(r2));
    rep.max_J_length_dev =
        std::max(rep.max_J_length_dev, std::abs(Jn - mu) / mu);
    for (int i = 0; i < 3; ++i) {
      lo[i] = std::min(lo[i], s.J_vec[i]);
      hi[i] = std::max(hi[i], s.J_vec[i]);
    }
  }
  for (int i = 0; i < 3; ++i) {
    rep.max_J_variation = std::max(rep.max_J_variation, (hi[i] - lo[i]) / mu);
  }
  rep.a_mu_identity =
      std::abs(k.a * mu * mu - (0.5 * k.c - k.lambda1 * k.lambda2));
  return rep;
}

namespace {
// Proper crossing test for closed segments, excluding shared endpoints.
bool segments_cross(double ax, double ay, double bx, double by, double cx,
                    double cy, double dx, double dy) {
  auto orient = [](double px, double py, double qx, double qy, double rx,
                   double ry) {
    return (qx - px) * (ry - py) - (qy - py) * (rx - px);
  };
  double o1 = orient(ax, ay, bx, by, cx, cy);
  double o2 = orient(ax, ay, bx, by, dx, dy);
  double o3 = orient(cx, cy, dx, dy, ax, ay);
  double o4 = orient(cx, cy, dx, dy, bx, by);
  return (o1 * o2 < 0.0) && (o3 * o4 < 0.0);
}
}  // namespace

EmbeddingReport torus_embedding_check(const RodCurve& curve, double tol) {
  EmbeddingReport rep;
  const RodConstants& k = curve.constants;
  rep.r_min_formula =
      std::sqrt(std::max(k.A - k.U * k.U, 0.0)) / (k.mu * k.w);
  rep.r_min = 1e300;
  for (const CurveSample& s : curve.samples) {
    rep.r_min = std::min(rep.r_min, s.r);
  }
  rep.embedded = rep.r_min > tol;

  // (r,z) profile over the first period as a closed polyline
  double P_end = 2.0 * specfun::complete_K(specfun::Modulus(k.p));
  std::vector<std::pair<double, double>> prof;
  for (const CurveSample& s : curve.samples) {
    if (s.t <= P_end * (1.0 + 1e-12)) prof.emplace_back(s.r, s.z);
    else break;
  }
  rep.simple_profile = true;
  size_t n = prof.size();
  if (n >= 4) {
    for (size_t i = 0; i + 1 < n && rep.simple_profile; ++i) {
      for (size_t jj = i + 2; jj + 1 < n; ++jj) {
        if (i == 0 && jj + 2 == n) continue;  // adjacent through closure
        if (segments_cross(prof[i].first, prof[i].second, prof[i + 1].first,
                           prof[i + 1].second, prof[jj].first, prof[jj].second,
                           prof[jj + 1].first, prof[jj + 1].second)) {
          rep.simple_profile = false;
          break;
        }
      }
    }
  }
  return rep;
}

}  // namespace elrod::rodsynth

#include "elrod/closure.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace elrod::closure {

namespace {

constexpr double kPi = numeric::kPi;
constexpr double kTwoPi = 2.0 * numeric::kPi;

double delta_at(double p, double phi) {
  return rodsynth::delta_theta(
      paramspace::derive_constants(paramspace::DiskPoint::from_polar(p, phi)));
}

}  // namespace

KnotSpec KnotSpec::make(int m, int n) {
  if (n == 0) throw DomainError("KnotSpec: n must be nonzero");
  if (n < 0) {
    m = -m;
    n = -n;
  }
  if (m == 0 || std::abs(m) >= n) {
    throw DomainError("KnotSpec: |m/n| must lie in (0,1)");
  }
  if (std::gcd(std::abs(m), n) != 1) {
    throw DomainError("KnotSpec: m and n must be coprime");
  }
  KnotSpec s;
  s.m = m;
  s.n = n;
  s.delta_theta_target = kTwoPi * m / n;
  s.periods_to_close = n;
  return s;
}

DiskPoint solve_on_ray(double phi, double target) {
  // scan for a sign change: the advance is not monotone along rays, so the
  // endpoints alone can miss interior brackets
  const int grid = 64;
  double a = 1e-6, b = paramspace::find_p_max() - 1e-9;
  double p_lo = a, p_hi = b, f_lo = 0.0;
  double span_min = 1e300, span_max = -1e300;
  bool bracketed = false;
  double prev_p = a, prev_f = delta_at(a, phi) - target;
  for (int i = 1; i <= grid && !bracketed; ++i) {
    double p = a + (b - a) * i / grid;
    double f = delta_at(p, phi) - target;
    span_min = std::min({span_min, prev_f + target, f + target});
    span_max = std::max({span_max, prev_f + target, f + target});
    if (prev_f == 0.0) return DiskPoint::from_polar(prev_p, phi);
    if (prev_f * f <= 0.0) {
      p_lo = prev_p;
      p_hi = p;
      f_lo = prev_f;
      bracketed = true;
    }
    prev_p = p;
    prev_f = f;
  }
  if (!bracketed) {
    std::ostringstream msg;
    msg << "solve_on_ray: target " << target << " not bracketed on phi="
        << phi << "; advance spans [" << span_min << ", " << span_max << "]";
    throw SolveError(msg.str());
  }
  // plain bisection: the advance may jump across the self-intersection locus,
  // so secant-style steps are not trustworthy here
  double p_mid = 0.5 * (p_lo + p_hi), f_mid = 0.0;
  for (int it = 0; it < 200; ++it) {
    p_mid = 0.5 * (p_lo + p_hi);
    f_mid = delta_at(p_mid, phi) - target;
    if (std::abs(f_mid) < 1e-12) break;
    if (f_lo * f_mid <= 0.0) {
      p_hi = p_mid;
    } else {
      p_lo = p_mid;
      f_lo = f_mid;
    }
  }
  if (std::abs(f_mid) > 1e-10) {
    throw SolveError(
        "solve_on_ray: bisection pinched a discontinuity, not a root");
  }
  return DiskPoint::from_polar(p_mid, phi);
}

KnotClass knot_classify(const ClosedRod& rod) {
  const RodCurve& c = rod.curve;
  if (c.samples.size() < 2) throw DomainError("knot_classify: empty curve");
  if (c.closure_gap > 1e-5) {
    throw DomainError("knot_classify: curve does not close");
  }
  double winding = c.samples.back().theta - c.samples.front().theta;
  long m_total = std::lround(winding / kTwoPi);
  if (std::abs(winding - kTwoPi * double(m_total)) > 1e-6) {
    throw DomainError("knot_classify: theta winding is not a whole turn");
  }
  KnotClass k;
  k.m = int(m_total);
  k.n = c.periods;
  k.embedded = rodsynth::torus_embedding_check(c).embedded;
  if (!k.embedded) {
    k.name = "not embedded (classification withheld)";
    return k;
  }
  int g = std::gcd(std::abs(k.m), k.n);
  int mr = k.m / g, nr = k.n / g;
  std::ostringstream name;
  if (g > 1) {
    k.multiple_cover = true;
    name << g << "-fold cover of ";
  }
  if (std::abs(mr) > 1 && nr > 1) {
    name << "(" << mr << "," << nr << ") torus knot";
  } else {
    name << "unknot";
  }
  k.name = name.str();
  return k;
}

namespace {

ClosedRod finish(const DiskPoint& pt, const KnotSpec& spec) {
  ClosedRod rod;
  rod.point = pt;
  rod.spec = spec;
  rod.curve = rodsynth::synthesize(pt, spec.periods_to_close, 256);
  rod.knot = knot_classify(rod);
  rod.embedded = rod.knot.embedded;
  return rod;
}

}  // namespace

ClosedRod solve_knot(const KnotSpec& spec, Quadrant quadrant) {
  double base = (quadrant == Quadrant::II) ? kPi / 2 : 3 * kPi / 2;
  const int rays = 25;
  SolveError last("solve_knot: no ray attempted");
  for (int i = 1; i <= rays; ++i) {
    double phi = base + (kPi / 2) * i / (rays + 1);
    try {
      return finish(solve_on_ray(phi, spec.delta_theta_target), spec);
    } catch (const SolveError& e) {
      last = e;
    }
  }
  throw last;
}

ClosedRod solve_knot(const KnotSpec& spec) {
  return solve_knot(spec, spec.m > 0 ? Quadrant::II : Quadrant::IV);
}

ClosedRod solve_constant_torsion_knot(int k, int n) {
  if (n == 0) throw DomainError("solve_constant_torsion_knot: n must be nonzero");
  if (n < 0) {
    k = -k;
    n = -n;
  }
  if (k == 0 || 2 * std::abs(k) >= n) {
    throw DomainError(
        "solve_constant_torsion_knot: requires 0 < |k/n| < 1/2");
  }
  if (std::gcd(std::abs(k), n) != 1) {
    throw DomainError("solve_constant_torsion_knot: k and n must be coprime");
  }
  // advance ranges over (-pi,0) on the positive X half-axis and (0,pi) on
  // the negative half-axis
  double phi = (k < 0) ? 0.0 : kPi;
  KnotSpec spec = KnotSpec::make(k, n);
  DiskPoint pt = solve_on_ray(phi, spec.delta_theta_target);
  // uniqueness rests on strict monotonicity along the axis; verify it
  double p_max = paramspace::find_p_max();
  double prev = delta_at(1e-4, phi);
  double dir = 0.0;
  for (int i = 1; i < 200; ++i) {
    double p = 1e-4 + (p_max - 2e-4) * i / 199.0;
    double d = delta_at(p, phi);
    double step = d - prev;
    if (dir == 0.0) dir = step;
    if (step * dir <= 0.0) {
      throw SolveError(
          "solve_constant_torsion_knot: advance not monotone along the axis");
    }
    prev = d;
  }
  return finish(pt, spec);
}

}  // namespace elrod::closure

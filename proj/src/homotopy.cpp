#include "elrod/homotopy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>

namespace elrod::homotopy {

using paramspace::RodConstants;
using specfun::Modulus;

namespace {

constexpr double kPi = numeric::kPi;
constexpr double kTwoPi = 2.0 * numeric::kPi;

double smooth_at(const DiskPoint& pt) {
  return rodsynth::delta_theta_smooth(paramspace::derive_constants(pt));
}

std::optional<DiskPoint> try_point(double X, double Y) {
  try {
    return DiskPoint::from_xy(X, Y);
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

struct Vec2 {
  double x = 0.0, y = 0.0;
};

double norm(const Vec2& v) { return std::hypot(v.x, v.y); }
double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

// Gradient of the smooth advance in the (X,Y) chart by central differences;
// falls back to one-sided stencils where the disk edge cuts off a neighbor.
std::optional<Vec2> gradient(const DiskPoint& pt) {
  const double h = 1e-7;
  std::optional<double> f0;
  auto value = [&](double X, double Y) -> std::optional<double> {
    auto q = try_point(X, Y);
    if (!q) return std::nullopt;
    return smooth_at(*q);
  };
  auto partial = [&](double dx, double dy) -> std::optional<double> {
    auto fp = value(pt.X + h * dx, pt.Y + h * dy);
    auto fm = value(pt.X - h * dx, pt.Y - h * dy);
    if (fp && fm) return (*fp - *fm) / (2.0 * h);
    if (!f0) f0 = smooth_at(pt);
    if (fp) return (*fp - *f0) / h;
    if (fm) return (*f0 - *fm) / h;
    return std::nullopt;
  };
  auto gx = partial(1.0, 0.0);
  auto gy = partial(0.0, 1.0);
  if (!gx || !gy) return std::nullopt;
  return Vec2{*gx, *gy};
}

// Newton steps along the gradient, holding the smooth advance at the level.
std::optional<DiskPoint> correct(DiskPoint pt, double level) {
  for (int it = 0; it < 12; ++it) {
    double F = smooth_at(pt) - level;
    if (std::abs(F) < 1e-12) return pt;
    auto g = gradient(pt);
    if (!g) return std::nullopt;
    double g2 = dot(*g, *g);
    if (g2 < 1e-24) return std::nullopt;
    auto next = try_point(pt.X - F * g->x / g2, pt.Y - F * g->y / g2);
    if (!next) return std::nullopt;
    pt = *next;
  }
  if (std::abs(smooth_at(pt) - level) < 1e-10) return pt;
  return std::nullopt;
}

// Follows the level curve from `start` in the `dir` half-plane until the
// disk edge (or, for the level -pi chain, the origin neighborhood).
std::vector<DiskPoint> trace_dir(const DiskPoint& start, Vec2 dir,
                                 double level, double step,
                                 bool stop_near_origin) {
  std::vector<DiskPoint> out;
  DiskPoint cur = start;
  const double floor_h = step / 4096.0;
  const double p_max = paramspace::find_p_max();
  double h = step;
  for (int it = 0; it < 200000; ++it) {
    if (cur.p < 1e-4 || cur.X * cur.X + cur.Y * cur.Y > 1.0 - 1e-8) break;
    if (stop_near_origin && cur.p > p_max - 2e-4) break;
    auto g = gradient(cur);
    if (!g || norm(*g) < 1e-12) {
      throw SolveError("trace_level: level-curve tangent undefined");
    }
    Vec2 t{g->y, -g->x};
    double tn = norm(t);
    t = {t.x / tn, t.y / tn};
    if (dot(t, dir) < 0.0) t = {-t.x, -t.y};
    bool advanced = false;
    while (h >= floor_h) {
      auto pred = try_point(cur.X + h * t.x, cur.Y + h * t.y);
      auto nxt = pred ? correct(*pred, level) : std::nullopt;
      if (nxt &&
          std::hypot(nxt->X - cur.X, nxt->Y - cur.Y) > 0.1 * h) {
        dir = {nxt->X - cur.X, nxt->Y - cur.Y};
        cur = *nxt;
        out.push_back(cur);
        if (h < step) h = std::min(step, 2.0 * h);
        advanced = true;
        break;
      }
      h *= 0.5;
    }
    if (!advanced) {
      // at the disk edge even the floor step leaves the chart; everywhere
      // else a corrector failure is a genuine error
      if (cur.p < 2e-3) break;
      throw SolveError(
          "trace_level: corrector failed to hold the level at the step floor");
    }
  }
  return out;
}

double signed_residual(LocusKind kind, const DiskPoint& pt) {
  RodConstants c = paramspace::derive_constants(pt);
  switch (kind) {
    case LocusKind::ElasticCurve: return c.X;
    case LocusKind::ConstantTorsion: return c.Y;
    case LocusKind::SelfIntersecting: return c.V;
    case LocusKind::Kida: return c.U;
    default: throw DomainError("signed_residual: not a locus kind");
  }
}

// Bisection along a chain segment, projecting each trial point back onto
// the level. When the segment straddles the excluded origin (the level -pi
// chain), the midpoint chart fails; the crossing degenerates to the origin
// limit and the nearer endpoint is reported as-is.
Landmark refine_crossing(LocusKind kind, const DiskPoint& a,
                         const DiskPoint& b, double level) {
  DiskPoint lo = a, hi = b;
  double f_lo = signed_residual(kind, lo);
  for (int it = 0; it < 80; ++it) {
    auto mid = try_point(0.5 * (lo.X + hi.X), 0.5 * (lo.Y + hi.Y));
    auto proj = mid ? correct(*mid, level) : std::nullopt;
    if (!proj) break;
    double f_mid = signed_residual(kind, *proj);
    if (f_lo * f_mid <= 0.0) {
      hi = *proj;
    } else {
      lo = *proj;
      f_lo = f_mid;
    }
    if (std::hypot(hi.X - lo.X, hi.Y - lo.Y) < 1e-15) break;
  }
  double r_lo = std::abs(signed_residual(kind, lo));
  double r_hi = std::abs(signed_residual(kind, hi));
  const DiskPoint& best = (r_lo <= r_hi) ? lo : hi;
  return Landmark{kind, best, std::min(r_lo, r_hi)};
}

std::vector<Landmark> scan_landmarks(const std::vector<DiskPoint>& chain,
                                     double level) {
  std::vector<Landmark> out;
  const LocusKind kinds[] = {
      LocusKind::ElasticCurve, LocusKind::ConstantTorsion,
      LocusKind::SelfIntersecting, LocusKind::Kida};
  for (size_t i = 0; i + 1 < chain.size(); ++i) {
    for (LocusKind kind : kinds) {
      double f0 = signed_residual(kind, chain[i]);
      double f1 = signed_residual(kind, chain[i + 1]);
      if (f0 == 0.0) {
        out.push_back(Landmark{kind, chain[i], 0.0});
      } else if (f0 * f1 < 0.0) {
        out.push_back(refine_crossing(kind, chain[i], chain[i + 1], level));
      }
    }
  }
  return out;
}

DiskPoint start_on_axis(double level) {
  // the advance runs 0 -> -pi monotonically up the positive Y-axis
  double p = numeric::find_root(
      [level](double p) {
        return smooth_at(DiskPoint::from_polar(p, kPi / 2.0)) - level;
      },
      1e-5, paramspace::find_p_max() - 1e-8, 1e-14, 1e-13);
  return DiskPoint::from_polar(p, kPi / 2.0);
}

DiskPoint start_on_edge_qiv(double level) {
  // the -pi level never meets the axis interior; enter from the
  // fourth-quadrant edge where the advance limits to 2 pi sin(phi)
  const double p0 = 2e-3;
  double phi = numeric::find_root(
      [level, p0](double phi) {
        return smooth_at(DiskPoint::from_polar(p0, phi)) - level;
      },
      1.5 * kPi + 1e-3, kTwoPi - 1e-3, 1e-14, 1e-13);
  auto pt = correct(DiskPoint::from_polar(p0, phi), level);
  if (!pt) throw SolveError("trace_level: could not seed the edge start");
  return *pt;
}

}  // namespace

double physical_delta_theta(const DiskPoint& pt) {
  return rodsynth::delta_theta(paramspace::derive_constants(pt));
}

HomotopyFamily trace_level(int k, int n, double step) {
  if (k < 1 || n < 1) throw DomainError("trace_level: k, n must be positive");
  if (std::gcd(k, n) != 1) throw DomainError("trace_level: k, n must be coprime");
  if (!(step > 0.0)) throw DomainError("trace_level: step must be positive");

  if (k > n) {
    // the mirror family traced and rotated by 180 degrees; the advance maps
    // to -level - 2 pi under the rotation, which is exactly this level
    HomotopyFamily base = trace_level(n, k, step);
    HomotopyFamily fam;
    fam.k = k;
    fam.n = n;
    fam.level = -kTwoPi * k / double(k + n);
    fam.rotated = true;
    fam.endpoint_limits = {k, n};
    fam.chain.reserve(base.chain.size());
    for (auto it = base.chain.rbegin(); it != base.chain.rend(); ++it) {
      fam.chain.push_back(DiskPoint::from_xy(-it->X, -it->Y));
    }
    fam.landmarks = scan_landmarks(fam.chain, fam.level);
    return fam;
  }

  HomotopyFamily fam;
  fam.k = k;
  fam.n = n;
  fam.level = -kTwoPi * k / double(k + n);
  fam.endpoint_limits = {k, n};

  if (k == n) {  // only (1,1): level -pi, chain antipodally symmetric
    DiskPoint start = start_on_edge_qiv(fam.level);
    auto g = gradient(start);
    if (!g) throw SolveError("trace_level: no tangent at the edge seed");
    Vec2 t{g->y, -g->x};
    Vec2 inward{-start.X, -start.Y};
    if (dot(t, inward) < 0.0) t = {-t.x, -t.y};
    std::vector<DiskPoint> arm = trace_dir(start, t, fam.level, step, true);
    fam.chain.push_back(start);
    fam.chain.insert(fam.chain.end(), arm.begin(), arm.end());
    std::vector<DiskPoint> mirrored;
    mirrored.reserve(fam.chain.size());
    for (auto it = fam.chain.rbegin(); it != fam.chain.rend(); ++it) {
      mirrored.push_back(DiskPoint::from_xy(-it->X, -it->Y));
    }
    fam.chain.insert(fam.chain.end(), mirrored.begin(), mirrored.end());
  } else {
    DiskPoint start = start_on_axis(fam.level);
    auto g = gradient(start);
    if (!g) throw SolveError("trace_level: no tangent at the axis seed");
    Vec2 t{g->y, -g->x};
    double tn = norm(t);
    t = {t.x / tn, t.y / tn};
    std::vector<DiskPoint> armA = trace_dir(start, t, fam.level, step, false);
    std::vector<DiskPoint> armB =
        trace_dir(start, Vec2{-t.x, -t.y}, fam.level, step, false);
    fam.chain.reserve(armA.size() + armB.size() + 1);
    for (auto it = armA.rbegin(); it != armA.rend(); ++it) {
      fam.chain.push_back(*it);
    }
    fam.chain.push_back(start);
    fam.chain.insert(fam.chain.end(), armB.begin(), armB.end());
  }

  // orient the chain fourth-quadrant edge -> second-quadrant edge
  if (fam.chain.front().Y > fam.chain.back().Y) {
    std::reverse(fam.chain.begin(), fam.chain.end());
  }
  fam.landmarks = scan_landmarks(fam.chain, fam.level);
  return fam;
}

std::vector<Landmark> landmark_points(const HomotopyFamily& fam) {
  const LocusKind kinds[] = {
      LocusKind::ElasticCurve, LocusKind::ConstantTorsion,
      LocusKind::SelfIntersecting, LocusKind::Kida};
  std::vector<Landmark> out;
  std::ostringstream violation;
  bool bad = false;
  for (LocusKind kind : kinds) {
    std::vector<const Landmark*> hits;
    for (const Landmark& lm : fam.landmarks) {
      if (lm.kind == kind) hits.push_back(&lm);
    }
    if (hits.size() != 1) {
      bad = true;
      violation << (bad && out.empty() ? "" : "; ")
                << paramspace::locus_name(kind) << " crossed "
                << hits.size() << " times";
      continue;
    }
    out.push_back(*hits.front());
  }
  if (bad) {
    throw SolveError("landmark_points: crossing count violation: " +
                     violation.str());
  }
  return out;
}

Partials partials_delta_theta(const DiskPoint& pt) {
  RodConstants c = paramspace::derive_constants(pt);
  if (std::abs(c.V) < 1e-12) {
    throw DomainError(
        "partials_delta_theta: (p,U) coordinates degenerate on the V=0 locus");
  }
  Modulus m(c.p);
  double K = specfun::complete_K(m);
  double E = specfun::complete_E(m);
  double s = std::sin(c.xi);
  double co = std::cos(c.xi);  // = V / p'
  double pp2 = c.p_prime * c.p_prime;
  double root = std::sqrt(1.0 - pp2 * s * s);
  Partials out;
  out.d_dU = 2.0 * K *
             (1.0 - c.U * (E / K - pp2 * s * s) / (pp2 * co * s * root));
  double w2 = c.w * c.w;
  double sq = std::sqrt(std::max(1.0 - w2, 0.0));
  out.dU_dphi = c.V *
                (2.0 * c.X * c.Z - 2.0 * c.w * c.X * c.X + c.w * (c.A - 1.0)) *
                (2.0 * c.Y * (c.w * c.X - c.Z) + sq * (c.A - 1.0)) /
                (16.0 * c.mu * c.mu * w2 * w2 * c.w * sq);
  return out;
}

}  // namespace elrod::homotopy

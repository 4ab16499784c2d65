#include "elrod/paramspace.hpp"

#include <algorithm>
#include <cmath>

namespace elrod::paramspace {

using specfun::Modulus;

namespace {
constexpr double kPi = numeric::kPi;
constexpr double kTwoPi = 2.0 * numeric::kPi;

double wrap_angle(double phi) {
  double w = std::fmod(phi, kTwoPi);
  if (w < 0) w += kTwoPi;
  return w;
}
}  // namespace

double A_of_p(double p) {
  if (!(p >= 0.0 && p < 1.0)) throw DomainError("A_of_p: p must lie in [0,1)");
  if (p == 0.0) return 1.0;
  Modulus m(p);
  return 2.0 * specfun::complete_E(m) / specfun::complete_K(m) - 1.0;
}

double find_p_max() {
  static const double pmax = numeric::find_root(
      [](double p) { return A_of_p(p); }, 0.85, 0.95, 1e-15, 1e-15);
  return pmax;
}

double p_from_A(double A) {
  if (!(A > 0.0 && A < 1.0)) {
    throw DomainError("p_from_A: A must lie in (0,1)");
  }
  return numeric::find_root([A](double p) { return A_of_p(p) - A; }, 1e-14,
                            find_p_max(), 1e-15, 1e-15);
}

DiskPoint DiskPoint::from_xy(double X, double Y) {
  double A = X * X + Y * Y;
  if (A >= 1.0) throw DomainError("DiskPoint: outside the open unit disk");
  if (A < 1e-20) {
    throw DomainError(
        "DiskPoint: the disk origin (planar figure-eight limit) is excluded");
  }
  DiskPoint pt;
  pt.X = X;
  pt.Y = Y;
  pt.p = p_from_A(A);
  pt.phi = wrap_angle(std::atan2(Y, X));
  return pt;
}

DiskPoint DiskPoint::from_polar(double p, double phi) {
  if (!(p > 0.0 && p < find_p_max())) {
    throw DomainError("DiskPoint: p must lie in (0, p_max)");
  }
  DiskPoint pt;
  pt.p = p;
  pt.phi = wrap_angle(phi);
  double sA = std::sqrt(A_of_p(p));
  double c = std::cos(pt.phi), s = std::sin(pt.phi);
  // land exactly on the axes; the loci there are exact identities (Y = 0
  // gives c = 0, X = 0 gives lambda2 = 0)
  if (std::abs(c) < 4e-16) c = 0.0;
  if (std::abs(s) < 4e-16) s = 0.0;
  pt.X = sA * c;
  pt.Y = sA * s;
  return pt;
}

RodConstants derive_constants(const DiskPoint& pt) {
  if (!(pt.p > 0.0 && pt.p < find_p_max())) {
    throw DomainError("derive_constants: point degenerate, p outside (0, p_max)");
  }
  RodConstants k;
  k.p = pt.p;
  k.p_prime = std::sqrt(1.0 - pt.p * pt.p);
  k.X = pt.X;
  k.Y = pt.Y;
  k.A = A_of_p(pt.p);
  double p2 = k.p * k.p;
  double pp2 = k.p_prime * k.p_prime;
  k.w = std::sqrt(k.Y * k.Y + p2);
  // p'^2 - Y^2 and 1 - w^2 are O(p^4) near the boundary and can round
  // negative there
  k.Z = k.Y * std::sqrt(std::max(pp2 - k.Y * k.Y, 0.0));
  double w2 = k.w * k.w;
  k.c = k.Z / w2;
  k.lambda1 = 0.5 + (k.A - 1.0) / (4.0 * w2);
  k.lambda2 = k.X / k.w;
  double zwx = k.Z - k.w * k.X;
  k.mu = std::sqrt((1.0 - k.A) * (1.0 - k.A) + 4.0 * zwx * zwx) / (4.0 * w2);
  k.U = (2.0 * k.w * zwx + k.X * (1.0 - k.A)) / (4.0 * k.mu * w2);
  k.a = k.U / (k.mu * k.w);
  k.V = (2.0 * k.X * k.w * std::sqrt(std::max(1.0 - w2, 0.0)) -
         k.Y * (1.0 + k.A - 2.0 * w2)) /
        (4.0 * k.mu * w2);
  double AU = k.A - k.U * k.U;  // = V^2 by the square identity
  k.M = p2 / (p2 + AU);
  k.N = (0.5 * k.U * (1.0 - k.A) - 2.0 * k.lambda2 * k.mu * w2 * k.w) /
            (p2 + AU) -
        k.U;
  double s2 = (k.M - p2) / (pp2 * k.M);
  k.xi_hat = std::asin(std::sqrt(std::clamp(s2, 0.0, 1.0)));
  k.xi = std::acos(std::clamp(k.V / k.p_prime, -1.0, 1.0));
  return k;
}

const char* locus_name(LocusKind k) {
  switch (k) {
    case LocusKind::ElasticCurve: return "elastic";
    case LocusKind::ConstantTorsion: return "torsion";
    case LocusKind::Kida: return "kida";
    case LocusKind::SelfIntersecting: return "selfint";
    default: return "generic";
  }
}

LocusTag classify_locus(const DiskPoint& pt, double tol) {
  RodConstants k = derive_constants(pt);
  double w2 = k.w * k.w;
  std::vector<std::pair<LocusKind, double>> res = {
      {LocusKind::ElasticCurve, std::abs(k.X)},
      {LocusKind::ConstantTorsion, std::abs(k.Y)},
      {LocusKind::Kida,
       std::abs(2.0 * k.Z * k.w -
                k.X * (k.A - 1.0 + 2.0 * k.p * k.p + 2.0 * k.Y * k.Y))},
      {LocusKind::SelfIntersecting,
       std::abs(2.0 * k.X * k.w * std::sqrt(std::max(1.0 - w2, 0.0)) -
                k.Y * (1.0 + k.A - 2.0 * w2))},
  };
  LocusTag tag;
  for (const auto& [kind, r] : res) {
    if (r < tol) tag.matches.emplace_back(kind, r);
  }
  std::sort(tag.matches.begin(), tag.matches.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });
  if (!tag.matches.empty()) {
    tag.kind = tag.matches.front().first;
    tag.residual = tag.matches.front().second;
  } else {
    tag.kind = LocusKind::Generic;
    tag.residual =
        std::min_element(res.begin(), res.end(), [](const auto& a,
                                                    const auto& b) {
          return a.second < b.second;
        })->second;
  }
  return tag;
}

double kida_sin2_phi(double p) {
  if (p < 0.05) {
    // The closed form loses all precision here: the denominator is O(p^4)
    // built from O(1) cancellations. Taylor expansion of the same display.
    double p2 = p * p;
    return 2.0 / 3.0 -
           p2 * (1.0 / 6.0 + p2 * (13.0 / 192.0 + p2 * 5.0 / 128.0));
  }
  double A = A_of_p(p);
  double g = A - 1.0 + 2.0 * p * p;
  return g * g / (1.0 - A * A - 2.0 * A * g);
}

double kida_phi(double p) {
  return std::asin(std::sqrt(std::clamp(kida_sin2_phi(p), 0.0, 1.0)));
}

double selfint_phi(double p) {
  double A = A_of_p(p);
  double pp = std::sqrt(1.0 - p * p);
  // cot(phi) = -(A + 2p^2 - 1)/(2 p p'), second-quadrant branch
  return kPi - std::atan2(2.0 * p * pp, A + 2.0 * p * p - 1.0);
}

double kida_small_p_limit() { return kida_sin2_phi(1e-4); }

double boundary_delta_theta(double phi) {
  double w = wrap_angle(phi);
  double quarter = std::fmod(w, kPi / 2.0);
  if (quarter < 1e-12 || kPi / 2.0 - quarter < 1e-12) {
    throw DomainError(
        "boundary_delta_theta: undefined limit at axis points (p = w = 0)");
  }
  bool second_or_fourth = (w > kPi / 2.0 && w < kPi) ||
                          (w > 1.5 * kPi && w < kTwoPi);
  return second_or_fourth ? kTwoPi * std::sin(w) : 0.0;
}

std::vector<LocusSample> sample_locus(LocusKind kind, int n_samples) {
  if (n_samples < 2) throw DomainError("sample_locus: need at least 2 samples");
  double p_lo = 1e-4, p_hi = find_p_max() - 1e-6;
  auto phi_of_p = [kind](double p) -> double {
    switch (kind) {
      case LocusKind::ElasticCurve: return kPi / 2.0;
      case LocusKind::ConstantTorsion: return 0.0;
      case LocusKind::Kida: return kida_phi(p);
      case LocusKind::SelfIntersecting: return selfint_phi(p);
      default: throw DomainError("sample_locus: generic is not a locus");
    }
  };
  auto make = [&](double p) {
    DiskPoint pt = DiskPoint::from_polar(p, phi_of_p(p));
    return LocusSample{pt.p, pt.phi, pt.X, pt.Y};
  };
  std::vector<LocusSample> out;
  out.reserve(2 * n_samples);
  for (int i = 0; i < n_samples; ++i) {
    out.push_back(make(p_lo + (p_hi - p_lo) * i / double(n_samples - 1)));
  }
  // One densification pass where the polyline turns sharply.
  std::vector<LocusSample> dense;
  dense.push_back(out.front());
  for (size_t i = 1; i + 1 < out.size(); ++i) {
    double ax = out[i].X - out[i - 1].X, ay = out[i].Y - out[i - 1].Y;
    double bx = out[i + 1].X - out[i].X, by = out[i + 1].Y - out[i].Y;
    double cross = std::abs(ax * by - ay * bx);
    double dot = ax * bx + ay * by;
    if (std::atan2(cross, dot) > 0.02) {
      dense.push_back(make(0.5 * (out[i - 1].p + out[i].p)));
    }
    dense.push_back(out[i]);
  }
  dense.push_back(out.back());
  return dense;
}

}  // namespace elrod::paramspace

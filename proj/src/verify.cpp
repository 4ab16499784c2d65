#include "elrod/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>

#include "elrod/io.hpp"

namespace elrod::verify {

namespace {

constexpr double kPi = numeric::kPi;
constexpr double kTwoPi = 2.0 * numeric::kPi;

using paramspace::DiskPoint;
using paramspace::LocusKind;
using paramspace::RodConstants;
using specfun::Modulus;

struct Builder {
  const Options& opts;
  std::vector<Check> checks;

  void add(const std::string& name, double residual, double tol) {
    Check c;
    c.name = name;
    c.residual = residual;
    c.default_tolerance = tol;
    auto it = opts.tolerance_overrides.find(name);
    c.tolerance = it == opts.tolerance_overrides.end() ? tol : it->second;
    c.pass = residual <= c.tolerance;
    c.tolerance_induced = !c.pass && residual <= c.default_tolerance;
    checks.push_back(c);
  }

  // Boolean conditions report residual 0 or 1 against tolerance 1/2.
  void add_flag(const std::string& name, bool ok) {
    add(name, ok ? 0.0 : 1.0, 0.5);
  }
};

DiskPoint random_interior(std::mt19937& rng) {
  std::uniform_real_distribution<double> up(0.03, paramspace::find_p_max() -
                                                      0.03);
  std::uniform_real_distribution<double> uphi(0.0, kTwoPi);
  for (;;) {
    DiskPoint pt = DiskPoint::from_polar(up(rng), uphi(rng));
    RodConstants k = paramspace::derive_constants(pt);
    if (1.0 - k.M > 1e-3 && std::abs(pt.Y) > 1e-2 && std::abs(k.V) > 1e-3) {
      return pt;
    }
  }
}

double frame_winding(const rodsynth::RodCurve& curve) {
  return (curve.samples.back().theta - curve.samples.front().theta) / kTwoPi;
}

// ---- criterion bodies ------------------------------------------------

void criterion_identities(Builder& b) {
  double legendre = 0.0;
  for (int i = 0; i <= 12; ++i) {
    double p = std::pow(10.0, -3.0 + 2.8 * i / 12.0);
    Modulus m(p), mc(std::sqrt(1.0 - p * p));
    double K = specfun::complete_K(m), E = specfun::complete_E(m);
    double Kp = specfun::complete_K(mc), Ep = specfun::complete_E(mc);
    legendre =
        std::max(legendre, std::abs(E * Kp + Ep * K - K * Kp - kPi / 2.0));
  }
  b.add("legendre-relation", legendre, 1e-12);

  double squares = 0.0;
  std::mt19937 rng(b.opts.seed);
  std::uniform_real_distribution<double> up(0.0, 0.999), ut(-25.0, 25.0);
  for (int i = 0; i < 400; ++i) {
    double p = up(rng);
    auto j = specfun::jacobi_sn_cn_dn(ut(rng), Modulus(p));
    squares = std::max(squares, std::abs(j.sn * j.sn + j.cn * j.cn - 1.0));
    squares = std::max(
        squares, std::abs(j.dn * j.dn + p * p * j.sn * j.sn - 1.0));
  }
  b.add("jacobi-squares", squares, 1e-12);

  double theta = 0.0;
  for (double p : {0.2, 0.55, 0.9}) {
    Modulus m(p);
    auto bun = specfun::EllipticBundle::make(m);
    double scale = specfun::theta_Theta(0.0, m);
    theta = std::max(theta, std::abs(specfun::theta_H1(bun.K, m)) / scale);
    for (double u : {0.3, 1.1, 2.4}) {
      theta = std::max(theta,
                       std::abs(specfun::theta_Theta(u + 2.0 * bun.K, m) -
                                specfun::theta_Theta(u, m)) /
                           scale);
      theta = std::max(theta,
                       std::abs(specfun::theta_Theta1(u + 2.0 * bun.K, m) -
                                specfun::theta_Theta1(u, m)) /
                           scale);
      theta = std::max(theta,
                       std::abs(specfun::theta_H1(u + 2.0 * bun.K, m) +
                                specfun::theta_H1(u, m)) /
                           scale);
      std::complex<double> uc(u, 0.4 * bun.K_prime);
      theta = std::max(
          theta, std::abs(specfun::theta_Theta(uc + 2.0 * bun.K, m) -
                          specfun::theta_Theta(uc, m)) /
                     scale);
    }
  }
  b.add("theta-zeros-periods", theta, 1e-12);
}

void criterion_p_max(Builder& b) {
  double p_max = paramspace::find_p_max();
  b.add("p-max-value", std::abs(p_max - 0.9089085), 1e-6);
  double root_2ek = numeric::find_root(
      [](double p) {
        Modulus m(p);
        return 2.0 * specfun::complete_E(m) - specfun::complete_K(m);
      },
      0.5, 0.99);
  b.add("p-max-2E-equals-K", std::abs(p_max - root_2ek), 1e-10);
}

void criterion_oracles(Builder& b) {
  std::mt19937 rng(b.opts.seed + 1);
  double z_dev = 0.0, th_dev = 0.0, adv_dev = 0.0;
  for (int rep = 0; rep < 5; ++rep) {
    RodConstants k = paramspace::derive_constants(random_interior(rng));
    Modulus m(k.p);
    auto bun = specfun::EllipticBundle::make(m);
    double P = 2.0 * bun.K;
    for (int i = 1; i <= 20; ++i) {
      double t = P * i / 21.0;
      double byquad = numeric::integrate(
          [&](double s) {
            auto j = specfun::jacobi_sn_cn_dn(s, m);
            return (j.dn * j.dn - bun.E / bun.K) / (k.mu * k.w);
          },
          0.0, t, 1e-12);
      z_dev = std::max(z_dev, std::abs(rodsynth::z_of_t(t, k) - byquad));
      double thquad = numeric::integrate(
          [&](double s) { return rodsynth::theta_rate(s, k); }, 0.0, t,
          1e-12);
      th_dev =
          std::max(th_dev, std::abs(rodsynth::theta_of_t(t, k) - thquad));
    }
    double advquad = numeric::integrate(
        [&](double s) { return rodsynth::theta_rate(s, k); }, 0.0, P, 1e-12);
    adv_dev = std::max(adv_dev, std::abs(rodsynth::delta_theta(k) - advquad));
  }
  b.add("z-closed-form-vs-quadrature", z_dev, 1e-9);
  b.add("theta-closed-form-vs-quadrature", th_dev, 1e-9);
  b.add("advance-vs-period-quadrature", adv_dev, 1e-9);
}

void criterion_pointwise_identities(Builder& b) {
  std::mt19937 rng(b.opts.seed + 2);
  double sq = 0.0, nsq = 0.0, nv = 0.0, sign_res = 0.0;
  for (int i = 0; i < 1000; ++i) {
    RodConstants k = paramspace::derive_constants(random_interior(rng));
    double N = b.opts.inject_n_sign_flip ? -k.N : k.N;
    sq = std::max(sq, std::abs(k.A - k.U * k.U - k.V * k.V));
    nsq = std::max(nsq, std::abs(N * N - (1.0 - k.M) * (k.M - k.p * k.p) /
                                             k.M));
    double pp2 = k.p_prime * k.p_prime;
    nv = std::max(nv, std::abs(N * N - k.V * k.V * (pp2 - k.V * k.V) /
                                           (k.V * k.V + k.p * k.p)));
    sign_res = std::max(sign_res, N * k.V);
  }
  b.add("square-identity-A-U2-V2", sq, 1e-11);
  b.add("residue-square-identity-M", nsq, 1e-11);
  b.add("residue-square-identity-V", nv, 1e-11);
  // the azimuth-rate residue must carry the sign opposite to V
  b.add("residue-sign-opposite-V", std::max(sign_res, 0.0), 1e-15);
}

void criterion_boundary_limit(Builder& b) {
  auto adv = [](double p, double phi) {
    return rodsynth::delta_theta(
        paramspace::derive_constants(DiskPoint::from_polar(p, phi)));
  };
  b.add("boundary-limit-quadrant-II",
        std::abs(adv(1e-3, 2.0 * kPi / 3.0) -
                 kTwoPi * std::sin(2.0 * kPi / 3.0)),
        1e-2);
  double q13 = std::max(std::abs(adv(1e-3, kPi / 3.0)),
                        std::abs(adv(1e-3, kPi + kPi / 3.0)));
  b.add("boundary-limit-quadrants-I-III", q13, 1e-2);
}

void criterion_kida_limit(Builder& b) {
  b.add("kida-small-p-limit",
        std::abs(paramspace::kida_small_p_limit() - 2.0 / 3.0), 1e-3);
}

void criterion_knots(Builder& b) {
  for (auto [m, n] : {std::pair{1, 2}, {1, 3}, {2, 3}}) {
    auto rod = closure::solve_knot(closure::KnotSpec::make(m, n));
    std::string tag = "knot-" + std::to_string(m) + "-" + std::to_string(n);
    b.add(tag + "-closure-gap", rod.curve.closure_gap, 1e-6);
    b.add(tag + "-winding",
          std::abs(rod.knot.m - m) + std::abs(rod.knot.n - n), 0.5);
    b.add_flag(tag + "-embedded", rod.embedded);
  }
}

void criterion_axis_monotone(Builder& b) {
  double p_max = paramspace::find_p_max();
  int violations = 0;
  double ends = 0.0;
  for (double phi : {0.0, kPi}) {
    double prev = phi == 0.0 ? 1e300 : -1e300;
    for (int i = 1; i <= 200; ++i) {
      double p = 1e-3 + (p_max - 2e-3) * i / 200.0;
      double d = rodsynth::delta_theta(
          paramspace::derive_constants(DiskPoint::from_polar(p, phi)));
      if (phi == 0.0 ? d >= prev : d <= prev) ++violations;
      prev = d;
    }
    double limit = phi == 0.0 ? -kPi : kPi;
    double near = rodsynth::delta_theta(paramspace::derive_constants(
        DiskPoint::from_polar(p_max - 1e-7, phi)));
    ends = std::max(ends, std::abs(near - limit));
  }
  b.add("axis-advance-monotone", violations, 0.5);
  b.add("axis-advance-origin-limits", ends, 1e-2);

  auto rod = closure::solve_constant_torsion_knot(1, 3);
  b.add("constant-torsion-1-3-gap", rod.curve.closure_gap, 1e-6);
  b.add_flag("constant-torsion-1-3-embedded", rod.embedded);
}

void criterion_monotone_grid(Builder& b) {
  double p_max = paramspace::find_p_max();
  int violations = 0;
  double min_sin_xi = 1e300;
  for (int i = 1; i <= 100; ++i) {
    double p = p_max * i / 101.0;
    double prev = 0.0, prev_X = 0.0;
    bool have = false;
    for (int j = 0; j <= 100; ++j) {
      double phi = kTwoPi * (j + 0.5) / 101.5;
      auto c = paramspace::derive_constants(DiskPoint::from_polar(p, phi));
      min_sin_xi = std::min(min_sin_xi, std::sin(c.xi));
      double d = rodsynth::delta_theta_smooth(c);
      if (have && prev_X * c.X > 0.0) {
        if (c.X > 0.0 && d <= prev) ++violations;
        if (c.X < 0.0 && d >= prev) ++violations;
      }
      prev = d;
      prev_X = c.X;
      have = true;
    }
  }
  b.add("advance-monotone-in-phi-grid", violations, 0.5);
  b.add("sin-xi-bounded-away-from-zero",
        min_sin_xi > 1e-6 ? 0.0 : 1e-6 - min_sin_xi, 1e-300);

  int a_viol = 0;
  double prev_a = 1e300, prev_ap = 1e300;
  for (int i = 1; i <= 200; ++i) {
    double p = 0.999 * i / 200.0;
    double a = paramspace::A_of_p(p);
    if (a >= prev_a) ++a_viol;
    if (a + p * p >= prev_ap) ++a_viol;
    prev_a = a;
    prev_ap = a + p * p;
  }
  b.add("A-and-A-plus-p2-decreasing", a_viol, 0.5);
}

void criterion_circle_stability(Builder& b) {
  auto rep = stability::circle_stability(1.0, 1.0, 1.0, kTwoPi);
  b.add("circle-threshold-value",
        std::abs(rep.threshold - std::sqrt(3.0) * kTwoPi / kTwoPi), 1e-12);
  auto low = stability::circle_stability(1.0, 1.0, 1.7, kTwoPi);
  auto high = stability::circle_stability(1.0, 1.0, 1.8, kTwoPi);
  b.add_flag("circle-flip-1.7-stable",
             low.verdict == stability::Verdict::Stable);
  b.add_flag("circle-flip-1.8-unstable",
             high.verdict == stability::Verdict::Unstable);
  b.add("circle-first-unstable-mode",
        std::abs(high.first_indefinite_mode - 2), 0.5);
}

void criterion_figure_eight(Builder& b) {
  Modulus m = stability::figure_eight_modulus();
  double p2 = m.p * m.p;
  double K = specfun::complete_K(m);
  auto sol = stability::solve_H_of_h(1.0 + 4.0 * p2, m);
  b.add("figure8-c1", std::abs(sol.c1 + 0.5), 1e-9);
  b.add("figure8-nu-cn-integral",
        std::abs(sol.integral_nu_cn - K / (2.0 * p2)) / (K / (2.0 * p2)),
        1e-7);
  b.add("figure8-H-value",
        std::abs(sol.H - 2.0 * p2 / K) / (2.0 * p2 / K), 1e-7);
  auto rep = stability::figure_eight_stability(1.0, 3.0);
  b.add("figure8-critical-ratio", std::abs(rep.threshold - 2.0), 1e-6);

  int h_viol = 0;
  double prev = -1e300;
  double h_hi = stability::h_interval_upper(m);
  for (int i = 0; i < 10; ++i) {
    double h = -4.0 + (h_hi - 0.05 + 4.0) * i / 9.0;
    double H = stability::solve_H_of_h(h, m).H;
    if (H <= prev) ++h_viol;
    prev = H;
  }
  b.add("figure8-H-strictly-increasing", h_viol, 0.5);

  auto mu = stability::mu_branch_check(m);
  b.add("mu-dn-first-integral", std::abs(mu.dn_first), 1e-10);
  b.add("mu-dn-second-nonvanishing",
        std::max(0.0, 1e-3 - std::abs(mu.dn_second)), 1e-300);
  b.add("mu-cn-both-integrals",
        std::max(std::abs(mu.cn_first), std::abs(mu.cn_second)), 1e-10);
}

void criterion_first_integrals(Builder& b) {
  std::mt19937 rng(b.opts.seed + 3);
  double worst = 0.0;
  auto absorb = [&worst](const rodsynth::RodCurve& curve) {
    auto rep = rodsynth::verify_first_integrals(curve);
    worst = std::max({worst, rep.max_first_integral_1,
                      rep.max_first_integral_2, rep.max_J_length_dev,
                      rep.max_J_variation, rep.a_mu_identity});
  };
  for (auto [m, n] : {std::pair{1, 2}, {1, 3}, {2, 3}}) {
    absorb(closure::solve_knot(closure::KnotSpec::make(m, n)).curve);
  }
  absorb(closure::solve_constant_torsion_knot(1, 3).curve);
  rodsynth::SynthOptions opts;
  opts.force_quadrature = b.opts.quad_oracle;
  for (int i = 0; i < 3; ++i) {
    absorb(rodsynth::synthesize(random_interior(rng), 2, 192, opts));
  }
  b.add("first-integral-and-J-residuals", worst, 1e-8);
}

void criterion_homotopy_family(Builder& b, const std::string& frame_dir) {
  auto fam = homotopy::trace_level(1, 2);
  b.add("homotopy-1-2-edge-to-edge",
        std::max(fam.chain.front().p, fam.chain.back().p), 2e-3);

  std::vector<homotopy::Landmark> table;
  bool landmarks_ok = true;
  try {
    table = homotopy::landmark_points(fam);
  } catch (const SolveError&) {
    landmarks_ok = false;
  }
  b.add_flag("homotopy-1-2-one-landmark-per-kind",
             landmarks_ok && table.size() == 4);

  double crossing_dev = 1e300, elastic_dev = 1e300;
  if (landmarks_ok) {
    const homotopy::Landmark* selfint = nullptr;
    const homotopy::Landmark* elastic = nullptr;
    for (const auto& lm : table) {
      if (lm.kind == LocusKind::SelfIntersecting) selfint = &lm;
      if (lm.kind == LocusKind::ElasticCurve) elastic = &lm;
    }
    if (selfint) {
      auto c = paramspace::derive_constants(selfint->point);
      Modulus m(c.p);
      double K = specfun::complete_K(m), E = specfun::complete_E(m);
      double sgn = c.U >= 0.0 ? 1.0 : -1.0;
      crossing_dev = std::abs(
          rodsynth::delta_theta_smooth(c) -
          (sgn * 2.0 * std::sqrt(K * (2.0 * E - K)) - kPi));
    }
    if (elastic) {
      elastic_dev = 0.0;
      for (const auto& lm : table) {
        elastic_dev =
            std::max(elastic_dev, lm.point.p - elastic->point.p);
      }
    }
  }
  b.add("homotopy-crossing-advance-value", crossing_dev, 1e-9);
  b.add("homotopy-elastic-landmark-largest-p", elastic_dev, 1e-12);

  // frames at the two ends wind as a 1- and a 2-covered circle
  namespace fs = std::filesystem;
  fs::create_directories(frame_dir);
  rodsynth::SynthOptions sopts;
  sopts.force_quadrature = b.opts.quad_oracle;
  double w_first = 0.0, w_last = 0.0;
  int inner_bad = 0;
  for (int f = 0; f < 8; ++f) {
    std::size_t idx = (fam.chain.size() - 1) * f / 7;
    auto curve =
        rodsynth::synthesize(fam.chain[idx], fam.k + fam.n, 128, sopts);
    char name[32];
    std::snprintf(name, sizeof name, "frame_%02d.csv", f);
    io::write_curve_csv((fs::path(frame_dir) / name).string(), curve);
    double w = frame_winding(curve);
    if (f == 0) w_first = w;
    if (f == 7) w_last = w;
    // every frame winds by -k or +n full turns
    if (std::abs(w + fam.k) > 3e-2 && std::abs(w - fam.n) > 3e-2) {
      ++inner_bad;
    }
  }
  b.add("homotopy-frame-windings-start",
        std::abs(std::abs(w_first) - fam.k), 1e-2);
  b.add("homotopy-frame-windings-end",
        std::abs(std::abs(w_last) - fam.n), 1e-2);
  b.add("homotopy-frame-windings-interior", inner_bad, 0.5);
}

std::vector<int> suite_indices(const std::string& suite) {
  if (suite == "identities") return {1};
  if (suite == "constants") return {2, 4, 5, 6, 10};
  if (suite == "closure") return {3, 7, 9, 13};
  if (suite == "homotopy") return {8};
  if (suite == "stability") return {11, 12};
  if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13};
  throw DomainError("unknown verify suite: " + suite);
}

Criterion run_criterion(int index, const Options& opts) {
  static const char* kNames[] = {
      "",
      "special-function identities",
      "p-max reproduction",
      "closed forms against quadrature oracles",
      "pointwise constant identities",
      "boundary advance limits",
      "pure-rotation small-p limit",
      "torus knot realization",
      "homotopy family (1,2)",
      "constant-torsion uniqueness on the axis",
      "monotonicity properties",
      "circle stability",
      "figure-eight stability",
      "first-integral and conserved-field residuals",
  };
  Builder b{opts, {}};
  switch (index) {
    case 1: criterion_identities(b); break;
    case 2: criterion_p_max(b); break;
    case 3: criterion_oracles(b); break;
    case 4: criterion_pointwise_identities(b); break;
    case 5: criterion_boundary_limit(b); break;
    case 6: criterion_kida_limit(b); break;
    case 7: criterion_knots(b); break;
    case 8: {
      auto dir = std::filesystem::temp_directory_path() / "elrod-frames";
      criterion_homotopy_family(b, dir.string());
      break;
    }
    case 9: criterion_axis_monotone(b); break;
    case 10: criterion_monotone_grid(b); break;
    case 11: criterion_circle_stability(b); break;
    case 12: criterion_figure_eight(b); break;
    case 13: criterion_first_integrals(b); break;
    default: throw DomainError("no such criterion");
  }
  Criterion c;
  c.index = index;
  c.name = kNames[index];
  c.checks = std::move(b.checks);
  c.pass = std::all_of(c.checks.begin(), c.checks.end(),
                       [](const Check& ch) { return ch.pass; });
  return c;
}

}  // namespace

std::vector<Criterion> acceptance_criteria(const Options& opts) {
  std::vector<Criterion> out;
  for (int i : suite_indices("all")) out.push_back(run_criterion(i, opts));
  return out;
}

VerifyReport run_suite(const std::string& suite, const Options& opts) {
  VerifyReport rep;
  rep.suite = suite;
  for (int i : suite_indices(suite)) {
    Criterion c = run_criterion(i, opts);
    for (auto& ch : c.checks) rep.checks.push_back(std::move(ch));
  }
  rep.overall = std::all_of(rep.checks.begin(), rep.checks.end(),
                            [](const Check& ch) { return ch.pass; });
  return rep;
}

VerifyReport verify_all(const Options& opts) { return run_suite("all", opts); }

std::string report_table(const VerifyReport& rep) {
  std::ostringstream out;
  std::size_t width = 4;
  for (const auto& c : rep.checks) width = std::max(width, c.name.size());
  for (const auto& c : rep.checks) {
    out << (c.pass ? "PASS  " : "FAIL  ") << c.name
        << std::string(width - c.name.size() + 2, ' ');
    char buf[80];
    std::snprintf(buf, sizeof buf, "residual %.3e  tolerance %.3e", c.residual,
                  c.tolerance);
    out << buf;
    if (c.tolerance_induced) out << "  (tolerance override)";
    if (!c.pass && c.name == "residue-sign-opposite-V") {
      out << "\n      the azimuth-rate residue must carry the sign opposite "
             "to V; a positive product violates the sign law";
    }
    out << '\n';
  }
  out << (rep.overall ? "OVERALL PASS" : "OVERALL FAIL") << '\n';
  return out.str();
}

}  // namespace elrod::verify

#include "elrod/stability.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <sstream>

namespace elrod::stability {

namespace {

constexpr double kPi = numeric::kPi;
constexpr int kGridIntervals = 4096;  // composite-rule resolution on [0,4K]

double sq(double x) { return x * x; }

// composite Simpson over equally spaced samples (even interval count)
double simpson(const std::vector<double>& f, double dx) {
  double odd = 0.0, even = 0.0;
  for (size_t i = 1; i + 1 < f.size(); i += 2) odd += f[i];
  for (size_t i = 2; i + 1 < f.size(); i += 2) even += f[i];
  return dx / 3.0 * (f.front() + 4.0 * odd + 2.0 * even + f.back());
}

}  // namespace

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Stable: return "stable";
    case Verdict::Unstable: return "unstable";
    default: return "critical";
  }
}

RodMaterial rod_from_curve(const rodsynth::RodCurve& curve, double alpha,
                           double beta) {
  if (!(alpha > 0.0)) throw DomainError("rod_from_curve: alpha must be positive");
  if (beta == 0.0) {
    throw DomainError(
        "rod_from_curve: beta = 0 leaves the twist rate undetermined; the "
        "energy is pure bending and the centerline is an elastic curve");
  }
  if (!(beta > 0.0)) throw DomainError("rod_from_curve: beta must be positive");
  if (curve.samples.size() < 2) throw DomainError("rod_from_curve: empty curve");
  const auto& k = curve.constants;
  RodMaterial rod;
  rod.alpha = alpha;
  rod.beta = beta;
  rod.m = alpha * k.lambda2 / (2.0 * beta);
  double t_end = curve.samples.back().t;
  rod.L = 2.0 * k.w * t_end;
  // c = 0 makes tau = lambda2 / 2 exactly; that branch also covers the
  // constant-torsion family, whose curvature vanishes at isolated points.
  double tau_int =
      k.c == 0.0
          ? 0.5 * k.lambda2 * rod.L
          : 2.0 * k.w *
                numeric::integrate(
                    [&k](double t) {
                      return rodsynth::curvature_torsion(t, k).second;
                    },
                    0.0, t_end, 1e-12);
  rod.delta_psi = rod.L * rod.m - tau_int;
  return rod;
}

StabilityReport circle_stability(double alpha, double beta, double m,
                                 double L) {
  if (!(alpha > 0.0 && beta > 0.0 && L > 0.0)) {
    throw DomainError("circle_stability: alpha, beta, L must be positive");
  }
  StabilityReport rep;
  rep.subject = Subject::Circle;
  rep.threshold = std::sqrt(3.0) * 2.0 * kPi * alpha / (L * beta);
  double gap = std::abs(m) - rep.threshold;
  if (std::abs(gap) <= 1e-12 * std::max(1.0, rep.threshold)) {
    rep.verdict = Verdict::Critical;
  } else {
    rep.verdict = (gap < 0.0) ? Verdict::Stable : Verdict::Unstable;
  }
  // the indefiniteness criterion is monotone in n, so mode 2 decides it
  double kappa = 2.0 * kPi / L;
  if (sq(alpha * kappa) * 3.0 < sq(beta * m)) rep.first_indefinite_mode = 2;
  rep.computed_quantities["threshold"] = rep.threshold;
  rep.computed_quantities["m"] = m;
  return rep;
}

LameProblem lame_problem(int n_order, const Modulus& m, double h) {
  if (n_order != 1 && n_order != 2) {
    throw DomainError("lame_problem: tables available for n = 1, 2 only");
  }
  LameProblem prob;
  prob.n_order = n_order;
  prob.p = m.p;
  prob.h = h;
  double p2 = m.p * m.p;
  if (n_order == 1) {
    prob.eigen_table = {{"dn", p2}, {"cn", 1.0}, {"sn", 1.0 + p2}};
  } else {
    double root = std::sqrt(1.0 - p2 + p2 * p2);
    prob.eigen_table = {{"sn*dn", 1.0 + 4.0 * p2},
                        {"cn*dn", 1.0 + p2},
                        {"1-(1+p^2-sqrt(1-p^2+p^4))*sn^2",
                         2.0 * (1.0 + p2 - root)}};
  }
  return prob;
}

Modulus figure_eight_modulus() {
  static const double root = numeric::find_root(
      [](double p) {
        Modulus m(p);
        return 2.0 * specfun::complete_E(m) - specfun::complete_K(m);
      },
      0.5, 0.99, 1e-15, 1e-15);
  return Modulus(root);
}

double lame_second_solution(double t, const Modulus& m) {
  auto [sn, cn, dn] = specfun::jacobi_sn_cn_dn(t, m);
  double p2 = m.p * m.p;
  double pp2 = m.p_prime * m.p_prime;
  double Et = specfun::incomplete_E(specfun::jacobi_am(t, m), m);
  return cn + p2 * (2.0 * p2 - 1.0) / pp2 * cn * sn * sn -
         (t + (2.0 * p2 - 1.0) / pp2 * Et) * dn * sn;
}

double lame_second_solution_deriv(double t, const Modulus& m) {
  auto [sn, cn, dn] = specfun::jacobi_sn_cn_dn(t, m);
  double p2 = m.p * m.p;
  double pp2 = m.p_prime * m.p_prime;
  double Et = specfun::incomplete_E(specfun::jacobi_am(t, m), m);
  double g = t + (2.0 * p2 - 1.0) / pp2 * Et;
  double gp = 1.0 + (2.0 * p2 - 1.0) / pp2 * dn * dn;
  return -sn * dn +
         p2 * (2.0 * p2 - 1.0) / pp2 * sn * dn * (2.0 * cn * cn - sn * sn) -
         gp * dn * sn - g * (cn * dn * dn - p2 * sn * sn * cn);
}

namespace {

// y'' = (6 p^2 sn^2 t - h) y as a first-order system, integrated by RK4
// together with the variation-of-parameters accumulator; the state is
// (y1, y1', y2, y2', l1, l2) with unit Wronskian throughout.
struct LameFlow {
  double h;
  const Modulus& m;

  std::array<double, 6> rhs(double t, const std::array<double, 6>& z) const {
    auto [sn, cn, dn] = specfun::jacobi_sn_cn_dn(t, m);
    double q = 6.0 * m.p * m.p * sn * sn - h;
    return {z[1], q * z[0], z[3], q * z[2], -z[2] * cn, z[0] * cn};
  }

  void step(double t, double dt, std::array<double, 6>& z) const {
    auto k1 = rhs(t, z);
    std::array<double, 6> tmp;
    for (int i = 0; i < 6; ++i) tmp[i] = z[i] + 0.5 * dt * k1[i];
    auto k2 = rhs(t + 0.5 * dt, tmp);
    for (int i = 0; i < 6; ++i) tmp[i] = z[i] + 0.5 * dt * k2[i];
    auto k3 = rhs(t + 0.5 * dt, tmp);
    for (int i = 0; i < 6; ++i) tmp[i] = z[i] + dt * k3[i];
    auto k4 = rhs(t + dt, tmp);
    for (int i = 0; i < 6; ++i) {
      z[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
  }
};

struct FlowResult {
  std::array<double, 6> end;                 // state at 4K
  std::vector<std::array<double, 6>> grid;   // kGridIntervals + 1 samples
  double dt_grid;
};

FlowResult integrate_flow(double h, const Modulus& m, bool keep_grid) {
  double K = specfun::complete_K(m);
  double T = 4.0 * K;
  const int substeps = 2;  // RK4 substeps per composite-grid interval
  double dt = T / (kGridIntervals * substeps);
  LameFlow flow{h, m};
  std::array<double, 6> z{1.0, 0.0, 0.0, 1.0, 0.0, 0.0};
  FlowResult out;
  out.dt_grid = T / kGridIntervals;
  if (keep_grid) {
    out.grid.reserve(kGridIntervals + 1);
    out.grid.push_back(z);
  }
  for (int i = 0; i < kGridIntervals; ++i) {
    for (int s = 0; s < substeps; ++s) {
      flow.step((i * substeps + s) * dt, dt, z);
    }
    if (keep_grid) out.grid.push_back(z);
  }
  out.end = z;
  return out;
}

double periodicity_det(double h, const Modulus& m) {
  auto r = integrate_flow(h, m, false);
  // det(I - M) for the monodromy M of the homogeneous system
  double a = 1.0 - r.end[0], b = -r.end[2];
  double c = -r.end[1], d = 1.0 - r.end[3];
  return a * d - b * c;
}

}  // namespace

double h_interval_upper(const Modulus& m) {
  static std::map<double, double> cache;
  if (auto it = cache.find(m.p); it != cache.end()) return it->second;
  // first periodic eigenvalue above 1+4p^2, located by a shooting scan
  double h0 = 1.0 + 4.0 * m.p * m.p;
  double prev_h = h0 + 0.05;
  double prev_f = periodicity_det(prev_h, m);
  for (int i = 1; i <= 120; ++i) {
    double h = h0 + 0.05 * (i + 1);
    double f = periodicity_det(h, m);
    if (prev_f * f <= 0.0) {
      double root = numeric::find_root(
          [&m](double hh) { return periodicity_det(hh, m); }, prev_h, h,
          1e-12, 1e-12);
      cache[m.p] = root;
      return root;
    }
    prev_h = h;
    prev_f = f;
  }
  throw SolveError("h_interval_upper: no eigenvalue found in the scan range");
}

HSolution solve_H_of_h(double h, const Modulus& m) {
  double p2 = m.p * m.p;
  double K = specfun::complete_K(m);
  double T = 4.0 * K;
  HSolution sol;
  sol.h = h;

  if (std::abs(h - (1.0 + p2)) < 1e-9) {
    // the inhomogeneous problem has no periodic solution here; the branch
    // continues through H = 0 with nu the (normalized) eigenfunction cn dn
    sol.H = 0.0;
    sol.integral_nu_cn = 1.0;
    double dx = T / kGridIntervals;
    std::vector<double> f(kGridIntervals + 1);
    sol.t.resize(kGridIntervals + 1);
    sol.nu.resize(kGridIntervals + 1);
    for (int i = 0; i <= kGridIntervals; ++i) {
      auto [sn, cn, dn] = specfun::jacobi_sn_cn_dn(i * dx, m);
      sol.t[i] = i * dx;
      sol.nu[i] = cn * dn;
      f[i] = sol.nu[i] * cn;
    }
    double scale = simpson(f, dx);
    std::vector<double> f2(kGridIntervals + 1);
    for (int i = 0; i <= kGridIntervals; ++i) {
      sol.nu[i] /= scale;
      f2[i] = sol.nu[i] * sol.nu[i];
    }
    sol.integral_nu_sq = simpson(f2, dx);
    return sol;
  }

  std::vector<double> y1(kGridIntervals + 1), y2(kGridIntervals + 1);
  std::vector<double> l1(kGridIntervals + 1), l2(kGridIntervals + 1);
  double dx = T / kGridIntervals;
  double c1 = 0.0, c2 = 0.0;

  if (std::abs(h - (1.0 + 4.0 * p2)) < 1e-9) {
    // eigenvalue with eigenfunction y2 = sn dn: the monodromy is singular
    // and the periodicity constant comes from the closed-form companion,
    // taken with the -1 normalization at t = 0 (Wronskian -1) so that the
    // constant is -1/2 and the cn-projection of nu is positive
    for (int i = 0; i <= kGridIntervals; ++i) {
      double t = i * dx;
      auto [sn, cn, dn] = specfun::jacobi_sn_cn_dn(t, m);
      y1[i] = -lame_second_solution(t, m);
      y2[i] = sn * dn;
      l1[i] = 0.5 * sn * sn;  // = -int y2 cn / W
    }
    std::vector<double> y1cn(kGridIntervals + 1);
    for (int i = 0; i <= kGridIntervals; ++i) {
      auto [sn, cn, dn] = specfun::jacobi_sn_cn_dn(i * dx, m);
      y1cn[i] = y1[i] * cn;
    }
    // cumulative l2 = -int_0^t y1 cn / W by per-interval Simpson refinement
    l2[0] = 0.0;
    for (int i = 1; i <= kGridIntervals; ++i) {
      double t0 = (i - 1) * dx, t1 = i * dx, tm = 0.5 * (t0 + t1);
      auto [snm, cnm, dnm] = specfun::jacobi_sn_cn_dn(tm, m);
      double fm = -lame_second_solution(tm, m) * cnm;
      l2[i] = l2[i - 1] - dx / 6.0 * (y1cn[i - 1] + 4.0 * fm + y1cn[i]);
    }
    c1 = simpson(y1cn, dx) / (-lame_second_solution_deriv(T, m));
    c2 = 0.0;
    sol.c1 = c1;
    sol.t.resize(kGridIntervals + 1);
    sol.nu.resize(kGridIntervals + 1);
    for (int i = 0; i <= kGridIntervals; ++i) {
      sol.t[i] = i * dx;
      sol.nu[i] = (l1[i] + c1) * y1[i] + (l2[i] + c2) * y2[i];
    }
  } else {
    if (h >= h_interval_upper(m) - 1e-6) {
      throw DomainError(
          "solve_H_of_h: h beyond the admissible interval (coexistence part "
          "of the periodic spectrum)");
    }
    // Multiple shooting: single-pass fundamental solutions grow like
    // exp(sqrt(|h|) 4K) and wreck the periodicity solve for low h, so the
    // period is split into segments with locally reset bases, glued by one
    // cyclic linear system for the segment start states.
    const int S = 16;
    const int seg_cells = kGridIntervals / S;
    const int substeps = 2;
    LameFlow flow{h, m};
    // per-grid-sample relative basis and accumulator, per segment
    std::vector<std::array<double, 6>> rel((kGridIntervals + 1));
    std::vector<std::array<double, 6>> seg_end(S);
    for (int s = 0; s < S; ++s) {
      std::array<double, 6> z{1.0, 0.0, 0.0, 1.0, 0.0, 0.0};
      rel[s * seg_cells] = z;
      double t0 = s * seg_cells * dx;
      double dt = dx / substeps;
      for (int i = 0; i < seg_cells; ++i) {
        for (int u = 0; u < substeps; ++u) {
          flow.step(t0 + (i * substeps + u) * dt, dt, z);
        }
        rel[s * seg_cells + i + 1] = z;
      }
      seg_end[s] = z;
    }
    // unknowns: states (nu, nu') at the S segment starts; equations
    // c_{i+1} = M_i c_i + M_i l_i(end) with cyclic wraparound
    const int N = 2 * S;
    std::vector<std::vector<double>> Amat(N, std::vector<double>(N + 1, 0.0));
    for (int s = 0; s < S; ++s) {
      const auto& e = seg_end[s];
      double M00 = e[0], M01 = e[2], M10 = e[1], M11 = e[3];
      double d0 = M00 * e[4] + M01 * e[5];
      double d1 = M10 * e[4] + M11 * e[5];
      int nxt = (s + 1) % S;
      Amat[2 * s][2 * s] = -M00;
      Amat[2 * s][2 * s + 1] = -M01;
      Amat[2 * s][2 * nxt] += 1.0;
      Amat[2 * s][N] = d0;
      Amat[2 * s + 1][2 * s] = -M10;
      Amat[2 * s + 1][2 * s + 1] = -M11;
      Amat[2 * s + 1][2 * nxt + 1] += 1.0;
      Amat[2 * s + 1][N] = d1;
    }
    for (int col = 0; col < N; ++col) {  // Gaussian elimination, partial pivot
      int piv = col;
      for (int r2 = col + 1; r2 < N; ++r2) {
        if (std::abs(Amat[r2][col]) > std::abs(Amat[piv][col])) piv = r2;
      }
      std::swap(Amat[col], Amat[piv]);
      if (std::abs(Amat[col][col]) < 1e-12) {
        throw DomainError(
            "solve_H_of_h: h is at a periodic eigenvalue; the inhomogeneous "
            "solve is singular");
      }
      for (int r2 = 0; r2 < N; ++r2) {
        if (r2 == col) continue;
        double f = Amat[r2][col] / Amat[col][col];
        for (int c3 = col; c3 <= N; ++c3) Amat[r2][c3] -= f * Amat[col][c3];
      }
    }
    sol.c1 = Amat[0][N] / Amat[0][0];  // nu(0)
    sol.t.resize(kGridIntervals + 1);
    sol.nu.resize(kGridIntervals + 1);
    for (int i = 0; i <= kGridIntervals; ++i) {
      int s = std::min(i / seg_cells, S - 1);
      double ca = Amat[2 * s][N] / Amat[2 * s][2 * s];
      double cb = Amat[2 * s + 1][N] / Amat[2 * s + 1][2 * s + 1];
      const auto& g = rel[i];
      sol.t[i] = i * dx;
      sol.nu[i] = g[0] * (g[4] + ca) + g[2] * (g[5] + cb);
    }
  }

  std::vector<double> fcn(kGridIntervals + 1), fsq(kGridIntervals + 1);
  for (int i = 0; i <= kGridIntervals; ++i) {
    auto [sn, cn, dn] = specfun::jacobi_sn_cn_dn(sol.t[i], m);
    fcn[i] = sol.nu[i] * cn;
    fsq[i] = sol.nu[i] * sol.nu[i];
  }
  sol.integral_nu_cn = simpson(fcn, dx);
  sol.integral_nu_sq = simpson(fsq, dx);
  if (sol.integral_nu_cn == 0.0) {
    throw SolveError("solve_H_of_h: vanishing projection on cn");
  }
  sol.H = 1.0 / sol.integral_nu_cn;
  return sol;
}

StabilityReport figure_eight_stability(double alpha, double beta) {
  if (!(alpha > 0.0 && beta >= 0.0)) {
    throw DomainError("figure_eight_stability: need alpha > 0, beta >= 0");
  }
  Modulus m = figure_eight_modulus();
  double p2 = m.p * m.p;
  double K = specfun::complete_K(m);
  HSolution crit = solve_H_of_h(1.0 + 4.0 * p2, m);
  StabilityReport rep;
  rep.subject = Subject::FigureEight;
  // instability needs p^2 beta/(K alpha) below H(1+4p^2)
  rep.threshold = crit.H * K / p2;
  double ratio = beta / alpha;
  if (std::abs(ratio - rep.threshold) <= 1e-9 * std::max(1.0, rep.threshold)) {
    rep.verdict = Verdict::Critical;
  } else {
    rep.verdict = (ratio > rep.threshold) ? Verdict::Stable : Verdict::Unstable;
  }
  rep.computed_quantities["p"] = m.p;
  rep.computed_quantities["H"] = crit.H;
  rep.computed_quantities["c1"] = crit.c1;
  rep.computed_quantities["int_nu_cn"] = crit.integral_nu_cn;
  rep.computed_quantities["critical_ratio"] = rep.threshold;
  rep.computed_quantities["beta_over_alpha"] = ratio;
  return rep;
}

MuBranchReport mu_branch_check(const Modulus& m) {
  double T = 4.0 * specfun::complete_K(m);
  double p2 = m.p * m.p;
  auto integral = [&](auto f) {
    return numeric::integrate(
        [&](double t) {
          auto [sn, cn, dn] = specfun::jacobi_sn_cn_dn(t, m);
          return f(sn, cn, dn);
        },
        0.0, T, 1e-13);
  };
  MuBranchReport rep;
  rep.dn_first =
      integral([](double sn, double, double dn) { return dn * sn * dn; });
  rep.dn_second = integral([p2](double sn, double, double dn) {
    return dn * (1.0 - 2.0 * p2 * sn * sn);
  });
  rep.cn_first =
      integral([](double sn, double cn, double dn) { return cn * sn * dn; });
  rep.cn_second = integral([p2](double sn, double cn, double) {
    return cn * (1.0 - 2.0 * p2 * sn * sn);
  });
  return rep;
}

}  // namespace elrod::stability

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "elrod/closure.hpp"
#include "elrod/homotopy.hpp"
#include "elrod/stability.hpp"
#include "elrod/verify.hpp"

namespace py = pybind11;
using namespace elrod;

namespace {

py::dict constants_dict(const paramspace::RodConstants& k) {
  py::dict d;
  d["p"] = k.p;
  d["p_prime"] = k.p_prime;
  d["X"] = k.X;
  d["Y"] = k.Y;
  d["A"] = k.A;
  d["w"] = k.w;
  d["Z"] = k.Z;
  d["c"] = k.c;
  d["lambda1"] = k.lambda1;
  d["lambda2"] = k.lambda2;
  d["mu"] = k.mu;
  d["U"] = k.U;
  d["a"] = k.a;
  d["N"] = k.N;
  d["M"] = k.M;
  d["V"] = k.V;
  d["xi"] = k.xi;
  d["xi_hat"] = k.xi_hat;
  return d;
}

py::dict curve_dict(const rodsynth::RodCurve& curve) {
  std::size_t n = curve.samples.size();
  std::vector<double> t(n), x(n), y(n), z(n), r(n), theta(n), kappa(n),
      tau(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = curve.samples[i];
    t[i] = s.t;
    x[i] = s.x;
    y[i] = s.y;
    z[i] = s.z;
    r[i] = s.r;
    theta[i] = s.theta;
    kappa[i] = s.kappa;
    tau[i] = s.tau;
  }
  auto rep = rodsynth::verify_first_integrals(curve);
  py::dict d;
  d["t"] = t;
  d["x"] = x;
  d["y"] = y;
  d["z"] = z;
  d["r"] = r;
  d["theta"] = theta;
  d["kappa"] = kappa;
  d["tau"] = tau;
  d["periods"] = curve.periods;
  d["delta_theta"] = curve.delta_theta;
  d["closure_gap"] = curve.closure_gap;
  d["constants"] = constants_dict(curve.constants);
  d["residuals"] =
      py::dict(py::arg("first_integral_1") = rep.max_first_integral_1,
               py::arg("first_integral_2") = rep.max_first_integral_2,
               py::arg("J_length_dev") = rep.max_J_length_dev,
               py::arg("J_variation") = rep.max_J_variation);
  return d;
}

py::dict point_dict(const paramspace::DiskPoint& pt) {
  py::dict d;
  d["X"] = pt.X;
  d["Y"] = pt.Y;
  d["p"] = pt.p;
  d["phi"] = pt.phi;
  return d;
}

py::dict stability_dict(const stability::StabilityReport& rep) {
  py::dict d;
  d["subject"] =
      rep.subject == stability::Subject::Circle ? "circle" : "figure8";
  d["verdict"] = stability::verdict_name(rep.verdict);
  d["threshold"] = rep.threshold;
  d["first_indefinite_mode"] = rep.first_indefinite_mode;
  d["computed_quantities"] = rep.computed_quantities;
  return d;
}

}  // namespace

PYBIND11_MODULE(_elrod, m) {
  m.doc() = "closed and quasiperiodic elastic rod centerlines";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<SolveError>(m, "SolveError", PyExc_RuntimeError);

  // special functions
  m.def("complete_K",
        [](double p) { return specfun::complete_K(specfun::Modulus(p)); },
        py::arg("p"));
  m.def("complete_E",
        [](double p) { return specfun::complete_E(specfun::Modulus(p)); },
        py::arg("p"));
  m.def("jacobi_sn_cn_dn",
        [](double t, double p) {
          auto j = specfun::jacobi_sn_cn_dn(t, specfun::Modulus(p));
          return py::make_tuple(j.sn, j.cn, j.dn);
        },
        py::arg("t"), py::arg("p"));

  // moduli-disk chart
  m.def("find_p_max", &paramspace::find_p_max);
  m.def("A_of_p", &paramspace::A_of_p, py::arg("p"));
  m.def("kida_sin2_phi", &paramspace::kida_sin2_phi, py::arg("p"));
  m.def("derive_constants",
        [](double p, double phi) {
          return constants_dict(paramspace::derive_constants(
              paramspace::DiskPoint::from_polar(p, phi)));
        },
        py::arg("p"), py::arg("phi"));
  m.def("delta_theta",
        [](double p, double phi) {
          return rodsynth::delta_theta(paramspace::derive_constants(
              paramspace::DiskPoint::from_polar(p, phi)));
        },
        py::arg("p"), py::arg("phi"));

  // centerline synthesis and closure
  m.def("synthesize",
        [](double p, double phi, int periods, int per_period) {
          return curve_dict(rodsynth::synthesize(
              paramspace::DiskPoint::from_polar(p, phi), periods,
              per_period));
        },
        py::arg("p"), py::arg("phi"), py::arg("periods"),
        py::arg("per_period") = 256);
  m.def("solve_knot",
        [](int mm, int n) {
          auto rod = closure::solve_knot(closure::KnotSpec::make(mm, n));
          py::dict d;
          d["point"] = point_dict(rod.point);
          d["knot_name"] = rod.knot.name;
          d["embedded"] = rod.embedded;
          d["curve"] = curve_dict(rod.curve);
          return d;
        },
        py::arg("m"), py::arg("n"));
  m.def("solve_constant_torsion_knot",
        [](int k, int n) {
          auto rod = closure::solve_constant_torsion_knot(k, n);
          py::dict d;
          d["point"] = point_dict(rod.point);
          d["knot_name"] = rod.knot.name;
          d["embedded"] = rod.embedded;
          d["curve"] = curve_dict(rod.curve);
          return d;
        },
        py::arg("k"), py::arg("n"));

  // homotopy families
  m.def("trace_level",
        [](int k, int n, double step) {
          auto fam = homotopy::trace_level(k, n, step);
          py::list chain, landmarks;
          for (const auto& pt : fam.chain) chain.append(point_dict(pt));
          for (const auto& lm : fam.landmarks) {
            py::dict d;
            d["kind"] = paramspace::locus_name(lm.kind);
            d["point"] = point_dict(lm.point);
            d["residual"] = lm.residual;
            landmarks.append(d);
          }
          py::dict d;
          d["k"] = fam.k;
          d["n"] = fam.n;
          d["level"] = fam.level;
          d["chain"] = chain;
          d["landmarks"] = landmarks;
          d["endpoint_limits"] = py::make_tuple(fam.endpoint_limits.first,
                                                fam.endpoint_limits.second);
          return d;
        },
        py::arg("k"), py::arg("n"), py::arg("step") = 1e-3);

  // stability
  m.def("circle_stability",
        [](double alpha, double beta, double mm, double L) {
          return stability_dict(
              stability::circle_stability(alpha, beta, mm, L));
        },
        py::arg("alpha"), py::arg("beta"), py::arg("m"), py::arg("L"));
  m.def("figure_eight_stability",
        [](double alpha, double beta) {
          return stability_dict(
              stability::figure_eight_stability(alpha, beta));
        },
        py::arg("alpha"), py::arg("beta"));
  m.def("solve_H_of_h",
        [](double h) {
          auto sol = stability::solve_H_of_h(
              h, stability::figure_eight_modulus());
          py::dict d;
          d["h"] = sol.h;
          d["H"] = sol.H;
          d["c1"] = sol.c1;
          d["integral_nu_cn"] = sol.integral_nu_cn;
          d["integral_nu_sq"] = sol.integral_nu_sq;
          return d;
        },
        py::arg("h"));

  // verification suites
  m.def("run_suite",
        [](const std::string& suite) {
          auto rep = verify::run_suite(suite);
          py::list checks;
          for (const auto& c : rep.checks) {
            py::dict d;
            d["name"] = c.name;
            d["residual"] = c.residual;
            d["tolerance"] = c.tolerance;
            d["pass"] = c.pass;
            checks.append(d);
          }
          py::dict d;
          d["suite"] = rep.suite;
          d["checks"] = checks;
          d["overall"] = rep.overall;
          return d;
        },
        py::arg("suite") = "all");
}

#include "elrod/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace elrod::io {

namespace {

constexpr const char* kFormatVersion = "1";

const char* kCurveHeader = "t,x,y,z,r,theta,kappa,tau,Jx,Jy,Jz";

json point_json(const paramspace::DiskPoint& pt) {
  return json{{"X", pt.X}, {"Y", pt.Y}, {"p", pt.p}, {"phi", pt.phi}};
}

json residuals_json(const rodsynth::FirstIntegralReport& rep) {
  return json{{"first_integral_1", rep.max_first_integral_1},
              {"first_integral_2", rep.max_first_integral_2},
              {"J_length_dev", rep.max_J_length_dev},
              {"J_variation", rep.max_J_variation},
              {"a_mu_identity", rep.a_mu_identity}};
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw SolveError("cannot open for writing: " + path);
  out << content;
  if (!out.flush()) throw SolveError("write failed: " + path);
}

void write_curve_csv(const std::string& path,
                     const rodsynth::RodCurve& curve) {
  std::ostringstream out;
  out << kCurveHeader << '\n';
  for (const auto& s : curve.samples) {
    out << format_double(s.t) << ',' << format_double(s.x) << ','
        << format_double(s.y) << ',' << format_double(s.z) << ','
        << format_double(s.r) << ',' << format_double(s.theta) << ','
        << format_double(s.kappa) << ',' << format_double(s.tau) << ','
        << format_double(s.J_vec[0]) << ',' << format_double(s.J_vec[1])
        << ',' << format_double(s.J_vec[2]) << '\n';
  }
  write_text(path, out.str());
}

void write_curve_obj(const std::string& path,
                     const rodsynth::RodCurve& curve) {
  std::ostringstream out;
  out << "o centerline\n";
  for (const auto& s : curve.samples) {
    out << "v " << format_double(s.x) << ' ' << format_double(s.y) << ' '
        << format_double(s.z) << '\n';
  }
  out << 'l';
  for (std::size_t i = 1; i <= curve.samples.size(); ++i) out << ' ' << i;
  out << '\n';
  write_text(path, out.str());
}

json constants_json(const paramspace::RodConstants& k) {
  return json{{"p", k.p},           {"p_prime", k.p_prime},
              {"X", k.X},           {"Y", k.Y},
              {"A", k.A},           {"w", k.w},
              {"Z", k.Z},           {"c", k.c},
              {"lambda1", k.lambda1}, {"lambda2", k.lambda2},
              {"mu", k.mu},         {"U", k.U},
              {"a", k.a},           {"N", k.N},
              {"M", k.M},           {"V", k.V},
              {"xi", k.xi},         {"xi_hat", k.xi_hat}};
}

paramspace::RodConstants constants_from_json(const json& j) {
  paramspace::RodConstants k;
  k.p = j.at("p");
  k.p_prime = j.at("p_prime");
  k.X = j.at("X");
  k.Y = j.at("Y");
  k.A = j.at("A");
  k.w = j.at("w");
  k.Z = j.at("Z");
  k.c = j.at("c");
  k.lambda1 = j.at("lambda1");
  k.lambda2 = j.at("lambda2");
  k.mu = j.at("mu");
  k.U = j.at("U");
  k.a = j.at("a");
  k.N = j.at("N");
  k.M = j.at("M");
  k.V = j.at("V");
  k.xi = j.at("xi");
  k.xi_hat = j.at("xi_hat");
  return k;
}

json curve_sidecar(const rodsynth::RodCurve& curve) {
  return json{
      {"format_version", kFormatVersion},
      {"constants", constants_json(curve.constants)},
      {"periods", curve.periods},
      {"delta_theta", curve.delta_theta},
      {"closure_gap", curve.closure_gap},
      {"used_quadrature_fallback", curve.used_quadrature_fallback},
      {"residuals", residuals_json(rodsynth::verify_first_integrals(curve))},
      {"tolerances",
       json{{"first_integral", 1e-8}, {"closure_gap", 1e-6}}}};
}

rodsynth::RodCurve read_curve_csv(const std::string& csv_path,
                                  const std::string& sidecar_path) {
  std::ifstream side(sidecar_path);
  if (!side) throw SolveError("cannot open sidecar: " + sidecar_path);
  json meta = json::parse(side);

  rodsynth::RodCurve curve;
  curve.constants = constants_from_json(meta.at("constants"));
  curve.periods = meta.at("periods");
  curve.delta_theta = meta.at("delta_theta");
  curve.closure_gap = meta.at("closure_gap");
  curve.used_quadrature_fallback = meta.at("used_quadrature_fallback");

  std::ifstream in(csv_path);
  if (!in) throw SolveError("cannot open curve file: " + csv_path);
  std::string line;
  if (!std::getline(in, line) || line != kCurveHeader) {
    throw SolveError("unrecognized curve header in " + csv_path);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    rodsynth::CurveSample s;
    double* fields[] = {&s.t,     &s.x,   &s.y,        &s.z,
                        &s.r,     &s.theta, &s.kappa,  &s.tau,
                        &s.J_vec[0], &s.J_vec[1], &s.J_vec[2]};
    std::istringstream row(line);
    std::string cell;
    for (double* f : fields) {
      if (!std::getline(row, cell, ',')) {
        throw SolveError("short row in " + csv_path);
      }
      *f = std::stod(cell);
    }
    curve.samples.push_back(s);
  }
  if (curve.samples.size() < 2) {
    throw SolveError("curve file has no samples: " + csv_path);
  }
  return curve;
}

void write_locus_csv(const std::string& path,
                     const std::vector<paramspace::LocusSample>& samples) {
  std::ostringstream out;
  out << "p,phi,X,Y\n";
  for (const auto& s : samples) {
    out << format_double(s.p) << ',' << format_double(s.phi) << ','
        << format_double(s.X) << ',' << format_double(s.Y) << '\n';
  }
  write_text(path, out.str());
}

json knot_sidecar(const closure::ClosedRod& rod) {
  json j = curve_sidecar(rod.curve);
  j["point"] = point_json(rod.point);
  j["spec"] = json{{"m", rod.spec.m},
                   {"n", rod.spec.n},
                   {"delta_theta_target", rod.spec.delta_theta_target},
                   {"periods_to_close", rod.spec.periods_to_close}};
  j["knot"] = json{{"m", rod.knot.m},
                   {"n", rod.knot.n},
                   {"embedded", rod.knot.embedded},
                   {"multiple_cover", rod.knot.multiple_cover},
                   {"name", rod.knot.name}};
  j["embedded"] = rod.embedded;
  return j;
}

void write_chain_csv(const std::string& path,
                     const homotopy::HomotopyFamily& fam) {
  std::ostringstream out;
  out << "p,phi,X,Y,advance\n";
  for (const auto& pt : fam.chain) {
    out << format_double(pt.p) << ',' << format_double(pt.phi) << ','
        << format_double(pt.X) << ',' << format_double(pt.Y) << ','
        << format_double(homotopy::physical_delta_theta(pt)) << '\n';
  }
  write_text(path, out.str());
}

json landmarks_json(const homotopy::HomotopyFamily& fam) {
  json arr = json::array();
  for (const auto& lm : fam.landmarks) {
    arr.push_back(json{{"kind", paramspace::locus_name(lm.kind)},
                       {"point", point_json(lm.point)},
                       {"residual", lm.residual}});
  }
  return json{{"k", fam.k},
              {"n", fam.n},
              {"level", fam.level},
              {"rotated", fam.rotated},
              {"endpoint_limits",
               json::array({fam.endpoint_limits.first,
                            fam.endpoint_limits.second})},
              {"chain_points", fam.chain.size()},
              {"landmarks", arr}};
}

json stability_json(const stability::StabilityReport& rep) {
  return json{
      {"subject", rep.subject == stability::Subject::Circle ? "circle"
                                                            : "figure8"},
      {"verdict", stability::verdict_name(rep.verdict)},
      {"threshold", rep.threshold},
      {"first_indefinite_mode", rep.first_indefinite_mode},
      {"computed_quantities", rep.computed_quantities}};
}

}  // namespace elrod::io

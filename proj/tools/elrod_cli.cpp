#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "elrod/io.hpp"
#include "elrod/verify.hpp"

namespace fs = std::filesystem;
using namespace elrod;

namespace {

constexpr const char* kVersion = "0.1.0";

// 0 success, 2 validation error, 3 numerical failure.
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct GlobalOpts {
  std::string out_dir;
  bool quad_oracle = false;
  unsigned seed = 12345;
  std::vector<std::string> tol_overrides;  // name=value
};

std::string resolve_out(const GlobalOpts& g, const std::string& path) {
  if (g.out_dir.empty() || fs::path(path).is_absolute()) return path;
  fs::create_directories(g.out_dir);
  return (fs::path(g.out_dir) / path).string();
}

std::map<std::string, double> parse_tolerances(
    const std::vector<std::string>& kvs) {
  std::map<std::string, double> out;
  for (const auto& kv : kvs) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw DomainError("tolerance override must be NAME=VALUE: " + kv);
    }
    out[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
  }
  return out;
}

io::json run_metadata(const GlobalOpts& g, const std::string& command) {
  return io::json{{"generator", "elrod"},
                  {"version", kVersion},
                  {"command", command},
                  {"seed", g.seed},
                  {"quad_oracle", g.quad_oracle}};
}

void write_curve_with_sidecar(const GlobalOpts& g, const std::string& path,
                              const std::string& format,
                              const rodsynth::RodCurve& curve,
                              io::json sidecar) {
  sidecar["run"] = run_metadata(g, "curve");
  if (format == "obj") {
    io::write_curve_obj(path, curve);
  } else if (format == "json") {
    io::json samples = io::json::array();
    for (const auto& s : curve.samples) {
      samples.push_back(io::json::array(
          {s.t, s.x, s.y, s.z, s.r, s.theta, s.kappa, s.tau}));
    }
    sidecar["columns"] = {"t", "x", "y", "z", "r", "theta", "kappa", "tau"};
    sidecar["samples"] = samples;
    io::write_text(path, sidecar.dump(2) + "\n");
    return;
  } else {
    io::write_curve_csv(path, curve);
  }
  io::write_text(fs::path(path).replace_extension(".json").string(),
                 sidecar.dump(2) + "\n");
}

int cmd_locus(const GlobalOpts& g, const std::string& kind, int samples,
              const std::string& out) {
  static const std::map<std::string, paramspace::LocusKind> kinds = {
      {"elastic", paramspace::LocusKind::ElasticCurve},
      {"torsion", paramspace::LocusKind::ConstantTorsion},
      {"kida", paramspace::LocusKind::Kida},
      {"selfint", paramspace::LocusKind::SelfIntersecting}};
  io::write_locus_csv(resolve_out(g, out),
                      paramspace::sample_locus(kinds.at(kind), samples));
  return 0;
}

int cmd_curve(const GlobalOpts& g, double X, double Y, double p, double phi,
              bool polar, int periods, int per_period,
              const std::string& out, const std::string& format) {
  paramspace::DiskPoint pt = polar ? paramspace::DiskPoint::from_polar(p, phi)
                                   : paramspace::DiskPoint::from_xy(X, Y);
  rodsynth::SynthOptions opts;
  opts.force_quadrature = g.quad_oracle;
  auto curve = rodsynth::synthesize(pt, periods, per_period, opts);
  write_curve_with_sidecar(g, resolve_out(g, out), format, curve,
                           io::curve_sidecar(curve));
  return 0;
}

int cmd_knot(const GlobalOpts& g, int m, int n, bool constant_torsion,
             const std::string& out) {
  closure::ClosedRod rod =
      constant_torsion ? closure::solve_constant_torsion_knot(m, n)
                       : closure::solve_knot(closure::KnotSpec::make(m, n));
  write_curve_with_sidecar(g, resolve_out(g, out), "csv", rod.curve,
                           io::knot_sidecar(rod));
  return 0;
}

int cmd_homotopy(const GlobalOpts& g, int k, int n, int frames, double step,
                 const std::string& out_dir) {
  fs::path dir = g.out_dir.empty() ? fs::path(out_dir)
                                   : fs::path(g.out_dir) / out_dir;
  fs::create_directories(dir);
  auto fam = homotopy::trace_level(k, n, step);
  io::write_chain_csv((dir / "chain.csv").string(), fam);
  io::json lm = io::landmarks_json(fam);
  lm["run"] = run_metadata(g, "homotopy");
  io::write_text((dir / "landmarks.json").string(), lm.dump(2) + "\n");
  rodsynth::SynthOptions opts;
  opts.force_quadrature = g.quad_oracle;
  for (int f = 0; f < frames; ++f) {
    std::size_t idx = frames == 1 ? 0
                                  : (fam.chain.size() - 1) *
                                        static_cast<std::size_t>(f) /
                                        (frames - 1);
    auto curve = rodsynth::synthesize(fam.chain[idx], k + n, 128, opts);
    char name[32];
    std::snprintf(name, sizeof name, "frame_%02d.csv", f);
    write_curve_with_sidecar(g, (dir / name).string(), "csv", curve,
                             io::curve_sidecar(curve));
  }
  return 0;
}

int cmd_stability(const GlobalOpts& g, const std::string& subject,
                  double alpha, double beta, double m, double L,
                  const std::string& sweep, const std::string& out) {
  if (!sweep.empty()) {
    if (subject != "figure8") {
      throw DomainError("--sweep applies to --subject figure8 only");
    }
    double h0, h1;
    int steps;
    if (std::sscanf(sweep.c_str(), "%lf:%lf:%d", &h0, &h1, &steps) != 3 ||
        steps < 2) {
      throw DomainError("--sweep expects h0:h1:steps with steps >= 2");
    }
    specfun::Modulus mod = stability::figure_eight_modulus();
    std::string csv = "h,H\n";
    for (int i = 0; i < steps; ++i) {
      double h = h0 + (h1 - h0) * i / (steps - 1);
      csv += io::format_double(h) + "," +
             io::format_double(stability::solve_H_of_h(h, mod).H) + "\n";
    }
    if (out.empty()) {
      std::cout << csv;
    } else {
      io::write_text(resolve_out(g, out), csv);
    }
    return 0;
  }
  stability::StabilityReport rep =
      subject == "circle" ? stability::circle_stability(alpha, beta, m, L)
                          : stability::figure_eight_stability(alpha, beta);
  io::json j = io::stability_json(rep);
  j["run"] = run_metadata(g, "stability");
  std::cout << j.dump(2) << "\n";
  if (!out.empty()) {
    io::write_text(resolve_out(g, out), j.dump(2) + "\n");
  }
  return 0;
}

io::json report_json(const verify::VerifyReport& rep) {
  io::json checks = io::json::array();
  for (const auto& c : rep.checks) {
    checks.push_back(io::json{{"name", c.name},
                              {"residual", c.residual},
                              {"tolerance", c.tolerance},
                              {"pass", c.pass},
                              {"tolerance_induced", c.tolerance_induced}});
  }
  return io::json{
      {"suite", rep.suite}, {"checks", checks}, {"overall", rep.overall}};
}

int cmd_verify(const GlobalOpts& g, const std::string& suite,
               bool report_only, bool inject, const std::string& out) {
  verify::Options opts;
  opts.seed = g.seed;
  opts.quad_oracle = g.quad_oracle;
  opts.inject_n_sign_flip = inject;
  opts.tolerance_overrides = parse_tolerances(g.tol_overrides);
  verify::VerifyReport rep = verify::run_suite(suite, opts);
  std::cout << verify::report_table(rep);
  if (!out.empty()) {
    io::json j = report_json(rep);
    j["run"] = run_metadata(g, "verify");
    io::write_text(resolve_out(g, out), j.dump(2) + "\n");
  }
  if (rep.overall || report_only) return 0;
  for (const auto& c : rep.checks) {
    if (!c.pass) {
      std::cerr << "failing residual: " << c.name << " = "
                << io::format_double(c.residual) << " (tolerance "
                << io::format_double(c.tolerance) << ")\n";
      break;
    }
  }
  return kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"closed and quasiperiodic elastic rod centerlines"};
  app.set_config("--config", "", "read options from a key=value file");
  app.require_subcommand(1);

  GlobalOpts g;
  if (const char* env = std::getenv("ELROD_OUT_DIR")) g.out_dir = env;
  app.add_option("--out-dir", g.out_dir,
                 "directory prepended to relative output paths "
                 "(default from ELROD_OUT_DIR)");
  app.add_flag("--quad-oracle", g.quad_oracle,
               "force quadrature fallbacks instead of closed forms");
  app.add_option("--seed", g.seed, "seed for randomized property sweeps");
  app.add_option("--tol", g.tol_overrides,
                 "tolerance override NAME=VALUE (repeatable)");

  // locus
  auto* locus = app.add_subcommand("locus", "sample a locus curve as CSV");
  std::string locus_kind;
  int locus_samples = 256;
  std::string locus_out;
  locus->add_option("--kind", locus_kind)
      ->required()
      ->check(CLI::IsMember({"elastic", "torsion", "kida", "selfint"}));
  locus->add_option("--samples", locus_samples, "sample count")
      ->check(CLI::PositiveNumber);
  locus->add_option("--out", locus_out)->required();

  // curve
  auto* curve = app.add_subcommand("curve", "synthesize one centerline");
  double cX = 0.0, cY = 0.0, cp = 0.0, cphi = 0.0;
  int c_periods = 0, c_per = 256;
  std::string c_out, c_format = "csv";
  auto* ox = curve->add_option("--X", cX);
  auto* oy = curve->add_option("--Y", cY);
  auto* op = curve->add_option("--p", cp);
  auto* ophi = curve->add_option("--phi", cphi);
  ox->needs(oy);
  op->needs(ophi);
  ox->excludes(op);
  curve->add_option("--periods", c_periods)->required()
      ->check(CLI::PositiveNumber);
  curve->add_option("--per-period", c_per)->check(CLI::PositiveNumber);
  curve->add_option("--out", c_out)->required();
  curve->add_option("--format", c_format)
      ->check(CLI::IsMember({"csv", "json", "obj"}));

  // knot
  auto* knot = app.add_subcommand("knot", "solve a closed torus-knot rod");
  int k_m = 0, k_n = 0;
  bool k_ct = false;
  std::string k_out;
  knot->add_option("--m", k_m)->required();
  knot->add_option("--n", k_n)->required();
  knot->add_flag("--constant-torsion", k_ct);
  knot->add_option("--out", k_out)->required();

  // homotopy
  auto* hom = app.add_subcommand(
      "homotopy", "trace a circle-to-circle family and export frames");
  int h_k = 0, h_n = 0, h_frames = 8;
  double h_step = 1e-3;
  std::string h_out;
  hom->add_option("--k", h_k)->required();
  hom->add_option("--n", h_n)->required();
  hom->add_option("--frames", h_frames)->check(CLI::PositiveNumber);
  hom->add_option("--step", h_step)->check(CLI::PositiveNumber);
  hom->add_option("--out", h_out)->required();

  // stability
  auto* stab = app.add_subcommand("stability", "equilibrium stability report");
  std::string s_subject;
  double s_alpha = 1.0, s_beta = 1.0, s_m = 0.0, s_L = 2.0 * numeric::kPi;
  std::string s_sweep, s_out;
  stab->add_option("--subject", s_subject)
      ->required()
      ->check(CLI::IsMember({"circle", "figure8"}));
  stab->add_option("--alpha", s_alpha);
  stab->add_option("--beta", s_beta);
  stab->add_option("--m", s_m);
  stab->add_option("--L", s_L);
  stab->add_option("--sweep", s_sweep, "h0:h1:steps H(h) table as CSV");
  stab->add_option("--out", s_out);

  // verify
  auto* ver = app.add_subcommand("verify", "run the verification suites");
  std::string v_suite = "all", v_out;
  bool v_report_only = false, v_inject = false;
  ver->add_option("--suite", v_suite)
      ->check(CLI::IsMember({"identities", "constants", "closure", "homotopy",
                             "stability", "all"}));
  ver->add_flag("--report-only", v_report_only,
                "always exit 0; failures stay in the report");
  ver->add_flag("--inject-n-sign-flip", v_inject)->group("");  // hidden
  ver->add_option("--out", v_out, "write the report as JSON");

  // hidden alias: the special-function identity table
  auto* self = app.add_subcommand("specfun-selftest");
  self->group("");

  // global options remain valid after the subcommand name
  for (CLI::App* sub : {locus, curve, knot, hom, stab, ver, self}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*locus) return cmd_locus(g, locus_kind, locus_samples, locus_out);
    if (*curve) {
      if (!*ox && !*op) {
        throw DomainError("curve needs either --X/--Y or --p/--phi");
      }
      return cmd_curve(g, cX, cY, cp, cphi, static_cast<bool>(*op),
                       c_periods, c_per, c_out, c_format);
    }
    if (*knot) return cmd_knot(g, k_m, k_n, k_ct, k_out);
    if (*hom) return cmd_homotopy(g, h_k, h_n, h_frames, h_step, h_out);
    if (*stab) {
      return cmd_stability(g, s_subject, s_alpha, s_beta, s_m, s_L, s_sweep,
                           s_out);
    }
    if (*ver) return cmd_verify(g, v_suite, v_report_only, v_inject, v_out);
    if (*self) return cmd_verify(g, "identities", false, false, "");
  } catch (const DomainError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const SolveError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}

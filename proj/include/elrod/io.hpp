#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "elrod/closure.hpp"
#include "elrod/homotopy.hpp"
#include "elrod/stability.hpp"

namespace elrod::io {

using nlohmann::json;

// 17 significant digits: enough for binary64 round trips through text.
std::string format_double(double x);

void write_text(const std::string& path, const std::string& content);

// Columns t,x,y,z,r,theta,kappa,tau plus the conserved field Jx,Jy,Jz, so a
// re-read file carries everything the first-integral checks consume.
void write_curve_csv(const std::string& path,
                     const rodsynth::RodCurve& curve);

// Single polyline object, vertices in synthesis order, no normals.
void write_curve_obj(const std::string& path,
                     const rodsynth::RodCurve& curve);

json constants_json(const paramspace::RodConstants& k);
paramspace::RodConstants constants_from_json(const json& j);

// Sidecar carrying constants, residual report, and run metadata; written
// next to every emitted curve file.
json curve_sidecar(const rodsynth::RodCurve& curve);

// Rebuilds the curve from a CSV plus its sidecar. The samples come from the
// file verbatim, so first-integral residuals reproduce the recorded ones.
rodsynth::RodCurve read_curve_csv(const std::string& csv_path,
                                  const std::string& sidecar_path);

void write_locus_csv(const std::string& path,
                     const std::vector<paramspace::LocusSample>& samples);

json knot_sidecar(const closure::ClosedRod& rod);

// Chain columns p,phi,X,Y,advance (physical per-period advance).
void write_chain_csv(const std::string& path,
                     const homotopy::HomotopyFamily& fam);

json landmarks_json(const homotopy::HomotopyFamily& fam);

json stability_json(const stability::StabilityReport& rep);

}  // namespace elrod::io

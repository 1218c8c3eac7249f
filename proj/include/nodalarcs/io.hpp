#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "nodalarcs/arcs.hpp"
#include "nodalarcs/caps.hpp"
#include "nodalarcs/curves.hpp"
#include "nodalarcs/geom.hpp"

namespace nodalarcs::io {

using json = nlohmann::json;

inline constexpr const char* kSchema = "nodal-arcs/1";

json field_to_json(const gf::Fq& F);
// validates p, s, modulus; throws Error("ParseError", ...) on bad input
std::unique_ptr<gf::Fq> field_from_json(const json& j);

json ext_to_json(const gf::Ext& v);
gf::Ext ext_from_json(const gf::Fq& F, const json& j);

json point_to_json(const geom::PlanePoint& p);
geom::PlanePoint point_from_json(const gf::Fq& F, const json& j);

json flags_to_json(const arcs::GuaranteeFlags& f);

// artifacts carry the full field context so they re-verify standalone
json arc_artifact_to_json(const gf::Fq2& E, const arcs::ArcArtifact& arc, const json& config);

struct LoadedArc {
  std::unique_ptr<gf::Fq> F;
  std::unique_ptr<gf::Fq2> E;
  arcs::ArcArtifact arc;
};
LoadedArc arc_artifact_from_json(const json& j);

json cap_artifact_to_json(const gf::Fq2& E, const caps::CapArtifact& art, const json& config);

struct LoadedCap {
  std::unique_ptr<gf::Fq> F;
  std::unique_ptr<gf::Fq2> E;
  caps::CapArtifact art;
};
LoadedCap cap_artifact_from_json(const json& j);

json bicover_report_to_json(const geom::BicoverReport& rep);
json coverage_report_to_json(const caps::CoverageReport& rep);

// 64-bit FNV-1a of the canonical dump, as fixed-width hex
std::string fnv1a64_hex(const std::string& data);

// canonical serialization used for all artifacts and reports
std::string dump_canonical(const json& j);

}  // namespace nodalarcs::io

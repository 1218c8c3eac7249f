#include <set>
#include "nodalarcs/io.hpp"

#include <charconv>

namespace nodalarcs::io {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { fail("ParseError", what); }

bool nonneg_int(const json& j) {
  return j.is_number_unsigned() || (j.is_number_integer() && j.get<i64>() >= 0);
}

u64 get_u64(const json& j, const char* key) {
  if (!j.contains(key) || !nonneg_int(j[key]))
    parse_fail(std::string(key) + " missing or not a non-negative integer");
  return j[key].get<u64>();
}

gf::Fel fel_from_json(const gf::Fq& F, const json& j) {
  if (!nonneg_int(j)) parse_fail("element encoding must be a non-negative integer");
  u64 v = j.get<u64>();
  if (v >= F.q()) parse_fail("element encoding out of range");
  return gf::Fel{v};
}

json points_to_json(const std::vector<geom::PlanePoint>& pts) {
  json out = json::array();
  for (const auto& p : pts) out.push_back(point_to_json(p));
  return out;
}

std::vector<geom::PlanePoint> points_from_json(const gf::Fq& F, const json& j) {
  if (!j.is_array()) parse_fail("expected an array of points");
  std::vector<geom::PlanePoint> out;
  for (const auto& e : j) out.push_back(point_from_json(F, e));
  return out;
}

}  // namespace

json field_to_json(const gf::Fq& F) {
  json j;
  j["p"] = F.p();
  j["s"] = F.s();
  if (F.s() > 1) j["modulus"] = F.modulus();
  return j;
}

std::unique_ptr<gf::Fq> field_from_json(const json& j) {
  if (!j.is_object()) parse_fail("field descriptor must be an object");
  u64 p = get_u64(j, "p");
  u64 s = get_u64(j, "s");
  try {
    if (j.contains("modulus")) {
      std::vector<u64> mod = j["modulus"].get<std::vector<u64>>();
      return std::make_unique<gf::Fq>(p, int(s), mod);
    }
    return std::make_unique<gf::Fq>(p, int(s));
  } catch (const Error& e) {
    parse_fail(std::string("bad field descriptor: ") + e.what());
  }
}

json ext_to_json(const gf::Ext& v) { return json::array({v.c0.v, v.c1.v}); }

gf::Ext ext_from_json(const gf::Fq& F, const json& j) {
  if (!j.is_array() || j.size() != 2) parse_fail("extension element must be [c0, c1]");
  return {fel_from_json(F, j[0]), fel_from_json(F, j[1])};
}

json point_to_json(const geom::PlanePoint& p) { return json::array({p.x.v, p.y.v}); }

geom::PlanePoint point_from_json(const gf::Fq& F, const json& j) {
  if (!j.is_array() || j.size() != 2) parse_fail("point must be [x, y]");
  return {fel_from_json(F, j[0]), fel_from_json(F, j[1])};
}

json flags_to_json(const arcs::GuaranteeFlags& f) {
  json j;
  j["complete_arc_bound"] = f.complete_arc_bound;
  j["secant_bound"] = f.secant_bound;
  j["punctured_secant_bound"] = f.punctured_secant_bound;
  j["bicovering_bound"] = f.bicovering_bound;
  j["complete_cap_bound"] = f.complete_cap_bound;
  return j;
}

namespace {

arcs::GuaranteeFlags flags_from_json(const json& j) {
  arcs::GuaranteeFlags f;
  f.complete_arc_bound = j.value("complete_arc_bound", false);
  f.secant_bound = j.value("secant_bound", false);
  f.punctured_secant_bound = j.value("punctured_secant_bound", false);
  f.bicovering_bound = j.value("bicovering_bound", false);
  f.complete_cap_bound = j.value("complete_cap_bound", false);
  return f;
}

}  // namespace

json arc_artifact_to_json(const gf::Fq2& E, const arcs::ArcArtifact& arc, const json& config) {
  json j;
  j["schema"] = kSchema;
  j["kind"] = "arc";
  j["construction"] = arc.construction;
  j["field"] = field_to_json(E.base());
  j["beta_sq"] = E.beta_sq().v;
  j["m"] = arc.m;
  if (arc.m1) j["m1"] = *arc.m1;
  if (arc.m2) j["m2"] = *arc.m2;
  if (!arc.coset_labels.empty()) j["M"] = arc.coset_labels;
  j["tbar"] = ext_to_json(arc.tbar);
  j["points"] = points_to_json(arc.curve_points);
  j["exceptional"] = points_to_json(arc.exceptional);
  j["member_exponents"] = arc.member_exponents;
  j["flags"] = flags_to_json(arc.flags);
  j["center"] = arc.center ? point_to_json(*arc.center) : json(nullptr);
  j["config"] = config;
  return j;
}

LoadedArc arc_artifact_from_json(const json& j) {
  if (!j.is_object() || j.value("schema", "") != kSchema) parse_fail("unknown schema");
  if (j.value("kind", "") != "arc") parse_fail("not an arc artifact");
  LoadedArc out;
  out.F = field_from_json(j.at("field"));
  gf::Fel beta_sq = fel_from_json(*out.F, j.at("beta_sq"));
  try {
    out.E = std::make_unique<gf::Fq2>(*out.F, beta_sq);
  } catch (const Error& e) {
    parse_fail(std::string("bad beta_sq: ") + e.what());
  }
  arcs::ArcArtifact& arc = out.arc;
  arc.construction = j.value("construction", "");
  arc.m = get_u64(j, "m");
  if (j.contains("m1")) arc.m1 = get_u64(j, "m1");
  if (j.contains("m2")) arc.m2 = get_u64(j, "m2");
  if (j.contains("M")) arc.coset_labels = j["M"].get<std::vector<u64>>();
  arc.tbar = ext_from_json(*out.F, j.at("tbar"));
  arc.curve_points = points_from_json(*out.F, j.at("points"));
  arc.exceptional = points_from_json(*out.F, j.at("exceptional"));
  if (j.contains("member_exponents"))
    arc.member_exponents = j["member_exponents"].get<std::vector<u64>>();
  arc.flags = flags_from_json(j.value("flags", json::object()));
  if (j.contains("center") && !j["center"].is_null())
    arc.center = point_from_json(*out.F, j["center"]);
  std::set<geom::PlanePoint> all(arc.curve_points.begin(), arc.curve_points.end());
  all.insert(arc.exceptional.begin(), arc.exceptional.end());
  arc.points.assign(all.begin(), all.end());
  return out;
}

json cap_artifact_to_json(const gf::Fq2& E, const caps::CapArtifact& art, const json& config) {
  json arc_json = arc_artifact_to_json(E, art.arc, json::object());
  json j;
  j["schema"] = kSchema;
  j["kind"] = "cap";
  j["N"] = art.N;
  j["field"] = field_to_json(E.base());
  j["beta_sq"] = E.beta_sq().v;
  json mod = json::array();
  for (const auto& c : art.lift_modulus) mod.push_back(c.v);
  j["lift_modulus"] = mod;
  json pts = json::array();
  for (const auto& pt : art.cap.points) {
    json row = json::array();
    for (const auto& c : pt) row.push_back(c.v);
    pts.push_back(row);
  }
  j["points"] = pts;
  j["completion"] = art.cap.completion;
  j["tau"] = art.tau;
  j["center"] = art.arc.center ? point_to_json(*art.arc.center) : json(nullptr);
  j["center_class"] = art.center_class;
  j["flags"] = flags_to_json(art.flags);
  j["arc"] = arc_json;
  j["provenance"] = fnv1a64_hex(dump_canonical(arc_json));
  j["config"] = config;
  return j;
}

LoadedCap cap_artifact_from_json(const json& j) {
  if (!j.is_object() || j.value("schema", "") != kSchema) parse_fail("unknown schema");
  if (j.value("kind", "") != "cap") parse_fail("not a cap artifact");
  LoadedCap out;
  out.F = field_from_json(j.at("field"));
  gf::Fel beta_sq = fel_from_json(*out.F, j.at("beta_sq"));
  try {
    out.E = std::make_unique<gf::Fq2>(*out.F, beta_sq);
  } catch (const Error& e) {
    parse_fail(std::string("bad beta_sq: ") + e.what());
  }
  caps::CapArtifact& art = out.art;
  art.N = get_u64(j, "N");
  if (art.N % 4 != 0 || art.N < 4 || art.N > 16) parse_fail("bad dimension N");
  for (const auto& c : j.at("lift_modulus")) art.lift_modulus.push_back(fel_from_json(*out.F, c));
  art.cap.N = art.N;
  art.cap.completion = j.value("completion", "none");
  if (!j.at("points").is_array()) parse_fail("points must be an array");
  for (const auto& row : j.at("points")) {
    if (!row.is_array() || row.size() != art.N) parse_fail("cap point has wrong length");
    std::vector<gf::Fel> pt;
    for (const auto& c : row) pt.push_back(fel_from_json(*out.F, c));
    art.cap.points.push_back(std::move(pt));
  }
  art.tau = j.value("tau", u64{0});
  art.center_class = j.value("center_class", "");
  art.flags = flags_from_json(j.value("flags", json::object()));
  if (j.contains("arc")) {
    LoadedArc inner = arc_artifact_from_json(j.at("arc"));
    art.arc = inner.arc;
  }
  return out;
}

json bicover_report_to_json(const geom::BicoverReport& rep) {
  json j;
  j["arc_size"] = rep.arc_size;
  j["mode"] = rep.mode == geom::VerifyMode::Exhaustive ? "exhaustive" : "sample";
  if (rep.mode == geom::VerifyMode::Sample) {
    j["samples"] = rep.samples;
    j["seed"] = rep.seed;
  }
  j["scanned"] = rep.scanned;
  json unc = json::array(), ext = json::array(), intr = json::array();
  for (const auto& p : rep.uncovered) unc.push_back(point_to_json(p));
  for (const auto& p : rep.external_only) ext.push_back(point_to_json(p));
  for (const auto& p : rep.internal_only) intr.push_back(point_to_json(p));
  j["uncovered"] = unc;
  j["external_only"] = ext;
  j["internal_only"] = intr;
  j["bicovered_count"] = rep.bicovered_count;
  if (rep.mode == geom::VerifyMode::Exhaustive) {
    j["is_bicovering"] = rep.is_bicovering;
    j["almost_bicovering"] = rep.almost_bicovering;
    j["complete"] = rep.uncovered.empty();
  }
  j["center"] = rep.center_candidate ? point_to_json(*rep.center_candidate) : json(nullptr);
  return j;
}

json coverage_report_to_json(const caps::CoverageReport& rep) {
  json j;
  j["mode"] = rep.mode == geom::VerifyMode::Exhaustive ? "exhaustive" : "sample";
  if (rep.mode == geom::VerifyMode::Sample) {
    j["samples"] = rep.samples;
    j["seed"] = rep.seed;
  }
  j["scanned"] = rep.scanned;
  j["covered"] = rep.covered;
  j["coverage"] = rep.fraction();
  if (rep.mode == geom::VerifyMode::Exhaustive) j["complete"] = rep.exhaustive_complete;
  return j;
}

std::string fnv1a64_hex(const std::string& data) {
  u64 h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  for (int i = 15; i >= 0; --i) {
    buf[i] = "0123456789abcdef"[h & 0xf];
    h >>= 4;
  }
  buf[16] = '\0';
  return buf;
}

std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

}  // namespace nodalarcs::io

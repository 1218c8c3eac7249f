#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "nodalarcs/io.hpp"

using namespace nodalarcs;
using io::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInconclusive = 3;

struct CommonOpts {
  u64 p = 0;
  u64 s = 1;
  std::optional<u64> beta_sq;
  u64 seed = 0;
  unsigned threads = 1;
  std::string out;
  std::string in;
  std::string mode = "exhaustive";
  u64 samples = 0;
};

void add_field_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--p", o.p, "field characteristic (prime > 3)")->required();
  cmd->add_option("--s", o.s, "extension degree of F_q over F_p");
  cmd->add_option("--beta-sq", o.beta_sq, "non-square used as beta^2 (packed)");
}

struct FieldCtx {
  std::unique_ptr<gf::Fq> F;
  std::unique_ptr<gf::Fq2> E;
};

FieldCtx make_field(const CommonOpts& o) {
  FieldCtx ctx;
  ctx.F = std::make_unique<gf::Fq>(o.p, int(o.s));
  std::optional<gf::Fel> bsq;
  if (o.beta_sq) bsq = ctx.F->from_packed(*o.beta_sq);
  ctx.E = std::make_unique<gf::Fq2>(*ctx.F, bsq);
  return ctx;
}

geom::VerifyMode parse_mode(const std::string& mode) {
  if (mode == "exhaustive") return geom::VerifyMode::Exhaustive;
  if (mode == "sample") return geom::VerifyMode::Sample;
  fail("InvalidParams", "mode must be exhaustive or sample");
}

// writes the payload to --out (summary to stdout), or the payload itself
// to stdout when no --out is given
void emit(const CommonOpts& o, const json& payload, const std::string& summary) {
  std::string text = io::dump_canonical(payload);
  if (o.out.empty()) {
    std::cout << text;
    if (!summary.empty()) std::cerr << summary << "\n";
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) fail("IoError", "cannot open output file: " + o.out);
    f << text;
    if (!summary.empty()) std::cout << summary << "\n";
  }
}

json read_json_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail("IoError", "cannot open input file: " + path);
  json j = json::parse(f, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) fail("ParseError", "input is not valid JSON");
  return j;
}

std::string flags_summary(const arcs::GuaranteeFlags& f) {
  std::string s = "flags:";
  s += std::string(" arc=") + (f.complete_arc_bound ? "1" : "0");
  s += std::string(" secant=") + (f.secant_bound ? "1" : "0");
  s += std::string(" punctured=") + (f.punctured_secant_bound ? "1" : "0");
  s += std::string(" bicovering=") + (f.bicovering_bound ? "1" : "0");
  s += std::string(" cap=") + (f.complete_cap_bound ? "1" : "0");
  return s;
}

// --- construct -------------------------------------------------------------

int cmd_construct_arc(const CommonOpts& o, u64 m) {
  FieldCtx ctx = make_field(o);
  arcs::ArcArtifact arc = arcs::build_complete_arc(*ctx.E, m);
  json config{{"command", "construct arc"}, {"p", o.p}, {"s", o.s}, {"m", m}};
  if (o.beta_sq) config["beta_sq"] = *o.beta_sq;
  emit(o, io::arc_artifact_to_json(*ctx.E, arc, config),
       "arc size " + std::to_string(arc.points.size()) + " (" +
           std::to_string(arc.curve_points.size()) + " on the cubic, " +
           std::to_string(arc.exceptional.size()) + " exceptional); " +
           flags_summary(arc.flags));
  return kExitPass;
}

int cmd_construct_bicovering(const CommonOpts& o, u64 m, std::optional<u64> m1,
                             std::optional<u64> m2) {
  FieldCtx ctx = make_field(o);
  arcs::ArcArtifact arc = arcs::build_almost_bicovering(*ctx.E, m, m1, m2);
  json config{{"command", "construct bicovering"}, {"p", o.p}, {"s", o.s}, {"m", m}};
  if (m1) config["m1"] = *m1;
  if (m2) config["m2"] = *m2;
  if (o.beta_sq) config["beta_sq"] = *o.beta_sq;
  emit(o, io::arc_artifact_to_json(*ctx.E, arc, config),
       "bicovering arc size " + std::to_string(arc.points.size()) + " with " +
           std::to_string(arc.coset_labels.size()) + " cosets; " + flags_summary(arc.flags));
  return kExitPass;
}

int cmd_construct_cap(const CommonOpts& o, u64 m1, u64 m2, u64 N) {
  FieldCtx ctx = make_field(o);
  caps::CapArtifact art = caps::build_complete_cap(*ctx.E, m1, m2, N, o.threads);
  json config{{"command", "construct cap"}, {"p", o.p},   {"s", o.s},
              {"m1", m1},                   {"m2", m2},   {"N", N}};
  if (o.beta_sq) config["beta_sq"] = *o.beta_sq;
  emit(o, io::cap_artifact_to_json(*ctx.E, art, config),
       "cap size " + std::to_string(art.cap.size()) + " in AG(" + std::to_string(N) + "," +
           std::to_string(ctx.F->q()) + "), completion " + art.cap.completion + "; " +
           flags_summary(art.flags));
  return kExitPass;
}

// --- verify ----------------------------------------------------------------

int cmd_verify_arc(const CommonOpts& o, bool bicovering) {
  io::LoadedArc loaded = io::arc_artifact_from_json(read_json_file(o.in));
  const gf::Fq& F = *loaded.F;
  geom::VerifyMode mode = parse_mode(o.mode);

  json rep;
  rep["schema"] = io::kSchema;
  rep["kind"] = bicovering ? "bicovering_report" : "arc_report";
  json config{{"command", bicovering ? "verify bicovering" : "verify arc"},
              {"mode", o.mode},
              {"seed", o.seed}};
  if (mode == geom::VerifyMode::Sample) config["samples"] = o.samples;
  rep["config"] = config;

  auto chk = geom::is_arc(F, loaded.arc.points);
  rep["is_arc"] = chk.ok;
  if (!chk.ok) {
    json w = json::array();
    for (const auto& p : chk.witness) w.push_back(io::point_to_json(p));
    rep["witness"] = w;
    emit(o, rep, "FAIL: not an arc");
    return kExitFail;
  }
  geom::BicoverReport bic =
      geom::bicover_classify(F, loaded.arc.points, mode, o.samples, o.seed, o.threads);
  json b = io::bicover_report_to_json(bic);
  for (auto& [k, v] : b.items()) rep[k] = v;
  if (bicovering && loaded.arc.center) {
    rep["declared_center"] = io::point_to_json(*loaded.arc.center);
    if (mode == geom::VerifyMode::Exhaustive)
      rep["center_matches_declared"] =
          bic.center_candidate.has_value() && *bic.center_candidate == *loaded.arc.center;
  }
  bool inconclusive = (mode == geom::VerifyMode::Sample);
  std::string summary = inconclusive
                            ? "arc ok; sampled classification only (inconclusive)"
                            : std::string("arc ok; complete=") +
                                  (bic.uncovered.empty() ? "yes" : "no");
  emit(o, rep, summary);
  return inconclusive ? kExitInconclusive : kExitPass;
}

int cmd_verify_cap(const CommonOpts& o) {
  io::LoadedCap loaded = io::cap_artifact_from_json(read_json_file(o.in));
  const gf::Fq& F = *loaded.F;
  geom::VerifyMode mode = parse_mode(o.mode);

  json rep;
  rep["schema"] = io::kSchema;
  rep["kind"] = "cap_report";
  rep["cap_size"] = loaded.art.cap.size();
  rep["N"] = loaded.art.N;
  json config{{"command", "verify cap"}, {"mode", o.mode}, {"seed", o.seed}};
  if (mode == geom::VerifyMode::Sample) config["samples"] = o.samples;
  rep["config"] = config;

  auto chk = caps::is_cap(F, loaded.art.cap);
  rep["is_cap"] = chk.ok;
  if (!chk.ok) {
    json w = json::array();
    for (const auto& pt : chk.witness) {
      json row = json::array();
      for (const auto& c : pt) row.push_back(c.v);
      w.push_back(row);
    }
    rep["witness"] = w;
    emit(o, rep, "FAIL: not a cap");
    return kExitFail;
  }
  caps::CoverageReport cov =
      caps::cap_coverage(F, loaded.art.cap, mode, o.samples, o.seed, o.threads);
  json c = io::coverage_report_to_json(cov);
  for (auto& [k, v] : c.items()) rep[k] = v;
  bool inconclusive = (mode == geom::VerifyMode::Sample);
  std::string summary;
  if (inconclusive) {
    summary = "cap ok; sampled coverage " + std::to_string(cov.fraction()) + " (inconclusive)";
  } else {
    summary = std::string("cap ok; complete=") + (cov.exhaustive_complete ? "yes" : "no");
  }
  emit(o, rep, summary);
  return inconclusive ? kExitInconclusive : kExitPass;
}

// --- aux -------------------------------------------------------------------

gf::Ext resolve_tbar(const FieldCtx& ctx, const std::optional<std::string>& tbar_str, u64 m) {
  if (!tbar_str) return cubic::Curve(*ctx.E).default_tbar(m);
  auto comma = tbar_str->find(',');
  if (comma == std::string::npos)
    fail("InvalidParams", "--tbar expects two comma-separated packed integers c0,c1");
  u64 c0 = std::stoull(tbar_str->substr(0, comma));
  u64 c1 = std::stoull(tbar_str->substr(comma + 1));
  return ctx.E->make(ctx.F->from_packed(c0), ctx.F->from_packed(c1));
}

int cmd_aux_identities(const CommonOpts& o, u64 m, u64 trials,
                       const std::optional<std::string>& tbar_str) {
  FieldCtx ctx = make_field(o);
  gf::Ext tbar = resolve_tbar(ctx, tbar_str, m);
  curves::IdentityReport r = curves::run_identities(*ctx.E, tbar, m, trials, o.seed);
  bool ok = r.param_identity_ok && r.hl_rational && r.h_minus_beta_l_ok && r.m_paths_agree &&
            r.m_rational && r.g_determinant_ok;
  json j{{"schema", io::kSchema},
         {"kind", "aux_identities"},
         {"identities",
          {{"param_identity_checked", r.param_identity_checked},
           {"param_identity_ok", r.param_identity_ok},
           {"hl_rational", r.hl_rational},
           {"h_minus_beta_l_ok", r.h_minus_beta_l_ok},
           {"m_pairs_checked", r.m_pairs_checked},
           {"m_paths_agree", r.m_paths_agree},
           {"m_rational", r.m_rational},
           {"g_pairs_checked", r.g_pairs_checked},
           {"g_determinant_ok", r.g_determinant_ok}}},
         {"config",
          {{"command", "aux identities"}, {"p", o.p}, {"s", o.s}, {"m", m},
           {"trials", trials}, {"seed", o.seed}}}};
  emit(o, j, ok ? "all identities hold" : "IDENTITY FAILURE");
  return ok ? kExitPass : kExitFail;
}

json degenerate_json(const gf::Fq2& E, const curves::CurveParams& par) {
  json d = json::array();
  for (auto c : curves::check_degenerate(E, par)) d.push_back(curves::to_string(c));
  return d;
}

// both aux point subcommands share one report shape:
//   {count, window, witnesses, external, internal, degenerate}
json aux_point_report(const FieldCtx& ctx, const curves::CurveParams& par, unsigned threads,
                      const char* kind, const json& config, bool with_pairs,
                      curves::CountResult* out_count) {
  curves::CountResult res = curves::count_points_M(*ctx.E, par, threads);
  if (out_count) *out_count = res;
  json j{{"schema", io::kSchema},
         {"kind", kind},
         {"count", res.count},
         {"degenerate", degenerate_json(*ctx.E, par)},
         {"config", config}};
  if (res.vacuous) j["window"] = "vacuous";
  else j["window"] = json::array({res.window_lo, res.window_hi});
  if (ctx.E->is_mth_power_in_mu(par.tbar, par.m)) return j;  // K_T undefined
  curves::WitnessReport rep = curves::secant_witnesses(*ctx.E, par);
  j["witnesses"] = rep.witnesses.size();
  j["external"] = rep.external;
  j["internal"] = rep.internal;
  if (with_pairs) {
    json wl = json::array();
    for (const auto& w : rep.witnesses) {
      wl.push_back(json{{"p1", io::point_to_json(w.p1)},
                        {"p2", io::point_to_json(w.p2)},
                        {"position", w.cls == geom::SegPos::External   ? "external"
                                     : w.cls == geom::SegPos::Internal ? "internal"
                                                                       : "other"}});
    }
    j["pairs"] = wl;
  }
  return j;
}

int cmd_aux_count(const CommonOpts& o, u64 m, u64 a, u64 b,
                  const std::optional<std::string>& tbar_str) {
  FieldCtx ctx = make_field(o);
  gf::Ext tbar = resolve_tbar(ctx, tbar_str, m);
  curves::CurveParams par =
      curves::make_params(*ctx.E, ctx.F->from_packed(a), ctx.F->from_packed(b), tbar, m);
  json config{{"command", "aux count"}, {"p", o.p}, {"s", o.s}, {"m", m}, {"a", a}, {"b", b},
              {"tbar", io::ext_to_json(par.tbar)}};
  curves::CountResult res;
  json j = aux_point_report(ctx, par, o.threads, "aux_count", config, false, &res);
  bool in_window =
      res.vacuous || (i64(res.count) >= res.window_lo && i64(res.count) <= res.window_hi);
  emit(o, j, "count " + std::to_string(res.count) +
                 (res.vacuous ? " (window vacuous)" : " (window enforced)"));
  return in_window ? kExitPass : kExitFail;
}

int cmd_aux_witnesses(const CommonOpts& o, u64 m, u64 a, u64 b,
                      const std::optional<std::string>& tbar_str) {
  FieldCtx ctx = make_field(o);
  gf::Ext tbar = resolve_tbar(ctx, tbar_str, m);
  curves::CurveParams par =
      curves::make_params(*ctx.E, ctx.F->from_packed(a), ctx.F->from_packed(b), tbar, m);
  json config{{"command", "aux witnesses"}, {"p", o.p}, {"s", o.s}, {"m", m}, {"a", a},
              {"b", b},                     {"tbar", io::ext_to_json(par.tbar)}};
  json j = aux_point_report(ctx, par, o.threads, "aux_witnesses", config, true, nullptr);
  emit(o, j, j.value("witnesses", u64{0}) == 0
                 ? "no witness pairs"
                 : std::to_string(j["witnesses"].get<u64>()) + " witness pairs (" +
                       std::to_string(j["external"].get<u64>()) + " external, " +
                       std::to_string(j["internal"].get<u64>()) + " internal)");
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"complete arcs and caps from a cubic with an isolated double point"};
  app.require_subcommand(1);

  CommonOpts o;
  u64 m = 0, m1 = 0, m2 = 0, N = 4, a = 0, b = 0, trials = 100;
  std::optional<u64> opt_m1, opt_m2;
  std::optional<std::string> tbar_str;

  auto* construct = app.add_subcommand("construct", "build an artifact");
  construct->require_subcommand(1);
  auto* c_arc = construct->add_subcommand("arc", "complete-arc candidate");
  add_field_flags(c_arc, o);
  c_arc->add_option("--m", m, "index of the subgroup K")->required();
  c_arc->add_option("--out", o.out, "artifact file");
  auto* c_bico = construct->add_subcommand("bicovering", "almost-bicovering arc");
  add_field_flags(c_bico, o);
  c_bico->add_option("--m", m, "index of the subgroup K (defaults to m1*m2)");
  c_bico->add_option("--m1", opt_m1, "first coprime factor of m");
  c_bico->add_option("--m2", opt_m2, "second coprime factor of m");
  c_bico->add_option("--out", o.out, "artifact file");
  auto* c_cap = construct->add_subcommand("cap", "complete-cap candidate");
  add_field_flags(c_cap, o);
  c_cap->add_option("--m1", m1, "first coprime factor of m")->required();
  c_cap->add_option("--m2", m2, "second coprime factor of m")->required();
  c_cap->add_option("--N", N, "ambient dimension (multiple of 4)")->required();
  c_cap->add_option("--threads", o.threads, "worker threads for verification");
  c_cap->add_option("--out", o.out, "artifact file");

  auto* verify = app.add_subcommand("verify", "verify an artifact");
  verify->require_subcommand(1);
  auto add_verify_flags = [&](CLI::App* cmd) {
    cmd->add_option("--in", o.in, "artifact file")->required();
    cmd->add_option("--mode", o.mode, "exhaustive|sample");
    cmd->add_option("--samples", o.samples, "sample count");
    cmd->add_option("--seed", o.seed, "sampling seed");
    cmd->add_option("--threads", o.threads, "worker threads");
    cmd->add_option("--out", o.out, "report file");
  };
  auto* v_arc = verify->add_subcommand("arc", "arc property and covering classes");
  add_verify_flags(v_arc);
  auto* v_bico = verify->add_subcommand("bicovering", "arc property, classes, center");
  add_verify_flags(v_bico);
  auto* v_cap = verify->add_subcommand("cap", "cap property and coverage");
  add_verify_flags(v_cap);

  auto* aux = app.add_subcommand("aux", "curve-apparatus checks");
  aux->require_subcommand(1);
  auto* a_id = aux->add_subcommand("identities", "polynomial identity battery");
  add_field_flags(a_id, o);
  a_id->add_option("--m", m, "index m")->required();
  a_id->add_option("--trials", trials, "evaluation points");
  a_id->add_option("--seed", o.seed, "sampling seed");
  a_id->add_option("--tbar", tbar_str, "coset representative c0,c1");
  a_id->add_option("--out", o.out, "report file");
  auto* a_count = aux->add_subcommand("count", "affine point count with its window");
  add_field_flags(a_count, o);
  a_count->add_option("--m", m, "index m")->required();
  a_count->add_option("--a", a, "x-coordinate of P (packed)")->required();
  a_count->add_option("--b", b, "y-coordinate of P (packed)")->required();
  a_count->add_option("--tbar", tbar_str, "coset representative c0,c1");
  a_count->add_option("--threads", o.threads, "worker threads for the row scan");
  a_count->add_option("--out", o.out, "report file");
  auto* a_wit = aux->add_subcommand("witnesses", "secant witnesses through P");
  add_field_flags(a_wit, o);
  a_wit->add_option("--m", m, "index m")->required();
  a_wit->add_option("--a", a, "x-coordinate of P (packed)")->required();
  a_wit->add_option("--b", b, "y-coordinate of P (packed)")->required();
  a_wit->add_option("--tbar", tbar_str, "coset representative c0,c1");
  a_wit->add_option("--out", o.out, "report file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_arc->parsed()) return cmd_construct_arc(o, m);
    if (c_bico->parsed()) {
      u64 mm = m;
      if (mm == 0 && opt_m1 && opt_m2) mm = *opt_m1 * *opt_m2;
      if (mm == 0) fail("InvalidParams", "need --m or both --m1 and --m2");
      return cmd_construct_bicovering(o, mm, opt_m1, opt_m2);
    }
    if (c_cap->parsed()) return cmd_construct_cap(o, m1, m2, N);
    if (v_arc->parsed()) return cmd_verify_arc(o, false);
    if (v_bico->parsed()) return cmd_verify_arc(o, true);
    if (v_cap->parsed()) return cmd_verify_cap(o);
    if (a_id->parsed()) return cmd_aux_identities(o, m, trials, tbar_str);
    if (a_count->parsed()) return cmd_aux_count(o, m, a, b, tbar_str);
    if (a_wit->parsed()) return cmd_aux_witnesses(o, m, a, b, tbar_str);
  } catch (const Error& e) {
    json err{{"error", e.code()}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return e.code() == "InternalAssertionFailure" ? kExitFail : kExitUsage;
  } catch (const std::exception& e) {
    json err{{"error", "Unhandled"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return kExitUsage;
  }
  std::cerr << R"({"error":"Usage","message":"no subcommand"})" << "\n";
  return kExitUsage;
}

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "nodalarcs/io.hpp"

namespace py = pybind11;
using namespace nodalarcs;
using io::json;

namespace {

py::object json_to_py(const json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

json py_to_json(py::handle obj) {
  std::string s = py::cast<std::string>(py::module_::import("json").attr("dumps")(obj));
  return json::parse(s);
}

struct Ctx {
  std::unique_ptr<gf::Fq> F;
  std::unique_ptr<gf::Fq2> E;
};

Ctx make_ctx(u64 p, int s, std::optional<u64> beta_sq) {
  Ctx ctx;
  ctx.F = std::make_unique<gf::Fq>(p, s);
  std::optional<gf::Fel> bsq;
  if (beta_sq) bsq = ctx.F->from_packed(*beta_sq);
  ctx.E = std::make_unique<gf::Fq2>(*ctx.F, bsq);
  return ctx;
}

json point_json(const cubic::Point& P) {
  if (P.kind == cubic::PointKind::Xinf) return "Xinf";
  if (P.kind == cubic::PointKind::Yinf) return "Yinf";
  return json::array({P.x.v, P.y.v});
}

cubic::Point point_from(const gf::Fq& F, py::handle obj) {
  json j = py_to_json(obj);
  if (j.is_string()) {
    if (j == "Xinf") return cubic::Point::xinf();
    if (j == "Yinf") return cubic::Point::yinf();
    fail("ParseError", "unknown point tag");
  }
  geom::PlanePoint p = io::point_from_json(F, j);
  return cubic::Point::affine(p.x, p.y);
}

geom::VerifyMode mode_from(const std::string& mode) {
  if (mode == "exhaustive") return geom::VerifyMode::Exhaustive;
  if (mode == "sample") return geom::VerifyMode::Sample;
  fail("InvalidParams", "mode must be exhaustive or sample");
}

}  // namespace

PYBIND11_MODULE(_nodalarcs, m) {
  m.doc() = "exact-arithmetic arcs and caps from a cubic with an isolated double point";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(PyExc_ValueError, (e.code() + ": " + e.what()).c_str());
    }
  });

  m.def(
      "is_square",
      [](u64 p, int s, u64 x) {
        gf::Fq F(p, s);
        return F.is_square(F.from_packed(x));
      },
      py::arg("p"), py::arg("s"), py::arg("x"));

  m.def(
      "find_nonsquare",
      [](u64 p, int s) { return gf::Fq(p, s).nonsquare().v; },
      py::arg("p"), py::arg("s") = 1);

  m.def(
      "mu_generator",
      [](u64 p, int s) {
        gf::Fq F(p, s);
        gf::Fq2 E(F);
        gf::Ext g = E.mu_generator();
        return py::make_tuple(g.c0.v, g.c1.v);
      },
      py::arg("p"), py::arg("s") = 1);

  m.def(
      "is_mth_power_in_mu",
      [](u64 p, int s, std::pair<u64, u64> v, u64 mm) {
        Ctx ctx = make_ctx(p, s, std::nullopt);
        return ctx.E->is_mth_power_in_mu(
            ctx.E->make(ctx.F->from_packed(v.first), ctx.F->from_packed(v.second)), mm);
      },
      py::arg("p"), py::arg("s"), py::arg("v"), py::arg("m"));

  m.def(
      "param_to_point",
      [](u64 p, int s, std::pair<u64, u64> v) {
        Ctx ctx = make_ctx(p, s, std::nullopt);
        cubic::Curve X(*ctx.E);
        return json_to_py(point_json(X.from_param(
            ctx.E->make(ctx.F->from_packed(v.first), ctx.F->from_packed(v.second)))));
      },
      py::arg("p"), py::arg("s"), py::arg("v"));

  m.def(
      "geometric_add",
      [](u64 p, int s, py::handle a, py::handle b) {
        Ctx ctx = make_ctx(p, s, std::nullopt);
        cubic::Curve X(*ctx.E);
        return json_to_py(
            point_json(X.add_geometric(point_from(*ctx.F, a), point_from(*ctx.F, b))));
      },
      py::arg("p"), py::arg("s"), py::arg("a"), py::arg("b"));

  m.def(
      "coset_points",
      [](u64 p, int s, u64 mm, std::optional<std::pair<u64, u64>> tbar) {
        Ctx ctx = make_ctx(p, s, std::nullopt);
        cubic::Curve X(*ctx.E);
        gf::Ext t = tbar ? ctx.E->make(ctx.F->from_packed(tbar->first),
                                       ctx.F->from_packed(tbar->second))
                         : X.default_tbar(mm);
        json out = json::array();
        for (const auto& P : X.coset_points({mm, t})) out.push_back(point_json(P));
        return json_to_py(out);
      },
      py::arg("p"), py::arg("s"), py::arg("m"), py::arg("tbar") = std::nullopt);

  m.def(
      "exceptional_set",
      [](u64 p, int s, std::optional<u64> beta_sq) {
        Ctx ctx = make_ctx(p, s, beta_sq);
        json out = json::array();
        for (const auto& e : geom::exceptional_set(*ctx.F, ctx.E->beta_sq()))
          out.push_back(io::point_to_json(e));
        return json_to_py(out);
      },
      py::arg("p"), py::arg("s") = 1, py::arg("beta_sq") = std::nullopt);

  m.def(
      "is_maximal_3indep",
      [](std::vector<u64> factors, std::vector<std::vector<u64>> members) {
        indep::AbelianGroup G{std::move(factors)};
        auto chk = indep::is_maximal_3indep(G, members);
        return py::make_tuple(chk.maximal, chk.good);
      },
      py::arg("factors"), py::arg("members"));

  m.def(
      "build_product_3indep",
      [](u64 m1, u64 m2, std::vector<std::vector<u64>> forbidden) {
        indep::IndepSet set = indep::build_product_3indep(m1, m2, forbidden);
        json j{{"factors", set.group.factors}, {"members", set.members}, {"good", set.good}};
        return json_to_py(j);
      },
      py::arg("m1"), py::arg("m2"), py::arg("forbidden") = std::vector<std::vector<u64>>{});

  m.def(
      "build_arc",
      [](u64 p, int s, u64 mm, std::optional<u64> beta_sq) {
        Ctx ctx = make_ctx(p, s, beta_sq);
        arcs::ArcArtifact arc = arcs::build_complete_arc(*ctx.E, mm);
        json config{{"command", "build_arc"}, {"p", p}, {"s", s}, {"m", mm}};
        return json_to_py(io::arc_artifact_to_json(*ctx.E, arc, config));
      },
      py::arg("p"), py::arg("s"), py::arg("m"), py::arg("beta_sq") = std::nullopt);

  m.def(
      "build_bicovering",
      [](u64 p, int s, u64 mm, std::optional<u64> m1, std::optional<u64> m2,
         std::optional<u64> beta_sq) {
        Ctx ctx = make_ctx(p, s, beta_sq);
        arcs::ArcArtifact arc = arcs::build_almost_bicovering(*ctx.E, mm, m1, m2);
        json config{{"command", "build_bicovering"}, {"p", p}, {"s", s}, {"m", mm}};
        return json_to_py(io::arc_artifact_to_json(*ctx.E, arc, config));
      },
      py::arg("p"), py::arg("s"), py::arg("m"), py::arg("m1") = std::nullopt,
      py::arg("m2") = std::nullopt, py::arg("beta_sq") = std::nullopt);

  m.def(
      "build_cap",
      [](u64 p, int s, u64 m1, u64 m2, u64 N, unsigned threads, std::optional<u64> beta_sq) {
        Ctx ctx = make_ctx(p, s, beta_sq);
        caps::CapArtifact art = caps::build_complete_cap(*ctx.E, m1, m2, N, threads);
        json config{{"command", "build_cap"}, {"p", p}, {"s", s},
                    {"m1", m1},               {"m2", m2}, {"N", N}};
        return json_to_py(io::cap_artifact_to_json(*ctx.E, art, config));
      },
      py::arg("p"), py::arg("s"), py::arg("m1"), py::arg("m2"), py::arg("N"),
      py::arg("threads") = 1, py::arg("beta_sq") = std::nullopt);

  m.def(
      "verify_arc",
      [](py::handle artifact, const std::string& mode, u64 samples, u64 seed,
         unsigned threads) {
        io::LoadedArc loaded = io::arc_artifact_from_json(py_to_json(artifact));
        json rep;
        auto chk = geom::is_arc(*loaded.F, loaded.arc.points);
        rep["is_arc"] = chk.ok;
        if (chk.ok) {
          geom::BicoverReport bic = geom::bicover_classify(
              *loaded.F, loaded.arc.points, mode_from(mode), samples, seed, threads);
          json b = io::bicover_report_to_json(bic);
          for (auto& [k, v] : b.items()) rep[k] = v;
        }
        return json_to_py(rep);
      },
      py::arg("artifact"), py::arg("mode") = "exhaustive", py::arg("samples") = 0,
      py::arg("seed") = 0, py::arg("threads") = 1);

  m.def(
      "verify_cap",
      [](py::handle artifact, const std::string& mode, u64 samples, u64 seed,
         unsigned threads) {
        io::LoadedCap loaded = io::cap_artifact_from_json(py_to_json(artifact));
        json rep;
        auto chk = caps::is_cap(*loaded.F, loaded.art.cap);
        rep["is_cap"] = chk.ok;
        rep["cap_size"] = loaded.art.cap.size();
        if (chk.ok) {
          caps::CoverageReport cov = caps::cap_coverage(
              *loaded.F, loaded.art.cap, mode_from(mode), samples, seed, threads);
          json c = io::coverage_report_to_json(cov);
          for (auto& [k, v] : c.items()) rep[k] = v;
        }
        return json_to_py(rep);
      },
      py::arg("artifact"), py::arg("mode") = "exhaustive", py::arg("samples") = 0,
      py::arg("seed") = 0, py::arg("threads") = 1);

  m.def(
      "aux_identities",
      [](u64 p, int s, u64 mm, u64 trials, u64 seed) {
        Ctx ctx = make_ctx(p, s, std::nullopt);
        cubic::Curve X(*ctx.E);
        curves::IdentityReport r =
            curves::run_identities(*ctx.E, X.default_tbar(mm), mm, trials, seed);
        json j{{"param_identity_checked", r.param_identity_checked},
               {"param_identity_ok", r.param_identity_ok},
               {"hl_rational", r.hl_rational},
               {"h_minus_beta_l_ok", r.h_minus_beta_l_ok},
               {"m_pairs_checked", r.m_pairs_checked},
               {"m_paths_agree", r.m_paths_agree},
               {"m_rational", r.m_rational},
               {"g_determinant_ok", r.g_determinant_ok}};
        return json_to_py(j);
      },
      py::arg("p"), py::arg("s"), py::arg("m"), py::arg("trials") = 100, py::arg("seed") = 0);

  m.def(
      "aux_witnesses",
      [](u64 p, int s, u64 mm, u64 a, u64 b) {
        Ctx ctx = make_ctx(p, s, std::nullopt);
        cubic::Curve X(*ctx.E);
        curves::CurveParams par = curves::make_params(
            *ctx.E, ctx.F->from_packed(a), ctx.F->from_packed(b), X.default_tbar(mm), mm);
        curves::WitnessReport rep = curves::secant_witnesses(*ctx.E, par);
        json j{{"curve_points", rep.curve_points},
               {"witnesses", rep.witnesses.size()},
               {"external", rep.external},
               {"internal", rep.internal}};
        return json_to_py(j);
      },
      py::arg("p"), py::arg("s"), py::arg("m"), py::arg("a"), py::arg("b"));

  m.def(
      "aux_count",
      [](u64 p, int s, u64 mm, u64 a, u64 b) {
        Ctx ctx = make_ctx(p, s, std::nullopt);
        cubic::Curve X(*ctx.E);
        curves::CurveParams par = curves::make_params(
            *ctx.E, ctx.F->from_packed(a), ctx.F->from_packed(b), X.default_tbar(mm), mm);
        curves::CountResult res = curves::count_points_M(*ctx.E, par);
        json j{{"count", res.count}, {"vacuous", res.vacuous}};
        if (!res.vacuous) j["window"] = json::array({res.window_lo, res.window_hi});
        return json_to_py(j);
      },
      py::arg("p"), py::arg("s"), py::arg("m"), py::arg("a"), py::arg("b"));
}

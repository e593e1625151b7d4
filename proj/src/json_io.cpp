#include "dsq/json_io.hpp"

#include <utility>

#include "dsq/error.hpp"

namespace dsq {

namespace {

template <typename F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string(what) + ": " + e.what());
  }
}

Json complex_to_json(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

std::complex<double> complex_from_json(const Json& j) {
  require(j.is_array() && j.size() == 2, ErrorCode::ParseError, "complex numbers are [re, im] pairs");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

Json complex_rows_to_json(const std::vector<std::vector<std::complex<double>>>& rows) {
  Json out = Json::array();
  for (const auto& row : rows) {
    Json r = Json::array();
    for (auto z : row) r.push_back(complex_to_json(z));
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::vector<std::complex<double>>> complex_rows_from_json(const Json& j) {
  std::vector<std::vector<std::complex<double>>> out;
  for (const Json& row : j) {
    std::vector<std::complex<double>> r;
    for (const Json& z : row) r.push_back(complex_from_json(z));
    out.push_back(std::move(r));
  }
  return out;
}

mpq_class parse_rational(const std::string& s) {
  const GaussRational g = GaussRational::parse(s);
  require(sgn(g.im()) == 0, ErrorCode::ParseError, "expected a real rational, got " + s);
  return g.re();
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

std::string dump_json(const Json& j) { return j.dump(2); }

Json quiver_to_json(const Quiver& q) {
  Json arrows = Json::array();
  for (const Arrow& a : q.arrows()) arrows.push_back(Json::array({q.id(a.tail), q.id(a.head)}));
  return {{"vertices", q.vertices()}, {"arrows", arrows}};
}

Quiver quiver_from_json(const Json& j) {
  return guarded("quiver", [&] {
    std::vector<VertexId> vertices = j.at("vertices").get<std::vector<VertexId>>();
    Quiver tmp(vertices, {});
    std::vector<Arrow> arrows;
    std::size_t k = 0;
    for (const Json& a : j.at("arrows")) {
      require(a.is_array() && a.size() == 2, ErrorCode::ParseError, "arrows are [tail, head] pairs");
      arrows.push_back({tmp.index_of(a.at(0).get<std::string>()), tmp.index_of(a.at(1).get<std::string>()),
                        "a" + std::to_string(++k)});
    }
    return Quiver(std::move(vertices), std::move(arrows));
  });
}

Json dims_to_json(const Quiver& q, const DimVector& a) {
  require(a.size() == q.vertex_count(), ErrorCode::VertexMismatch, "dims do not fit the quiver");
  Json d = Json::object();
  for (std::size_t v = 0; v < a.size(); ++v) d[q.id(v)] = a[v];
  return {{"dims", d}};
}

DimVector dims_from_json(const Json& j, const Quiver& q) {
  return guarded("dims", [&] {
    const Json& d = j.contains("dims") ? j.at("dims") : j;
    require(d.is_object(), ErrorCode::ParseError, "dims must be an object keyed by vertex id");
    DimVector a = DimVector::zero(q.vertex_count());
    std::vector<bool> seen(q.vertex_count(), false);
    for (auto it = d.begin(); it != d.end(); ++it) {
      const auto v = q.find(it.key());
      require(v.has_value(), ErrorCode::UnknownVertex, "unknown vertex " + it.key());
      a[*v] = it.value().get<std::int64_t>();
      seen[*v] = true;
    }
    for (std::size_t v = 0; v < seen.size(); ++v)
      require(seen[v], ErrorCode::VertexMismatch, "missing dimension for vertex " + q.id(v));
    return a;
  });
}

Json star_shape_to_json(const StarShape& s) { return {{"w", s.w}}; }

StarShape star_shape_from_json(const Json& j) {
  return guarded("star shape", [&] {
    StarShape s{j.at("w").get<std::vector<int>>()};
    for (int w : s.w) require(w >= 1, ErrorCode::InvalidArgument, "leg lengths must be at least 1");
    return s;
  });
}

Json squid_shape_to_json(const SquidShape& s) {
  Json pts = Json::array();
  for (const ProjectivePoint& p : s.points) {
    pts.push_back({p.l0.re().get_str(), p.l0.im().get_str(), p.l1.re().get_str(), p.l1.im().get_str()});
  }
  return {{"w", s.star.w}, {"points", pts}};
}

SquidShape squid_shape_from_json(const Json& j) {
  return guarded("squid shape", [&] {
    SquidShape s{star_shape_from_json(j), {}};
    for (const Json& p : j.at("points")) {
      require(p.is_array() && p.size() == 4, ErrorCode::ParseError, "points are [re0, im0, re1, im1]");
      auto part = [&](int k) { return parse_rational(p.at(static_cast<std::size_t>(k)).get<std::string>()); };
      s.points.push_back({GaussRational(part(0), part(1)), GaussRational(part(2), part(3))});
    }
    build_squid(s);
    return s;
  });
}

Json exact_matrix_to_json(const ExactMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

ExactMatrix exact_matrix_from_json(const Json& j) {
  return guarded("exact matrix", [&] {
    require(j.is_array(), ErrorCode::ParseError, "matrices are arrays of rows");
    const std::size_t rows = j.size();
    const std::size_t cols = rows ? j.at(0).size() : 0;
    ExactMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      require(j.at(r).is_array() && j.at(r).size() == cols, ErrorCode::ShapeMismatch, "ragged matrix rows");
      for (std::size_t c = 0; c < cols; ++c) {
        const Json& e = j.at(r).at(c);
        m(r, c) = e.is_string() ? GaussRational::parse(e.get<std::string>()) : GaussRational(e.get<long>());
      }
    }
    return m;
  });
}

Json exact_rep_to_json(const ExactRep& x) {
  Json mats = Json::array();
  for (const ExactMatrix& m : x.mats) mats.push_back(exact_matrix_to_json(m));
  return {{"quiver", quiver_to_json(x.quiver)}, {"dims", dims_to_json(x.quiver, x.dims).at("dims")}, {"mats", mats}};
}

ExactRep exact_rep_from_json(const Json& j) {
  return guarded("representation", [&] {
    ExactRep x;
    x.quiver = quiver_from_json(j.at("quiver"));
    x.dims = dims_from_json(j.at("dims"), x.quiver);
    for (const Json& m : j.at("mats")) x.mats.push_back(exact_matrix_from_json(m));
    require(x.mats.size() == x.quiver.arrow_count(), ErrorCode::ShapeMismatch, "one matrix per arrow is required");
    x.validate();
    return x;
  });
}

Json decomposition_to_json(const Quiver& q, const Decomposition& d) {
  Json parts = Json::array();
  for (const DimVector& p : d.parts) parts.push_back(dims_to_json(q, p).at("dims"));
  return parts;
}

Json instance_to_json(const DSInstance& inst) {
  Json classes = Json::array();
  for (const auto& cls : inst.classes) {
    Json eigs = Json::array();
    for (const Eigenvalue& e : cls.eigenvalues) {
      if (e.exact) {
        eigs.push_back({{"re", e.exact->re().get_str()}, {"im", e.exact->im().get_str()}, {"mult", e.mult}});
      } else {
        eigs.push_back({{"re", e.value.real()}, {"im", e.value.imag()}, {"mult", e.mult}});
      }
    }
    classes.push_back({{"eigenvalues", eigs}});
  }
  Json out = {{"mode", to_string(inst.mode)}, {"classes", classes}};
  if (inst.points) out["points"] = *inst.points;
  if (inst.zeta_override) out["zeta"] = complex_rows_to_json(*inst.zeta_override);
  return out;
}

DSInstance instance_from_json(const Json& j) {
  DSInstance inst = guarded("instance", [&] {
    DSInstance out;
    out.mode = parse_mode(j.at("mode").get<std::string>());
    for (const Json& cls : j.at("classes")) {
      ConjugacyClassSpec spec;
      for (const Json& e : cls.at("eigenvalues")) {
        Eigenvalue ev;
        ev.mult = e.value("mult", 1);
        const Json& re = e.at("re");
        const Json im = e.value("im", Json(0.0));
        require(re.is_string() == im.is_string() || (im.is_number() && im.get<double>() == 0.0),
                ErrorCode::ParseError, "mix of exact and floating eigenvalue parts");
        if (re.is_string()) {
          GaussRational g(parse_rational(re.get<std::string>()),
                          im.is_string() ? parse_rational(im.get<std::string>()) : mpq_class(0));
          ev.value = {g.re_double(), g.im_double()};
          ev.exact = std::move(g);
        } else {
          ev.value = {re.get<double>(), im.get<double>()};
        }
        spec.eigenvalues.push_back(std::move(ev));
      }
      out.classes.push_back(std::move(spec));
    }
    if (j.contains("points")) out.points = j.at("points").get<std::vector<std::vector<double>>>();
    if (j.contains("zeta")) out.zeta_override = complex_rows_from_json(j.at("zeta"));
    return out;
  });
  inst.validate();
  return inst;
}

Json verdict_to_json(const Verdict& v) {
  const Quiver star = build_star(StarShape{v.w});
  Json residue = {{"met", v.residue.met},
                  {"value", complex_to_json(v.residue.value)},
                  {"exact", v.residue.exact},
                  {"integer", v.residue.integer ? Json(*v.residue.integer) : Json(nullptr)}};
  return {{"n", v.n},
          {"w", v.w},
          {"alpha", dims_to_json(star, v.alpha).at("dims")},
          {"zeta", complex_rows_to_json(v.zeta)},
          {"delta", v.delta},
          {"in_fundamental_region", v.in_fundamental_region},
          {"delta_shortcut", v.delta_shortcut},
          {"residue", residue},
          {"sufficient", v.sufficient},
          {"tits_q", v.tits_q},
          {"p", v.p},
          {"dim_flag", v.dim_flag},
          {"expected_dim_solution_space", v.expected_dim_solution_space},
          {"expected_dim_conn_stack", v.expected_dim_conn_stack},
          {"notes", v.notes}};
}

Verdict verdict_from_json(const Json& j) {
  return guarded("verdict", [&] {
    Verdict v;
    v.n = j.at("n").get<int>();
    v.w = j.at("w").get<std::vector<int>>();
    v.alpha = dims_from_json(j.at("alpha"), build_star(StarShape{v.w}));
    v.zeta = complex_rows_from_json(j.at("zeta"));
    v.delta = j.at("delta").get<std::int64_t>();
    v.in_fundamental_region = j.at("in_fundamental_region").get<bool>();
    v.delta_shortcut = j.at("delta_shortcut").get<bool>();
    const Json& r = j.at("residue");
    v.residue.met = r.at("met").get<bool>();
    v.residue.value = complex_from_json(r.at("value"));
    v.residue.exact = r.at("exact").get<bool>();
    if (!r.at("integer").is_null()) v.residue.integer = r.at("integer").get<std::int64_t>();
    v.sufficient = j.at("sufficient").get<bool>();
    v.tits_q = j.at("tits_q").get<std::int64_t>();
    v.p = j.at("p").get<std::int64_t>();
    v.dim_flag = j.at("dim_flag").get<std::int64_t>();
    v.expected_dim_solution_space = j.at("expected_dim_solution_space").get<std::int64_t>();
    v.expected_dim_conn_stack = j.at("expected_dim_conn_stack").get<std::int64_t>();
    v.notes = j.at("notes").get<std::vector<std::string>>();
    return v;
  });
}

Json solver_options_to_json(const SolverOptions& o) {
  return {{"starts", o.starts}, {"max_iter", o.max_iter}, {"tol", o.tol}, {"seed", o.seed}, {"step0", o.step0}};
}

SolverOptions solver_options_from_json(const Json& j, const SolverOptions& defaults) {
  return guarded("solver options", [&] {
    SolverOptions o = defaults;
    o.starts = j.value("starts", o.starts);
    o.max_iter = j.value("max_iter", o.max_iter);
    o.tol = j.value("tol", o.tol);
    o.seed = j.value("seed", o.seed);
    o.step0 = j.value("step0", o.step0);
    require(o.starts >= 1 && o.max_iter >= 0 && o.tol >= 0 && o.step0 > 0, ErrorCode::InvalidArgument,
            "solver options out of range");
    return o;
  });
}

Json cmatrix_to_json(const CMatrix& m) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json rr = Json::array(), ri = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ri.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return {{"re", re}, {"im", im}};
}

CMatrix cmatrix_from_json(const Json& j) {
  return guarded("complex matrix", [&] {
    const Json& re = j.at("re");
    const Json& im = j.at("im");
    const auto rows = static_cast<Eigen::Index>(re.size());
    const auto cols = static_cast<Eigen::Index>(rows ? re.at(0).size() : 0);
    require(im.size() == re.size(), ErrorCode::ShapeMismatch, "re and im parts differ in shape");
    CMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      const Json& rr = re.at(static_cast<std::size_t>(r));
      const Json& ri = im.at(static_cast<std::size_t>(r));
      require(static_cast<Eigen::Index>(rr.size()) == cols && static_cast<Eigen::Index>(ri.size()) == cols,
              ErrorCode::ShapeMismatch, "ragged matrix rows");
      for (Eigen::Index c = 0; c < cols; ++c)
        m(r, c) = {rr.at(static_cast<std::size_t>(c)).get<double>(), ri.at(static_cast<std::size_t>(c)).get<double>()};
    }
    return m;
  });
}

Json solver_result_to_json(const SolverResult& r) {
  Json mats = Json::array(), conj = Json::array();
  for (const CMatrix& m : r.point.matrices) mats.push_back(cmatrix_to_json(m));
  for (const CMatrix& g : r.point.conjugators) conj.push_back(cmatrix_to_json(g));
  return {{"mode", to_string(r.mode)},
          {"residual", r.residual},
          {"residual_norm", r.residual_norm},
          {"iterations", r.iterations},
          {"converged", r.converged},
          {"start_index", r.start_index},
          {"tangent_dim", r.tangent_dim ? Json(*r.tangent_dim) : Json(nullptr)},
          {"constraint_rank", r.constraint_rank ? Json(*r.constraint_rank) : Json(nullptr)},
          {"monotone", r.monotone},
          {"conditioning_resets", r.conditioning_resets},
          {"matrices", mats},
          {"conjugators", conj},
          {"trajectory", r.trajectory}};
}

SolverResult solver_result_from_json(const Json& j) {
  return guarded("solver result", [&] {
    SolverResult r;
    r.mode = parse_mode(j.at("mode").get<std::string>());
    r.residual = j.at("residual").get<double>();
    r.residual_norm = j.at("residual_norm").get<double>();
    r.iterations = j.at("iterations").get<int>();
    r.converged = j.at("converged").get<bool>();
    r.start_index = j.at("start_index").get<int>();
    if (!j.at("tangent_dim").is_null()) r.tangent_dim = j.at("tangent_dim").get<int>();
    if (!j.at("constraint_rank").is_null()) r.constraint_rank = j.at("constraint_rank").get<int>();
    r.monotone = j.at("monotone").get<bool>();
    r.conditioning_resets = j.at("conditioning_resets").get<int>();
    for (const Json& m : j.at("matrices")) r.point.matrices.push_back(cmatrix_from_json(m));
    for (const Json& g : j.at("conjugators")) r.point.conjugators.push_back(cmatrix_from_json(g));
    r.trajectory = j.at("trajectory").get<std::vector<double>>();
    return r;
  });
}

std::string hat_name(const std::string& arrow) {
  require(!arrow.empty(), ErrorCode::InvalidArgument, "empty arrow name");
  return arrow.substr(0, 1) + "hat" + arrow.substr(1);
}

std::vector<VertexId> squid_vertex_ids(const StarShape& shape) {
  std::vector<VertexId> ids = build_star(shape).vertices();
  ids.push_back("inf");
  return ids;
}

Json squid_point_to_json(const CotangentSquidPoint& x) {
  x.validate();
  const std::vector<VertexId> ids = squid_vertex_ids(x.shape);
  Json dims = Json::object();
  for (std::size_t v = 0; v < ids.size(); ++v) dims[ids[v]] = x.dims[v];
  Json arrows = Json::object();
  for_each_arrow(x, [&](const std::string& name, std::size_t, std::size_t, const CMatrix& a, const CMatrix& ahat) {
    arrows[name] = cmatrix_to_json(a);
    arrows[hat_name(name)] = cmatrix_to_json(ahat);
  });
  return {{"w", x.shape.w}, {"dims", dims}, {"arrows", arrows}};
}

CotangentSquidPoint squid_point_from_json(const Json& j) {
  return guarded("squid point", [&] {
    const StarShape shape = star_shape_from_json(j);
    const std::vector<VertexId> ids = squid_vertex_ids(shape);
    const Quiver q(ids, {});
    CotangentSquidPoint x = CotangentSquidPoint::zero(shape, dims_from_json(j.at("dims"), q));
    const Json arrows = j.value("arrows", Json::object());
    std::size_t used = 0;
    for_each_arrow(x, [&](const std::string& name, std::size_t, std::size_t, CMatrix& a, CMatrix& ahat) {
      for (auto [key, target] : {std::pair<std::string, CMatrix*>{name, &a}, {hat_name(name), &ahat}}) {
        if (!arrows.contains(key)) continue;
        CMatrix m = cmatrix_from_json(arrows.at(key));
        require(m.rows() == target->rows() && m.cols() == target->cols(), ErrorCode::ShapeMismatch,
                "arrow " + key + " has the wrong shape");
        *target = std::move(m);
        ++used;
      }
    });
    require(used == arrows.size(), ErrorCode::UnknownVertex, "point names an arrow the squid does not have");
    return x;
  });
}

Json pencil_to_json(const KroneckerPencil& p) {
  Json out = {{"psi0", exact_matrix_to_json(p.psi0)}, {"psi1", exact_matrix_to_json(p.psi1)}};
  if (p.w() == 0) out["v"] = p.v();
  return out;
}

KroneckerPencil pencil_from_json(const Json& j) {
  return guarded("pencil", [&] {
    KroneckerPencil p{exact_matrix_from_json(j.at("psi0")), exact_matrix_from_json(j.at("psi1"))};
    // An empty row list loses the column count; "v" restores it for w = 0.
    if (j.contains("v") && p.psi0.rows() == 0) {
      const auto v = j.at("v").get<std::size_t>();
      p.psi0 = ExactMatrix(0, v);
      p.psi1 = ExactMatrix(0, v);
    }
    p.validate();
    return p;
  });
}

Json splitting_to_json(const SplittingType& s) {
  return {{"degrees", s.degrees}, {"h0", s.h0}};
}

SplittingType splitting_from_json(const Json& j) {
  return guarded("splitting type", [&] {
    SplittingType s;
    s.degrees = j.at("degrees").get<std::vector<std::int64_t>>();
    s.h0 = j.at("h0").get<std::vector<std::size_t>>();
    return s;
  });
}

Json census_to_json(const CensusResult& c) {
  Json hist = Json::object();
  for (const auto& [s, count] : c.histogram) hist[std::to_string(s)] = count;
  return {{"histogram", hist},
          {"samples", c.samples},
          {"fraction_trivial", c.fraction_trivial},
          {"dim_group", c.dim_group},
          {"dim_rep", c.dim_rep},
          {"max_parameter_estimate", c.max_parameter_estimate}};
}

CensusResult census_from_json(const Json& j) {
  return guarded("census", [&] {
    CensusResult c;
    for (auto it = j.at("histogram").begin(); it != j.at("histogram").end(); ++it)
      c.histogram[std::stoll(it.key())] = it.value().get<std::size_t>();
    c.samples = j.at("samples").get<std::size_t>();
    c.fraction_trivial = j.at("fraction_trivial").get<double>();
    c.dim_group = j.at("dim_group").get<std::int64_t>();
    c.dim_rep = j.at("dim_rep").get<std::int64_t>();
    c.max_parameter_estimate = j.at("max_parameter_estimate").get<std::int64_t>();
    return c;
  });
}

}  // namespace dsq

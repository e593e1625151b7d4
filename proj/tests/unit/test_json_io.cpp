#include <doctest.h>

#include <random>

#include "dsq/error.hpp"
#include "dsq/json_io.hpp"

using namespace dsq;

namespace {

// encode → text → parse → decode → encode must reproduce the text exactly.
template <typename T, typename Enc, typename Dec>
void check_round_trip(const T& x, Enc enc, Dec dec) {
  const std::string text = dump_json(enc(x));
  const std::string again = dump_json(enc(dec(parse_json(text))));
  CHECK(text == again);
}

DimVector dv(std::vector<std::int64_t> e) { return DimVector{std::move(e)}; }

}  // namespace

TEST_CASE("parse errors") {
  try {
    parse_json("{\"a\": ");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
  }
  try {
    instance_from_json(parse_json(R"({"mode": "additive"})"));
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
  }
  try {
    instance_from_json(parse_json(R"({"mode": "sideways", "classes": []})"));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() != ErrorCode::NotConverged);
  }
  CHECK_THROWS_AS(star_shape_from_json(parse_json(R"({"w": [2, 0]})")), Error);
  CHECK_THROWS_AS(cmatrix_from_json(parse_json(R"({"re": [[1, 2]], "im": [[1]]})")), Error);
}

TEST_CASE("canonical text form") {
  Json j = {{"b", 0.1}, {"a", 1}};
  CHECK(dump_json(j) == "{\n  \"a\": 1,\n  \"b\": 0.1\n}");
  // Shortest round-trip float text.
  const double x = 1.0 / 3.0;
  CHECK(parse_json(dump_json(Json(x))).get<double>() == x);
}

TEST_CASE("quiver and dims") {
  Quiver q = quiver_from_json(parse_json(R"({"vertices": ["x", "y", "z"], "arrows": [["x", "y"], ["x", "y"], ["z", "x"]]})"));
  CHECK(q.vertex_count() == 3);
  CHECK(q.arrow_count() == 3);
  check_round_trip(q, quiver_to_json, quiver_from_json);

  DimVector a = dims_from_json(parse_json(R"({"dims": {"x": 2, "y": 1, "z": 0}})"), q);
  CHECK(a == dv({2, 1, 0}));
  CHECK(dims_from_json(parse_json(R"({"x": 2, "y": 1, "z": 0})"), q) == a);
  CHECK(dims_from_json(dims_to_json(q, a), q) == a);

  try {
    dims_from_json(parse_json(R"({"x": 2, "y": 1})"), q);
    FAIL("expected VertexMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::VertexMismatch);
  }
  try {
    dims_from_json(parse_json(R"({"x": 2, "y": 1, "z": 0, "q": 1})"), q);
    FAIL("expected UnknownVertex");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownVertex);
  }
  CHECK_THROWS_AS(quiver_from_json(parse_json(R"({"vertices": ["x"], "arrows": [["x", "w"]]})")), Error);
}

TEST_CASE("shapes, exact matrices and reps") {
  check_round_trip(StarShape{{3, 1, 2}}, star_shape_to_json, star_shape_from_json);

  ExactMatrix m(2, 3);
  m(0, 1) = GaussRational(mpq_class(1, 3), mpq_class(-2));
  m(1, 2) = GaussRational(mpq_class(7));
  check_round_trip(m, exact_matrix_to_json, exact_matrix_from_json);
  CHECK(exact_matrix_from_json(exact_matrix_to_json(m)) == m);

  Quiver q = build_star({{2, 3}});
  ExactRep x = random_rep(q, dv({2, 1, 2, 1}), 4, 3);
  check_round_trip(x, exact_rep_to_json, exact_rep_from_json);
  ExactRep back = exact_rep_from_json(exact_rep_to_json(x));
  for (std::size_t i = 0; i < x.mats.size(); ++i) CHECK(back.mats[i] == x.mats[i]);
}

TEST_CASE("instances and verdicts") {
  const std::string text = R"({
    "mode": "additive",
    "classes": [
      {"eigenvalues": [{"re": 1.5, "im": 0, "mult": 1}, {"re": -1.5, "im": 0, "mult": 1}]},
      {"eigenvalues": [{"re": 0.25, "im": 1, "mult": 1}, {"re": -0.25, "im": -1, "mult": 1}]},
      {"eigenvalues": [{"re": "1/3", "im": "0", "mult": 2}]}
    ]})";
  DSInstance inst = instance_from_json(parse_json(text));
  CHECK(inst.rank() == 2);
  CHECK(inst.classes[1].eigenvalues[0].value == Complex(0.25, 1));
  REQUIRE(inst.classes[2].eigenvalues[0].exact.has_value());
  CHECK(*inst.classes[2].eigenvalues[0].exact == GaussRational(mpq_class(1, 3)));
  check_round_trip(inst, instance_to_json, instance_from_json);

  DSInstance conn;
  conn.mode = Mode::Connection;
  conn.classes.push_back({{{Complex(0.5), 1, std::nullopt}, {Complex(-0.5), 1, std::nullopt}}});
  conn.zeta_override = std::vector<std::vector<Complex>>{{Complex(0.1, 0.2), Complex(0.9, -0.2)}};
  conn.points = std::vector<std::vector<double>>{{1, 0, 0, 1}};
  check_round_trip(conn, instance_to_json, instance_from_json);

  Verdict v = verdict(inst);
  check_round_trip(v, verdict_to_json, verdict_from_json);
  Verdict vb = verdict_from_json(verdict_to_json(v));
  CHECK(vb.alpha == v.alpha);
  CHECK(vb.sufficient == v.sufficient);
  CHECK(vb.notes == v.notes);

  const Json vj = verdict_to_json(v);
  for (const char* key : {"n", "w", "alpha", "zeta", "delta", "in_fundamental_region", "delta_shortcut", "residue",
                          "sufficient", "tits_q", "p", "dim_flag", "expected_dim_solution_space",
                          "expected_dim_conn_stack", "notes"})
    CHECK(vj.contains(key));
}

TEST_CASE("solver options and results") {
  SolverOptions defaults;
  SolverOptions o = solver_options_from_json(parse_json(R"({"starts": 3, "tol": 1e-20})"));
  CHECK(o.starts == 3);
  CHECK(o.tol == 1e-20);
  CHECK(o.max_iter == defaults.max_iter);
  o.seed = 0xffffffffffffffffULL;
  check_round_trip(o, solver_options_to_json, [](const Json& j) { return solver_options_from_json(j); });
  CHECK(solver_options_from_json(solver_options_to_json(o)).seed == o.seed);
  CHECK_THROWS_AS(solver_options_from_json(parse_json(R"({"starts": "many"})")), Error);

  std::mt19937_64 gen(1);
  std::normal_distribution<double> nd;
  CMatrix c(2, 3);
  for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = Complex(nd(gen), nd(gen));
  CHECK(cmatrix_from_json(cmatrix_to_json(c)) == c);
  check_round_trip(c, cmatrix_to_json, cmatrix_from_json);

  DSInstance inst;
  for (double a : {1.0, 1.3, 0.7, 2.1, 0.9}) inst.classes.push_back({{{Complex(a, 0.1), 1, std::nullopt}, {Complex(-a, -0.1), 1, std::nullopt}}});
  SolverOptions so;
  so.starts = 2;
  so.record_trajectory = true;
  SolverResult r = solve_additive(inst, so);
  tangent_dimension(r, inst);
  check_round_trip(r, solver_result_to_json, solver_result_from_json);
  SolverResult rb = solver_result_from_json(solver_result_to_json(r));
  CHECK(rb.residual == r.residual);
  CHECK(rb.trajectory == r.trajectory);
  CHECK(rb.tangent_dim == r.tangent_dim);
  for (std::size_t i = 0; i < r.point.matrices.size(); ++i) CHECK(rb.point.matrices[i] == r.point.matrices[i]);
}

TEST_CASE("squid points") {
  CHECK(hat_name("b0") == "bhat0");
  CHECK(hat_name("b1") == "bhat1");
  CHECK(hat_name("c_1_2") == "chat_1_2");
  CHECK(squid_vertex_ids({{2, 3}}) == std::vector<VertexId>{"0", "1_1", "2_1", "2_2", "inf"});

  std::mt19937_64 gen(2);
  CotangentSquidPoint x = CotangentSquidPoint::random({{2, 3}}, dv({3, 1, 2, 1, 2}), gen);
  check_round_trip(x, squid_point_to_json, squid_point_from_json);
  CotangentSquidPoint back = squid_point_from_json(squid_point_to_json(x));
  CHECK(back.flatten() == x.flatten());

  // Missing arrows default to zero.
  CotangentSquidPoint z = squid_point_from_json(parse_json(R"({"w": [2], "dims": {"0": 2, "1_1": 1, "inf": 1}})"));
  CHECK(z.norm2() == 0);
  CHECK(z.b[0].rows() == 1);
  CHECK_THROWS_AS(
      squid_point_from_json(parse_json(
          R"({"w": [2], "dims": {"0": 2, "1_1": 1, "inf": 1}, "arrows": {"b0": {"re": [[1]], "im": [[0]]}}})")),
      Error);
}

TEST_CASE("pencils, splittings and census") {
  KroneckerPencil p = random_pencil(4, 2, 3);
  check_round_trip(p, pencil_to_json, pencil_from_json);
  KroneckerPencil pb = pencil_from_json(pencil_to_json(p));
  CHECK(pb.psi0 == p.psi0);
  CHECK(pb.psi1 == p.psi1);

  KroneckerPencil empty{ExactMatrix(0, 3), ExactMatrix(0, 3)};
  check_round_trip(empty, pencil_to_json, pencil_from_json);
  CHECK(pencil_from_json(pencil_to_json(empty)).v() == 3);

  SplittingType st{{0, -1, -3}, {1, 2, 4, 7}};
  check_round_trip(st, splitting_to_json, splitting_from_json);
  CHECK(splitting_from_json(splitting_to_json(st)).degrees == st.degrees);

  Quiver q = build_star({{2, 2, 2}});
  CensusResult c = parameter_census(q, dv({2, 1, 1, 1}), 30, 4);
  check_round_trip(c, census_to_json, census_from_json);
  CHECK(census_from_json(census_to_json(c)) == c);
}

#pragma once

// JSON encodings of every domain type. Parsing failures surface as
// Error(ParseError) or the validation error of the decoded object.

#include <json.hpp>

#include <string>

#include "dsq/ds_frontend.hpp"
#include "dsq/exact.hpp"
#include "dsq/orbit_solver.hpp"
#include "dsq/pencil.hpp"
#include "dsq/quiver.hpp"
#include "dsq/rep_lab.hpp"
#include "dsq/squid_symplectic.hpp"

namespace dsq {

using Json = nlohmann::json;

/// Parses text, mapping syntax errors onto ParseError.
Json parse_json(const std::string& text);
/// Canonical text form: two-space indent, keys sorted, shortest round-trip floats.
std::string dump_json(const Json& j);

Json quiver_to_json(const Quiver& q);
Quiver quiver_from_json(const Json& j);

/// {"dims": {id: int}} over the vertices of q.
Json dims_to_json(const Quiver& q, const DimVector& a);
DimVector dims_from_json(const Json& j, const Quiver& q);

Json star_shape_to_json(const StarShape& s);
StarShape star_shape_from_json(const Json& j);
Json squid_shape_to_json(const SquidShape& s);
SquidShape squid_shape_from_json(const Json& j);

Json exact_matrix_to_json(const ExactMatrix& m);
ExactMatrix exact_matrix_from_json(const Json& j);
Json exact_rep_to_json(const ExactRep& x);
ExactRep exact_rep_from_json(const Json& j);

Json decomposition_to_json(const Quiver& q, const Decomposition& d);

Json instance_to_json(const DSInstance& inst);
DSInstance instance_from_json(const Json& j);
Json verdict_to_json(const Verdict& v);
Verdict verdict_from_json(const Json& j);

Json solver_options_to_json(const SolverOptions& o);
/// Missing keys keep the values from `defaults`.
SolverOptions solver_options_from_json(const Json& j, const SolverOptions& defaults = {});

Json cmatrix_to_json(const CMatrix& m);
CMatrix cmatrix_from_json(const Json& j);
Json solver_result_to_json(const SolverResult& r);
SolverResult solver_result_from_json(const Json& j);

/// Hat partner of an arrow name: b0 → bhat0, c_1_2 → chat_1_2.
std::string hat_name(const std::string& arrow);
std::vector<VertexId> squid_vertex_ids(const StarShape& shape);
Json squid_point_to_json(const CotangentSquidPoint& x);
CotangentSquidPoint squid_point_from_json(const Json& j);

Json pencil_to_json(const KroneckerPencil& p);
KroneckerPencil pencil_from_json(const Json& j);
Json splitting_to_json(const SplittingType& s);
SplittingType splitting_from_json(const Json& j);

Json census_to_json(const CensusResult& c);
CensusResult census_from_json(const Json& j);

}  // namespace dsq

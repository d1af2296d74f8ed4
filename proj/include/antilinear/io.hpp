#pragma once

// JSON documents exchanged by the command-line tool.
//
//   {"schema": "measure", "atoms": [{"point": {"re": .., "im": ..}, "weight": ..}, ...]}
//   {"schema": "jacobi", "alphas": [{"re": .., "im": ..}, ...], "betas": [..]}
//   {"schema": "matrix", "rows": [[{"re": .., "im": ..}, ...], ...]}
//   {"schema": "moments", "moments": [{"re": .., "im": ..}, ...]}
//   {"schema": "report", "command": "..", ...}
//
// Numbers are written in shortest round-trip form, so parse(serialize(x)) == x
// for finite values. Malformed documents throw Error(ParseError).

#include <string>
#include <string_view>

#include <json.hpp>

#include "antilinear/core.hpp"
#include "antilinear/jacobi_params.hpp"
#include "antilinear/measures.hpp"
#include "antilinear/moments.hpp"

namespace antilinear::io {

using Json = nlohmann::ordered_json;

Json parse_document(std::string_view text);
std::string dump_document(const Json& doc);

/// Schema tag of a parsed document; throws ParseError if missing.
std::string schema_of(const Json& doc);

Json complex_to_json(cplx z);
cplx complex_from_json(const Json& j);

Json vector_to_json(const CVector& v);
CVector vector_from_json(const Json& j);

Json measure_to_json(const PlanarAtomicMeasure& mu);
Json measure_to_json(const BiradialMeasure& rho);
/// Atoms as listed, without validation.
PlanarAtomicMeasure measure_from_json(const Json& doc);

Json jacobi_to_json(const JacobiParams& p);
JacobiParams jacobi_from_json(const Json& doc);

Json matrix_to_json(const CMatrix& M);
CMatrix matrix_from_json(const Json& doc);

Json moments_to_json(const MomentSequence& m);
MomentSequence moments_from_json(const Json& doc);

Json report(std::string_view command);

}  // namespace antilinear::io

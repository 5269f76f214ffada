#ifndef SYMRED_REPORT_HPP
#define SYMRED_REPORT_HPP

// JSON reports and the Markdown rendering of the same document.

#include <string>

#include "json.hpp"

#include "symred/pipeline.hpp"

namespace symred {

using json = nlohmann::ordered_json;

/// {name, generator, marker, fields: [{field, coeff}]} with one entry per
/// nonzero coefficient of d_x, u*d_u and d_u.
json generator_json(const PointGenerator& g);

/// Nonzero brackets of a computed algebra, markers left out.
json commutators_json(const SymmetryAlgebra& alg);

json report_json(const CaseReport& rep);

/// {"error": {kind, message, line?}}.
json error_json(const std::string& kind, const std::string& message, int line = 0);

/// Renders any report or error document; every scalar in the JSON appears
/// verbatim in the output.
std::string render_markdown(const json& doc);

}  // namespace symred

#endif  // SYMRED_REPORT_HPP

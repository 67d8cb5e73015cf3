#pragma once

// JSON forms of fields, arrangements, incidence structures and derived
// configurations, plus the named models the command line can load.

#include <json.hpp>
#include <string>

#include "klein/invariants.hpp"
#include "klein/models.hpp"
#include "klein/realize.hpp"

namespace klein {

using Json = nlohmann::json;

/// Parses "1/2 + 3*a^2 - a" style polynomials in the generator; the format
/// written by to_string(FieldElement).
FieldElement parse_field_element(const FieldPtr& f, const std::string& text, const std::string& symbol = "a");

struct FieldSpec {
  std::string name;    // "Q", "Q(a)", "F" or "custom"
  std::string symbol;  // generator symbol used in coefficient strings
  FieldPtr field;
};

/// Header {"name", "symbol", "minpoly", "root"}; the three built-in names
/// need only "name".
FieldSpec field_from_json(const Json& j);
Json field_to_json(const FieldSpec& f);
/// Built-in spec matching the field of f, or a custom one.
FieldSpec field_spec_of(const FieldPtr& f);

/// {"field": header, "points": [[x,y,z]...], "lines": [[a,b,c]...],
///  "conics": [[x^2, xy, xz, y^2, yz, z^2]...]}; coefficients are strings.
DerivedConfig arrangement_from_json(const Json& j);
Json config_to_json(const DerivedConfig& c);

Json incidence_to_json(const IncidenceStructure& s);
/// {"points": n, "blocks": [[...], ...]} with 0-based point indices.
IncidenceStructure incidence_from_json(const Json& j);

Json census_to_json(const Census<FieldElement>& c, const std::string& symbol);
Json numeric_census_to_json(const NumericCensus& c, int digits);
Json realization_to_json(const Realization& r);
Json sweep_to_json(const SweepReport& r);

/// Names accepted by `named_config`.
const std::vector<std::string>& config_names();
/// Built-in configurations: klein, kprime, gr, gr-d12, gr-d23, gr-d13,
/// gr-d12-49, gr-d23-49, gr-d13-49, gr-42. Throws std::invalid_argument.
DerivedConfig named_config(const std::string& name);

/// Names accepted by `named_structure`.
const std::vector<std::string>& structure_names();
/// Abstract structures: fano, kprime, kprime-extended, gr-list, klein-quadruple.
IncidenceStructure named_structure(const std::string& name);

/// 64-bit FNV-1a as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace klein

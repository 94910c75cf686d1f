#pragma once

// Text and JSON formats for Gram matrices, discriminant data and reports.

#include "gmlattice/discform.hpp"
#include "gmlattice/gm_oracle.hpp"

#include "json.hpp"

#include <iosfwd>
#include <string>

namespace gmlat {

using Json = nlohmann::ordered_json;

/// Rank on the first line, then one row per line.
GramLattice parse_gram_text(const std::string& text);
std::string format_gram_text(const GramLattice& lattice);

/// {"gram": [[...], ...], "name": "..."}; name optional.
Json gram_to_json(const GramLattice& lattice);
GramLattice gram_from_json(const Json& j);

/// Either format, detected from the first non-blank character.
GramLattice parse_gram(const std::string& text);
GramLattice read_gram_file(const std::string& path);

/// Integers that fit in 64 bits become JSON numbers, larger ones strings.
Json integer_to_json(const Integer& x);
Integer integer_from_json(const Json& j);
Json vector_to_json(const LatticeVector& v);
LatticeVector vector_from_json(const Json& j);
Json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j);

/// "1,1,1;0,1,1" -> columns (1,1,1) and (0,1,1).
IntMatrix parse_basis(const std::string& text, Eigen::Index rank);

Json discriminant_to_json(const DiscriminantData& data);

Json report_to_json(const DivisorReport& report);
DivisorReport report_from_json(const Json& j);

std::string format_vector(const LatticeVector& v);

}  // namespace gmlat

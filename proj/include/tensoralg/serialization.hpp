#ifndef TENSORALG_SERIALIZATION_HPP
#define TENSORALG_SERIALIZATION_HPP

#include <string>

#include "json.hpp"
#include "tensoralg/correspondence.hpp"
#include "tensoralg/report.hpp"
#include "tensoralg/representation.hpp"
#include "tensoralg/star_algebra.hpp"

namespace tensoralg {

/// Ordered JSON keeps key emission order fixed by the writing code, which the
/// byte-identical report requirement relies on.
using Json = nlohmann::ordered_json;

/// Matrices are nested arrays of [re, im] pairs, row-major.  An empty array
/// decodes to the 0 x 0 matrix.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json algebra_to_json(const StarAlgebra& a);
StarAlgebra algebra_from_json(const Json& j);

Json correspondence_to_json(const Correspondence& e);
Correspondence correspondence_from_json(const Json& j);

Json bimodule_to_json(const EquivalenceBimodule& x);
EquivalenceBimodule bimodule_from_json(const Json& j);

Json representation_to_json(const Representation& r);
Representation representation_from_json(const Json& j);

/// Residual list and notes of a single check, as an object.
Json check_report_to_json(const CheckReport& r);

/// Throws std::runtime_error naming the file and the parse error position /
/// missing field.
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace tensoralg

#endif  // TENSORALG_SERIALIZATION_HPP

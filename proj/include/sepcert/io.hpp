#pragma once

// JSON file formats. Complex numbers are [re, im] pairs; matrices are
// row-major nested arrays of them.

#include <string>

#include <json.hpp>

#include "sepcert/certificates.hpp"
#include "sepcert/discrimination.hpp"
#include "sepcert/states.hpp"
#include "sepcert/ups.hpp"

namespace sepcert {

using Json = nlohmann::json;

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);
Json vector_to_json(const ComplexVector& v);
ComplexVector vector_from_json(const Json& j);

Json space_to_json(const BipartiteSpace& s);
BipartiteSpace space_from_json(const Json& j);

Json product_to_json(const ProductVector& p);
ProductVector product_from_json(const Json& j);

/// {"type": "ensemble", "space": ..., "states": [...], "probs": [...]}; pure
/// inputs may use "kets" in place of "states"; {"family": name} selects a catalog entry.
Json ensemble_to_json(const Ensemble& e);
Ensemble ensemble_from_json(const Json& j);

/// {"type": "ups", "space": ..., "members": [{"x": [...], "y": [...]}, ...]}
Json ups_to_json(const UPSet& s);
UPSet ups_from_json(const Json& j);

Json certificate_to_json(const DualCertificate& c, const BipartiteSpace& space);
DualCertificate certificate_from_json(const Json& j);

Json replacement_set_to_json(const ReplacementSet& r, const BipartiteSpace& space);
ReplacementSet replacement_set_from_json(const Json& j);

Json measurement_to_json(const Measurement& m);
Json search_report_to_json(const ConeSearchReport& r);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

/// A catalog name, or a path to an ensemble / UPS file.
CatalogEntry load_input(const std::string& family_or_file);

}  // namespace sepcert

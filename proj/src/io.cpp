#include "sepcert/io.hpp"

#include <filesystem>
#include <fstream>

namespace sepcert {

namespace {

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InputError("complex entries must be [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw InputError(std::string("missing field '") + name + "'");
  return j.at(name);
}

std::vector<int> dims_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw InputError("factor dimensions must be a non-empty array");
  std::vector<int> d;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw InputError("factor dimensions must be integers");
    d.push_back(v.get<int>());
  }
  return d;
}

template <typename T>
T expect(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InputError(std::string("field '") + what + "' has the wrong type");
  }
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw InputError("matrices must be non-empty nested arrays");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<Eigen::Index>(j[r].size()) != cols)
      throw InputError("matrix rows must have equal length");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(j[r][c]);
  }
  return m;
}

Json vector_to_json(const ComplexVector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(complex_to_json(v(i)));
  return a;
}

ComplexVector vector_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw InputError("vectors must be non-empty arrays of [re, im] pairs");
  ComplexVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
  return v;
}

Json space_to_json(const BipartiteSpace& s) { return {{"x", s.x_factors()}, {"y", s.y_factors()}}; }

BipartiteSpace space_from_json(const Json& j) {
  return BipartiteSpace(dims_from_json(field(j, "x")), dims_from_json(field(j, "y")));
}

Json product_to_json(const ProductVector& p) { return {{"x", vector_to_json(p.x)}, {"y", vector_to_json(p.y)}}; }

ProductVector product_from_json(const Json& j) {
  return ProductVector::make(vector_from_json(field(j, "x")), vector_from_json(field(j, "y")));
}

Json ensemble_to_json(const Ensemble& e) {
  Json states = Json::array();
  for (const auto& s : e.states()) states.push_back(matrix_to_json(s.matrix()));
  return {{"type", "ensemble"}, {"space", space_to_json(e.space())}, {"states", states}, {"probs", e.probs()}};
}

Ensemble ensemble_from_json(const Json& j) {
  if (j.is_object() && j.contains("family")) {
    auto entry = catalog(expect<std::string>(j.at("family"), "family"));
    if (!std::holds_alternative<Ensemble>(entry)) throw InputError("named family is not an ensemble");
    return std::get<Ensemble>(entry);
  }
  const BipartiteSpace space = space_from_json(field(j, "space"));
  std::vector<double> probs;
  if (j.contains("probs")) probs = expect<std::vector<double>>(j.at("probs"), "probs");
  if (j.contains("kets")) {
    std::vector<ComplexVector> kets;
    for (const auto& k : field(j, "kets")) kets.push_back(vector_from_json(k));
    if (probs.empty()) return Ensemble::uniform_pure(space, kets);
    return Ensemble::pure(space, kets, probs);
  }
  std::vector<HermitianOperator> states;
  for (const auto& s : field(j, "states")) states.emplace_back(matrix_from_json(s));
  if (probs.empty()) probs.assign(states.size(), 1.0 / static_cast<double>(std::max<std::size_t>(1, states.size())));
  return Ensemble(space, std::move(states), std::move(probs));
}

Json ups_to_json(const UPSet& s) {
  Json members = Json::array();
  for (const auto& m : s.members()) members.push_back(product_to_json(m));
  return {{"type", "ups"}, {"space", space_to_json(s.space())}, {"members", members}};
}

UPSet ups_from_json(const Json& j) {
  if (j.is_object() && j.contains("family")) {
    auto entry = catalog(expect<std::string>(j.at("family"), "family"));
    if (!std::holds_alternative<UPSet>(entry)) throw InputError("named family is not a product set");
    return std::get<UPSet>(entry);
  }
  std::vector<ProductVector> members;
  for (const auto& m : field(j, "members")) members.push_back(product_from_json(m));
  return UPSet(space_from_json(field(j, "space")), std::move(members));
}

Json certificate_to_json(const DualCertificate& c, const BipartiteSpace& space) {
  Json j = {{"type", "certificate"},
            {"cone", to_string(c.cone)},
            {"claimed_value", c.claimed_value},
            {"construction", c.construction},
            {"space", space_to_json(space)},
            {"h", matrix_to_json(c.h.matrix())}};
  j["epsilon"] = c.epsilon ? Json(*c.epsilon) : Json(nullptr);
  return j;
}

DualCertificate certificate_from_json(const Json& j) {
  std::optional<double> eps;
  if (j.contains("epsilon") && !j.at("epsilon").is_null()) eps = expect<double>(j.at("epsilon"), "epsilon");
  DualCertificate c = DualCertificate::make(HermitianOperator(matrix_from_json(field(j, "h"))),
                                            cone_tag_from_string(expect<std::string>(field(j, "cone"), "cone")),
                                            j.value("construction", std::string("file")), eps);
  if (j.contains("claimed_value")) {
    const double claimed = expect<double>(j.at("claimed_value"), "claimed_value");
    if (std::abs(claimed - c.claimed_value) > 1e-12 * (1.0 + std::abs(claimed)))
      throw InputError("certificate claimed_value differs from Tr(H)");
  }
  return c;
}

Json replacement_set_to_json(const ReplacementSet& r, const BipartiteSpace& space) {
  Json lists = Json::array();
  for (const auto& l : r.lists) {
    Json items = Json::array();
    for (const auto& p : l) items.push_back(product_to_json(p));
    lists.push_back(std::move(items));
  }
  return {{"type", "replacement_set"}, {"space", space_to_json(space)}, {"counts", r.counts()}, {"lists", lists}};
}

ReplacementSet replacement_set_from_json(const Json& j) {
  ReplacementSet r;
  for (const auto& l : field(j, "lists")) {
    std::vector<ProductVector> items;
    for (const auto& p : l) items.push_back(product_from_json(p));
    r.lists.push_back(std::move(items));
  }
  return r;
}

Json measurement_to_json(const Measurement& m) {
  Json ops = Json::array();
  for (const auto& p : m.operators()) ops.push_back(matrix_to_json(p.matrix()));
  return ops;
}

Json search_report_to_json(const ConeSearchReport& r) {
  return {{"min_overlap", r.min_overlap},
          {"witness", product_to_json(r.witness)},
          {"restarts", r.restarts},
          {"seed", r.seed},
          {"iterations_per_restart", r.iterations_per_restart},
          {"max_alternations_used", r.max_alternations_used},
          {"best_restart", r.best_restart},
          {"generator", r.generator}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

CatalogEntry load_input(const std::string& family_or_file) {
  const auto names = catalog_names();
  if (std::find(names.begin(), names.end(), family_or_file) != names.end()) return catalog(family_or_file);
  if (!std::filesystem::exists(family_or_file))
    throw InputError("'" + family_or_file + "' is neither a known family nor an existing file");
  const Json j = read_json_file(family_or_file);
  const std::string type = j.value("type", std::string());
  if (type == "ups") return ups_from_json(j);
  if (type == "ensemble" || type.empty()) return ensemble_from_json(j);
  throw InputError("unsupported input type '" + type + "'");
}

}  // namespace sepcert

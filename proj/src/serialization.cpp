#include "tensoralg/serialization.hpp"

#include <fstream>
#include <stdexcept>

namespace tensoralg {

namespace {

Json matrix_list_to_json(const std::vector<Matrix>& ms) {
  Json out = Json::array();
  for (const Matrix& m : ms) out.push_back(matrix_to_json(m));
  return out;
}

std::vector<Matrix> matrix_list_from_json(const Json& j) {
  std::vector<Matrix> out;
  for (const Json& e : j) out.push_back(matrix_from_json(e));
  return out;
}

Json matrix_grid_to_json(const std::vector<std::vector<Matrix>>& g) {
  Json out = Json::array();
  for (const auto& row : g) out.push_back(matrix_list_to_json(row));
  return out;
}

std::vector<std::vector<Matrix>> matrix_grid_from_json(const Json& j) {
  std::vector<std::vector<Matrix>> out;
  for (const Json& row : j) out.push_back(matrix_list_from_json(row));
  return out;
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw std::runtime_error("matrix: expected an array of rows");
  const Eigen::Index rows = Eigen::Index(j.size());
  if (rows == 0) return Matrix(0, 0);
  const Eigen::Index cols = Eigen::Index(j.at(0).size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j.at(std::size_t(r));
    if (Eigen::Index(row.size()) != cols)
      throw std::runtime_error("matrix: ragged rows");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Json& entry = row.at(std::size_t(c));
      if (!entry.is_array() || entry.size() != 2)
        throw std::runtime_error("matrix: entries must be [re, im] pairs");
      m(r, c) = Complex(entry.at(0).get<double>(), entry.at(1).get<double>());
    }
  }
  return m;
}

Json algebra_to_json(const StarAlgebra& a) {
  Json j;
  j["ambient_dim"] = a.ambient_dim;
  j["basis"] = matrix_list_to_json(a.basis);
  j["contains_identity"] = a.contains_identity;
  j["generators"] = matrix_list_to_json(a.generators);
  return j;
}

StarAlgebra algebra_from_json(const Json& j) {
  StarAlgebra a;
  a.ambient_dim = j.at("ambient_dim").get<int>();
  a.basis = matrix_list_from_json(j.at("basis"));
  a.contains_identity = j.at("contains_identity").get<bool>();
  if (j.contains("generators")) a.generators = matrix_list_from_json(j.at("generators"));
  return a;
}

Json correspondence_to_json(const Correspondence& e) {
  Json j;
  j["left_algebra"] = algebra_to_json(e.left_algebra);
  j["right_algebra"] = algebra_to_json(e.right_algebra);
  j["dim"] = e.dim;
  j["gram"] = matrix_grid_to_json(e.gram);
  j["right_action"] = matrix_list_to_json(e.right_action);
  j["left_action"] = matrix_list_to_json(e.left_action);
  return j;
}

Correspondence correspondence_from_json(const Json& j) {
  Correspondence e;
  e.left_algebra = algebra_from_json(j.at("left_algebra"));
  e.right_algebra = algebra_from_json(j.at("right_algebra"));
  e.dim = j.at("dim").get<int>();
  e.gram = matrix_grid_from_json(j.at("gram"));
  e.right_action = matrix_list_from_json(j.at("right_action"));
  e.left_action = matrix_list_from_json(j.at("left_action"));
  return e;
}

Json bimodule_to_json(const EquivalenceBimodule& x) {
  Json j;
  j["left_algebra"] = algebra_to_json(x.left_algebra);
  j["right_algebra"] = algebra_to_json(x.right_algebra);
  j["module"] = correspondence_to_json(x.module);
  j["left_gram"] = matrix_grid_to_json(x.left_gram);
  return j;
}

EquivalenceBimodule bimodule_from_json(const Json& j) {
  EquivalenceBimodule x;
  x.left_algebra = algebra_from_json(j.at("left_algebra"));
  x.right_algebra = algebra_from_json(j.at("right_algebra"));
  x.module = correspondence_from_json(j.at("module"));
  x.left_gram = matrix_grid_from_json(j.at("left_gram"));
  return x;
}

Json representation_to_json(const Representation& r) {
  Json j;
  j["algebra"] = algebra_to_json(r.algebra);
  j["space_dim"] = r.space_dim;
  j["images"] = matrix_list_to_json(r.images);
  return j;
}

Representation representation_from_json(const Json& j) {
  Representation r;
  r.algebra = algebra_from_json(j.at("algebra"));
  r.space_dim = j.at("space_dim").get<int>();
  r.images = matrix_list_from_json(j.at("images"));
  return r;
}

Json check_report_to_json(const CheckReport& r) {
  Json res;
  for (const auto& [name, value] : r.residuals) res[name] = value;
  Json j;
  j["residuals"] = std::move(res);
  j["notes"] = r.notes;
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace tensoralg

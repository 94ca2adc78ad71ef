#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "tensoralg/generators.hpp"
#include "tensoralg/serialization.hpp"

using namespace tensoralg;

namespace {

double grid_diff(const std::vector<std::vector<Matrix>>& a,
                 const std::vector<std::vector<Matrix>>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j)
      m = std::max(m, operator_norm(a[i][j] - b[i][j]));
  return m;
}

}  // namespace

TEST_CASE("matrices round-trip exactly through the [re, im] literal form") {
  Rng rng(61);
  const Matrix m = rng.gaussian_matrix(3, 2);
  const Matrix back = matrix_from_json(matrix_to_json(m));
  CHECK(operator_norm(back - m) == 0.0);  // shortest round-trip decimals are exact

  CHECK(matrix_from_json(matrix_to_json(Matrix(0, 0))).rows() == 0);

  CHECK_THROWS(matrix_from_json(Json::parse(R"([[1.0]])")));       // not [re, im]
  CHECK_THROWS(matrix_from_json(Json::parse(R"([[[1,0]],[]])")));  // ragged
}

TEST_CASE("algebras, correspondences, bimodules, and representations round-trip") {
  Rng rng(62);
  const BlockAlgebra left = random_block_algebra(rng, {2, 1});
  const BlockAlgebra right = random_block_algebra(rng, {1, 2});

  const StarAlgebra a = left.algebra;
  const StarAlgebra a2 = algebra_from_json(algebra_to_json(a));
  REQUIRE(a2.dim() == a.dim());
  for (int i = 0; i < a.dim(); ++i)
    CHECK(operator_norm(a2.basis[std::size_t(i)] - a.basis[std::size_t(i)]) == 0.0);

  const Correspondence f = random_correspondence(right, right, rng, {{1, 1}, {1, 0}});
  const Correspondence f2 = correspondence_from_json(correspondence_to_json(f));
  CHECK(f2.dim == f.dim);
  CHECK(grid_diff(f2.gram, f.gram) == 0.0);
  CHECK(check_correspondence_axioms(f2).max_residual() <= 1e-9);

  const EquivalenceBimodule x = random_equivalence_bimodule(left, right, rng);
  const EquivalenceBimodule x2 = bimodule_from_json(bimodule_to_json(x));
  CHECK(grid_diff(x2.left_gram, x.left_gram) == 0.0);
  CHECK(check_equivalence_bimodule(x2).max_residual() <= 1e-9);

  const Representation sigma = random_representation(right, rng, {1, 1});
  const Representation sigma2 = representation_from_json(representation_to_json(sigma));
  CHECK(sigma2.space_dim == sigma.space_dim);
  CHECK(sigma2.check().max_residual() <= 1e-12);
}

TEST_CASE("check reports serialize with their names and notes") {
  CheckReport r;
  r.add("alpha", 1.5e-11);
  r.add("beta", 0.0);
  r.notes.push_back("context note");
  const Json j = check_report_to_json(r);
  CHECK(j.at("residuals").at("alpha").get<double>() == 1.5e-11);
  CHECK(j.at("residuals").at("beta").get<double>() == 0.0);
  CHECK(j.at("notes").at(0).get<std::string>() == "context note");
}

TEST_CASE("file IO reports contextful errors and round-trips content") {
  const std::string path = "/tmp/tensoralg_serialization_test.json";
  Json j;
  j["x"] = matrix_to_json(Matrix::Identity(2, 2));
  write_json_file(path, j);
  const Json back = read_json_file(path);
  CHECK(back.at("x") == j.at("x"));
  std::remove(path.c_str());

  CHECK_THROWS_WITH_AS(read_json_file("/tmp/definitely_missing_tensoralg.json"),
                       doctest::Contains("definitely_missing_tensoralg"),
                       std::runtime_error);

  const std::string bad = "/tmp/tensoralg_bad_test.json";
  {
    std::ofstream out(bad);
    out << "{ not json";
  }
  try {
    (void)read_json_file(bad);
    FAIL("expected a parse error");
  } catch (const std::runtime_error& e) {
    const std::string what = e.what();
    CHECK(what.find(bad) != std::string::npos);       // file named
    CHECK(what.find("parse") != std::string::npos);   // parse context
  }
  std::remove(bad.c_str());
}

#include <doctest.h>

#include "qds/error.hpp"
#include "qds/staralg.hpp"

using namespace qds;

namespace {

// M_n(C) in the basis E_ij (index i*n+j), E_ij* = E_ji.
StarAlgebra<Complex> full_matrix_algebra(std::size_t n) {
  const std::size_t d = n * n;
  std::vector<std::string> labels;
  std::vector<SparseVec<Complex>> mult(d * d);
  Vec<Complex> unit(d, 0.0);
  Matrix<Complex> star(d, d);
  for (std::size_t i = 0; i < n; ++i) {
    unit[i * n + i] = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      labels.push_back("E" + std::to_string(i) + std::to_string(j));
      star(j * n + i, i * n + j) = 1.0;
      for (std::size_t l = 0; l < n; ++l)
        mult[(i * n + j) * d + j * n + l].emplace_back(static_cast<std::uint32_t>(i * n + l), 1.0);
    }
  }
  return StarAlgebra<Complex>(labels, mult, unit, AntilinearMap<Complex>{star});
}

StarAlgebra<GaussRational> group_algebra_z2() {
  std::vector<SparseVec<GaussRational>> mult(4);
  mult[0] = {{0, GaussRational(1)}};
  mult[1] = {{1, GaussRational(1)}};
  mult[2] = {{1, GaussRational(1)}};
  mult[3] = {{0, GaussRational(1)}};
  return StarAlgebra<GaussRational>({"e", "g"}, mult, {GaussRational(1), GaussRational(0)},
                                    AntilinearMap<GaussRational>{Matrix<GaussRational>::identity(2)});
}

StarAlgebra<GaussRational> functions_z2() {
  std::vector<SparseVec<GaussRational>> mult(4);
  mult[0] = {{0, GaussRational(1)}};
  mult[3] = {{1, GaussRational(1)}};
  return StarAlgebra<GaussRational>({"d0", "d1"}, mult, {GaussRational(1), GaussRational(1)},
                                    AntilinearMap<GaussRational>{Matrix<GaussRational>::identity(2)});
}

}  // namespace

TEST_CASE("multiplication examples") {
  const auto cz2 = group_algebra_z2();
  CHECK(cz2.multiply(cz2.basis_vector(1), cz2.basis_vector(1)) == cz2.basis_vector(0));
  CHECK(cz2.multiply(cz2.unit(), cz2.basis_vector(1)) == cz2.basis_vector(1));
  const auto fz2 = functions_z2();
  CHECK(fz2.multiply(fz2.basis_vector(0), fz2.basis_vector(1)) == Vec<GaussRational>(2, GaussRational(0)));
  CHECK(fz2.check().worst() == 0.0);
  CHECK(full_matrix_algebra(3).check().passes(1e-12));
}

TEST_CASE("center dimensions") {
  CHECK(center(full_matrix_algebra(2)).size() == 1);
  CHECK(center(group_algebra_z2()).size() == 2);
  CHECK(center(full_matrix_algebra(1)).size() == 1);
}

TEST_CASE("block decomposition of a full matrix algebra") {
  const auto m2 = full_matrix_algebra(2);
  const auto d = block_decompose(m2, 1e-9, 0);
  REQUIRE(d.blocks.size() == 1);
  CHECK(d.blocks[0].size == 2);
  CHECK(d.residual < 1e-9);
  CHECK(decomposition_residual(m2, d) < 1e-9);
}

TEST_CASE("block decomposition of C[Z2]") {
  const auto a = to_complex(group_algebra_z2());
  const auto d = block_decompose(a, 1e-9, 0);
  REQUIRE(d.blocks.size() == 2);
  CHECK(d.blocks[0].size == 1);
  CHECK(d.blocks[1].size == 1);
  // characters (1,1) and (1,-1): z = (e +- g)/2, the trivial one first
  CHECK(std::abs(d.blocks[0].central[1] - Complex(0.5)) < 1e-9);
  CHECK(std::abs(d.blocks[1].central[1] - Complex(-0.5)) < 1e-9);
}

TEST_CASE("block decomposition is deterministic per seed") {
  const auto a = full_matrix_algebra(3);
  const auto d1 = block_decompose(a, 1e-9, 11);
  const auto d2 = block_decompose(a, 1e-9, 11);
  REQUIRE(d1.blocks.size() == 1);
  for (std::size_t k = 0; k < d1.blocks[0].units.size(); ++k) CHECK(d1.blocks[0].units[k] == d2.blocks[0].units[k]);
}

TEST_CASE("non-semisimple input is rejected") {
  // upper triangular 2x2 matrices, with a formal involution that is not compatible
  std::vector<SparseVec<Complex>> mult(9);
  // basis a=E11, b=E12, c=E22
  mult[0 * 3 + 0] = {{0, 1.0}};
  mult[0 * 3 + 1] = {{1, 1.0}};
  mult[1 * 3 + 2] = {{1, 1.0}};
  mult[2 * 3 + 2] = {{2, 1.0}};
  StarAlgebra<Complex> t({"a", "b", "c"}, mult, {1.0, 0.0, 1.0}, AntilinearMap<Complex>{Matrix<Complex>::identity(3)});
  CHECK_THROWS_AS(block_decompose(t, 1e-9, 0), Error);
}

TEST_CASE("spectral idempotents in M2(R)") {
  const auto m2 = full_matrix_algebra(2);
  std::vector<Vec<Complex>> basis;
  for (std::size_t k = 0; k < 4; ++k) basis.push_back(m2.basis_vector(k));
  RealSubalgebra r(basis, m2.unit(), [&](const Vec<Complex>& x, const Vec<Complex>& y) { return m2.multiply(x, y); });
  CHECK(r.closure_residual() < 1e-12);

  CHECK(spectral_idempotents(r, m2.unit()).size() == 1);

  const auto ps = spectral_idempotents(r, m2.basis_vector(3));
  REQUIRE(ps.size() == 2);
  Vec<Complex> sum(4, 0.0);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(max_abs(Vec<Complex>(m2.multiply(ps[i], ps[i]) - ps[i])) < 1e-9);
    sum = sum + ps[i];
  }
  CHECK(max_abs(m2.multiply(ps[0], ps[1])) < 1e-9);
  CHECK(max_abs(Vec<Complex>(sum - m2.unit())) < 1e-9);
}

TEST_CASE("quaternions have no proper idempotents") {
  // H inside M2(C): 1, i sigma_z, i sigma_y, i sigma_x
  const auto m2 = full_matrix_algebra(2);
  const Complex i(0, 1);
  std::vector<Vec<Complex>> basis = {
      {1.0, 0.0, 0.0, 1.0}, {i, 0.0, 0.0, -i}, {0.0, 1.0, -1.0, 0.0}, {0.0, i, i, 0.0}};
  RealSubalgebra h(basis, m2.unit(), [&](const Vec<Complex>& x, const Vec<Complex>& y) { return m2.multiply(x, y); });
  CHECK(h.closure_residual() < 1e-12);
  const auto a = h.element({0.3, -0.7, 0.2, 0.5});
  CHECK(spectral_idempotents(h, a).size() == 1);
}

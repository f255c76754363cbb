#pragma once

// Finite-dimensional associative *-algebras over C given by structure
// constants, their Wedderburn block decomposition into *-matrix units, and
// spectral idempotents inside real subalgebras.

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qds/linalg.hpp"
#include "qds/matrix.hpp"
#include "qds/scalar.hpp"

namespace qds {

template <class T>
using SparseVec = std::vector<std::pair<std::uint32_t, T>>;

template <class T>
Vec<T> densify(const SparseVec<T>& s, std::size_t dim) {
  Vec<T> out(dim, T(0));
  for (const auto& [k, v] : s) out[k] += v;
  return out;
}

template <class T>
SparseVec<T> sparsify(const Vec<T>& v, double tol = 0.0) {
  SparseVec<T> out;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (!is_zero(v[k], tol)) out.emplace_back(static_cast<std::uint32_t>(k), v[k]);
  return out;
}

/// The antilinear map x -> m * conj(x) on coordinate vectors.
template <class T>
struct AntilinearMap {
  Matrix<T> m;

  Vec<T> operator()(const Vec<T>& x) const { return m * conjugated(x); }
  /// The composition this o other, which is linear: m * conj(other.m).
  Matrix<T> compose(const AntilinearMap& other) const { return m * other.m.conjugate(); }
};

struct StarAlgebraCheck {
  double associativity = 0;
  double unit = 0;
  double involution = 0;        // ||(a*)* - a||
  double antimultiplicative = 0;  // ||(ab)* - b* a*||
  double worst() const;
  bool passes(double tol) const { return worst() <= tol; }
};

template <class T>
class StarAlgebra {
 public:
  StarAlgebra() = default;
  /// mult[i * dim + j] holds the coordinates of b_i b_j.
  StarAlgebra(std::vector<std::string> labels, std::vector<SparseVec<T>> mult, Vec<T> unit, AntilinearMap<T> star);

  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const SparseVec<T>& basis_product(std::size_t i, std::size_t j) const { return mult_[i * dim() + j]; }
  const std::vector<SparseVec<T>>& mult_table() const { return mult_; }
  const Vec<T>& unit() const { return unit_; }
  const AntilinearMap<T>& star_map() const { return star_; }

  Vec<T> basis_vector(std::size_t i) const;
  Vec<T> multiply(const Vec<T>& a, const Vec<T>& b) const;
  Vec<T> star(const Vec<T>& a) const { return star_(a); }
  Vec<T> commutator(const Vec<T>& a, const Vec<T>& b) const { return multiply(a, b) - multiply(b, a); }

  /// Column j is a * b_j.
  Matrix<T> left_multiplication(const Vec<T>& a) const;
  /// Column j is b_j * a.
  Matrix<T> right_multiplication(const Vec<T>& a) const;

  StarAlgebraCheck check() const;
  bool is_commutative(double tol = kDefaultTolerance) const;

 private:
  void validate() const;

  std::vector<std::string> labels_;
  std::vector<SparseVec<T>> mult_;
  Vec<T> unit_;
  AntilinearMap<T> star_;
};

/// Basis of the center {z : z b_i = b_i z for all i}.
template <class T>
std::vector<Vec<T>> center(const StarAlgebra<T>& a, double tol = kDefaultTolerance);

template <class T>
StarAlgebra<Complex> to_complex(const StarAlgebra<T>& a);

struct MatrixBlock {
  std::size_t size = 0;
  Vec<Complex> central;            // minimal central idempotent z_s
  std::vector<Vec<Complex>> units;  // e[k][l] stored at k * size + l
  const Vec<Complex>& unit_at(std::size_t k, std::size_t l) const { return units[k * size + l]; }
};

struct BlockDecomposition {
  std::vector<MatrixBlock> blocks;
  double residual = 0;  // worst violation of the matrix-unit relations
};

/// Wedderburn decomposition A = sum_s M_{n_s}(C) with *-compatible matrix units.
/// Seeded and deterministic; blocks are ordered by size, ties broken by the
/// (seed-independent) coordinates of the central idempotents. Throws
/// Error(NonSemisimple) when the relations cannot be achieved within tol.
BlockDecomposition block_decompose(const StarAlgebra<Complex>& a, double tol = kDefaultTolerance,
                                   std::uint64_t seed = 0);

/// Worst residual of the BlockDecomposition invariants against the algebra.
double decomposition_residual(const StarAlgebra<Complex>& a, const BlockDecomposition& d);

/// A real subalgebra R of a complex algebra, spanned over R by `basis`.
class RealSubalgebra {
 public:
  using Multiply = std::function<Vec<Complex>(const Vec<Complex>&, const Vec<Complex>&)>;

  RealSubalgebra(std::vector<Vec<Complex>> basis, Vec<Complex> unit, Multiply multiply);

  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vec<Complex>>& basis() const { return basis_; }
  const Vec<Complex>& unit() const { return unit_; }
  Vec<Complex> multiply(const Vec<Complex>& a, const Vec<Complex>& b) const { return multiply_(a, b); }

  Vec<Complex> element(const std::vector<double>& coords) const;
  /// Real coordinates by least squares; `residual` receives the distance to R.
  std::vector<double> coordinates(const Vec<Complex>& x, double* residual = nullptr) const;
  Matrix<double> left_multiplication(const Vec<Complex>& a) const;
  /// Worst ||b_i b_j - proj_R(b_i b_j)||: zero iff R is closed under products.
  double closure_residual() const;

 private:
  std::vector<Vec<Complex>> basis_;
  Vec<Complex> unit_;
  Multiply multiply_;
  Matrix<double> gram_inverse_;
};

/// Pairwise orthogonal idempotents of R, each a real polynomial in a, one per
/// irreducible real factor of the minimal polynomial of a, summing to 1_R.
std::vector<Vec<Complex>> spectral_idempotents(const RealSubalgebra& r, const Vec<Complex>& a,
                                               double tol = kDefaultTolerance);

/// p(a) by Horner's rule inside the algebra.
Vec<Complex> evaluate_in(const RealSubalgebra& r, const linalg::Polynomial<double>& p, const Vec<Complex>& a);

}  // namespace qds

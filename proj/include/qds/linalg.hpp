#pragma once

// Dense and sparse linear algebra over the scalar modes of scalar.hpp, a
// Jacobi hermitian eigensolver, and small polynomial utilities.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "qds/matrix.hpp"
#include "qds/scalar.hpp"

namespace qds::linalg {

struct HermitianEigen {
  std::vector<double> values;  // ascending
  Matrix<Complex> vectors;     // orthonormal columns, vectors.column(k) <-> values[k]
  double residual = 0;         // max_k ||m v_k - lambda_k v_k||
};

/// Cyclic Jacobi with a fixed sweep order. Throws NumericalError if m is not
/// self-adjoint within tol * max(1, ||m||).
HermitianEigen eig_hermitian(const Matrix<Complex>& m, double tol = kDefaultTolerance);

template <class T>
struct LinearSolution {
  bool consistent = true;
  Matrix<T> solution;             // one representative (free variables set to zero)
  std::vector<Vec<T>> kernel;     // basis of null(a)
  double residual = 0;            // ||a x - b||_max; least-squares residual when inconsistent
};

/// Solves a x = b for every column of b. Exact scalars are eliminated exactly;
/// for floats entries below tol * max(1, max|a|) are treated as zero.
template <class T>
LinearSolution<T> solve_linear(const Matrix<T>& a, const Matrix<T>& b, double tol = kDefaultTolerance);

template <class T>
std::vector<Vec<T>> kernel(const Matrix<T>& a, double tol = kDefaultTolerance);

template <class T>
std::size_t rank(const Matrix<T>& a, double tol = kDefaultTolerance);

template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& a, double tol = kDefaultTolerance);

/// Reduced row echelon form in place; returns the pivot columns. Only the
/// first pivot_cols columns are eligible as pivots.
template <class T>
std::vector<std::size_t> rref(Matrix<T>& m, std::size_t pivot_cols, double tol = kDefaultTolerance);

/// Sparse linear system for the large, very sparse systems that arise from
/// structure constants (antipode and Haar equations).
template <class T>
class SparseSystem {
 public:
  using Term = std::pair<std::size_t, T>;

  explicit SparseSystem(std::size_t unknowns) : unknowns_(unknowns) {}

  /// Adds sum(coef * x[index]) = rhs; duplicate indices are combined.
  void add_equation(std::vector<Term> terms, T rhs);

  struct Result {
    bool consistent = true;
    Vec<T> x;
    std::size_t nullity = 0;
    double residual = 0;
  };
  Result solve(double tol = kDefaultTolerance) const;

  std::size_t unknowns() const { return unknowns_; }
  std::size_t equations() const { return rows_.size(); }

 private:
  struct Row {
    std::vector<Term> terms;  // sorted by index, no zeros
    T rhs;
  };
  std::size_t unknowns_;
  std::vector<Row> rows_;
};

// ---- polynomials -------------------------------------------------------------

/// Dense univariate polynomial, coefficients from low to high degree.
template <class F>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Polynomial monomial(std::size_t degree, const F& coef = F(1)) {
    std::vector<F> c(degree + 1, F(0));
    c[degree] = coef;
    return Polynomial(std::move(c));
  }
  /// x - root
  static Polynomial linear(const F& root) { return Polynomial(std::vector<F>{-root, F(1)}); }

  bool is_zero() const { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<F>& coeffs() const { return c_; }
  const F& operator[](std::size_t k) const { return c_[k]; }
  F leading() const { return c_.empty() ? F(0) : c_.back(); }

  F operator()(const F& x) const {
    F acc(0);
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
    return acc;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<F> c(std::max(a.c_.size(), b.c_.size()), F(0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<F> c(std::max(a.c_.size(), b.c_.size()), F(0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] -= b.c_[k];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<F> c(a.c_.size() + b.c_.size() - 1, F(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(c));
  }

  /// Euclidean division; returns {quotient, remainder}.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

 private:
  void trim() {
    while (!c_.empty() && qds::is_zero(c_.back())) c_.pop_back();
  }
  std::vector<F> c_;
};

/// Minimal polynomial of a real matrix (the matrix of left multiplication by an
/// element of a real algebra in a fixed basis), monic, found by a Krylov
/// dependence search on the matrix powers. Throws NumericalError if the
/// certificate ||p(m)|| <= tol (1 + ||m||^deg) fails.
Polynomial<double> minimal_polynomial_real(const Matrix<double>& m, double tol = kDefaultTolerance);

/// All complex roots of a real polynomial (Aberth iteration), with multiplicity.
std::vector<Complex> polynomial_roots(const Polynomial<double>& p);

/// u with u * g == 1 modulo f, for coprime f and g (deg u < deg f).
template <class F>
Polynomial<F> inverse_modulo(const Polynomial<F>& g, const Polynomial<F>& f, double tol = kDefaultTolerance);

/// Evaluates p at a square matrix.
Matrix<double> evaluate(const Polynomial<double>& p, const Matrix<double>& m);

}  // namespace qds::linalg

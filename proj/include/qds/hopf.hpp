#pragma once

// Finite-dimensional Hopf *-algebras by structure tensors: axiom residuals,
// antipode and Haar solvers, convolution of functionals and the dual
// convolution *-algebra.

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "qds/matrix.hpp"
#include "qds/scalar.hpp"
#include "qds/staralg.hpp"

namespace qds {

/// Sparse element of A (x) A: terms (j, k, v) meaning v b_j (x) b_k.
template <class T>
using TensorVec = std::vector<std::tuple<std::uint32_t, std::uint32_t, T>>;

/// A functional on the algebra, by its values on the basis.
template <class T>
using Functional = Vec<T>;

enum class Provenance { Exact, Float, PromotedFromExact };

const char* to_string(Provenance p);

template <class T>
class HopfStarAlgebra {
 public:
  HopfStarAlgebra() = default;
  /// comult[i] is Delta(b_i).
  HopfStarAlgebra(std::string name, StarAlgebra<T> alg, std::vector<TensorVec<T>> comult, Functional<T> counit,
                  std::optional<Matrix<T>> antipode = std::nullopt,
                  Provenance provenance = is_exact_v<T> ? Provenance::Exact : Provenance::Float);

  const std::string& name() const { return name_; }
  std::size_t dim() const { return alg_.dim(); }
  const StarAlgebra<T>& alg() const { return alg_; }
  const TensorVec<T>& coproduct(std::size_t i) const { return comult_[i]; }
  const std::vector<TensorVec<T>>& comult_table() const { return comult_; }
  const Functional<T>& counit() const { return counit_; }
  /// Column j holds S(b_j).
  const std::optional<Matrix<T>>& antipode() const { return antipode_; }
  Provenance provenance() const { return provenance_; }

  HopfStarAlgebra with_antipode(Matrix<T> s) const;
  HopfStarAlgebra renamed(std::string name) const;

  /// Delta(x) as a dense dim x dim coefficient grid.
  Matrix<T> comultiply(const Vec<T>& x) const;
  /// S(x); requires an antipode.
  Vec<T> apply_antipode(const Vec<T>& x) const;

 private:
  std::string name_;
  StarAlgebra<T> alg_;
  std::vector<TensorVec<T>> comult_;
  Functional<T> counit_;
  std::optional<Matrix<T>> antipode_;
  Provenance provenance_ = Provenance::Float;
};

/// Converts exact data to float, marking the result as promoted.
template <class T>
HopfStarAlgebra<Complex> to_complex(const HopfStarAlgebra<T>& h);

struct AxiomReport {
  StarAlgebraCheck algebra;
  double comult_homomorphism = 0;  // Delta(ab) - Delta(a)Delta(b)
  double comult_star = 0;          // Delta(a*) - (* (x) *) Delta(a)
  double comult_unit = 0;          // Delta(1) - 1 (x) 1
  double coassociativity = 0;
  double counit = 0;               // counit laws, multiplicativity, eps(1) = 1
  std::optional<double> antipode;  // both antipode laws, when an antipode is present

  double worst() const;
  bool passes(double tol) const { return worst() <= tol; }
  /// Name of the worst axiom, or "" when every residual is zero.
  std::string failing_axiom(double tol) const;
};

template <class T>
AxiomReport verify_axioms(const HopfStarAlgebra<T>& h);

/// The antipode, from both antipode laws as one linear system. Throws
/// Error(Axiom) when the system has no solution.
template <class T>
Matrix<T> solve_antipode(const HopfStarAlgebra<T>& h, double tol = kDefaultTolerance);

template <class T>
struct HaarState {
  Functional<T> h;
  double invariance_residual = 0;
  double min_gram_eigenvalue = 0;  // lambda_min of h(b_i* b_j)
};

/// The unique bi-invariant state. Throws Error(NotAQuantumGroup) when the
/// invariance system does not have exactly one normalized solution or the
/// solution is not positive.
template <class T>
HaarState<T> haar_state(const HopfStarAlgebra<T>& h, double tol = kDefaultTolerance);

template <class T>
T evaluate(const Functional<T>& phi, const Vec<T>& x);

/// (phi * psi)(a) = (phi (x) psi) Delta(a)
template <class T>
Functional<T> convolve(const HopfStarAlgebra<T>& h, const Functional<T>& phi, const Functional<T>& psi);

/// phi^dagger(a) = conj(phi(a*))
template <class T>
Functional<T> dagger(const HopfStarAlgebra<T>& h, const Functional<T>& phi);

/// Smallest eigenvalue of the Gram matrix phi(b_i* b_j); phi is positive iff it is >= 0.
template <class T>
double positivity_margin(const HopfStarAlgebra<T>& h, const Functional<T>& phi, double tol = kDefaultTolerance);

/// The dual convolution *-algebra on the dual basis: product = convolution,
/// unit = counit, involution phi*(a) = conj(phi(S(a)*)).
template <class T>
StarAlgebra<T> dual_algebra(const HopfStarAlgebra<T>& h);

struct PropertyCheck {
  bool holds = false;
  double residual = 0;
};

template <class T>
PropertyCheck is_commutative(const HopfStarAlgebra<T>& h, double tol = kDefaultTolerance);
template <class T>
PropertyCheck is_cocommutative(const HopfStarAlgebra<T>& h, double tol = kDefaultTolerance);
/// h(ab) = h(ba) on basis pairs and S^2 = id.
template <class T>
PropertyCheck is_kac(const HopfStarAlgebra<T>& h, const Functional<T>& haar, double tol = kDefaultTolerance);

/// Throws Error(Unsupported) unless the Haar state is a trace.
template <class T>
void require_tracial(const HopfStarAlgebra<T>& h, const Functional<T>& haar, double tol = kDefaultTolerance);

/// h_x(a) = h(x a)
template <class T>
Functional<T> haar_weighted(const HopfStarAlgebra<T>& h, const Functional<T>& haar, const Vec<T>& x);

/// The unique x with h(x b_j) = phi(b_j). Throws Error(NotAQuantumGroup)
/// when the pairing h(b_i b_j) is singular.
template <class T>
Vec<T> density_of(const HopfStarAlgebra<T>& h, const Functional<T>& haar, const Functional<T>& phi,
                  double tol = kDefaultTolerance);

enum class Side { Left, Right };

/// Left: a -> (id (x) omega) Delta(a); right: a -> (omega (x) id) Delta(a).
/// Column j is E(b_j). Throws Error(InvalidArgument) unless omega is an
/// idempotent state.
template <class T>
Matrix<T> conditional_expectation(const HopfStarAlgebra<T>& h, const Functional<T>& omega, Side side,
                                  double tol = kDefaultTolerance);

/// Whether phi commutes with every element of the dual basis under convolution.
template <class T>
PropertyCheck is_central(const HopfStarAlgebra<T>& h, const Functional<T>& phi, double tol = kDefaultTolerance);

}  // namespace qds

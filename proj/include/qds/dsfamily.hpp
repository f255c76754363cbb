#pragma once

// Square roots of the Haar state. The hermitian part R_s of each dual block
// pair is classified among M_m(R), M_m(C), M_m(H); members of the DS-family
// are exactly those with every R_s a division algebra. Non-members get an
// explicit square root h + eps h_x built from a nilpotent hermitian functional.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qds/corep.hpp"
#include "qds/hopf.hpp"
#include "qds/staralg.hpp"

namespace qds {

/// Everything the analysis needs, computed once. `exact` and `exact_haar` are
/// present for exact inputs and allow witnesses with zero residual.
struct DsContext {
  HopfStarAlgebra<Complex> algebra;
  Functional<Complex> haar;
  CorepData corep;
  std::optional<HopfStarAlgebra<GaussRational>> exact;
  std::optional<Functional<GaussRational>> exact_haar;
  double tol = kDefaultTolerance;
  std::uint64_t seed = 0;
};

/// Haar state, Kac check and irreps. Throws Error(Unsupported) for non-tracial Haar states.
DsContext make_context(const HopfStarAlgebra<GaussRational>& h, double tol = kDefaultTolerance,
                       std::uint64_t seed = 0);
DsContext make_context(const HopfStarAlgebra<Complex>& h, double tol = kDefaultTolerance, std::uint64_t seed = 0);

/// Real basis orthonormal for Re<x, y>, dropping dependent vectors.
std::vector<Vec<Complex>> real_span_basis(const std::vector<Vec<Complex>>& vectors, double tol = 1e-9);

struct HermitianBlockAlgebra {
  std::size_t s = 0;
  std::size_t sc = 0;
  RealSubalgebra r;  // elements are functionals, multiplied by convolution
  double closure_residual = 0;
};

/// The dagger-fixed functionals supported on the blocks {s, s^c}.
HermitianBlockAlgebra hermitian_subalgebra(const DsContext& ctx, std::size_t s);

enum class BlockKind { RealType, ComplexType, QuaternionType };
const char* to_string(BlockKind k);

struct BlockClassification {
  std::size_t s = 0;
  std::size_t sc = 0;
  std::size_t n = 0;
  BlockKind kind = BlockKind::RealType;
  std::size_t m = 0;                   // R_s = M_m(D)
  std::optional<Matrix<Complex>> q;    // intertwiner, self-contragredient blocks only
  double c = 0;                        // Q conj(Q) = c I, normalized to ||Q||_F^2 = n
  double q_residual = 0;
  std::size_t division_dim = 0;        // real dimension of D found by splitting idempotents

  bool division() const { return m == 1; }
};

/// Skolem-Noether intertwiner from dagger(E_ij) Q = Q conj(E_ij), cross-checked
/// against the corner found by repeated spectral splitting. Throws
/// Error(Inconsistency) when Q conj(Q) is not scalar or the two routes disagree.
BlockClassification classify_block(const DsContext& ctx, const HermitianBlockAlgebra& r);

/// The same classification for a standalone real algebra with known kind
/// data; returns the real dimension of the division algebra in a minimal corner.
std::size_t division_dimension(const RealSubalgebra& r, std::uint64_t seed, double tol = kDefaultTolerance);

/// p * r * (1 - p) for a non-trivial idempotent p split off a random element.
/// Returns nullopt after `attempts` failures.
std::optional<Vec<Complex>> split_nilpotent(const RealSubalgebra& r, std::uint64_t seed, int attempts = 32,
                                            double tol = kDefaultTolerance);

/// nullopt for division blocks; otherwise a nonzero hermitian psi with
/// psi * psi = 0. Throws Error(Inconsistency) after 32 trivial splits.
std::optional<Functional<Complex>> find_nilpotent_hermitian(const DsContext& ctx, const HermitianBlockAlgebra& r,
                                                            const BlockClassification& cls, std::uint64_t seed);

/// The part of rho supported on the blocks {s, s^c}: (z_s + z_{s^c}) * rho.
Functional<Complex> truncate(const DsContext& ctx, const Functional<Complex>& rho, std::size_t s);

struct SquareRootWitness {
  std::size_t block = 0;
  bool exact = false;
  Functional<Complex> psi;
  Vec<Complex> x;  // density: psi = h_x
  double epsilon = 0;
  std::string epsilon_text;  // exact rational when exact
  Functional<Complex> phi;   // h + eps h_x
  std::optional<Functional<GaussRational>> exact_phi;
  double lambda_min = 0;      // smallest eigenvalue of x
  double nilpotent_residual = 0;  // ||psi * psi||
  double sqrt_residual = 0;       // ||phi * phi - h||
  double min_gram = 0;            // positivity margin of phi
  double distance_from_haar = 0;  // ||phi - h||
};

struct NoneCertificate {
  std::vector<BlockClassification> blocks;
};

struct SquareRootOptions {
  std::optional<double> epsilon;  // default: 1 / |lambda_min(x)|
  bool allow_exact = true;
};

struct SquareRootResult {
  std::optional<SquareRootWitness> witness;
  std::optional<NoneCertificate> certificate;
  std::vector<BlockClassification> blocks;
};

/// Representatives s <= s^c of the contragredient pairs.
std::vector<std::size_t> reduced_indices(const CorepData& c);

std::vector<BlockClassification> classify_all(const DsContext& ctx);

/// A verified witness or the classification certificate; never an unverified
/// witness. Throws Error(Numerical) on a failed verification and
/// Error(InvalidArgument) when a user epsilon makes phi non-positive.
SquareRootResult square_root(const DsContext& ctx, const SquareRootOptions& opt = {});

struct DsVerdict {
  bool member = false;
  std::vector<BlockClassification> blocks;
  std::optional<SquareRootWitness> witness;
  std::optional<NoneCertificate> certificate;
};

/// Throws Error(Inconsistency) when the classification route and the square
/// root route disagree.
DsVerdict ds_verdict(const DsContext& ctx, const SquareRootOptions& opt = {});

struct HamiltonianReport {
  bool passes = false;
  std::size_t block_units = 0;
  std::size_t subsums_checked = 0;
  double worst_commutator = 0;
  std::optional<std::size_t> noncentral_block;  // non-members: block of the exhibited idempotent
  Functional<Complex> noncentral_idempotent;
  double noncentral_commutator = 0;
};

HamiltonianReport hamiltonian_certificate(const DsContext& ctx, const DsVerdict& v);

struct NzReport {
  bool applicable = false;
  bool passes = true;
  std::size_t dim = 0;
};

/// Members that are not cocommutative have dimension divisible by 8. Throws
/// Error(Inconsistency) when that fails.
NzReport nz_check(const DsContext& ctx, const DsVerdict& v);

/// Number of nonzero square-zero hermitian functionals found by `trials`
/// seeded attempts of the p * r * (1 - p) construction on every block pair.
std::size_t random_nilpotent_search(const DsContext& ctx, std::size_t trials, std::uint64_t seed);

struct SuqBlock {
  int twice_spin = 1;
  double q = 1;
  std::size_t n = 2;
  Matrix<Complex> Q;
  double c = 0;
  BlockKind kind = BlockKind::RealType;
  std::size_t m = 0;
  std::size_t real_dim = 0;
  std::size_t division_dim = 0;
  std::optional<Matrix<Complex>> nilpotent;
  double nilpotent_residual = 0;  // ||N^2|| and ||dagger(N) - N||
  std::optional<Matrix<Complex>> closed_form_witness;  // spin 1/2, q < 0
  double closed_form_witness_residual = 0;
};

/// The spin twice_spin/2 block of SU_q(2): R = fixed points of A -> Q conj(A) Q^{-1}.
/// Throws Error(InvalidArgument) for q = 0 or negative spin.
SuqBlock suq2_block(int twice_spin, double q, std::uint64_t seed = 0);

/// The intertwiner with Q_{jk} = (-1)^k q^{k-1} when j = n - k + 1 (1-based), else 0.
Matrix<Complex> suq2_intertwiner(std::size_t n, double q);

}  // namespace qds

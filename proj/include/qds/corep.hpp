#pragma once

// Corepresentation theory read off the Wedderburn decomposition of the dual
// convolution algebra: irreducible unitary corepresentations, contragredients,
// group-likes, fusion rules, Irr / ~Gamma and generated quantum subgroups.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qds/constructors.hpp"
#include "qds/hopf.hpp"
#include "qds/staralg.hpp"

namespace qds {

struct Irrep {
  std::size_t index = 0;
  std::size_t dim = 0;
  std::vector<Vec<Complex>> u;  // u[k][l] at k * dim + l, elements of the algebra
  std::size_t contragredient = 0;

  const Vec<Complex>& at(std::size_t k, std::size_t l) const { return u[k * dim + l]; }
  Vec<Complex> character() const;
};

/// The dual picture of a finite quantum group: Haar state, the dual algebra
/// with its *-matrix units and the irreducible corepresentations they
/// determine. Block s of `dual` corresponds to irreps[s].
struct CorepData {
  HopfStarAlgebra<Complex> algebra;
  Functional<Complex> haar;
  StarAlgebra<Complex> dual;
  BlockDecomposition blocks;
  std::vector<Irrep> irreps;
  std::size_t trivial = 0;
  double corep_residual = 0;     // Delta(u_kl) - sum_j u_kj (x) u_jl
  double unitarity_residual = 0;
  std::uint64_t seed = 0;

  std::size_t partner(std::size_t s) const { return irreps[s].contragredient; }
};

/// Runs the block decomposition of the dual algebra and extracts the irreps.
/// Retries with derived seeds when unitarity fails, then throws Error(Numerical).
CorepData extract_irreps(const HopfStarAlgebra<Complex>& h, const Functional<Complex>& haar,
                         double tol = kDefaultTolerance, std::uint64_t seed = 0);

/// The involution s -> s^c from the dagger map on central idempotents.
std::vector<std::size_t> contragredient_pairing(const CorepData& c, double tol = kDefaultTolerance);

/// Worst deviation from h(u^s_ij* u^t_kl) = delta_st delta_ik delta_jl / n_s.
double peter_weyl_residual(const CorepData& c);

struct GroupLikes {
  std::vector<std::size_t> irreps;  // irrep index of each group element
  std::vector<Vec<Complex>> elements;
  CayleyTable table;                // element 0 is the unit
};

GroupLikes group_likes(const CorepData& c, double tol = kDefaultTolerance);

struct FusionTable {
  std::size_t count = 0;
  std::vector<int> n;       // N[s][t][r] at (s * count + t) * count + r
  double integrality = 0;   // worst distance of a computed multiplicity to an integer
  int at(std::size_t s, std::size_t t, std::size_t r) const { return n[(s * count + t) * count + r]; }
};

/// N[s][t][r] = h(chi_s chi_t chi_r*), for tracial Haar states. Throws
/// Error(Inconsistency) on a non-integral multiplicity or a failed sum rule.
FusionTable fusion(const CorepData& c, double tol = kDefaultTolerance);

struct IrrModGamma {
  std::vector<std::vector<std::size_t>> classes;  // class 0 holds the group-likes
  std::vector<std::size_t> class_of;              // per irrep
  bool well_defined = false;
  std::vector<std::size_t> product;               // [a * classes + b], valid when well_defined
  bool abelian = false;
  std::size_t exponent = 0;                       // 0 when not a group
  std::string problem;                            // why the product is not well defined
};

IrrModGamma irr_mod_gamma(const CorepData& c, const GroupLikes& g, const FusionTable& f);

/// For every 2-dim irrep u and group-like g, whether g (x) u is equivalent to
/// u (x) g' for some group-like g'. Returns the number of failing pairs.
std::size_t twist_failures(const CorepData& c, const GroupLikes& g, const FusionTable& f);

struct GeneratedSubalgebra {
  HopfStarAlgebra<Complex> algebra;
  std::vector<Vec<Complex>> basis;  // in the ambient algebra
  double restriction_residual = 0;
};

/// The smallest unital *-subalgebra containing the coefficients of u, with the
/// restricted Hopf structure. Throws Error(Inconsistency) if Delta does not restrict.
GeneratedSubalgebra subalgebra_generated(const HopfStarAlgebra<Complex>& h, const Irrep& u,
                                         double tol = kDefaultTolerance);

/// The group G with H = C(G), from the characters of a commutative H.
/// Throws Error(InvalidArgument) if H is not commutative.
CayleyTable identify_commutative(const HopfStarAlgebra<Complex>& h, double tol = kDefaultTolerance,
                                 std::uint64_t seed = 0);

/// Order profile plus the unique involution being the square of every element of order 4.
bool is_quaternion_group(const CayleyTable& g);

/// Brute-force isomorphism test for small groups.
bool groups_isomorphic(const CayleyTable& a, const CayleyTable& b);

}  // namespace qds

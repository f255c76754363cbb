#pragma once

// Concrete finite quantum groups: function algebras and group algebras of
// finite groups, the graded quaternion function algebra, the crossed
// products C[Gamma] x| C(H) and tensor products.

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "qds/hopf.hpp"

namespace qds {

/// A finite group by its multiplication table, 0-based, element 0 the identity.
class CayleyTable {
 public:
  CayleyTable() = default;
  /// Validates the group axioms; throws Error(InvalidArgument) on violation.
  CayleyTable(std::vector<std::string> names, std::vector<std::vector<std::size_t>> table);

  std::size_t order() const { return table_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }
  std::size_t inverse(std::size_t a) const { return inverse_[a]; }
  std::size_t element_order(std::size_t a) const;
  bool is_abelian() const;

  static CayleyTable cyclic(std::size_t n);
  static CayleyTable direct_product(const CayleyTable& a, const CayleyTable& b);
  /// The quaternion group {1, -1, i, -i, j, -j, k, -k}.
  static CayleyTable quaternion();

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> inverse_;
};

/// Reads the text format: n, an optional line of names, n rows of 1-based
/// indices. Throws Error(Parse) with the line number on malformed input.
CayleyTable parse_cayley(std::istream& in, const std::string& source = "<input>");
CayleyTable load_cayley(const std::filesystem::path& path);

enum class GroupVariant { Functions, GroupAlgebra };

/// C(G) in the delta basis or C[G] in the basis lambda_g, antipode included.
HopfStarAlgebra<GaussRational> from_cayley(const CayleyTable& g, GroupVariant variant, std::string name = "");

/// C(G) in the basis of functions given by values(g, b) = b(g); values must be
/// invertible. Structure constants are transported from pointwise operations.
HopfStarAlgebra<GaussRational> functions_in_basis(const CayleyTable& g, const Matrix<GaussRational>& values,
                                                  std::vector<std::string> labels, std::string name);

struct GradedCH {
  HopfStarAlgebra<GaussRational> algebra;  // basis 1, sI, sJ, sK, p11, p12, p21, p22
  std::vector<int> degree;                 // 0 for the characters, 1 for the coefficients of pi
  CayleyTable group;
  Matrix<GaussRational> values;  // values(g, b) = b(g): the change of basis to the delta basis
};

GradedCH quaternion_ch();

/// Worst violation of the grading rules on the structure constants
/// (products, involution, coproduct); zero for a valid grading.
double grading_defect(const HopfStarAlgebra<GaussRational>& a, const std::vector<int>& degree);

struct CrossedProduct {
  HopfStarAlgebra<GaussRational> algebra;  // basis gamma (x) b, index gamma * 8 + b
  std::vector<std::size_t> factors;        // cyclic factors of Gamma
  Functional<GaussRational> haar_product;  // h_Gamma (x) h_H
  Functional<GaussRational> subgroup_state;  // h_H o pi with pi(gamma (x) u) = u
};

/// Parses "m1xm2x..." into cyclic factors; "1" is the trivial group.
std::vector<std::size_t> parse_abelian_spec(const std::string& spec);

/// C[Gamma] x| C(H) for finite abelian Gamma, with the antipode solved and all
/// axioms verified exactly; throws Error(Axiom) otherwise.
CrossedProduct crossed_product(const std::string& gamma_spec);

template <class T>
HopfStarAlgebra<T> tensor_product(const HopfStarAlgebra<T>& a, const HopfStarAlgebra<T>& b);

/// The one-dimensional quantum group C1.
HopfStarAlgebra<GaussRational> trivial_quantum_group();

}  // namespace qds

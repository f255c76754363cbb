#include <doctest.h>

#include <sstream>

#include "qds/constructors.hpp"
#include "qds/error.hpp"

using namespace qds;
using GR = GaussRational;

TEST_CASE("Cayley table parsing") {
  std::istringstream ok("2\ne g\n1 2\n2 1\n");
  CHECK(parse_cayley(ok).order() == 2);
  std::istringstream no_names("3\n1 2 3\n2 3 1\n3 1 2\n");
  CHECK(parse_cayley(no_names).element_order(1) == 3);
  std::istringstream bad_identity("2\n2 1\n1 2\n");
  CHECK_THROWS_AS(parse_cayley(bad_identity), Error);
  std::istringstream bad_entry("2\n1 2\n2 x\n");
  try {
    parse_cayley(bad_entry, "t.txt");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Parse);
    CHECK(std::string(e.what()).find("t.txt:3") != std::string::npos);
  }
  std::istringstream non_group("3\n1 2 3\n2 1 1\n3 1 2\n");
  CHECK_THROWS_AS(parse_cayley(non_group), Error);
}

TEST_CASE("shipped group tables") {
  CHECK(load_cayley(QDS_DATA_DIR "/groups/quaternion.txt").order() == 8);
  CHECK_FALSE(load_cayley(QDS_DATA_DIR "/groups/d4.txt").is_abelian());
  CHECK(load_cayley(QDS_DATA_DIR "/groups/quaternion_x_z4.txt").order() == 32);
}

TEST_CASE("from_cayley examples") {
  const auto z2 = from_cayley(CayleyTable::cyclic(2), GroupVariant::Functions);
  CHECK(z2.dim() == 2);
  CHECK(is_commutative(z2).holds);
  CHECK(is_cocommutative(z2).holds);
  const auto s3 = from_cayley(load_cayley(QDS_DATA_DIR "/groups/s3.txt"), GroupVariant::GroupAlgebra);
  CHECK(is_cocommutative(s3).holds);
  CHECK_FALSE(is_commutative(s3).holds);
  CHECK(verify_axioms(s3).worst() == 0.0);
}

TEST_CASE("graded quaternion function algebra") {
  const auto g = quaternion_ch();
  const auto& a = g.algebra;
  CHECK(verify_axioms(a).worst() == 0.0);
  CHECK(grading_defect(a, g.degree) == 0.0);
  // sI^2 = 1
  CHECK(a.alg().multiply(a.alg().basis_vector(1), a.alg().basis_vector(1)) == a.alg().unit());
  // p11 p22 + p12 p21 is of degree 0
  const auto x = a.alg().multiply(a.alg().basis_vector(4), a.alg().basis_vector(7)) +
                 a.alg().multiply(a.alg().basis_vector(5), a.alg().basis_vector(6));
  for (std::size_t k = 4; k < 8; ++k) CHECK(x[k] == GR(0));
  // Delta(p_kl) = sum_j p_kj (x) p_jl
  const auto d = a.comultiply(a.alg().basis_vector(5));  // p12
  CHECK(d(4, 5) == GR(1));
  CHECK(d(5, 7) == GR(1));
}

TEST_CASE("crossed products") {
  const auto trivial = crossed_product("1");
  CHECK(trivial.algebra.dim() == 8);
  CHECK(verify_axioms(trivial.algebra).worst() == 0.0);

  const auto z2 = crossed_product("2");
  CHECK(is_commutative(z2.algebra).holds);

  const auto k = crossed_product("4");
  CHECK(k.algebra.dim() == 32);
  CHECK_FALSE(is_commutative(k.algebra).holds);
  CHECK_FALSE(is_cocommutative(k.algebra).holds);
  const auto s = *k.algebra.antipode();
  CHECK(s * s == Matrix<GR>::identity(32));
  CHECK(haar_state(k.algebra).h == k.haar_product);

  const auto k22 = crossed_product("2x2");
  CHECK(k22.algebra.dim() == 32);
  CHECK(is_commutative(k22.algebra).holds);
  CHECK_THROWS_AS(parse_abelian_spec("4x"), Error);
  CHECK_THROWS_AS(parse_abelian_spec("a"), Error);
}

TEST_CASE("tensor products") {
  const auto a = from_cayley(CayleyTable::cyclic(2), GroupVariant::Functions);
  const auto t = tensor_product(a, trivial_quantum_group());
  CHECK(t.dim() == 2);
  CHECK(t.alg().mult_table() == a.alg().mult_table());
  const auto zz = tensor_product(a, a);
  CHECK(verify_axioms(zz).worst() == 0.0);
  const auto hz = tensor_product(from_cayley(CayleyTable::quaternion(), GroupVariant::Functions), a);
  CHECK(hz.dim() == 16);
  CHECK(verify_axioms(hz).worst() == 0.0);
}

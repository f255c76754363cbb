#include <doctest.h>

#include <random>

#include "qds/constructors.hpp"
#include "qds/error.hpp"
#include "qds/hopf.hpp"

using namespace qds;
using GR = GaussRational;

namespace {

Functional<Complex> random_functional(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Functional<Complex> f(n);
  for (auto& x : f) x = Complex(g(rng), g(rng));
  return f;
}

}  // namespace

TEST_CASE("axioms of classical constructors pass exactly") {
  const auto z2 = from_cayley(CayleyTable::cyclic(2), GroupVariant::Functions);
  CHECK(verify_axioms(z2).worst() == 0.0);
  const auto ch = from_cayley(CayleyTable::quaternion(), GroupVariant::Functions);
  CHECK(verify_axioms(ch).worst() == 0.0);
  CHECK(verify_axioms(from_cayley(CayleyTable::quaternion(), GroupVariant::GroupAlgebra)).worst() == 0.0);
}

TEST_CASE("a corrupted multiplication entry is flagged") {
  const auto z2 = from_cayley(CayleyTable::cyclic(2), GroupVariant::Functions);
  auto mult = z2.alg().mult_table();
  mult[0] = {{0, GR(1)}, {1, GR(1, 2)}};
  StarAlgebra<GR> bad(z2.alg().labels(), mult, z2.alg().unit(), z2.alg().star_map());
  HopfStarAlgebra<GR> h("bad", bad, z2.comult_table(), z2.counit(), z2.antipode());
  const auto r = verify_axioms(h);
  CHECK(r.comult_homomorphism > 1e-9);
  CHECK_FALSE(r.passes(1e-9));
}

TEST_CASE("antipode solutions") {
  const auto g = CayleyTable::quaternion();
  for (auto variant : {GroupVariant::Functions, GroupVariant::GroupAlgebra}) {
    const auto h = from_cayley(g, variant);
    const auto s = solve_antipode(h);
    CHECK(s == *h.antipode());
    // S(b_g) = b_{g^-1}
    CHECK(s(g.inverse(2), 2) == GR(1));
  }
}

TEST_CASE("Haar states of classical examples") {
  const auto z2 = from_cayley(CayleyTable::cyclic(2), GroupVariant::Functions);
  const auto h = haar_state(z2);
  CHECK(h.h == Functional<GR>{GR(mpq_class(1, 2)), GR(mpq_class(1, 2))});
  CHECK(h.min_gram_eigenvalue > 0);

  const auto s3 = from_cayley(load_cayley(QDS_DATA_DIR "/groups/s3.txt"), GroupVariant::GroupAlgebra);
  const auto hs = haar_state(s3).h;
  CHECK(hs[0] == GR(1));
  for (std::size_t i = 1; i < hs.size(); ++i) CHECK(hs[i] == GR(0));
}

TEST_CASE("convolution identities") {
  const auto ch = to_complex(from_cayley(CayleyTable::quaternion(), GroupVariant::Functions));
  const auto haar = haar_state(ch).h;
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const auto a = random_functional(8, rng), b = random_functional(8, rng), c = random_functional(8, rng);
    CHECK(max_abs(Vec<Complex>(convolve(ch, ch.counit(), a) - a)) < 1e-12);
    const Complex a1 = evaluate(a, ch.alg().unit());
    CHECK(max_abs(Vec<Complex>(convolve(ch, haar, a) - scaled(haar, a1))) < 1e-12);
    CHECK(max_abs(Vec<Complex>(convolve(ch, a, haar) - scaled(haar, a1))) < 1e-12);
    CHECK(max_abs(Vec<Complex>(convolve(ch, convolve(ch, a, b), c) - convolve(ch, a, convolve(ch, b, c)))) < 1e-9);
    CHECK(max_abs(Vec<Complex>(dagger(ch, convolve(ch, a, b)) - convolve(ch, dagger(ch, a), dagger(ch, b)))) < 1e-9);
    CHECK(max_abs(Vec<Complex>(dagger(ch, dagger(ch, a)) - a)) < 1e-12);
  }
  CHECK(max_abs(Vec<Complex>(dagger(ch, haar) - haar)) < 1e-12);
  CHECK(max_abs(Vec<Complex>(dagger(ch, ch.counit()) - ch.counit())) < 1e-12);
}

TEST_CASE("dagger on C(Z2)") {
  const auto z2 = from_cayley(CayleyTable::cyclic(2), GroupVariant::Functions);
  const auto d = dagger(z2, Functional<GR>{GR(0, 1), GR(0)});
  CHECK(d == Functional<GR>{GR(0, -1), GR(0)});
}

TEST_CASE("dual algebras") {
  const auto ch = from_cayley(CayleyTable::quaternion(), GroupVariant::Functions);
  const auto dual = dual_algebra(ch);
  CHECK(dual.check().worst() == 0.0);
  CHECK(center(dual).size() == 5);
  const auto blocks = block_decompose(to_complex(dual));
  REQUIRE(blocks.blocks.size() == 5);
  for (std::size_t s = 0; s < 4; ++s) CHECK(blocks.blocks[s].size == 1);
  CHECK(blocks.blocks[4].size == 2);

  const auto cz2 = from_cayley(CayleyTable::cyclic(2), GroupVariant::GroupAlgebra);
  CHECK(dual_algebra(cz2).is_commutative());
}

TEST_CASE("commutativity flags") {
  const auto ch = from_cayley(CayleyTable::quaternion(), GroupVariant::Functions);
  const auto h = haar_state(ch).h;
  CHECK(is_commutative(ch).holds);
  CHECK_FALSE(is_cocommutative(ch).holds);
  CHECK(is_kac(ch, h).holds);
  const auto z3 = from_cayley(CayleyTable::cyclic(3), GroupVariant::Functions);
  CHECK(is_commutative(z3).holds);
  CHECK(is_cocommutative(z3).holds);
}

TEST_CASE("densities") {
  const auto z2 = from_cayley(CayleyTable::cyclic(2), GroupVariant::Functions);
  const auto h = haar_state(z2).h;
  CHECK(density_of(z2, h, h) == z2.alg().unit());
  CHECK(density_of(z2, h, z2.counit()) == Vec<GR>{GR(2), GR(0)});

  const auto ch = from_cayley(CayleyTable::quaternion(), GroupVariant::GroupAlgebra);
  const auto hq = haar_state(ch).h;
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> d(-3, 3);
  Vec<GR> x(ch.dim());
  for (auto& v : x) v = GR(d(rng), d(rng));
  CHECK(density_of(ch, hq, haar_weighted(ch, hq, x)) == x);
}

TEST_CASE("conditional expectations") {
  const auto ch = from_cayley(CayleyTable::quaternion(), GroupVariant::Functions);
  const auto h = haar_state(ch).h;
  const auto eh = conditional_expectation(ch, h, Side::Left);
  for (std::size_t j = 0; j < ch.dim(); ++j)
    CHECK(eh.column(j) == scaled(ch.alg().unit(), h[j]));
  CHECK(conditional_expectation(ch, ch.counit(), Side::Right) == Matrix<GR>::identity(ch.dim()));
  Functional<GR> not_idem(ch.dim(), GR(0));
  not_idem[1] = GR(1);
  CHECK_THROWS_AS(conditional_expectation(ch, not_idem, Side::Left), Error);
}

TEST_CASE("centrality of h and the counit") {
  const auto d4 = from_cayley(load_cayley(QDS_DATA_DIR "/groups/d4.txt"), GroupVariant::Functions);
  const auto h = haar_state(d4).h;
  CHECK(is_central(d4, h).holds);
  CHECK(is_central(d4, d4.counit()).holds);
}

TEST_CASE("tracial boundedness on random elements") {
  const auto ch = to_complex(from_cayley(CayleyTable::quaternion(), GroupVariant::GroupAlgebra));
  const auto h = haar_state(ch).h;
  const auto& alg = ch.alg();
  std::mt19937_64 rng(13);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 10; ++trial) {
    Vec<Complex> y(8), b(8);
    for (auto& v : y) v = Complex(g(rng), g(rng));
    for (auto& v : b) v = Complex(g(rng), g(rng));
    const Vec<Complex> x = y + alg.star(y);
    const Vec<Complex> a = alg.multiply(alg.star(b), b);
    // operator norm of left multiplication by x in the GNS inner product of h
    Matrix<Complex> gram(8, 8), lx(8, 8);
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = 0; j < 8; ++j)
        gram(i, j) = evaluate(h, alg.multiply(alg.star(alg.basis_vector(i)), alg.basis_vector(j)));
    // h is the trace of the regular representation over 8, so the GNS basis lambda_g is orthonormal
    CHECK(max_abs(Matrix<Complex>(gram - Matrix<Complex>::identity(8))) < 1e-12);
    const auto lm = alg.left_multiplication(x);
    const auto ev = linalg::eig_hermitian(Matrix<Complex>((lm + lm.adjoint()) * Complex(0.5)), 1e-9);
    const double op = std::max(std::abs(ev.values.front()), std::abs(ev.values.back()));
    CHECK(std::abs(evaluate(h, alg.multiply(x, a))) <= op * evaluate(h, a).real() + 1e-9);
  }
}

TEST_CASE("non-positive invariant functionals are rejected") {
  // Z2 group algebra with a twisted counit has no invariant state
  auto z2 = from_cayley(CayleyTable::cyclic(2), GroupVariant::GroupAlgebra);
  std::vector<TensorVec<GR>> comult = z2.comult_table();
  comult[1] = {{0, 1, GR(1)}};
  HopfStarAlgebra<GR> broken("broken", z2.alg(), comult, z2.counit());
  CHECK_THROWS_AS(haar_state(broken), Error);
}

#include <doctest.h>

#include <random>

#include "qds/constructors.hpp"
#include "qds/dsfamily.hpp"
#include "qds/error.hpp"

using namespace qds;
using GR = GaussRational;

namespace {

CayleyTable group(const char* name) { return load_cayley(std::string(QDS_DATA_DIR "/groups/") + name + ".txt"); }

DsContext functions_on(const CayleyTable& g) { return make_context(from_cayley(g, GroupVariant::Functions)); }

const BlockClassification& block_of_dim(const std::vector<BlockClassification>& b, std::size_t n) {
  for (const auto& c : b)
    if (c.n == n) return c;
  FAIL("no block of the requested size");
  return b.front();
}

}  // namespace

TEST_CASE("hermitian subalgebra dimensions") {
  const auto z3 = functions_on(CayleyTable::cyclic(3));
  CHECK(hermitian_subalgebra(z3, z3.corep.trivial).r.dim() == 1);
  for (auto s : reduced_indices(z3.corep))
    if (s != z3.corep.trivial) CHECK(hermitian_subalgebra(z3, s).r.dim() == 2);

  const auto ch = functions_on(CayleyTable::quaternion());
  for (const auto& ir : ch.corep.irreps)
    if (ir.dim == 2) CHECK(hermitian_subalgebra(ch, ir.index).r.dim() == 4);
}

TEST_CASE("block classification") {
  const auto ch = functions_on(CayleyTable::quaternion());
  const auto& pi = block_of_dim(classify_all(ch), 2);
  CHECK(pi.kind == BlockKind::QuaternionType);
  CHECK(pi.m == 1);
  CHECK(pi.c < 0);

  const auto d4 = functions_on(group("d4"));
  const auto& rho = block_of_dim(classify_all(d4), 2);
  CHECK(rho.kind == BlockKind::RealType);
  CHECK(rho.m == 2);

  const auto z3 = functions_on(CayleyTable::cyclic(3));
  for (const auto& b : classify_all(z3))
    if (b.s != z3.corep.trivial) {
      CHECK(b.kind == BlockKind::ComplexType);
      CHECK(b.m == 1);
    }
}

TEST_CASE("Frobenius-Schur indicator agrees with the classification") {
  for (const char* name : {"z2", "z3", "z4", "z2xz2", "quaternion", "quaternion_x_z2", "d4", "s3"}) {
    const auto g = group(name);
    for (auto variant : {GroupVariant::Functions, GroupVariant::GroupAlgebra}) {
      const auto ctx = make_context(from_cayley(g, variant));
      for (const auto& b : classify_all(ctx)) {
        const auto& ir = ctx.corep.irreps[b.s];
        double nu = 0;
        if (variant == GroupVariant::Functions) {
          // nu = (1/|G|) sum_g chi(g^2), with chi(g) the g-th delta coordinate of the character
          const auto chi = ir.character();
          for (std::size_t x = 0; x < g.order(); ++x) nu += chi[g.mul(x, x)].real() / double(g.order());
        } else {
          // a one-dimensional corepresentation of C[G] is lambda_x; nu = 1 iff x^2 = e
          std::size_t x = 0;
          while (std::abs(ir.u[0][x] - 1.0) > 1e-9) ++x;
          nu = g.mul(x, x) == 0 ? 1 : 0;
        }
        const BlockKind expect = nu > 0.5 ? BlockKind::RealType : nu < -0.5 ? BlockKind::QuaternionType : BlockKind::ComplexType;
        INFO(name << " block " << b.s);
        CHECK(b.kind == expect);
      }
    }
  }
}

TEST_CASE("nilpotent hermitian functionals") {
  const auto ch = functions_on(CayleyTable::quaternion());
  for (const auto& b : classify_all(ch))
    CHECK_FALSE(find_nilpotent_hermitian(ch, hermitian_subalgebra(ch, b.s), b, 1).has_value());

  const auto d4 = functions_on(group("d4"));
  const auto& rho = block_of_dim(classify_all(d4), 2);
  const auto psi = find_nilpotent_hermitian(d4, hermitian_subalgebra(d4, rho.s), rho, 1);
  REQUIRE(psi.has_value());
  CHECK(max_abs(*psi) > 0.5);
  CHECK(max_abs(d4.corep.dual.multiply(*psi, *psi)) <= 1e-9);
  CHECK(max_abs(Vec<Complex>(dagger(d4.algebra, *psi) - *psi)) <= 1e-9);
}

TEST_CASE("truncation") {
  const auto ch = functions_on(CayleyTable::quaternion());
  CHECK(max_abs(Vec<Complex>(truncate(ch, ch.haar, ch.corep.trivial) - ch.haar)) < 1e-12);

  // D4 x Z2 has two real 2-dim blocks; a sum of nilpotents from both truncates blockwise
  const auto g = functions_on(CayleyTable::direct_product(group("d4"), CayleyTable::cyclic(2)));
  Functional<Complex> rho(g.algebra.dim(), 0.0);
  std::vector<std::size_t> used;
  for (const auto& b : classify_all(g)) {
    if (b.division()) continue;
    rho = rho + *find_nilpotent_hermitian(g, hermitian_subalgebra(g, b.s), b, 3);
    used.push_back(b.s);
  }
  REQUIRE(used.size() == 2);
  CHECK(max_abs(g.corep.dual.multiply(rho, rho)) < 1e-9);
  for (auto s : used) {
    const auto t = truncate(g, rho, s);
    CHECK(max_abs(t) > 0.1);
    CHECK(max_abs(g.corep.dual.multiply(t, t)) < 1e-9);
    CHECK(max_abs(Vec<Complex>(dagger(g.algebra, t) - t)) < 1e-9);
  }
}

TEST_CASE("square roots of the Haar state") {
  CHECK(square_root(functions_on(CayleyTable::cyclic(3))).certificate.has_value());
  CHECK(square_root(make_context(from_cayley(group("s3"), GroupVariant::GroupAlgebra))).certificate.has_value());

  const auto d4h = from_cayley(group("d4"), GroupVariant::Functions);
  const auto d4 = make_context(d4h);
  const auto r = square_root(d4);
  REQUIRE(r.witness.has_value());
  const auto& w = *r.witness;
  CHECK(w.exact);
  REQUIRE(w.exact_phi.has_value());
  // oracle: direct exact convolution of the returned state
  CHECK(convolve(*d4.exact, *w.exact_phi, *w.exact_phi) == *d4.exact_haar);
  CHECK(*w.exact_phi != *d4.exact_haar);
  CHECK(evaluate(*w.exact_phi, d4.exact->alg().unit()) == GR(1));
  CHECK(w.min_gram >= -1e-9);
  CHECK(w.epsilon == doctest::Approx(1.0 / std::abs(w.lambda_min)));
}

TEST_CASE("float witnesses and user epsilon") {
  const auto d4 = functions_on(group("d4"));
  SquareRootOptions opt;
  opt.allow_exact = false;
  const auto w = *square_root(d4, opt).witness;
  CHECK_FALSE(w.exact);
  CHECK(w.sqrt_residual <= 1e-9);
  CHECK(w.min_gram >= -1e-9);
  CHECK(w.distance_from_haar > 1e-3);

  opt.epsilon = 0.5 / std::abs(w.lambda_min);
  CHECK(square_root(d4, opt).witness->min_gram > 1e-6);
  opt.epsilon = 2.0 / std::abs(w.lambda_min);
  CHECK_THROWS_AS(square_root(d4, opt), Error);
}

TEST_CASE("DS verdicts") {
  const auto hz2 = tensor_product(from_cayley(CayleyTable::quaternion(), GroupVariant::Functions),
                                  from_cayley(CayleyTable::cyclic(2), GroupVariant::Functions));
  CHECK(ds_verdict(make_context(hz2)).member);
  const auto cp = make_context(crossed_product("4").algebra);
  const auto v = ds_verdict(cp);
  CHECK(v.member);
  CHECK_FALSE(is_commutative(cp.algebra).holds);
  CHECK_FALSE(is_cocommutative(cp.algebra).holds);
  const auto d4 = ds_verdict(functions_on(group("d4")));
  CHECK_FALSE(d4.member);
  CHECK(d4.witness.has_value());
}

TEST_CASE("hamiltonian certificate") {
  const auto ch = functions_on(CayleyTable::quaternion());
  const auto r = hamiltonian_certificate(ch, ds_verdict(ch));
  CHECK(r.passes);
  CHECK(r.subsums_checked == 32);

  const auto d4 = functions_on(group("d4"));
  const auto n = hamiltonian_certificate(d4, ds_verdict(d4));
  CHECK_FALSE(n.passes);
  REQUIRE(n.noncentral_block.has_value());
  const auto& p = n.noncentral_idempotent;
  CHECK(max_abs(Vec<Complex>(d4.corep.dual.multiply(p, p) - p)) < 1e-9);
  CHECK(max_abs(Vec<Complex>(dagger(d4.algebra, p) - p)) < 1e-9);
  CHECK(n.noncentral_commutator >= 0.1);
}

TEST_CASE("dimension divisible by eight") {
  const auto cp = make_context(crossed_product("4").algebra);
  const auto r = nz_check(cp, ds_verdict(cp));
  CHECK(r.applicable);
  CHECK(r.passes);
  const auto ch = functions_on(CayleyTable::quaternion());
  CHECK(nz_check(ch, ds_verdict(ch)).applicable);
  const auto s3 = make_context(from_cayley(group("s3"), GroupVariant::GroupAlgebra));
  CHECK_FALSE(nz_check(s3, ds_verdict(s3)).applicable);
}

TEST_CASE("random search finds no nilpotents in DS members") {
  for (const char* name : {"quaternion", "z4"}) {
    const auto ctx = functions_on(group(name));
    CHECK(random_nilpotent_search(ctx, 256, 11) == 0);
  }
  const auto s3 = make_context(from_cayley(group("s3"), GroupVariant::GroupAlgebra));
  CHECK(random_nilpotent_search(s3, 256, 11) == 0);
  CHECK(random_nilpotent_search(functions_on(group("d4")), 16, 11) > 0);
}

TEST_CASE("SU_q(2) blocks") {
  const auto a = suq2_block(1, 0.5);
  CHECK(a.kind == BlockKind::QuaternionType);
  CHECK(a.m == 1);
  CHECK(a.c == doctest::Approx(-0.5));
  CHECK_FALSE(a.nilpotent.has_value());

  const auto b = suq2_block(1, -0.5);
  CHECK(b.kind == BlockKind::RealType);
  CHECK(b.m == 2);
  CHECK(b.c == doctest::Approx(0.5));
  REQUIRE(b.closed_form_witness.has_value());
  CHECK(b.closed_form_witness_residual <= 1e-12);
  CHECK(b.nilpotent_residual <= 1e-12);

  const auto c = suq2_block(2, 1.0);
  CHECK(c.kind == BlockKind::RealType);
  CHECK(c.m == 3);
  CHECK(c.nilpotent.has_value());
  // Q conj(Q) has all diagonal entries q^2
  const auto qq = suq2_intertwiner(3, 0.5) * suq2_intertwiner(3, 0.5).conjugate();
  for (std::size_t i = 0; i < 3; ++i) CHECK(qq(i, i).real() == doctest::Approx(0.25));

  CHECK_THROWS_AS(suq2_block(1, 0.0), Error);
}

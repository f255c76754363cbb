#include <doctest.h>

#include <random>

#include "qds/error.hpp"
#include "qds/linalg.hpp"

using namespace qds;
using qds::linalg::Polynomial;

namespace {

Matrix<Complex> cmat(std::initializer_list<std::initializer_list<Complex>> rows) {
  Matrix<Complex> m(rows.size(), rows.begin()->size());
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (const auto& x : r) m(i, j++) = x;
    ++i;
  }
  return m;
}

Matrix<double> dmat(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix<double> m(rows.size(), rows.begin()->size());
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (const auto& x : r) m(i, j++) = x;
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("eig_hermitian on small matrices") {
  auto e = linalg::eig_hermitian(Matrix<Complex>::identity(2));
  CHECK(e.values[0] == doctest::Approx(1.0));
  CHECK(e.values[1] == doctest::Approx(1.0));

  e = linalg::eig_hermitian(cmat({{5.0, 0.0}, {0.0, -3.0}}));
  CHECK(e.values[0] == doctest::Approx(-3.0));
  CHECK(e.values[1] == doctest::Approx(5.0));

  e = linalg::eig_hermitian(cmat({{0.0, 1.0}, {1.0, 0.0}}));
  CHECK(e.values[0] == doctest::Approx(-1.0));
  CHECK(e.values[1] == doctest::Approx(1.0));
}

TEST_CASE("eig_hermitian reconstructs random hermitian matrices") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  const std::size_t n = 9;
  Matrix<Complex> a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
  const Matrix<Complex> m = a + a.adjoint();
  const auto e = linalg::eig_hermitian(m);
  Complex trace = 0;
  double sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    trace += m(i, i);
    sum += e.values[i];
  }
  CHECK(std::abs(trace - sum) < 1e-9);
  Matrix<Complex> lam(n, n);
  for (std::size_t i = 0; i < n; ++i) lam(i, i) = e.values[i];
  CHECK(max_abs(Matrix<Complex>(e.vectors * lam * e.vectors.adjoint() - m)) < 1e-9 * frobenius_norm(m));
  CHECK(max_abs(Matrix<Complex>(e.vectors.adjoint() * e.vectors - Matrix<Complex>::identity(n))) < 1e-9);
}

TEST_CASE("eig_hermitian rejects non-self-adjoint input") {
  CHECK_THROWS_AS(linalg::eig_hermitian(cmat({{0.0, 1.0}, {0.0, 0.0}})), Error);
}

TEST_CASE("minimal polynomials") {
  auto p = linalg::minimal_polynomial_real(Matrix<double>(3, 3));
  CHECK(p.degree() == 1);
  CHECK(p[0] == doctest::Approx(0.0));

  p = linalg::minimal_polynomial_real(Matrix<double>::identity(3));
  CHECK(p.degree() == 1);
  CHECK(p[0] == doctest::Approx(-1.0));

  p = linalg::minimal_polynomial_real(dmat({{0, 1}, {0, 0}}));
  CHECK(p.degree() == 2);
  CHECK(std::abs(p[0]) < 1e-12);
  CHECK(std::abs(p[1]) < 1e-12);

  // rotation generator: x^2 + 1, irreducible over R
  p = linalg::minimal_polynomial_real(dmat({{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}}));
  CHECK(p.degree() == 2);
  CHECK(p[0] == doctest::Approx(1.0));
}

TEST_CASE("minimal polynomial divides the characteristic polynomial") {
  const auto m = dmat({{2, 1, 0}, {0, 2, 0}, {0, 0, 3}});
  const auto p = linalg::minimal_polynomial_real(m);
  CHECK(p.degree() == 3);
  // char poly (x-2)^2 (x-3)
  Polynomial<double> chi = Polynomial<double>::linear(2.0) * Polynomial<double>::linear(2.0) *
                           Polynomial<double>::linear(3.0);
  const auto [q, r] = chi.divmod(p);
  double worst = 0;
  for (const auto& c : r.coeffs()) worst = std::max(worst, std::abs(c));
  CHECK(worst < 1e-9);
}

TEST_CASE("solve_linear examples") {
  Matrix<GaussRational> a(2, 2);
  a(0, 0) = 1;
  a(0, 1) = 1;
  Matrix<GaussRational> b(2, 1);
  b(0, 0) = 2;
  const auto s = linalg::solve_linear(a, b);
  CHECK(s.consistent);
  CHECK(s.solution(0, 0) == GaussRational(2));
  CHECK(s.solution(1, 0) == GaussRational(0));
  REQUIRE(s.kernel.size() == 1);
  CHECK(s.kernel[0][0] == -s.kernel[0][1]);

  const auto id = linalg::solve_linear(Matrix<GaussRational>::identity(3), Matrix<GaussRational>(3, 1, 5));
  CHECK(id.solution(2, 0) == GaussRational(5));

  const auto zero = linalg::solve_linear(Matrix<Complex>(3, 3), Matrix<Complex>(3, 1));
  CHECK(zero.kernel.size() == 3);

  Matrix<Complex> bad(2, 1, 1.0);
  Matrix<Complex> rhs(2, 1);
  rhs(0, 0) = 1.0;
  rhs(1, 0) = -1.0;
  const auto inc = linalg::solve_linear(bad, rhs);
  CHECK_FALSE(inc.consistent);
  CHECK(inc.residual > 0.5);
}

TEST_CASE("exact and float elimination agree") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> d(-4, 4);
  const std::size_t n = 5;
  Matrix<GaussRational> a(n, n);
  Matrix<GaussRational> b(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    b(i, 0) = GaussRational(d(rng), d(rng));
    for (std::size_t j = 0; j < n; ++j) a(i, j) = GaussRational(d(rng), d(rng));
  }
  const auto exact = linalg::solve_linear(a, b);
  const auto approx = linalg::solve_linear(to_complex(a), to_complex(b));
  REQUIRE(exact.consistent);
  for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(to_complex(exact.solution(i, 0)) - approx.solution(i, 0)) < 1e-9);
}

TEST_CASE("sparse system matches dense solve") {
  linalg::SparseSystem<GaussRational> sys(3);
  sys.add_equation({{0, GaussRational(1)}, {1, GaussRational(1)}}, GaussRational(3));
  sys.add_equation({{1, GaussRational(2)}, {2, GaussRational(-1)}}, GaussRational(0));
  sys.add_equation({{2, GaussRational(1)}, {0, GaussRational(0, 1)}}, GaussRational(2));
  const auto r = sys.solve();
  REQUIRE(r.consistent);
  CHECK(r.nullity == 0);
  CHECK(r.x[0] + r.x[1] == GaussRational(3));
  CHECK(GaussRational(2) * r.x[1] == r.x[2]);
}

TEST_CASE("polynomial roots and inverse modulo") {
  const auto p = Polynomial<double>::linear(1.0) * Polynomial<double>(std::vector<double>{1.0, 0.0, 1.0});
  auto roots = linalg::polynomial_roots(p);
  REQUIRE(roots.size() == 3);
  int real_roots = 0;
  for (const auto& z : roots)
    if (std::abs(z - Complex(1.0)) < 1e-9) ++real_roots;
  CHECK(real_roots == 1);

  const Polynomial<double> f(std::vector<double>{1.0, 0.0, 1.0});
  const auto g = Polynomial<double>::linear(1.0);
  const auto u = linalg::inverse_modulo(g, f);
  const auto [q, r] = (u * g).divmod(f);
  REQUIRE(r.degree() == 0);
  CHECK(r[0] == doctest::Approx(1.0));
}

TEST_CASE("rational snapping") {
  const auto q = snap_rational(0.3333333333333, 1000, 1e-9);
  REQUIRE(q);
  CHECK(*q == mpq_class(1, 3));
  CHECK_FALSE(snap_rational(std::sqrt(2.0), 1000, 1e-12));
  CHECK(format_rational(parse_rational("-6/4")) == "-3/2");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
}

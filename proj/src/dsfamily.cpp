#include "qds/dsfamily.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "qds/error.hpp"
#include "qds/linalg.hpp"

namespace qds {

namespace {

using GR = GaussRational;

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double real_inner(const Vec<Complex>& x, const Vec<Complex>& y) {
  double s = 0;
  for (std::size_t k = 0; k < x.size(); ++k) s += (std::conj(x[k]) * y[k]).real();
  return s;
}

Vec<Complex> random_element(const RealSubalgebra& r, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<double> c(r.dim());
  for (auto& x : c) x = g(rng);
  return r.element(c);
}

Vec<Complex> block_unit(const CorepData& c, std::size_t s) {
  Vec<Complex> z = c.blocks.blocks[s].central;
  if (c.partner(s) != s) z = z + c.blocks.blocks[c.partner(s)].central;
  return z;
}

RealSubalgebra corner(const RealSubalgebra& r, const Vec<Complex>& p) {
  std::vector<Vec<Complex>> v{p};
  for (const auto& b : r.basis()) v.push_back(r.multiply(r.multiply(p, b), p));
  return RealSubalgebra(real_span_basis(v), p, [&r](const Vec<Complex>& a, const Vec<Complex>& b) {
    return r.multiply(a, b);
  });
}

/// A non-trivial idempotent split off a random element, if the split happens.
std::optional<Vec<Complex>> try_split(const RealSubalgebra& r, std::mt19937_64& rng, double tol) {
  const auto a = random_element(r, rng);
  try {
    const auto idems = spectral_idempotents(r, a, tol);
    if (idems.size() >= 2) return idems.front();
  } catch (const Error&) {
  }
  return std::nullopt;
}

/// A minimal idempotent by repeated splitting, with the real dimension of its corner.
std::pair<Vec<Complex>, std::size_t> minimal_idempotent(const RealSubalgebra& r, std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  Vec<Complex> p = r.unit();
  RealSubalgebra c = r;
  int failures = 0;
  while (c.dim() > 2 && failures < 32) {
    const auto q = try_split(c, rng, tol);
    if (!q) {
      ++failures;
      continue;
    }
    p = *q;
    c = corner(r, p);
    failures = 0;
  }
  return {p, c.dim()};
}

double gns_min_eigenvalue(const HopfStarAlgebra<Complex>& h, const Functional<Complex>& haar, const Vec<Complex>& x) {
  const auto& a = h.alg();
  const std::size_t n = h.dim();
  Matrix<Complex> g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto bi = a.star(a.basis_vector(i));
    for (std::size_t j = 0; j < n; ++j) g(i, j) = evaluate(haar, a.multiply(bi, a.basis_vector(j)));
  }
  g = 0.5 * (g + g.adjoint());
  const auto e = linalg::eig_hermitian(g, 1e-8);
  Matrix<Complex> sq(n, n), isq(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    if (e.values[k] <= 0) throw Error(ErrorKind::NotAQuantumGroup, "Haar state is not faithful", e.values[k]);
    const double s = std::sqrt(e.values[k]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const Complex v = e.vectors(i, k) * std::conj(e.vectors(j, k));
        sq(i, j) += s * v;
        isq(i, j) += v / s;
      }
  }
  Matrix<Complex> m = sq * a.left_multiplication(x) * isq;
  m = 0.5 * (m + m.adjoint());
  return linalg::eig_hermitian(m, 1e-6).values.front();
}

double worst(const Vec<Complex>& v) { return max_abs(v); }

// ---- exact lift ---------------------------------------------------------------

struct ExactDual {
  const HopfStarAlgebra<GR>& h;
  StarAlgebra<GR> dual;
  Vec<GR> z;
};

Vec<GR> exact_dagger(const ExactDual& d, const Vec<GR>& x) { return dagger(d.h, x); }

std::optional<Vec<GR>> snap_vector(const Vec<Complex>& v) {
  Vec<GR> out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    auto s = snap_gauss(v[k], 4096, 1e-8);
    if (!s) return std::nullopt;
    out[k] = *s;
  }
  return out;
}

bool all_zero(const Vec<GR>& v) {
  return std::all_of(v.begin(), v.end(), [](const GR& x) { return x.is_zero(); });
}

/// Exact minimal polynomial of a in the unital algebra with unit z.
std::optional<linalg::Polynomial<mpq_class>> exact_minpoly(const ExactDual& d, const Vec<GR>& a, std::size_t cap) {
  const std::size_t n = a.size();
  std::vector<Vec<GR>> powers{d.z};
  for (std::size_t k = 1; k <= cap; ++k) {
    powers.push_back(d.dual.multiply(powers.back(), a));
    Matrix<GR> m = Matrix<GR>::from_columns(std::vector<Vec<GR>>(powers.begin(), powers.end() - 1), n);
    Matrix<GR> rhs(n, 1);
    for (std::size_t i = 0; i < n; ++i) rhs(i, 0) = powers.back()[i];
    const auto sol = linalg::solve_linear(m, rhs);
    if (!sol.consistent) continue;
    std::vector<mpq_class> c(k + 1);
    for (std::size_t j = 0; j < k; ++j) {
      const GR& v = sol.solution(j, 0);
      if (!v.is_real()) return std::nullopt;
      c[j] = -v.re();
    }
    c[k] = 1;
    return linalg::Polynomial<mpq_class>(std::move(c));
  }
  return std::nullopt;
}

Vec<GR> exact_evaluate(const ExactDual& d, const linalg::Polynomial<mpq_class>& p, const Vec<GR>& a) {
  Vec<GR> acc(a.size(), GR(0));
  for (std::size_t k = p.coeffs().size(); k-- > 0;) {
    acc = d.dual.multiply(acc, a);
    acc = acc + scaled(d.z, GR(p[k]));
  }
  return acc;
}

/// A non-trivial idempotent in Q[a] from a rational eigenvalue, verified exactly.
std::optional<Vec<GR>> exact_split(const ExactDual& d, const Vec<GR>& a, std::size_t cap) {
  const auto f = exact_minpoly(d, a, cap);
  if (!f || f->degree() < 2) return std::nullopt;
  std::vector<double> fd;
  for (const auto& c : f->coeffs()) fd.push_back(c.get_d());
  for (const auto& root : linalg::polynomial_roots(linalg::Polynomial<double>(fd))) {
    if (std::abs(root.imag()) > 1e-6) continue;
    const auto r = snap_rational(root.real(), 100000, 1e-7);
    if (!r || sgn((*f)(*r)) != 0) continue;
    const auto lin = linalg::Polynomial<mpq_class>::linear(*r);
    linalg::Polynomial<mpq_class> g = *f, power(std::vector<mpq_class>{1});
    while (true) {
      auto [quot, rem] = g.divmod(lin);
      if (!rem.is_zero()) break;
      g = quot;
      power = power * lin;
    }
    if (g.degree() < 1) continue;
    const auto u = linalg::inverse_modulo(g, power);
    const auto e = exact_evaluate(d, (u * g).divmod(*f).second, a);
    if (all_zero(e) || e == d.z || d.dual.multiply(e, e) != e) continue;
    return e;
  }
  return std::nullopt;
}

std::optional<SquareRootWitness> exact_witness(const DsContext& ctx, std::size_t s, const SquareRootOptions& opt) {
  const auto& h = *ctx.exact;
  const auto& haar = *ctx.exact_haar;
  const auto zs = snap_vector(block_unit(ctx.corep, s));
  if (!zs) return std::nullopt;
  ExactDual d{h, dual_algebra(h), *zs};
  if (d.dual.multiply(d.z, d.z) != d.z || exact_dagger(d, d.z) != d.z) return std::nullopt;
  const std::size_t n = h.dim();
  for (std::size_t i = 0; i < n; ++i) {
    const auto b = d.dual.basis_vector(i);
    if (d.dual.multiply(b, d.z) != d.dual.multiply(d.z, b)) return std::nullopt;
  }

  std::vector<Vec<GR>> singles;
  for (std::size_t i = 0; i < n; ++i)
    for (const GR& w : {GR(1), GR(0, 1)}) {
      const auto e = scaled(d.dual.basis_vector(i), w);
      auto x = d.dual.multiply(d.z, Vec<GR>(e + exact_dagger(d, e)));
      if (!all_zero(x) && std::find(singles.begin(), singles.end(), x) == singles.end()) singles.push_back(std::move(x));
    }
  std::vector<Vec<GR>> candidates = singles;
  for (std::size_t i = 0; i < singles.size() && candidates.size() < 400; ++i)
    for (std::size_t j = i + 1; j < singles.size() && candidates.size() < 400; ++j)
      candidates.push_back(singles[i] + singles[j]);
  std::mt19937_64 rng(derive_seed(ctx.seed, 7000 + s));
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int t = 0; t < 64; ++t) {
    Vec<GR> x(n, GR(0));
    for (const auto& b : singles) x = x + scaled(b, GR(coef(rng)));
    candidates.push_back(std::move(x));
  }

  const std::size_t nb = ctx.corep.irreps[s].dim;
  const std::size_t cap = 2 * nb * nb + 1;
  Vec<GR> psi;
  bool found = false;
  for (const auto& a : candidates) {
    const auto p = exact_split(d, a, cap);
    if (!p) continue;
    const Vec<GR> q = d.z - *p;
    for (const auto& r : singles) {
      psi = d.dual.multiply(d.dual.multiply(*p, r), q);
      if (!all_zero(psi)) {
        found = true;
        break;
      }
    }
    if (found) break;
  }
  if (!found) return std::nullopt;

  if (!all_zero(d.dual.multiply(psi, psi)) || exact_dagger(d, psi) != psi) return std::nullopt;
  if (!evaluate(psi, h.alg().unit()).is_zero() || !all_zero(convolve(h, haar, psi)) ||
      !all_zero(convolve(h, psi, haar)))
    return std::nullopt;
  const auto x = density_of(h, haar, psi);
  if (haar_weighted(h, haar, x) != psi || h.alg().star(x) != x) return std::nullopt;

  SquareRootWitness w;
  w.block = s;
  w.exact = true;
  w.psi = to_complex(psi);
  w.x = to_complex(x);
  w.lambda_min = gns_min_eigenvalue(ctx.algebra, ctx.haar, w.x);

  auto build = [&](const mpq_class& eps) {
    Functional<GR> phi = haar + scaled(psi, GR(eps));
    w.epsilon = eps.get_d();
    w.epsilon_text = format_rational(eps);
    w.phi = to_complex(phi);
    w.min_gram = positivity_margin(ctx.algebra, w.phi, ctx.tol);
    w.sqrt_residual = max_abs(to_complex(Vec<GR>(convolve(h, phi, phi) - haar)));
    w.exact_phi = std::move(phi);
  };
  if (opt.epsilon) {
    const auto snapped = snap_rational(*opt.epsilon, 1000000, 1e-12);
    build(snapped ? *snapped : mpq_class(*opt.epsilon));
  } else {
    const double target = w.lambda_min < 0 ? 1.0 / std::abs(w.lambda_min) : 1.0;
    const auto snapped = snap_rational(target, 10000, 1e-10);
    if (snapped) build(*snapped);
    if (!snapped || w.min_gram < -ctx.tol) build(rational_lower_bound(target, 1000000));
  }
  w.nilpotent_residual = 0;
  w.distance_from_haar = max_abs(Vec<Complex>(w.phi - ctx.haar));
  return w;
}

}  // namespace

const char* to_string(BlockKind k) {
  switch (k) {
    case BlockKind::RealType:
      return "real";
    case BlockKind::ComplexType:
      return "complex";
    case BlockKind::QuaternionType:
      return "quaternion";
  }
  return "?";
}

DsContext make_context(const HopfStarAlgebra<GaussRational>& h, double tol, std::uint64_t seed) {
  DsContext ctx;
  ctx.tol = tol;
  ctx.seed = seed;
  ctx.exact = h.antipode() ? h : h.with_antipode(solve_antipode(h, tol));
  ctx.exact_haar = haar_state(*ctx.exact, tol).h;
  require_tracial(*ctx.exact, *ctx.exact_haar, tol);
  ctx.algebra = to_complex(*ctx.exact);
  ctx.haar = to_complex(*ctx.exact_haar);
  ctx.corep = extract_irreps(ctx.algebra, ctx.haar, tol, seed);
  return ctx;
}

DsContext make_context(const HopfStarAlgebra<Complex>& h, double tol, std::uint64_t seed) {
  DsContext ctx;
  ctx.tol = tol;
  ctx.seed = seed;
  ctx.algebra = h.antipode() ? h : h.with_antipode(solve_antipode(h, tol));
  ctx.haar = haar_state(ctx.algebra, tol).h;
  require_tracial(ctx.algebra, ctx.haar, tol);
  ctx.corep = extract_irreps(ctx.algebra, ctx.haar, tol, seed);
  return ctx;
}

std::vector<Vec<Complex>> real_span_basis(const std::vector<Vec<Complex>>& vectors, double tol) {
  std::vector<Vec<Complex>> out;
  for (const auto& v : vectors) {
    Vec<Complex> r = v;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : out) r = r - scaled(q, Complex(real_inner(q, r)));
    const double nr = std::sqrt(real_inner(r, r));
    if (nr > tol * std::max(1.0, std::sqrt(real_inner(v, v)))) out.push_back(scaled(r, Complex(1.0 / nr)));
  }
  return out;
}

std::vector<std::size_t> reduced_indices(const CorepData& c) {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < c.irreps.size(); ++s)
    if (s <= c.partner(s)) out.push_back(s);
  return out;
}

HermitianBlockAlgebra hermitian_subalgebra(const DsContext& ctx, std::size_t s) {
  const auto& c = ctx.corep;
  HermitianBlockAlgebra out{s, c.partner(s), RealSubalgebra({block_unit(c, s)}, block_unit(c, s),
                                                            [](const Vec<Complex>& a, const Vec<Complex>&) {
                                                              return a;
                                                            }),
                            0};
  std::vector<Vec<Complex>> gens;
  std::vector<std::size_t> pair{s};
  if (out.sc != s) pair.push_back(out.sc);
  for (auto t : pair)
    for (const auto& e : c.blocks.blocks[t].units)
      for (const Complex w : {Complex(1), Complex(0, 1)}) {
        const auto x = scaled(e, w);
        gens.push_back(x + dagger(ctx.algebra, x));
      }
  const std::size_t n = c.irreps[s].dim;
  const std::size_t expected = s == out.sc ? n * n : 2 * n * n;
  auto basis = real_span_basis(gens, 1e-8);
  if (basis.size() != expected) {
    std::ostringstream os;
    os << "hermitian_subalgebra: real dimension " << basis.size() << ", expected " << expected;
    throw Error(ErrorKind::Inconsistency, os.str());
  }
  const StarAlgebra<Complex>* dual = &c.dual;
  out.r = RealSubalgebra(std::move(basis), block_unit(c, s),
                         [dual](const Vec<Complex>& a, const Vec<Complex>& b) { return dual->multiply(a, b); });
  out.closure_residual = out.r.closure_residual();
  if (out.closure_residual > 1e-6)
    throw Error(ErrorKind::Inconsistency, "hermitian_subalgebra: not closed under convolution", out.closure_residual);
  return out;
}

std::size_t division_dimension(const RealSubalgebra& r, std::uint64_t seed, double tol) {
  return minimal_idempotent(r, seed, tol).second;
}

std::optional<Vec<Complex>> split_nilpotent(const RealSubalgebra& r, std::uint64_t seed, int attempts, double tol) {
  std::mt19937_64 rng(seed);
  for (int t = 0; t < attempts; ++t) {
    const auto p = try_split(r, rng, tol);
    if (!p) continue;
    const Vec<Complex> q = r.unit() - *p;
    for (int k = 0; k < 4; ++k) {
      const auto psi = r.multiply(r.multiply(*p, random_element(r, rng)), q);
      const double size = max_abs(psi);
      if (size > 1e-6) return scaled(psi, Complex(1.0 / size));
    }
  }
  return std::nullopt;
}

BlockClassification classify_block(const DsContext& ctx, const HermitianBlockAlgebra& r) {
  const auto& c = ctx.corep;
  BlockClassification out;
  out.s = r.s;
  out.sc = r.sc;
  out.n = c.irreps[r.s].dim;
  const std::size_t n = out.n;
  if (r.s != r.sc) {
    out.kind = BlockKind::ComplexType;
    out.m = n;
  } else {
    // dagger(E_ij) Q = Q E_ij, with dagger(E_ij) read off on the coefficients u_kl
    const auto& block = c.blocks.blocks[r.s];
    const auto& ir = c.irreps[r.s];
    Matrix<Complex> sys(n * n * n * n, n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const auto d = dagger(ctx.algebra, block.unit_at(i, j));
        Matrix<Complex> dm(n, n);
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t l = 0; l < n; ++l) dm(k, l) = evaluate(d, ir.at(k, l));
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b) {
            const std::size_t row = ((i * n + j) * n + a) * n + b;
            for (std::size_t k = 0; k < n; ++k) sys(row, k * n + b) += dm(a, k);
            if (j == b) sys(row, a * n + i) -= 1.0;
          }
      }
    const auto ker = linalg::kernel(sys, 1e-8);
    if (ker.size() != 1)
      throw Error(ErrorKind::Inconsistency, "classify_block: intertwiner space is not one-dimensional");
    Matrix<Complex> q(n, n);
    const double norm = norm2(ker[0]);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) q(a, b) = ker[0][a * n + b] * std::sqrt(double(n)) / norm;
    const Matrix<Complex> qq = q * q.conjugate();
    Complex scalar = 0;
    for (std::size_t a = 0; a < n; ++a) scalar += qq(a, a) / double(n);
    double res = std::abs(scalar.imag());
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) res = std::max(res, std::abs(qq(a, b) - (a == b ? scalar : 0.0)));
    out.q = q;
    out.c = scalar.real();
    out.q_residual = res;
    if (res > 1e-6 || std::abs(out.c) < 1e-6)
      throw Error(ErrorKind::Inconsistency, "classify_block: Q conj(Q) is not a nonzero real scalar", res);
    if (out.c > 0) {
      out.kind = BlockKind::RealType;
      out.m = n;
    } else {
      if (n % 2 != 0) throw Error(ErrorKind::Inconsistency, "classify_block: quaternionic block of odd size");
      out.kind = BlockKind::QuaternionType;
      out.m = n / 2;
    }
  }
  out.division_dim = division_dimension(r.r, derive_seed(ctx.seed, 100 + r.s), ctx.tol);
  const std::size_t expected = out.kind == BlockKind::RealType ? 1 : out.kind == BlockKind::ComplexType ? 2 : 4;
  if (out.division_dim != expected || out.m * out.m * expected != r.r.dim()) {
    std::ostringstream os;
    os << "classify_block: block " << r.s << " has corner dimension " << out.division_dim << ", expected " << expected;
    throw Error(ErrorKind::Inconsistency, os.str());
  }
  return out;
}

std::vector<BlockClassification> classify_all(const DsContext& ctx) {
  std::vector<BlockClassification> out;
  for (auto s : reduced_indices(ctx.corep)) out.push_back(classify_block(ctx, hermitian_subalgebra(ctx, s)));
  return out;
}

std::optional<Functional<Complex>> find_nilpotent_hermitian(const DsContext& ctx, const HermitianBlockAlgebra& r,
                                                            const BlockClassification& cls, std::uint64_t seed) {
  if (cls.division()) return std::nullopt;
  Functional<Complex> psi;
  if (r.s != r.sc) {
    const auto& e = ctx.corep.blocks.blocks[r.s].unit_at(0, 1);
    psi = e + dagger(ctx.algebra, e);
  } else {
    const auto found = split_nilpotent(r.r, seed, 32, ctx.tol);
    if (!found) throw Error(ErrorKind::Inconsistency, "find_nilpotent_hermitian: no split after 32 attempts");
    psi = *found;
  }
  const double sq = worst(ctx.corep.dual.multiply(psi, psi));
  const double herm = worst(Vec<Complex>(dagger(ctx.algebra, psi) - psi));
  if (sq > ctx.tol || herm > ctx.tol)
    throw Error(ErrorKind::Numerical, "find_nilpotent_hermitian: verification failed", std::max(sq, herm));
  return psi;
}

Functional<Complex> truncate(const DsContext& ctx, const Functional<Complex>& rho, std::size_t s) {
  return ctx.corep.dual.multiply(block_unit(ctx.corep, s), rho);
}

SquareRootResult square_root(const DsContext& ctx, const SquareRootOptions& opt) {
  SquareRootResult out;
  out.blocks = classify_all(ctx);
  const BlockClassification* target = nullptr;
  for (const auto& b : out.blocks)
    if (!b.division()) {
      target = &b;
      break;
    }
  if (!target) {
    out.certificate = NoneCertificate{out.blocks};
    return out;
  }
  if (opt.epsilon && !(*opt.epsilon > 0))
    throw Error(ErrorKind::InvalidArgument, "square_root: epsilon must be positive");

  std::optional<SquareRootWitness> w;
  if (ctx.exact && opt.allow_exact) w = exact_witness(ctx, target->s, opt);
  if (!w) {
    const auto r = hermitian_subalgebra(ctx, target->s);
    const auto psi = *find_nilpotent_hermitian(ctx, r, *target, derive_seed(ctx.seed, 200 + target->s));
    SquareRootWitness f;
    f.block = target->s;
    f.psi = psi;
    const double side = std::max({worst(convolve(ctx.algebra, ctx.haar, psi)),
                                  worst(convolve(ctx.algebra, psi, ctx.haar)),
                                  std::abs(evaluate(psi, ctx.algebra.alg().unit()))});
    if (side > ctx.tol) throw Error(ErrorKind::Numerical, "square_root: h * psi does not vanish", side);
    f.x = density_of(ctx.algebra, ctx.haar, psi, ctx.tol);
    f.lambda_min = gns_min_eigenvalue(ctx.algebra, ctx.haar, f.x);
    f.epsilon = opt.epsilon ? *opt.epsilon : (f.lambda_min < 0 ? 1.0 / std::abs(f.lambda_min) : 1.0);
    std::ostringstream os;
    os.precision(17);
    os << f.epsilon;
    f.epsilon_text = os.str();
    f.phi = ctx.haar + scaled(haar_weighted(ctx.algebra, ctx.haar, f.x), Complex(f.epsilon));
    f.nilpotent_residual = worst(ctx.corep.dual.multiply(psi, psi));
    f.sqrt_residual = worst(Vec<Complex>(convolve(ctx.algebra, f.phi, f.phi) - ctx.haar));
    f.min_gram = positivity_margin(ctx.algebra, f.phi, ctx.tol);
    f.distance_from_haar = worst(Vec<Complex>(f.phi - ctx.haar));
    w = std::move(f);
  }
  if (opt.epsilon && w->min_gram < -ctx.tol) {
    std::ostringstream os;
    os << "square_root: epsilon " << *opt.epsilon << " gives a non-positive functional (lambda_min(x) = "
       << w->lambda_min << ", largest admissible epsilon " << 1.0 / std::abs(w->lambda_min) << ")";
    throw Error(ErrorKind::InvalidArgument, os.str(), w->min_gram);
  }
  const double phi_one = std::abs(evaluate(w->phi, ctx.algebra.alg().unit()) - 1.0);
  if (w->sqrt_residual > ctx.tol || w->min_gram < -ctx.tol || phi_one > ctx.tol || w->distance_from_haar <= ctx.tol) {
    std::ostringstream os;
    os << "square_root: witness verification failed (||phi*phi - h|| = " << w->sqrt_residual
       << ", lambda_min = " << w->min_gram << ")";
    throw Error(ErrorKind::Numerical, os.str(), std::max(w->sqrt_residual, -w->min_gram));
  }
  out.witness = std::move(w);
  return out;
}

DsVerdict ds_verdict(const DsContext& ctx, const SquareRootOptions& opt) {
  DsVerdict v;
  auto sr = square_root(ctx, opt);
  v.blocks = std::move(sr.blocks);
  v.member = std::all_of(v.blocks.begin(), v.blocks.end(), [](const auto& b) { return b.division(); });
  if (v.member != sr.certificate.has_value() || v.member == sr.witness.has_value())
    throw Error(ErrorKind::Inconsistency, "ds_verdict: classification and square root routes disagree");
  if (v.member && !is_kac(ctx.algebra, ctx.haar, std::max(ctx.tol, 1e-8)).holds)
    throw Error(ErrorKind::Inconsistency, "ds_verdict: member of the DS-family that is not of Kac type");
  v.witness = std::move(sr.witness);
  v.certificate = std::move(sr.certificate);
  return v;
}

HamiltonianReport hamiltonian_certificate(const DsContext& ctx, const DsVerdict& v) {
  const auto& dual = ctx.corep.dual;
  const std::size_t n = ctx.algebra.dim();
  HamiltonianReport out;
  const auto reduced = reduced_indices(ctx.corep);
  out.block_units = reduced.size();
  if (reduced.size() > 26) throw Error(ErrorKind::Unsupported, "hamiltonian_certificate: too many block pairs");

  // commutators of every block unit with every dual basis element; sub-sums by Gray code
  std::vector<std::vector<Vec<Complex>>> comm;
  for (auto s : reduced) {
    const auto z = block_unit(ctx.corep, s);
    std::vector<Vec<Complex>> row;
    for (std::size_t i = 0; i < n; ++i) row.push_back(dual.commutator(z, dual.basis_vector(i)));
    comm.push_back(std::move(row));
  }
  std::vector<Vec<Complex>> acc(n, Vec<Complex>(n, 0.0));
  const std::size_t total = std::size_t{1} << reduced.size();
  std::size_t gray = 0;
  for (std::size_t k = 1; k < total; ++k) {
    const std::size_t next = k ^ (k >> 1);
    const std::size_t bit = static_cast<std::size_t>(__builtin_ctzll(next ^ gray));
    const double sign = (next >> bit) & 1 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        acc[i][j] += sign * comm[bit][i][j];
        out.worst_commutator = std::max(out.worst_commutator, std::abs(acc[i][j]));
      }
    gray = next;
  }
  out.subsums_checked = total;
  out.passes = v.member && out.worst_commutator <= ctx.tol;

  if (!v.member) {
    for (const auto& b : v.blocks) {
      if (b.division()) continue;
      const auto r = hermitian_subalgebra(ctx, b.s);
      const auto p = minimal_idempotent(r.r, derive_seed(ctx.seed, 300 + b.s), ctx.tol).first;
      double c = 0;
      for (std::size_t i = 0; i < n; ++i) c = std::max(c, worst(dual.commutator(p, dual.basis_vector(i))));
      out.noncentral_block = b.s;
      out.noncentral_idempotent = p;
      out.noncentral_commutator = c;
      break;
    }
  }
  return out;
}

NzReport nz_check(const DsContext& ctx, const DsVerdict& v) {
  NzReport out;
  out.dim = ctx.algebra.dim();
  out.applicable = v.member && !is_cocommutative(ctx.algebra, std::max(ctx.tol, 1e-8)).holds;
  if (out.applicable) {
    out.passes = out.dim % 8 == 0;
    if (!out.passes)
      throw Error(ErrorKind::Inconsistency, "nz_check: non-cocommutative member of dimension not divisible by 8");
  }
  return out;
}

std::size_t random_nilpotent_search(const DsContext& ctx, std::size_t trials, std::uint64_t seed) {
  std::size_t found = 0;
  for (auto s : reduced_indices(ctx.corep)) {
    const auto r = hermitian_subalgebra(ctx, s);
    for (std::size_t t = 0; t < trials; ++t) {
      const auto psi = split_nilpotent(r.r, derive_seed(seed, s * 100003 + t), 1, ctx.tol);
      if (psi && worst(ctx.corep.dual.multiply(*psi, *psi)) <= 1e-6) ++found;
    }
  }
  return found;
}

Matrix<Complex> suq2_intertwiner(std::size_t n, double q) {
  Matrix<Complex> m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t j = n - k + 1;
    m(j - 1, k - 1) = (k % 2 == 0 ? 1.0 : -1.0) * std::pow(q, static_cast<double>(k - 1));
  }
  return m;
}

SuqBlock suq2_block(int twice_spin, double q, std::uint64_t seed) {
  if (q == 0) throw Error(ErrorKind::InvalidArgument, "suq2_block: q must be nonzero");
  if (twice_spin < 0) throw Error(ErrorKind::InvalidArgument, "suq2_block: spin must be a non-negative half-integer");
  SuqBlock out;
  out.twice_spin = twice_spin;
  out.q = q;
  out.n = static_cast<std::size_t>(twice_spin) + 1;
  const std::size_t n = out.n;
  out.Q = suq2_intertwiner(n, q);
  const auto qinv = *linalg::inverse(out.Q, 1e-14);
  const Matrix<Complex> qq = out.Q * out.Q.conjugate();
  out.c = qq(0, 0).real();

  auto to_vec = [](const Matrix<Complex>& m) { return Vec<Complex>(m.data().begin(), m.data().end()); };
  auto to_mat = [n](const Vec<Complex>& v) {
    Matrix<Complex> m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = v[i * n + j];
    return m;
  };
  auto dag = [&](const Matrix<Complex>& a) { return out.Q * a.conjugate() * qinv; };

  std::vector<Vec<Complex>> gens;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const Complex w : {Complex(1), Complex(0, 1)}) {
        Matrix<Complex> e(n, n);
        e(i, j) = w;
        gens.push_back(to_vec(e + dag(e)));
      }
  RealSubalgebra r(real_span_basis(gens), to_vec(Matrix<Complex>::identity(n)),
                   [to_vec, to_mat](const Vec<Complex>& a, const Vec<Complex>& b) { return to_vec(to_mat(a) * to_mat(b)); });
  out.real_dim = r.dim();
  if (out.c > 0) {
    out.kind = BlockKind::RealType;
    out.m = n;
  } else {
    out.kind = BlockKind::QuaternionType;
    out.m = n / 2;
  }
  out.division_dim = division_dimension(r, seed);
  const std::size_t d = out.kind == BlockKind::RealType ? 1 : 4;
  if (out.real_dim != n * n || out.division_dim != d)
    throw Error(ErrorKind::Inconsistency, "suq2_block: classification routes disagree");

  if (out.m >= 2) {
    const auto psi = split_nilpotent(r, seed, 32);
    if (!psi) throw Error(ErrorKind::Inconsistency, "suq2_block: no nilpotent found in a non-division block");
    const auto nm = to_mat(*psi);
    out.nilpotent = nm;
    out.nilpotent_residual =
        std::max(max_abs(to_vec(nm * nm)), max_abs(to_vec(dag(nm) - nm)));
  }
  if (n == 2 && q < 0) {
    const Complex sq(0, std::sqrt(-q));
    Matrix<Complex> w(2, 2);
    w(0, 0) = sq;
    w(0, 1) = -q;
    w(1, 0) = 1;
    w(1, 1) = -sq;
    out.closed_form_witness = w;
    out.closed_form_witness_residual = std::max(max_abs(to_vec(w * w)), max_abs(to_vec(dag(w) - w)));
  }
  return out;
}

}  // namespace qds

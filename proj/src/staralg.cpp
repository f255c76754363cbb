#include "qds/staralg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "qds/error.hpp"

namespace qds {

double StarAlgebraCheck::worst() const {
  return std::max({associativity, unit, involution, antimultiplicative});
}

template <class T>
StarAlgebra<T>::StarAlgebra(std::vector<std::string> labels, std::vector<SparseVec<T>> mult, Vec<T> unit,
                            AntilinearMap<T> star)
    : labels_(std::move(labels)), mult_(std::move(mult)), unit_(std::move(unit)), star_(std::move(star)) {
  validate();
}

template <class T>
void StarAlgebra<T>::validate() const {
  const std::size_t n = dim();
  if (mult_.size() != n * n) throw Error(ErrorKind::InvalidArgument, "StarAlgebra: multiplication table has wrong size");
  for (const auto& entry : mult_)
    for (const auto& term : entry)
      if (term.first >= n) throw Error(ErrorKind::InvalidArgument, "StarAlgebra: structure constant index out of range");
  if (unit_.size() != n) throw Error(ErrorKind::InvalidArgument, "StarAlgebra: unit has wrong dimension");
  if (star_.m.rows() != n || star_.m.cols() != n)
    throw Error(ErrorKind::InvalidArgument, "StarAlgebra: involution has wrong dimension");
}

template <class T>
Vec<T> StarAlgebra<T>::basis_vector(std::size_t i) const {
  Vec<T> v(dim(), T(0));
  v.at(i) = T(1);
  return v;
}

template <class T>
Vec<T> StarAlgebra<T>::multiply(const Vec<T>& a, const Vec<T>& b) const {
  const std::size_t n = dim();
  if (a.size() != n || b.size() != n) throw Error(ErrorKind::InvalidArgument, "multiply: dimension mismatch");
  Vec<T> out(n, T(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (is_zero(a[i])) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (is_zero(b[j])) continue;
      const auto& terms = mult_[i * n + j];
      if (terms.empty()) continue;
      const T ab = a[i] * b[j];
      for (const auto& [k, v] : terms) out[k] += ab * v;
    }
  }
  return out;
}

template <class T>
Matrix<T> StarAlgebra<T>::left_multiplication(const Vec<T>& a) const {
  const std::size_t n = dim();
  Matrix<T> m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (is_zero(a[i])) continue;
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [k, v] : mult_[i * n + j]) m(k, j) += a[i] * v;
  }
  return m;
}

template <class T>
Matrix<T> StarAlgebra<T>::right_multiplication(const Vec<T>& a) const {
  const std::size_t n = dim();
  Matrix<T> m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    if (is_zero(a[j])) continue;
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& [k, v] : mult_[i * n + j]) m(k, i) += a[j] * v;
  }
  return m;
}

template <class T>
StarAlgebraCheck StarAlgebra<T>::check() const {
  StarAlgebraCheck c;
  const std::size_t n = dim();
  std::vector<Vec<T>> stars(n);
  for (std::size_t i = 0; i < n; ++i) stars[i] = star(basis_vector(i));
  for (std::size_t i = 0; i < n; ++i) {
    const Vec<T> bi = basis_vector(i);
    c.unit = std::max(c.unit, max_abs(Vec<T>(multiply(unit_, bi) - bi)));
    c.unit = std::max(c.unit, max_abs(Vec<T>(multiply(bi, unit_) - bi)));
    c.involution = std::max(c.involution, max_abs(Vec<T>(star(stars[i]) - bi)));
    for (std::size_t j = 0; j < n; ++j) {
      const Vec<T> bij = densify(mult_[i * n + j], n);
      c.antimultiplicative =
          std::max(c.antimultiplicative, max_abs(Vec<T>(star(bij) - multiply(stars[j], stars[i]))));
    }
  }
  // (b_i b_j) b_k - b_i (b_j b_k), accumulated sparsely
  Vec<T> acc(n, T(0));
  std::vector<char> touched(n, 0);
  std::vector<std::uint32_t> list;
  auto add = [&](std::uint32_t l, const T& v) {
    if (!touched[l]) {
      touched[l] = 1;
      list.push_back(l);
    }
    acc[l] += v;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        for (const auto& [m, v] : mult_[i * n + j])
          for (const auto& [l, w] : mult_[m * n + k]) add(l, v * w);
        for (const auto& [m, v] : mult_[j * n + k])
          for (const auto& [l, w] : mult_[i * n + m]) add(l, -(v * w));
        for (auto l : list) {
          c.associativity = std::max(c.associativity, magnitude(acc[l]));
          acc[l] = T(0);
          touched[l] = 0;
        }
        list.clear();
      }
  return c;
}

template <class T>
bool StarAlgebra<T>::is_commutative(double tol) const {
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vec<T> d = densify(mult_[i * n + j], n) - densify(mult_[j * n + i], n);
      if (max_abs(d) > (is_exact_v<T> ? 0.0 : tol)) return false;
    }
  return true;
}

template <class T>
std::vector<Vec<T>> center(const StarAlgebra<T>& a, double tol) {
  const std::size_t n = a.dim();
  Matrix<T> stacked(n * n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec<T> bi = a.basis_vector(i);
    const Matrix<T> d = a.right_multiplication(bi) - a.left_multiplication(bi);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) stacked(i * n + r, c) = d(r, c);
  }
  return linalg::kernel(stacked, tol);
}

template <class T>
StarAlgebra<Complex> to_complex(const StarAlgebra<T>& a) {
  std::vector<SparseVec<Complex>> mult;
  mult.reserve(a.mult_table().size());
  for (const auto& entry : a.mult_table()) {
    SparseVec<Complex> e;
    for (const auto& [k, v] : entry) e.emplace_back(k, to_complex(v));
    mult.push_back(std::move(e));
  }
  return StarAlgebra<Complex>(a.labels(), std::move(mult), to_complex(a.unit()),
                              AntilinearMap<Complex>{to_complex(a.star_map().m)});
}

// ---- block decomposition ------------------------------------------------------

namespace {

struct GnsFrame {
  Matrix<Complex> gram;      // G_ij = tau(b_i^* b_j), tau = Tr(L_x)
  Matrix<Complex> half;      // G^{1/2}
  Matrix<Complex> inv_half;  // G^{-1/2}
};

GnsFrame gns_frame(const StarAlgebra<Complex>& a, double tol) {
  const std::size_t n = a.dim();
  Vec<Complex> trace(n, 0.0);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [idx, v] : a.basis_product(k, j))
        if (idx == j) trace[k] += v;
  GnsFrame f;
  f.gram = Matrix<Complex>(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec<Complex> si = a.star(a.basis_vector(i));
    for (std::size_t j = 0; j < n; ++j) {
      const Vec<Complex> p = a.multiply(si, a.basis_vector(j));
      Complex s = 0;
      for (std::size_t k = 0; k < n; ++k) s += p[k] * trace[k];
      f.gram(i, j) = s;
    }
  }
  const auto eig = linalg::eig_hermitian(f.gram, std::max(tol, 1e-9));
  const double top = std::max(1.0, eig.values.back());
  if (eig.values.front() <= tol * top) {
    std::ostringstream os;
    os << "block_decompose: trace form not positive definite (min eigenvalue " << eig.values.front()
       << "); the algebra is not a semisimple C*-algebra";
    throw Error(ErrorKind::NonSemisimple, os.str(), -eig.values.front());
  }
  f.half = Matrix<Complex>(n, n);
  f.inv_half = Matrix<Complex>(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double s = std::sqrt(eig.values[k]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const Complex outer = eig.vectors(i, k) * std::conj(eig.vectors(j, k));
        f.half(i, j) += s * outer;
        f.inv_half(i, j) += outer / s;
      }
  }
  return f;
}

Matrix<Complex> hermitian_part(const Matrix<Complex>& m) {
  Matrix<Complex> h = m + m.adjoint();
  return h * Complex(0.5);
}

std::vector<std::vector<std::size_t>> cluster_sorted(const std::vector<double>& vals, double thr) {
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t k = 0; k < vals.size(); ++k) {
    if (groups.empty() || vals[k] - vals[groups.back().back()] > thr) groups.emplace_back();
    groups.back().push_back(k);
  }
  return groups;
}

std::size_t exact_sqrt(std::size_t v) {
  auto r = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(v))));
  return r * r == v ? r : 0;
}

Complex gns_inner(const GnsFrame& f, const Vec<Complex>& x, const Vec<Complex>& y) {
  const Vec<Complex> gy = f.gram * y;
  Complex s = 0;
  for (std::size_t k = 0; k < x.size(); ++k) s += std::conj(x[k]) * gy[k];
  return s;
}

// Projection, in x-coordinates, of x onto span of the orthonormal y-columns W.
Vec<Complex> project(const GnsFrame& f, const Matrix<Complex>& w, const Vec<Complex>& x) {
  const Vec<Complex> y = f.half * x;
  Vec<Complex> coeff = w.adjoint() * y;
  return f.inv_half * (w * coeff);
}

Matrix<Complex> select_columns(const Matrix<Complex>& m, const std::vector<std::size_t>& cols) {
  Matrix<Complex> out(m.rows(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) out(i, j) = m(i, cols[j]);
  return out;
}

}  // namespace

double decomposition_residual(const StarAlgebra<Complex>& a, const BlockDecomposition& d) {
  const std::size_t n = a.dim();
  double r = 0;
  Vec<Complex> total(n, 0.0);
  for (const auto& b : d.blocks) total = total + b.central;
  r = std::max(r, max_abs(Vec<Complex>(total - a.unit())));
  for (std::size_t s = 0; s < d.blocks.size(); ++s) {
    const auto& zs = d.blocks[s].central;
    for (std::size_t t = 0; t < d.blocks.size(); ++t) {
      Vec<Complex> p = a.multiply(zs, d.blocks[t].central);
      if (s == t) p = p - zs;
      r = std::max(r, max_abs(p));
    }
    for (std::size_t i = 0; i < n; ++i) r = std::max(r, max_abs(a.commutator(zs, a.basis_vector(i))));
    const auto& blk = d.blocks[s];
    const std::size_t m = blk.size;
    Vec<Complex> diag(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      diag = diag + blk.unit_at(i, i);
      for (std::size_t j = 0; j < m; ++j) {
        r = std::max(r, max_abs(Vec<Complex>(a.star(blk.unit_at(i, j)) - blk.unit_at(j, i))));
        for (std::size_t k = 0; k < m; ++k)
          for (std::size_t l = 0; l < m; ++l) {
            Vec<Complex> p = a.multiply(blk.unit_at(i, j), blk.unit_at(k, l));
            if (j == k) p = p - blk.unit_at(i, l);
            r = std::max(r, max_abs(p));
          }
      }
    }
    r = std::max(r, max_abs(Vec<Complex>(diag - zs)));
  }
  return r;
}

BlockDecomposition block_decompose(const StarAlgebra<Complex>& a, double tol, std::uint64_t seed) {
  const std::size_t n = a.dim();
  const GnsFrame frame = gns_frame(a, tol);
  const auto zbasis = center(a, 1e-8);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const Complex iunit(0.0, 1.0);

  std::vector<Vec<Complex>> herm;
  for (const auto& z : zbasis) {
    const Vec<Complex> zs = a.star(z);
    herm.push_back(z + zs);
    herm.push_back(scaled(Vec<Complex>(z - zs), iunit));
  }

  struct Pending {
    std::size_t size;
    Vec<Complex> central;
    Matrix<Complex> frame_cols;  // orthonormal y-basis of the block
  };
  std::vector<Pending> pending;
  bool ok = false;
  for (int attempt = 0; attempt < 16 && !ok; ++attempt) {
    pending.clear();
    Vec<Complex> c(n, 0.0);
    for (const auto& h : herm) c = c + scaled(h, Complex(uni(rng)));
    const Matrix<Complex> op = hermitian_part(frame.half * a.left_multiplication(c) * frame.inv_half);
    const auto eig = linalg::eig_hermitian(op, 1e-6);
    const double spread = std::max(1.0, std::abs(eig.values.front()) + std::abs(eig.values.back()));
    const auto groups = cluster_sorted(eig.values, 1e-6 * spread);
    if (groups.size() != zbasis.size()) continue;
    ok = true;
    for (const auto& g : groups) {
      const std::size_t m = exact_sqrt(g.size());
      if (m == 0) {
        ok = false;
        break;
      }
      Matrix<Complex> w = select_columns(eig.vectors, g);
      pending.push_back({m, project(frame, w, a.unit()), std::move(w)});
    }
  }
  if (!ok)
    throw Error(ErrorKind::NonSemisimple,
                "block_decompose: could not split the center into minimal central idempotents");

  BlockDecomposition out;
  for (auto& p : pending) {
    MatrixBlock blk;
    blk.size = p.size;
    blk.central = p.central;
    if (p.size == 1) {
      blk.units = {p.central};
      out.blocks.push_back(std::move(blk));
      continue;
    }
    const std::size_t m = p.size;
    bool done = false;
    for (int attempt = 0; attempt < 16 && !done; ++attempt) {
      Vec<Complex> w(n);
      for (auto& x : w) x = Complex(uni(rng), uni(rng));
      const Vec<Complex> as = a.multiply(p.central, Vec<Complex>(w + a.star(w)));
      const Matrix<Complex> full = frame.half * a.left_multiplication(as) * frame.inv_half;
      const Matrix<Complex> compressed = hermitian_part(p.frame_cols.adjoint() * full * p.frame_cols);
      const auto eig = linalg::eig_hermitian(compressed, 1e-6);
      const double spread = std::max(1.0, std::abs(eig.values.front()) + std::abs(eig.values.back()));
      const auto groups = cluster_sorted(eig.values, 1e-6 * spread);
      if (groups.size() != m) continue;
      bool sizes_ok = true;
      for (const auto& g : groups) sizes_ok = sizes_ok && g.size() == m;
      if (!sizes_ok) continue;

      std::vector<Vec<Complex>> proj;
      for (const auto& g : groups) {
        const Matrix<Complex> wk = p.frame_cols * select_columns(eig.vectors, g);
        proj.push_back(project(frame, wk, p.central));
      }
      std::vector<Vec<Complex>> col(m);  // e[k][0]
      col[0] = proj[0];
      const Complex p0norm = gns_inner(frame, proj[0], proj[0]);
      bool fail = false;
      for (std::size_t k = 1; k < m && !fail; ++k) {
        Vec<Complex> best;
        double best_norm = 0;
        for (std::size_t j = 0; j < n; ++j) {
          const Vec<Complex> v = a.multiply(a.multiply(proj[k], a.basis_vector(j)), proj[0]);
          const double nv = std::sqrt(std::abs(gns_inner(frame, v, v)));
          if (nv > best_norm) {
            best_norm = nv;
            best = v;
          }
        }
        if (best_norm < 1e-8) {
          fail = true;
          break;
        }
        const Vec<Complex> vv = a.multiply(a.star(best), best);
        const double cval = (gns_inner(frame, proj[0], vv) / p0norm).real();
        if (cval <= 0) {
          fail = true;
          break;
        }
        col[k] = scaled(best, Complex(1.0 / std::sqrt(cval)));
      }
      if (fail) continue;
      blk.units.assign(m * m, Vec<Complex>());
      std::vector<Vec<Complex>> row(m);  // e[0][l]
      for (std::size_t l = 0; l < m; ++l) row[l] = a.star(col[l]);
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l)
          blk.units[k * m + l] = (k == 0 && l == 0) ? proj[0] : a.multiply(col[k], row[l]);
      done = true;
    }
    if (!done)
      throw Error(ErrorKind::NonSemisimple, "block_decompose: could not build matrix units for a block");
    out.blocks.push_back(std::move(blk));
  }

  std::size_t total = 0;
  for (const auto& b : out.blocks) total += b.size * b.size;
  if (total != n) throw Error(ErrorKind::Inconsistency, "block_decompose: block sizes do not account for the dimension");

  auto key = [](const Vec<Complex>& z) {
    std::vector<long long> k;
    for (const auto& x : z) {
      k.push_back(-std::llround(x.real() * 1e6));
      k.push_back(-std::llround(x.imag() * 1e6));
    }
    return k;
  };
  std::stable_sort(out.blocks.begin(), out.blocks.end(), [&](const MatrixBlock& x, const MatrixBlock& y) {
    if (x.size != y.size) return x.size < y.size;
    return key(x.central) < key(y.central);
  });

  out.residual = decomposition_residual(a, out);
  if (out.residual > 100 * tol) {
    std::ostringstream os;
    os << "block_decompose: matrix-unit relations fail (residual " << out.residual << ")";
    throw Error(ErrorKind::NonSemisimple, os.str(), out.residual);
  }
  std::vector<Vec<Complex>> all;
  for (const auto& b : out.blocks)
    for (const auto& u : b.units) all.push_back(u);
  if (linalg::rank(Matrix<Complex>::from_columns(all, n), 1e-8) != n)
    throw Error(ErrorKind::NonSemisimple, "block_decompose: matrix units do not span the algebra");
  return out;
}

// ---- real subalgebras ------------------------------------------------------------

namespace {

double real_inner(const Vec<Complex>& u, const Vec<Complex>& v) {
  double s = 0;
  for (std::size_t k = 0; k < u.size(); ++k) s += (std::conj(u[k]) * v[k]).real();
  return s;
}

}  // namespace

RealSubalgebra::RealSubalgebra(std::vector<Vec<Complex>> basis, Vec<Complex> unit, Multiply multiply)
    : basis_(std::move(basis)), unit_(std::move(unit)), multiply_(std::move(multiply)) {
  const std::size_t d = basis_.size();
  Matrix<double> g(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) g(i, j) = real_inner(basis_[i], basis_[j]);
  auto inv = linalg::inverse(g, 1e-12);
  if (!inv) throw Error(ErrorKind::InvalidArgument, "RealSubalgebra: basis is linearly dependent over R");
  gram_inverse_ = std::move(*inv);
}

Vec<Complex> RealSubalgebra::element(const std::vector<double>& coords) const {
  if (coords.size() != basis_.size()) throw Error(ErrorKind::InvalidArgument, "RealSubalgebra: coordinate size");
  Vec<Complex> out(unit_.size(), 0.0);
  for (std::size_t i = 0; i < coords.size(); ++i)
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += coords[i] * basis_[i][k];
  return out;
}

std::vector<double> RealSubalgebra::coordinates(const Vec<Complex>& x, double* residual) const {
  const std::size_t d = basis_.size();
  std::vector<double> rhs(d);
  for (std::size_t i = 0; i < d; ++i) rhs[i] = real_inner(basis_[i], x);
  std::vector<double> c = gram_inverse_ * rhs;
  if (residual) *residual = max_abs(Vec<Complex>(x - element(c)));
  return c;
}

Matrix<double> RealSubalgebra::left_multiplication(const Vec<Complex>& a) const {
  const std::size_t d = basis_.size();
  Matrix<double> m(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    const auto c = coordinates(multiply_(a, basis_[j]));
    for (std::size_t i = 0; i < d; ++i) m(i, j) = c[i];
  }
  return m;
}

double RealSubalgebra::closure_residual() const {
  double worst = 0;
  for (const auto& x : basis_)
    for (const auto& y : basis_) {
      double r = 0;
      coordinates(multiply_(x, y), &r);
      worst = std::max(worst, r);
    }
  return worst;
}

Vec<Complex> evaluate_in(const RealSubalgebra& r, const linalg::Polynomial<double>& p, const Vec<Complex>& a) {
  Vec<Complex> acc(r.unit().size(), 0.0);
  for (std::size_t k = p.coeffs().size(); k-- > 0;) {
    acc = r.multiply(acc, a);
    acc = acc + scaled(r.unit(), Complex(p[k]));
  }
  return acc;
}

std::vector<Vec<Complex>> spectral_idempotents(const RealSubalgebra& r, const Vec<Complex>& a, double tol) {
  const Matrix<double> op = r.left_multiplication(a);
  const auto minpoly = linalg::minimal_polynomial_real(op, tol);
  const auto roots = linalg::polynomial_roots(minpoly);
  double scale = 1.0;
  for (const auto& z : roots) scale = std::max(scale, std::abs(z));
  const double delta = 1e-4 * scale;

  // cluster numerically repeated roots
  std::vector<std::vector<Complex>> clusters;
  for (const auto& z : roots) {
    bool placed = false;
    for (auto& c : clusters)
      if (std::abs(c.front() - z) <= delta) {
        c.push_back(z);
        placed = true;
        break;
      }
    if (!placed) clusters.push_back({z});
  }
  // merge each cluster with its conjugate into one real factor
  std::vector<bool> used(clusters.size(), false);
  std::vector<linalg::Polynomial<double>> factors;
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    std::vector<Complex> members = clusters[i];
    if (std::abs(clusters[i].front().imag()) > delta) {
      for (std::size_t j = i + 1; j < clusters.size(); ++j)
        if (!used[j] && std::abs(clusters[j].front() - std::conj(clusters[i].front())) <= delta) {
          used[j] = true;
          members.insert(members.end(), clusters[j].begin(), clusters[j].end());
          break;
        }
    }
    std::vector<Complex> poly{1.0};
    for (const auto& z : members) {
      std::vector<Complex> next(poly.size() + 1, 0.0);
      for (std::size_t k = 0; k < poly.size(); ++k) {
        next[k + 1] += poly[k];
        next[k] -= z * poly[k];
      }
      poly = std::move(next);
    }
    std::vector<double> re(poly.size());
    for (std::size_t k = 0; k < poly.size(); ++k) re[k] = poly[k].real();
    factors.emplace_back(std::move(re));
  }
  if (factors.size() <= 1) return {r.unit()};

  std::vector<Vec<Complex>> out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    linalg::Polynomial<double> g(std::vector<double>{1.0});
    for (std::size_t j = 0; j < factors.size(); ++j)
      if (j != i) g = g * factors[j];
    const auto u = linalg::inverse_modulo(g, factors[i], 1e-12);
    const auto e = evaluate_in(r, u * g, a);
    double res = 0;
    const auto c = r.coordinates(e, &res);
    out.push_back(r.element(c));
  }
  return out;
}

template class StarAlgebra<GaussRational>;
template class StarAlgebra<Complex>;
template std::vector<Vec<GaussRational>> center(const StarAlgebra<GaussRational>&, double);
template std::vector<Vec<Complex>> center(const StarAlgebra<Complex>&, double);
template StarAlgebra<Complex> to_complex(const StarAlgebra<GaussRational>&);
template StarAlgebra<Complex> to_complex(const StarAlgebra<Complex>&);

}  // namespace qds

#include "qds/hopf.hpp"

#include <algorithm>
#include <sstream>

#include "qds/error.hpp"
#include "qds/linalg.hpp"

namespace qds {

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::Exact:
      return "exact";
    case Provenance::Float:
      return "float";
    case Provenance::PromotedFromExact:
      return "promoted-from-exact";
  }
  return "?";
}

template <class T>
HopfStarAlgebra<T>::HopfStarAlgebra(std::string name, StarAlgebra<T> alg, std::vector<TensorVec<T>> comult,
                                    Functional<T> counit, std::optional<Matrix<T>> antipode, Provenance provenance)
    : name_(std::move(name)),
      alg_(std::move(alg)),
      comult_(std::move(comult)),
      counit_(std::move(counit)),
      antipode_(std::move(antipode)),
      provenance_(provenance) {
  const std::size_t n = alg_.dim();
  if (comult_.size() != n) throw Error(ErrorKind::InvalidArgument, "HopfStarAlgebra: comultiplication has wrong size");
  for (const auto& t : comult_)
    for (const auto& [j, k, v] : t)
      if (j >= n || k >= n) throw Error(ErrorKind::InvalidArgument, "HopfStarAlgebra: comultiplication index out of range");
  if (counit_.size() != n) throw Error(ErrorKind::InvalidArgument, "HopfStarAlgebra: counit has wrong dimension");
  if (antipode_ && (antipode_->rows() != n || antipode_->cols() != n))
    throw Error(ErrorKind::InvalidArgument, "HopfStarAlgebra: antipode has wrong dimension");
}

template <class T>
HopfStarAlgebra<T> HopfStarAlgebra<T>::with_antipode(Matrix<T> s) const {
  HopfStarAlgebra out = *this;
  if (s.rows() != dim() || s.cols() != dim())
    throw Error(ErrorKind::InvalidArgument, "with_antipode: wrong dimension");
  out.antipode_ = std::move(s);
  return out;
}

template <class T>
HopfStarAlgebra<T> HopfStarAlgebra<T>::renamed(std::string name) const {
  HopfStarAlgebra out = *this;
  out.name_ = std::move(name);
  return out;
}

template <class T>
Matrix<T> HopfStarAlgebra<T>::comultiply(const Vec<T>& x) const {
  Matrix<T> out(dim(), dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (is_zero(x[i])) continue;
    for (const auto& [j, k, v] : comult_[i]) out(j, k) += x[i] * v;
  }
  return out;
}

template <class T>
Vec<T> HopfStarAlgebra<T>::apply_antipode(const Vec<T>& x) const {
  if (!antipode_) throw Error(ErrorKind::InvalidArgument, "apply_antipode: no antipode available");
  return *antipode_ * x;
}

template <class T>
HopfStarAlgebra<Complex> to_complex(const HopfStarAlgebra<T>& h) {
  std::vector<TensorVec<Complex>> comult;
  for (const auto& t : h.comult_table()) {
    TensorVec<Complex> c;
    for (const auto& [j, k, v] : t) c.emplace_back(j, k, to_complex(v));
    comult.push_back(std::move(c));
  }
  std::optional<Matrix<Complex>> s;
  if (h.antipode()) s = to_complex(*h.antipode());
  const Provenance p = is_exact_v<T> ? Provenance::PromotedFromExact : h.provenance();
  return HopfStarAlgebra<Complex>(h.name(), to_complex(h.alg()), std::move(comult), to_complex(h.counit()),
                                  std::move(s), p);
}

// ---- axioms ----------------------------------------------------------------------

double AxiomReport::worst() const {
  double w = std::max({algebra.worst(), comult_homomorphism, comult_star, comult_unit, coassociativity, counit});
  if (antipode) w = std::max(w, *antipode);
  return w;
}

std::string AxiomReport::failing_axiom(double tol) const {
  std::vector<std::pair<const char*, double>> all = {
      {"associativity", algebra.associativity},
      {"unit", algebra.unit},
      {"involution", algebra.involution},
      {"star-antimultiplicative", algebra.antimultiplicative},
      {"comultiplication-homomorphism", comult_homomorphism},
      {"comultiplication-star", comult_star},
      {"comultiplication-unit", comult_unit},
      {"coassociativity", coassociativity},
      {"counit", counit},
  };
  if (antipode) all.emplace_back("antipode", *antipode);
  for (const auto& [name, r] : all)
    if (r > tol) return name;
  return "";
}

namespace {

/// Dense scratch buffer that remembers which slots were written.
template <class T>
class Accumulator {
 public:
  explicit Accumulator(std::size_t size) : buf_(size, T(0)), touched_(size, 0) {}
  void add(std::size_t k, const T& v) {
    if (!touched_[k]) {
      touched_[k] = 1;
      list_.push_back(k);
    }
    buf_[k] += v;
  }
  /// Largest magnitude written since the last drain; clears the buffer.
  double drain() {
    double worst = 0;
    for (auto k : list_) {
      worst = std::max(worst, magnitude(buf_[k]));
      buf_[k] = T(0);
      touched_[k] = 0;
    }
    list_.clear();
    return worst;
  }

 private:
  Vec<T> buf_;
  std::vector<char> touched_;
  std::vector<std::size_t> list_;
};

/// Worst violation of m(S (x) id)Delta = eps 1 = m(id (x) S)Delta on the basis.
template <class T>
double antipode_residual(const HopfStarAlgebra<T>& h, const Matrix<T>& s) {
  const auto& a = h.alg();
  const std::size_t n = h.dim();
  double worst = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Vec<T> left = scaled(a.unit(), T(-h.counit()[i]));
    Vec<T> right = left;
    for (const auto& [p, q, w] : h.coproduct(i))
      for (std::size_t l = 0; l < n; ++l) {
        if (!is_zero(s(l, p)))
          for (const auto& [m, c] : a.basis_product(l, q)) left[m] += w * s(l, p) * c;
        if (!is_zero(s(l, q)))
          for (const auto& [m, c] : a.basis_product(p, l)) right[m] += w * s(l, q) * c;
      }
    worst = std::max({worst, max_abs(left), max_abs(right)});
  }
  return worst;
}

}  // namespace

template <class T>
AxiomReport verify_axioms(const HopfStarAlgebra<T>& h) {
  AxiomReport r;
  r.algebra = h.alg().check();
  const auto& a = h.alg();
  const std::size_t n = h.dim();
  const Matrix<T>& st = a.star_map().m;

  // Delta is multiplicative
  Accumulator<T> acc2(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      for (const auto& [k, v] : a.basis_product(i, j))
        for (const auto& [p, q, w] : h.coproduct(k)) acc2.add(p * n + q, v * w);
      for (const auto& [p1, q1, v1] : h.coproduct(i))
        for (const auto& [p2, q2, v2] : h.coproduct(j)) {
          const auto& left = a.basis_product(p1, p2);
          const auto& right = a.basis_product(q1, q2);
          if (left.empty() || right.empty()) continue;
          const T vv = v1 * v2;
          for (const auto& [x, cx] : left)
            for (const auto& [y, cy] : right) acc2.add(x * n + y, -(vv * cx * cy));
        }
      r.comult_homomorphism = std::max(r.comult_homomorphism, acc2.drain());
    }

  // Delta commutes with the involution
  for (std::size_t i = 0; i < n; ++i) {
    Matrix<T> lhs(n, n);
    for (std::size_t m = 0; m < n; ++m) {
      if (is_zero(st(m, i))) continue;
      for (const auto& [p, q, w] : h.coproduct(m)) lhs(p, q) += st(m, i) * w;
    }
    for (const auto& [p, q, w] : h.coproduct(i)) {
      const T cw = conj_of(w);
      for (std::size_t x = 0; x < n; ++x) {
        if (is_zero(st(x, p))) continue;
        for (std::size_t y = 0; y < n; ++y)
          if (!is_zero(st(y, q))) lhs(x, y) -= cw * st(x, p) * st(y, q);
      }
    }
    r.comult_star = std::max(r.comult_star, max_abs(lhs));
  }

  // Delta(1) = 1 (x) 1
  {
    Matrix<T> d1 = h.comultiply(a.unit());
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) d1(p, q) -= a.unit()[p] * a.unit()[q];
    r.comult_unit = max_abs(d1);
  }

  Accumulator<T> acc3(n * n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [p, q, v] : h.coproduct(i)) {
      for (const auto& [j, k, w] : h.coproduct(p)) acc3.add((j * n + k) * n + q, v * w);
      for (const auto& [k, l, w] : h.coproduct(q)) acc3.add((p * n + k) * n + l, -(v * w));
    }
    r.coassociativity = std::max(r.coassociativity, acc3.drain());
  }

  // counit laws, multiplicativity and normalization
  const auto& eps = h.counit();
  for (std::size_t i = 0; i < n; ++i) {
    Vec<T> left(n, T(0)), right(n, T(0));
    for (const auto& [p, q, w] : h.coproduct(i)) {
      left[q] += eps[p] * w;
      right[p] += eps[q] * w;
    }
    left[i] -= T(1);
    right[i] -= T(1);
    r.counit = std::max({r.counit, max_abs(left), max_abs(right)});
    for (std::size_t j = 0; j < n; ++j) {
      T e = -eps[i] * eps[j];
      for (const auto& [k, v] : a.basis_product(i, j)) e += v * eps[k];
      r.counit = std::max(r.counit, magnitude(e));
    }
  }
  r.counit = std::max(r.counit, magnitude(T(evaluate(eps, a.unit()) - T(1))));

  if (h.antipode()) r.antipode = antipode_residual(h, *h.antipode());
  return r;
}

template <class T>
Matrix<T> solve_antipode(const HopfStarAlgebra<T>& h, double tol) {
  const auto& a = h.alg();
  const std::size_t n = h.dim();
  // unknown x[l * n + j] = coefficient of b_l in S(b_j)
  linalg::SparseSystem<T> sys(n * n);
  std::vector<std::vector<typename linalg::SparseSystem<T>::Term>> left(n), right(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& e : left) e.clear();
    for (auto& e : right) e.clear();
    for (const auto& [j, k, v] : h.coproduct(i))
      for (std::size_t l = 0; l < n; ++l) {
        for (const auto& [m, c] : a.basis_product(l, k)) left[m].emplace_back(l * n + j, v * c);
        for (const auto& [m, c] : a.basis_product(j, l)) right[m].emplace_back(l * n + k, v * c);
      }
    for (std::size_t m = 0; m < n; ++m) {
      const T rhs = h.counit()[i] * a.unit()[m];
      if (!left[m].empty() || !is_zero(rhs)) sys.add_equation(left[m], rhs);
      if (!right[m].empty() || !is_zero(rhs)) sys.add_equation(right[m], rhs);
    }
  }
  const auto res = sys.solve(tol);
  if (!res.consistent) {
    std::ostringstream os;
    os << "solve_antipode: no antipode exists (residual " << res.residual << ")";
    throw Error(ErrorKind::Axiom, os.str(), res.residual);
  }
  Matrix<T> s(n, n);
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t j = 0; j < n; ++j) s(l, j) = res.x[l * n + j];
  const double r = antipode_residual(h, s);
  if (r > (is_exact_v<T> ? 0.0 : tol))
    throw Error(ErrorKind::Axiom, "solve_antipode: solution fails the antipode laws", r);
  return s;
}

// ---- Haar state and functionals -----------------------------------------------------

template <class T>
T evaluate(const Functional<T>& phi, const Vec<T>& x) {
  if (phi.size() != x.size()) throw Error(ErrorKind::InvalidArgument, "evaluate: dimension mismatch");
  T s(0);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!is_zero(x[i])) s += phi[i] * x[i];
  return s;
}

template <class T>
double positivity_margin(const HopfStarAlgebra<T>& h, const Functional<T>& phi, double tol) {
  const auto& a = h.alg();
  const std::size_t n = h.dim();
  Matrix<Complex> g(n, n);
  std::vector<Vec<T>> stars(n);
  for (std::size_t i = 0; i < n; ++i) stars[i] = a.star(a.basis_vector(i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = to_complex(evaluate(phi, a.multiply(stars[i], a.basis_vector(j))));
  // a non-hermitian functional gives a non-hermitian Gram matrix
  const double asym = max_abs(Matrix<Complex>(g - g.adjoint()));
  if (asym > std::max(tol, 1e-9) * std::max(1.0, max_abs(g))) return -asym;
  return linalg::eig_hermitian(g, std::max(tol, 1e-9)).values.front();
}

template <class T>
HaarState<T> haar_state(const HopfStarAlgebra<T>& h, double tol) {
  const std::size_t n = h.dim();
  const auto& unit = h.alg().unit();
  linalg::SparseSystem<T> sys(n);
  std::vector<std::vector<typename linalg::SparseSystem<T>::Term>> left(n), right(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& e : left) e.clear();
    for (auto& e : right) e.clear();
    for (const auto& [j, k, v] : h.coproduct(i)) {
      left[k].emplace_back(j, v);   // (h (x) id) Delta(b_i), coordinate k
      right[j].emplace_back(k, v);  // (id (x) h) Delta(b_i), coordinate j
    }
    for (std::size_t m = 0; m < n; ++m) {
      if (!is_zero(unit[m])) {
        left[m].emplace_back(i, -unit[m]);
        right[m].emplace_back(i, -unit[m]);
      }
      if (!left[m].empty()) sys.add_equation(left[m], T(0));
      if (!right[m].empty()) sys.add_equation(right[m], T(0));
    }
  }
  std::vector<typename linalg::SparseSystem<T>::Term> norm;
  for (std::size_t m = 0; m < n; ++m)
    if (!is_zero(unit[m])) norm.emplace_back(m, unit[m]);
  sys.add_equation(norm, T(1));
  const auto res = sys.solve(tol);
  if (!res.consistent || res.nullity != 0) {
    std::ostringstream os;
    os << "haar_state: invariance system has " << (res.consistent ? "a " + std::to_string(res.nullity + 1) + "-dimensional"
                                                                  : std::string("no"))
       << " solution space";
    throw Error(ErrorKind::NotAQuantumGroup, os.str(), res.residual);
  }
  HaarState<T> out;
  out.h = res.x;
  out.invariance_residual = res.residual;
  out.min_gram_eigenvalue = positivity_margin(h, out.h, tol);
  if (out.min_gram_eigenvalue < -tol) {
    std::ostringstream os;
    os << "haar_state: invariant functional is not positive (min eigenvalue " << out.min_gram_eigenvalue << ")";
    throw Error(ErrorKind::NotAQuantumGroup, os.str(), -out.min_gram_eigenvalue);
  }
  return out;
}

template <class T>
Functional<T> convolve(const HopfStarAlgebra<T>& h, const Functional<T>& phi, const Functional<T>& psi) {
  const std::size_t n = h.dim();
  if (phi.size() != n || psi.size() != n) throw Error(ErrorKind::InvalidArgument, "convolve: dimension mismatch");
  Functional<T> out(n, T(0));
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [j, k, v] : h.coproduct(i))
      if (!is_zero(phi[j]) && !is_zero(psi[k])) out[i] += v * phi[j] * psi[k];
  return out;
}

template <class T>
Functional<T> dagger(const HopfStarAlgebra<T>& h, const Functional<T>& phi) {
  const Matrix<T>& st = h.alg().star_map().m;
  const std::size_t n = h.dim();
  Functional<T> out(n, T(0));
  for (std::size_t k = 0; k < n; ++k) {
    T s(0);
    for (std::size_t l = 0; l < n; ++l)
      if (!is_zero(st(l, k))) s += st(l, k) * phi[l];
    out[k] = conj_of(s);
  }
  return out;
}

template <class T>
StarAlgebra<T> dual_algebra(const HopfStarAlgebra<T>& h) {
  if (!h.antipode()) throw Error(ErrorKind::InvalidArgument, "dual_algebra: antipode required");
  const std::size_t n = h.dim();
  std::vector<std::string> labels;
  for (const auto& l : h.alg().labels()) labels.push_back(l + "^");
  std::vector<SparseVec<T>> mult(n * n);
  for (std::size_t k = 0; k < n; ++k)
    for (const auto& [i, j, v] : h.coproduct(k)) mult[i * n + j].emplace_back(static_cast<std::uint32_t>(k), v);
  for (auto& entry : mult) {
    // combine duplicates, drop zeros
    std::sort(entry.begin(), entry.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    SparseVec<T> merged;
    for (const auto& [k, v] : entry) {
      if (!merged.empty() && merged.back().first == k)
        merged.back().second += v;
      else
        merged.emplace_back(k, v);
    }
    entry.clear();
    for (auto& t : merged)
      if (!is_zero(t.second)) entry.push_back(std::move(t));
  }
  const Matrix<T>& st = h.alg().star_map().m;
  const Matrix<T>& s = *h.antipode();
  // phi*_k = sum_l M[k][l] conj(phi_l), M = (conj(St) S)^T
  const Matrix<T> m = (st.conjugate() * s).transpose();
  return StarAlgebra<T>(std::move(labels), std::move(mult), h.counit(), AntilinearMap<T>{m});
}

template <class T>
PropertyCheck is_commutative(const HopfStarAlgebra<T>& h, double tol) {
  const auto& a = h.alg();
  const std::size_t n = h.dim();
  double worst = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      worst = std::max(worst, max_abs(Vec<T>(densify(a.basis_product(i, j), n) - densify(a.basis_product(j, i), n))));
  return {worst <= (is_exact_v<T> ? 0.0 : tol), worst};
}

template <class T>
PropertyCheck is_cocommutative(const HopfStarAlgebra<T>& h, double tol) {
  double worst = 0;
  for (std::size_t i = 0; i < h.dim(); ++i) {
    const Matrix<T> d = h.comultiply(h.alg().basis_vector(i));
    worst = std::max(worst, max_abs(Matrix<T>(d - d.transpose())));
  }
  return {worst <= (is_exact_v<T> ? 0.0 : tol), worst};
}

template <class T>
PropertyCheck is_kac(const HopfStarAlgebra<T>& h, const Functional<T>& haar, double tol) {
  const auto& a = h.alg();
  const std::size_t n = h.dim();
  double worst = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      T ab(0), ba(0);
      for (const auto& [k, v] : a.basis_product(i, j)) ab += v * haar[k];
      for (const auto& [k, v] : a.basis_product(j, i)) ba += v * haar[k];
      worst = std::max(worst, magnitude(T(ab - ba)));
    }
  const Matrix<T> s = h.antipode() ? *h.antipode() : solve_antipode(h, tol);
  worst = std::max(worst, max_abs(Matrix<T>(s * s - Matrix<T>::identity(n))));
  return {worst <= (is_exact_v<T> ? 0.0 : tol), worst};
}

template <class T>
void require_tracial(const HopfStarAlgebra<T>& h, const Functional<T>& haar, double tol) {
  const auto kac = is_kac(h, haar, tol);
  if (!kac.holds) {
    std::ostringstream os;
    os << "unsupported: non-tracial Haar state (trace defect " << kac.residual << ")";
    throw Error(ErrorKind::Unsupported, os.str(), kac.residual);
  }
}

template <class T>
Functional<T> haar_weighted(const HopfStarAlgebra<T>& h, const Functional<T>& haar, const Vec<T>& x) {
  const std::size_t n = h.dim();
  Functional<T> out(n, T(0));
  for (std::size_t j = 0; j < n; ++j) out[j] = evaluate(haar, h.alg().multiply(x, h.alg().basis_vector(j)));
  return out;
}

template <class T>
Vec<T> density_of(const HopfStarAlgebra<T>& h, const Functional<T>& haar, const Functional<T>& phi, double tol) {
  const auto& a = h.alg();
  const std::size_t n = h.dim();
  Matrix<T> pairing(n, n);  // row j, column i: h(b_i b_j)
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [k, v] : a.basis_product(i, j)) pairing(j, i) += v * haar[k];
  Matrix<T> rhs(n, 1);
  for (std::size_t j = 0; j < n; ++j) rhs(j, 0) = phi[j];
  const auto sol = linalg::solve_linear(pairing, rhs, tol);
  if (!sol.kernel.empty() || !sol.consistent)
    throw Error(ErrorKind::NotAQuantumGroup, "density_of: Haar state is not faithful", sol.residual);
  return sol.solution.column(0);
}

template <class T>
Matrix<T> conditional_expectation(const HopfStarAlgebra<T>& h, const Functional<T>& omega, Side side, double tol) {
  const std::size_t n = h.dim();
  const double thr = is_exact_v<T> ? 0.0 : tol;
  const double idem = max_abs(Vec<T>(convolve(h, omega, omega) - omega));
  if (idem > thr) {
    std::ostringstream os;
    os << "conditional_expectation: functional is not idempotent (||w*w - w|| = " << idem << ")";
    throw Error(ErrorKind::InvalidArgument, os.str(), idem);
  }
  const double norm = magnitude(T(evaluate(omega, h.alg().unit()) - T(1)));
  const double pos = positivity_margin(h, omega, tol);
  if (norm > thr || pos < -tol)
    throw Error(ErrorKind::InvalidArgument, "conditional_expectation: functional is not a state",
                std::max(norm, -pos));
  Matrix<T> e(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [j, k, v] : h.coproduct(i)) {
      if (side == Side::Left)
        e(j, i) += v * omega[k];
      else
        e(k, i) += v * omega[j];
    }
  return e;
}

template <class T>
PropertyCheck is_central(const HopfStarAlgebra<T>& h, const Functional<T>& phi, double tol) {
  const std::size_t n = h.dim();
  double worst = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Functional<T> e = h.alg().basis_vector(i);
    worst = std::max(worst, max_abs(Vec<T>(convolve(h, phi, e) - convolve(h, e, phi))));
  }
  return {worst <= (is_exact_v<T> ? 0.0 : tol), worst};
}

#define QDS_INSTANTIATE_HOPF(T)                                                                          \
  template class HopfStarAlgebra<T>;                                                                     \
  template HopfStarAlgebra<Complex> to_complex(const HopfStarAlgebra<T>&);                               \
  template AxiomReport verify_axioms(const HopfStarAlgebra<T>&);                                         \
  template Matrix<T> solve_antipode(const HopfStarAlgebra<T>&, double);                                  \
  template HaarState<T> haar_state(const HopfStarAlgebra<T>&, double);                                   \
  template T evaluate(const Functional<T>&, const Vec<T>&);                                              \
  template Functional<T> convolve(const HopfStarAlgebra<T>&, const Functional<T>&, const Functional<T>&); \
  template Functional<T> dagger(const HopfStarAlgebra<T>&, const Functional<T>&);                        \
  template double positivity_margin(const HopfStarAlgebra<T>&, const Functional<T>&, double);            \
  template StarAlgebra<T> dual_algebra(const HopfStarAlgebra<T>&);                                       \
  template PropertyCheck is_commutative(const HopfStarAlgebra<T>&, double);                              \
  template PropertyCheck is_cocommutative(const HopfStarAlgebra<T>&, double);                            \
  template PropertyCheck is_kac(const HopfStarAlgebra<T>&, const Functional<T>&, double);                \
  template void require_tracial(const HopfStarAlgebra<T>&, const Functional<T>&, double);                \
  template Functional<T> haar_weighted(const HopfStarAlgebra<T>&, const Functional<T>&, const Vec<T>&);  \
  template Vec<T> density_of(const HopfStarAlgebra<T>&, const Functional<T>&, const Functional<T>&, double); \
  template Matrix<T> conditional_expectation(const HopfStarAlgebra<T>&, const Functional<T>&, Side, double); \
  template PropertyCheck is_central(const HopfStarAlgebra<T>&, const Functional<T>&, double);

QDS_INSTANTIATE_HOPF(GaussRational)
QDS_INSTANTIATE_HOPF(Complex)

}  // namespace qds

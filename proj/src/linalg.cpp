#include "qds/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qds/error.hpp"

namespace qds {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Axiom: return "axiom";
    case ErrorKind::NotAQuantumGroup: return "not-a-quantum-group";
    case ErrorKind::NonSemisimple: return "non-semisimple";
    case ErrorKind::Numerical: return "numerical";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Inconsistency: return "inconsistency";
  }
  return "unknown";
}

}  // namespace qds

namespace qds::linalg {

// ---- hermitian eigenproblem ----------------------------------------------------

HermitianEigen eig_hermitian(const Matrix<Complex>& m, double tol) {
  if (!m.square()) throw Error(ErrorKind::InvalidArgument, "eig_hermitian: matrix not square");
  const std::size_t n = m.rows();
  const double scale = std::max(1.0, frobenius_norm(m));
  const double asym = frobenius_norm(m - m.adjoint());
  if (asym > tol * scale) {
    std::ostringstream os;
    os << "eig_hermitian: input not self-adjoint (||m - m*|| = " << asym << ")";
    throw Error(ErrorKind::Numerical, os.str(), asym);
  }

  Matrix<Complex> a = m;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();
  Matrix<Complex> v = Matrix<Complex>::identity(n);

  auto off_norm = [&] {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < 100 && off_norm() > 1e-15 * scale; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex g = a(p, q);
        const double ag = std::abs(g);
        if (ag < 1e-300) continue;
        const Complex e = g / ag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * ag);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex ebar = std::conj(e);
        // A <- A U with U = [[c, s], [-conj(e) s, conj(e) c]] on (p, q).
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp - ebar * s * akq;
          a(k, q) = s * akp + ebar * c * akq;
        }
        // A <- U* A
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk - e * s * aqk;
          a(q, k) = s * apk + e * c * aqk;
        }
        a(p, q) = 0;
        a(q, p) = 0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = c * vkp - ebar * s * vkq;
          v(k, q) = s * vkp + ebar * c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

  HermitianEigen out;
  out.values.resize(n);
  out.vectors = Matrix<Complex>(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  for (std::size_t k = 0; k < n; ++k) {
    double r = 0;
    for (std::size_t i = 0; i < n; ++i) {
      Complex acc = 0;
      for (std::size_t j = 0; j < n; ++j) acc += m(i, j) * out.vectors(j, k);
      r += std::norm(acc - out.values[k] * out.vectors(i, k));
    }
    out.residual = std::max(out.residual, std::sqrt(r));
  }
  return out;
}

// ---- dense elimination -----------------------------------------------------------

template <class T>
std::vector<std::size_t> rref(Matrix<T>& m, std::size_t pivot_cols, double tol) {
  std::vector<std::size_t> pivots;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  double thresh = 0;
  if constexpr (!is_exact_v<T>) {
    double s = 0;
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < pivot_cols; ++j) s = std::max(s, magnitude(m(i, j)));
    thresh = tol * std::max(1.0, s);
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_cols && r < rows; ++c) {
    std::size_t best = rows;
    if constexpr (is_exact_v<T>) {
      for (std::size_t i = r; i < rows; ++i)
        if (!is_zero(m(i, c))) {
          best = i;
          break;
        }
    } else {
      double bv = thresh;
      for (std::size_t i = r; i < rows; ++i) {
        const double v = magnitude(m(i, c));
        if (v > bv) {
          bv = v;
          best = i;
        }
      }
    }
    if (best == rows) {
      if constexpr (!is_exact_v<T>)
        for (std::size_t i = r; i < rows; ++i) m(i, c) = T(0);
      continue;
    }
    if (best != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(r, j), m(best, j));
    const T inv = T(1) / m(r, c);
    for (std::size_t j = c; j < cols; ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      const T f = m(i, c);
      for (std::size_t j = c; j < cols; ++j)
        if (!is_zero(m(r, j))) m(i, j) -= f * m(r, j);
      m(i, c) = T(0);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class T>
LinearSolution<T> solve_linear(const Matrix<T>& a, const Matrix<T>& b, double tol) {
  if (a.rows() != b.rows()) throw Error(ErrorKind::InvalidArgument, "solve_linear: row count mismatch");
  const std::size_t n = a.cols();
  const std::size_t k = b.cols();
  Matrix<T> aug(a.rows(), n + k);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    for (std::size_t j = 0; j < k; ++j) aug(i, n + j) = b(i, j);
  }
  const auto pivots = rref(aug, n, tol);

  LinearSolution<T> out;
  double thresh = 0;
  if constexpr (!is_exact_v<T>) thresh = tol * std::max(1.0, std::max(max_abs(a), max_abs(b)));
  for (std::size_t i = pivots.size(); i < a.rows(); ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (!is_zero(aug(i, n + j), thresh)) out.consistent = false;

  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vec<T> v(n, T(0));
    v[f] = T(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -aug(r, f);
    out.kernel.push_back(std::move(v));
  }

  if (out.consistent) {
    out.solution = Matrix<T>(n, k);
    for (std::size_t r = 0; r < pivots.size(); ++r)
      for (std::size_t j = 0; j < k; ++j) out.solution(pivots[r], j) = aug(r, n + j);
  } else {
    // Least squares through the normal equations, which are always consistent.
    const Matrix<T> ah = a.adjoint();
    auto normal = solve_linear(Matrix<T>(ah * a), Matrix<T>(ah * b), tol);
    out.solution = normal.solution;
  }
  out.residual = max_abs(Matrix<T>(a * out.solution - b));
  return out;
}

template <class T>
std::vector<Vec<T>> kernel(const Matrix<T>& a, double tol) {
  return solve_linear(a, Matrix<T>(a.rows(), 0), tol).kernel;
}

template <class T>
std::size_t rank(const Matrix<T>& a, double tol) {
  Matrix<T> m = a;
  return rref(m, m.cols(), tol).size();
}

template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& a, double tol) {
  if (!a.square()) return std::nullopt;
  auto sol = solve_linear(a, Matrix<T>::identity(a.rows()), tol);
  if (!sol.consistent || !sol.kernel.empty()) return std::nullopt;
  return sol.solution;
}

// ---- sparse elimination ------------------------------------------------------------

namespace {

template <class T>
void normalize_terms(std::vector<std::pair<std::size_t, T>>& terms) {
  std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<std::pair<std::size_t, T>> out;
  for (auto& t : terms) {
    if (!out.empty() && out.back().first == t.first)
      out.back().second += t.second;
    else
      out.push_back(std::move(t));
  }
  std::erase_if(out, [](const auto& t) { return is_zero(t.second); });
  terms = std::move(out);
}

// row <- row - f * pivot
template <class T>
std::vector<std::pair<std::size_t, T>> axpy_terms(const std::vector<std::pair<std::size_t, T>>& row,
                                                  const T& f,
                                                  const std::vector<std::pair<std::size_t, T>>& pivot,
                                                  double drop) {
  std::vector<std::pair<std::size_t, T>> out;
  out.reserve(row.size() + pivot.size());
  std::size_t i = 0, j = 0;
  while (i < row.size() || j < pivot.size()) {
    if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
      out.push_back(row[i++]);
    } else if (i == row.size() || pivot[j].first < row[i].first) {
      out.emplace_back(pivot[j].first, -(f * pivot[j].second));
      ++j;
    } else {
      T v = row[i].second - f * pivot[j].second;
      if (!is_zero(v, drop)) out.emplace_back(row[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

template <class T>
void SparseSystem<T>::add_equation(std::vector<Term> terms, T rhs) {
  for (const auto& t : terms)
    if (t.first >= unknowns_) throw Error(ErrorKind::InvalidArgument, "SparseSystem: unknown index out of range");
  normalize_terms(terms);
  rows_.push_back(Row{std::move(terms), std::move(rhs)});
}

template <class T>
typename SparseSystem<T>::Result SparseSystem<T>::solve(double tol) const {
  double scale = 1.0;
  if constexpr (!is_exact_v<T>) {
    for (const auto& r : rows_) {
      for (const auto& t : r.terms) scale = std::max(scale, magnitude(t.second));
      scale = std::max(scale, magnitude(r.rhs));
    }
  }
  const double drop = is_exact_v<T> ? 0.0 : tol * scale * 1e-3;
  const double zero_tol = is_exact_v<T> ? 0.0 : tol * scale;

  // pivot[c] = index into piv_rows of the row whose leading column is c
  std::vector<std::ptrdiff_t> pivot(unknowns_, -1);
  std::vector<Row> piv_rows;
  Result res;
  double worst_inconsistency = 0;

  for (const auto& eq : rows_) {
    std::vector<Term> terms = eq.terms;
    T rhs = eq.rhs;
    while (true) {
      // drop numerically vanishing leading terms
      while (!terms.empty() && is_zero(terms.front().second, drop)) terms.erase(terms.begin());
      if (terms.empty()) {
        if (!is_zero(rhs, zero_tol)) {
          res.consistent = false;
          worst_inconsistency = std::max(worst_inconsistency, magnitude(rhs));
        }
        break;
      }
      const std::size_t c = terms.front().first;
      if (pivot[c] < 0) {
        const T inv = T(1) / terms.front().second;
        for (auto& t : terms) t.second *= inv;
        terms.front().second = T(1);
        rhs *= inv;
        pivot[c] = static_cast<std::ptrdiff_t>(piv_rows.size());
        piv_rows.push_back(Row{std::move(terms), std::move(rhs)});
        break;
      }
      const Row& p = piv_rows[static_cast<std::size_t>(pivot[c])];
      const T f = terms.front().second;
      terms = axpy_terms(terms, f, p.terms, drop);
      if (!terms.empty() && terms.front().first == c) terms.erase(terms.begin());
      rhs -= f * p.rhs;
    }
  }

  res.x.assign(unknowns_, T(0));
  for (std::size_t c = unknowns_; c-- > 0;) {
    if (pivot[c] < 0) {
      ++res.nullity;
      continue;
    }
    const Row& r = piv_rows[static_cast<std::size_t>(pivot[c])];
    T v = r.rhs;
    for (std::size_t k = 1; k < r.terms.size(); ++k) v -= r.terms[k].second * res.x[r.terms[k].first];
    res.x[c] = std::move(v);
  }
  for (const auto& eq : rows_) {
    T acc = -eq.rhs;
    for (const auto& t : eq.terms) acc += t.second * res.x[t.first];
    res.residual = std::max(res.residual, magnitude(acc));
  }
  res.residual = std::max(res.residual, worst_inconsistency);
  return res;
}

// ---- polynomials -------------------------------------------------------------------

template <class F>
std::pair<Polynomial<F>, Polynomial<F>> Polynomial<F>::divmod(const Polynomial& d) const {
  if (d.is_zero()) throw Error(ErrorKind::InvalidArgument, "Polynomial::divmod: division by zero polynomial");
  std::vector<F> r = c_;
  const int dd = d.degree();
  if (degree() < dd) return {Polynomial(), *this};
  std::vector<F> q(static_cast<std::size_t>(degree() - dd + 1), F(0));
  const F lead = d.leading();
  for (int k = degree() - dd; k >= 0; --k) {
    const F f = r[static_cast<std::size_t>(k + dd)] / lead;
    q[static_cast<std::size_t>(k)] = f;
    for (int j = 0; j <= dd; ++j) r[static_cast<std::size_t>(k + j)] -= f * d.c_[static_cast<std::size_t>(j)];
    r[static_cast<std::size_t>(k + dd)] = F(0);
  }
  r.resize(static_cast<std::size_t>(dd));
  return {Polynomial(std::move(q)), Polynomial(std::move(r))};
}

template <class F>
Polynomial<F> inverse_modulo(const Polynomial<F>& g, const Polynomial<F>& f, double tol) {
  const int n = f.degree();
  if (n < 1) return Polynomial<F>(std::vector<F>{F(1)});
  // columns: coefficients of x^k g mod f, k < n
  Matrix<F> a(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  Polynomial<F> xk(std::vector<F>{F(1)});
  const Polynomial<F> x = Polynomial<F>::monomial(1);
  for (int k = 0; k < n; ++k) {
    const auto r = (xk * g).divmod(f).second;
    for (int i = 0; i <= r.degree(); ++i) a(static_cast<std::size_t>(i), static_cast<std::size_t>(k)) = r[static_cast<std::size_t>(i)];
    xk = xk * x;
  }
  Matrix<F> rhs(static_cast<std::size_t>(n), 1);
  rhs(0, 0) = F(1);
  auto sol = solve_linear(a, rhs, tol);
  if (!sol.consistent || !sol.kernel.empty())
    throw Error(ErrorKind::Numerical, "inverse_modulo: polynomials are not coprime", sol.residual);
  std::vector<F> u(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) u[static_cast<std::size_t>(k)] = sol.solution(static_cast<std::size_t>(k), 0);
  return Polynomial<F>(std::move(u));
}

Matrix<double> evaluate(const Polynomial<double>& p, const Matrix<double>& m) {
  const std::size_t n = m.rows();
  Matrix<double> acc(n, n);
  for (std::size_t k = p.coeffs().size(); k-- > 0;) {
    acc = acc * m;
    for (std::size_t i = 0; i < n; ++i) acc(i, i) += p[k];
  }
  return acc;
}

Polynomial<double> minimal_polynomial_real(const Matrix<double>& m, double tol) {
  if (!m.square()) throw Error(ErrorKind::InvalidArgument, "minimal_polynomial_real: matrix not square");
  const std::size_t n = m.rows();
  const double norm = frobenius_norm(m);
  if (norm == 0.0) return Polynomial<double>::monomial(1);  // p(x) = x
  const double sigma = norm;
  const Matrix<double> ms = m * (1.0 / sigma);
  const std::size_t len = n * n;

  // Modified Gram-Schmidt on vec(ms^k), tracking the triangular factor.
  std::vector<std::vector<double>> q;     // orthonormal columns
  std::vector<std::vector<double>> rcol;  // R(:, k)
  Matrix<double> power = Matrix<double>::identity(n);
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<double> v(power.data().begin(), power.data().end());
    const double vnorm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    std::vector<double> r(q.size(), 0.0);
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t j = 0; j < q.size(); ++j) {
        const double d = std::inner_product(q[j].begin(), q[j].end(), v.begin(), 0.0);
        r[j] += d;
        for (std::size_t i = 0; i < len; ++i) v[i] -= d * q[j][i];
      }
    const double res = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    if (res <= tol * std::max(1.0, vnorm)) {
      // ms^k = sum_j c_j ms^j: back-substitute R c = r
      const std::size_t d = q.size();
      std::vector<double> c(d, 0.0);
      for (std::size_t j = d; j-- > 0;) {
        double s = r[j];
        for (std::size_t l = j + 1; l < d; ++l) s -= rcol[l][j] * c[l];
        c[j] = s / rcol[j][j];
      }
      // p~(x) = x^k - sum c_j x^j ; rescale to the unscaled matrix
      std::vector<double> coeffs(k + 1, 0.0);
      coeffs[k] = 1.0;
      for (std::size_t j = 0; j < k; ++j) coeffs[j] = -c[j] * std::pow(sigma, static_cast<double>(k - j));
      Polynomial<double> p(std::move(coeffs));
      const double check = frobenius_norm(evaluate(p, m));
      const double bound = tol * (1.0 + std::pow(norm, static_cast<double>(k)));
      if (check > bound * 1e3) {
        std::ostringstream os;
        os << "minimal_polynomial_real: certificate failed (||p(m)|| = " << check << ")";
        throw Error(ErrorKind::Numerical, os.str(), check);
      }
      return p;
    }
    for (auto& x : v) x /= res;
    r.push_back(res);
    q.push_back(std::move(v));
    rcol.push_back(std::move(r));
    power = power * ms;
  }
  throw Error(ErrorKind::Inconsistency, "minimal_polynomial_real: degree exceeds matrix dimension");
}

std::vector<Complex> polynomial_roots(const Polynomial<double>& p) {
  const int n = p.degree();
  if (n < 1) return {};
  std::vector<Complex> c(p.coeffs().begin(), p.coeffs().end());
  const Complex lead = c.back();
  for (auto& x : c) x /= lead;
  double bound = 0;
  for (int k = 0; k < n; ++k) bound = std::max(bound, std::abs(c[static_cast<std::size_t>(k)]));
  bound += 1.0;
  std::vector<Complex> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double ang = 2.0 * M_PI * k / n + 0.4;
    z[static_cast<std::size_t>(k)] = 0.5 * bound * Complex(std::cos(ang), std::sin(ang));
  }
  auto eval = [&](Complex x, Complex& dp) {
    Complex v = 0;
    dp = 0;
    for (int k = n; k >= 0; --k) {
      dp = dp * x + v;
      v = v * x + c[static_cast<std::size_t>(k)];
    }
    return v;
  };
  for (int iter = 0; iter < 2000; ++iter) {
    double worst = 0;
    for (int i = 0; i < n; ++i) {
      auto& zi = z[static_cast<std::size_t>(i)];
      Complex dp;
      const Complex v = eval(zi, dp);
      if (v == Complex(0)) continue;
      const Complex ratio = v / dp;
      Complex sum = 0;
      for (int j = 0; j < n; ++j)
        if (j != i) sum += 1.0 / (zi - z[static_cast<std::size_t>(j)]);
      const Complex w = ratio / (1.0 - ratio * sum);
      zi -= w;
      worst = std::max(worst, std::abs(w) / std::max(1.0, std::abs(zi)));
    }
    if (worst < 1e-15) break;
  }
  return z;
}

template std::vector<std::size_t> rref(Matrix<GaussRational>&, std::size_t, double);
template std::vector<std::size_t> rref(Matrix<Complex>&, std::size_t, double);
template std::vector<std::size_t> rref(Matrix<double>&, std::size_t, double);
template std::vector<std::size_t> rref(Matrix<mpq_class>&, std::size_t, double);
template LinearSolution<GaussRational> solve_linear(const Matrix<GaussRational>&, const Matrix<GaussRational>&, double);
template LinearSolution<Complex> solve_linear(const Matrix<Complex>&, const Matrix<Complex>&, double);
template LinearSolution<double> solve_linear(const Matrix<double>&, const Matrix<double>&, double);
template LinearSolution<mpq_class> solve_linear(const Matrix<mpq_class>&, const Matrix<mpq_class>&, double);
template std::vector<Vec<GaussRational>> kernel(const Matrix<GaussRational>&, double);
template std::vector<Vec<Complex>> kernel(const Matrix<Complex>&, double);
template std::vector<Vec<double>> kernel(const Matrix<double>&, double);
template std::size_t rank(const Matrix<GaussRational>&, double);
template std::size_t rank(const Matrix<Complex>&, double);
template std::size_t rank(const Matrix<double>&, double);
template std::optional<Matrix<GaussRational>> inverse(const Matrix<GaussRational>&, double);
template std::optional<Matrix<Complex>> inverse(const Matrix<Complex>&, double);
template std::optional<Matrix<double>> inverse(const Matrix<double>&, double);
template class SparseSystem<GaussRational>;
template class SparseSystem<Complex>;
template class Polynomial<double>;
template class Polynomial<mpq_class>;
template Polynomial<double> inverse_modulo(const Polynomial<double>&, const Polynomial<double>&, double);
template Polynomial<mpq_class> inverse_modulo(const Polynomial<mpq_class>&, const Polynomial<mpq_class>&, double);

}  // namespace qds::linalg

#include "qds/constructors.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include "qds/error.hpp"
#include "qds/linalg.hpp"

namespace qds {

using GR = GaussRational;

CayleyTable::CayleyTable(std::vector<std::string> names, std::vector<std::vector<std::size_t>> table)
    : names_(std::move(names)), table_(std::move(table)) {
  const std::size_t n = table_.size();
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "Cayley table: empty group");
  if (names_.empty())
    for (std::size_t i = 0; i < n; ++i) names_.push_back("g" + std::to_string(i + 1));
  if (names_.size() != n) throw Error(ErrorKind::InvalidArgument, "Cayley table: name count differs from order");
  for (const auto& row : table_) {
    if (row.size() != n) throw Error(ErrorKind::InvalidArgument, "Cayley table: ragged rows");
    for (auto x : row)
      if (x >= n) throw Error(ErrorKind::InvalidArgument, "Cayley table: entry out of range");
  }
  for (std::size_t a = 0; a < n; ++a)
    if (table_[0][a] != a || table_[a][0] != a)
      throw Error(ErrorKind::InvalidArgument, "Cayley table: element 1 is not the identity");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]]) {
          std::ostringstream os;
          os << "Cayley table: not associative at (" << names_[a] << ", " << names_[b] << ", " << names_[c] << ")";
          throw Error(ErrorKind::InvalidArgument, os.str());
        }
  inverse_.assign(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    std::size_t count = 0;
    for (std::size_t b = 0; b < n; ++b)
      if (table_[a][b] == 0) {
        inverse_[a] = b;
        ++count;
      }
    if (count != 1 || table_[inverse_[a]][a] != 0)
      throw Error(ErrorKind::InvalidArgument, "Cayley table: " + names_[a] + " has no unique inverse");
  }
}

std::size_t CayleyTable::element_order(std::size_t a) const {
  std::size_t k = 1;
  for (std::size_t x = a; x != 0; x = mul(x, a)) ++k;
  return k;
}

bool CayleyTable::is_abelian() const {
  for (std::size_t a = 0; a < order(); ++a)
    for (std::size_t b = a + 1; b < order(); ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

CayleyTable CayleyTable::cyclic(std::size_t n) {
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a) {
    names.push_back(a == 0 ? "e" : (a == 1 ? "g" : "g" + std::to_string(a)));
    for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  }
  return CayleyTable(std::move(names), std::move(t));
}

CayleyTable CayleyTable::direct_product(const CayleyTable& a, const CayleyTable& b) {
  const std::size_t na = a.order(), nb = b.order();
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> t(na * nb, std::vector<std::size_t>(na * nb));
  for (std::size_t x = 0; x < na * nb; ++x) {
    names.push_back("(" + a.names()[x / nb] + "," + b.names()[x % nb] + ")");
    for (std::size_t y = 0; y < na * nb; ++y) t[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
  }
  return CayleyTable(std::move(names), std::move(t));
}

namespace {

using M2 = std::array<GR, 4>;

M2 m2_mul(const M2& x, const M2& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}

M2 m2_neg(const M2& x) { return {-x[0], -x[1], -x[2], -x[3]}; }

// pi(1), pi(-1), pi(i), pi(-i), pi(j), pi(-j), pi(k), pi(-k)
std::vector<M2> quaternion_matrices() {
  const GR i(0, 1);
  const M2 one{GR(1), GR(0), GR(0), GR(1)};
  const M2 qi{GR(0), GR(1), GR(-1), GR(0)};
  const M2 qj{GR(0), i, i, GR(0)};
  const M2 qk = m2_mul(qi, qj);
  return {one, m2_neg(one), qi, m2_neg(qi), qj, m2_neg(qj), qk, m2_neg(qk)};
}

}  // namespace

CayleyTable CayleyTable::quaternion() {
  const auto m = quaternion_matrices();
  std::vector<std::vector<std::size_t>> t(8, std::vector<std::size_t>(8));
  for (std::size_t a = 0; a < 8; ++a)
    for (std::size_t b = 0; b < 8; ++b) {
      const M2 p = m2_mul(m[a], m[b]);
      t[a][b] = static_cast<std::size_t>(std::find(m.begin(), m.end(), p) - m.begin());
    }
  return CayleyTable({"1", "-1", "i", "-i", "j", "-j", "k", "-k"}, std::move(t));
}

CayleyTable parse_cayley(std::istream& in, const std::string& source) {
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::string line;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    lines.emplace_back(no, line);
  }
  auto fail = [&](std::size_t no, const std::string& what) -> Error {
    return Error(ErrorKind::Parse, source + ":" + std::to_string(no) + ": " + what);
  };
  if (lines.empty()) throw Error(ErrorKind::Parse, source + ": empty Cayley table file");
  std::size_t n = 0;
  {
    std::istringstream ss(lines[0].second);
    std::string extra;
    if (!(ss >> n) || n == 0 || (ss >> extra)) throw fail(lines[0].first, "expected the group order");
  }
  auto tokens = [](const std::string& s) {
    std::istringstream ss(s);
    std::vector<std::string> out;
    for (std::string t; ss >> t;) out.push_back(t);
    return out;
  };
  std::size_t next = 1;
  std::vector<std::string> names;
  if (lines.size() == n + 2) {
    names = tokens(lines[1].second);
    if (names.size() != n) throw fail(lines[1].first, "expected " + std::to_string(n) + " element names");
    next = 2;
  } else if (lines.size() != n + 1) {
    throw Error(ErrorKind::Parse, source + ": expected " + std::to_string(n) + " table rows");
  }
  std::vector<std::vector<std::size_t>> t;
  for (std::size_t r = 0; r < n; ++r) {
    const auto& [no, text] = lines[next + r];
    const auto tok = tokens(text);
    if (tok.size() != n) throw fail(no, "expected " + std::to_string(n) + " entries");
    std::vector<std::size_t> row;
    for (const auto& s : tok) {
      std::size_t pos = 0;
      long v = 0;
      try {
        v = std::stol(s, &pos);
      } catch (const std::exception&) {
        throw fail(no, "not an integer: " + s);
      }
      if (pos != s.size() || v < 1 || static_cast<std::size_t>(v) > n) throw fail(no, "entry out of range: " + s);
      row.push_back(static_cast<std::size_t>(v - 1));
    }
    t.push_back(std::move(row));
  }
  try {
    return CayleyTable(std::move(names), std::move(t));
  } catch (const Error& e) {
    throw Error(ErrorKind::Parse, source + ": " + e.what());
  }
}

CayleyTable load_cayley(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path.string());
  return parse_cayley(in, path.string());
}

// ---- groups ----------------------------------------------------------------------

HopfStarAlgebra<GR> from_cayley(const CayleyTable& g, GroupVariant variant, std::string name) {
  const std::size_t n = g.order();
  std::vector<std::string> labels;
  std::vector<SparseVec<GR>> mult(n * n);
  std::vector<TensorVec<GR>> comult(n);
  Vec<GR> unit(n, GR(0));
  Functional<GR> counit(n, GR(0));
  Matrix<GR> star(n, n), antipode(n, n);
  if (variant == GroupVariant::Functions) {
    if (name.empty()) name = "C(G)";
    for (std::size_t a = 0; a < n; ++a) {
      labels.push_back("d[" + g.names()[a] + "]");
      mult[a * n + a] = {{static_cast<std::uint32_t>(a), GR(1)}};
      unit[a] = GR(1);
      star(a, a) = GR(1);
      antipode(g.inverse(a), a) = GR(1);
      for (std::size_t b = 0; b < n; ++b)
        comult[g.mul(a, b)].emplace_back(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b), GR(1));
    }
    counit[0] = GR(1);
  } else {
    if (name.empty()) name = "C[G]";
    for (std::size_t a = 0; a < n; ++a) {
      labels.push_back("l[" + g.names()[a] + "]");
      for (std::size_t b = 0; b < n; ++b) mult[a * n + b] = {{static_cast<std::uint32_t>(g.mul(a, b)), GR(1)}};
      comult[a] = {{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a), GR(1)}};
      star(g.inverse(a), a) = GR(1);
      antipode(g.inverse(a), a) = GR(1);
      counit[a] = GR(1);
    }
    unit[0] = GR(1);
  }
  StarAlgebra<GR> alg(std::move(labels), std::move(mult), std::move(unit), AntilinearMap<GR>{std::move(star)});
  return HopfStarAlgebra<GR>(std::move(name), std::move(alg), std::move(comult), std::move(counit), std::move(antipode));
}

HopfStarAlgebra<GR> functions_in_basis(const CayleyTable& g, const Matrix<GR>& values, std::vector<std::string> labels,
                                       std::string name) {
  const std::size_t n = g.order();
  if (values.rows() != n || values.cols() != n || labels.size() != n)
    throw Error(ErrorKind::InvalidArgument, "functions_in_basis: dimension mismatch");
  const auto inv = linalg::inverse(values);
  if (!inv) throw Error(ErrorKind::InvalidArgument, "functions_in_basis: basis functions are not independent");
  const Matrix<GR>& pinv = *inv;
  auto coords = [&](const Vec<GR>& vals) { return pinv * vals; };

  std::vector<SparseVec<GR>> mult(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t c = 0; c < n; ++c) {
      Vec<GR> v(n);
      for (std::size_t x = 0; x < n; ++x) v[x] = values(x, a) * values(x, c);
      mult[a * n + c] = sparsify(coords(v));
    }
  Matrix<GR> star(n, n), antipode(n, n);
  Functional<GR> counit(n);
  std::vector<TensorVec<GR>> comult(n);
  for (std::size_t b = 0; b < n; ++b) {
    Vec<GR> conj_vals(n), inv_vals(n);
    for (std::size_t x = 0; x < n; ++x) {
      conj_vals[x] = values(x, b).conj();
      inv_vals[x] = values(g.inverse(x), b);
    }
    const Vec<GR> sc = coords(conj_vals), ac = coords(inv_vals);
    for (std::size_t k = 0; k < n; ++k) {
      star(k, b) = sc[k];
      antipode(k, b) = ac[k];
    }
    counit[b] = values(0, b);
    // b(xy) = sum d[j][k] b_j(x) b_k(y)  =>  d = P^{-1} B P^{-T}
    Matrix<GR> big(n, n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) big(x, y) = values(g.mul(x, y), b);
    const Matrix<GR> d = pinv * big * pinv.transpose();
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (!d(j, k).is_zero())
          comult[b].emplace_back(static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(k), d(j, k));
  }
  Vec<GR> unit = coords(Vec<GR>(n, GR(1)));
  StarAlgebra<GR> alg(std::move(labels), std::move(mult), std::move(unit), AntilinearMap<GR>{std::move(star)});
  return HopfStarAlgebra<GR>(std::move(name), std::move(alg), std::move(comult), std::move(counit),
                             std::move(antipode));
}

GradedCH quaternion_ch() {
  const CayleyTable q = CayleyTable::quaternion();
  const auto pi = quaternion_matrices();
  // characters of H / {1, -1}: sI(i) = 1, sI(j) = -1, ...
  const int s_i[8] = {1, 1, 1, 1, -1, -1, -1, -1};
  const int s_j[8] = {1, 1, -1, -1, 1, 1, -1, -1};
  Matrix<GR> values(8, 8);
  for (std::size_t g = 0; g < 8; ++g) {
    values(g, 0) = GR(1);
    values(g, 1) = GR(s_i[g]);
    values(g, 2) = GR(s_j[g]);
    values(g, 3) = GR(s_i[g] * s_j[g]);
    for (std::size_t e = 0; e < 4; ++e) values(g, 4 + e) = pi[g][e];
  }
  GradedCH out;
  out.algebra = functions_in_basis(q, values, {"1", "sI", "sJ", "sK", "p11", "p12", "p21", "p22"}, "C(H)");
  out.degree = {0, 0, 0, 0, 1, 1, 1, 1};
  out.group = q;
  out.values = values;
  const double defect = grading_defect(out.algebra, out.degree);
  if (defect != 0.0) throw Error(ErrorKind::Inconsistency, "quaternion_ch: grading violated", defect);
  return out;
}

double grading_defect(const HopfStarAlgebra<GR>& a, const std::vector<int>& degree) {
  const std::size_t n = a.dim();
  double worst = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [k, v] : a.alg().basis_product(i, j))
        if (degree[k] != (degree[i] + degree[j]) % 2) worst = std::max(worst, magnitude(v));
    for (std::size_t k = 0; k < n; ++k)
      if (degree[k] != degree[i]) worst = std::max(worst, magnitude(a.alg().star_map().m(k, i)));
    for (const auto& [j, k, v] : a.coproduct(i))
      if (degree[j] != degree[i] || degree[k] != degree[i]) worst = std::max(worst, magnitude(v));
  }
  return worst;
}

// ---- crossed products ------------------------------------------------------------

std::vector<std::size_t> parse_abelian_spec(const std::string& spec) {
  std::vector<std::size_t> factors;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, 'x')) {
    std::size_t pos = 0;
    long v = 0;
    try {
      v = std::stol(part, &pos);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "abelian group spec: not a number: '" + part + "'");
    }
    if (pos != part.size() || v < 1) throw Error(ErrorKind::Parse, "abelian group spec: bad factor '" + part + "'");
    if (v > 1) factors.push_back(static_cast<std::size_t>(v));
  }
  if (spec.empty() || spec.back() == 'x') throw Error(ErrorKind::Parse, "abelian group spec: '" + spec + "'");
  return factors;
}

namespace {

struct AbelianGroup {
  std::vector<std::size_t> factors;
  std::size_t order() const {
    std::size_t n = 1;
    for (auto f : factors) n *= f;
    return n;
  }
  std::vector<std::size_t> digits(std::size_t g) const {
    std::vector<std::size_t> d(factors.size());
    for (std::size_t k = factors.size(); k-- > 0;) {
      d[k] = g % factors[k];
      g /= factors[k];
    }
    return d;
  }
  std::size_t index(const std::vector<std::size_t>& d) const {
    std::size_t g = 0;
    for (std::size_t k = 0; k < factors.size(); ++k) g = g * factors[k] + d[k];
    return g;
  }
  std::size_t mul(std::size_t a, std::size_t b) const {
    auto x = digits(a), y = digits(b);
    for (std::size_t k = 0; k < factors.size(); ++k) x[k] = (x[k] + y[k]) % factors[k];
    return index(x);
  }
  std::size_t inverse(std::size_t a) const {
    auto x = digits(a);
    for (std::size_t k = 0; k < factors.size(); ++k) x[k] = (factors[k] - x[k]) % factors[k];
    return index(x);
  }
  std::string name(std::size_t g) const {
    const auto d = digits(g);
    if (d.size() == 1) return "g" + std::to_string(d[0]);
    std::string s = "g(";
    for (std::size_t k = 0; k < d.size(); ++k) s += (k ? "," : "") + std::to_string(d[k]);
    return s + ")";
  }
};

}  // namespace

CrossedProduct crossed_product(const std::string& gamma_spec) {
  const AbelianGroup gamma{parse_abelian_spec(gamma_spec)};
  const GradedCH ch = quaternion_ch();
  const auto& hh = ch.algebra;
  const std::size_t ng = gamma.order(), nh = hh.dim(), n = ng * nh;

  std::vector<std::string> labels;
  std::vector<SparseVec<GR>> mult(n * n);
  std::vector<TensorVec<GR>> comult(n);
  Matrix<GR> star(n, n);
  Functional<GR> counit(n);
  for (std::size_t g = 0; g < ng; ++g)
    for (std::size_t j = 0; j < nh; ++j) {
      const std::size_t row = g * nh + j;
      labels.push_back(gamma.name(g) + "." + hh.alg().labels()[j]);
      // (g (x) u_j)(g' (x) v) = g S^j(g') (x) u_j v
      for (std::size_t g2 = 0; g2 < ng; ++g2) {
        const std::size_t gg = gamma.mul(g, ch.degree[j] ? gamma.inverse(g2) : g2);
        for (std::size_t k = 0; k < nh; ++k)
          for (const auto& [l, v] : hh.alg().basis_product(j, k))
            mult[row * n + g2 * nh + k].emplace_back(static_cast<std::uint32_t>(gg * nh + l), v);
      }
      // (g (x) u_j)* = S^j(g*) (x) u_j*
      const std::size_t gs = ch.degree[j] ? g : gamma.inverse(g);
      for (std::size_t l = 0; l < nh; ++l) star(gs * nh + l, row) = hh.alg().star_map().m(l, j);
      for (const auto& [p, q, v] : hh.coproduct(j))
        comult[row].emplace_back(static_cast<std::uint32_t>(g * nh + p), static_cast<std::uint32_t>(g * nh + q), v);
      counit[row] = hh.counit()[j];
    }
  Vec<GR> unit(n, GR(0));
  for (std::size_t j = 0; j < nh; ++j) unit[j] = hh.alg().unit()[j];

  const std::string name = gamma.factors.empty() ? std::string("C(H)") : "C[Z" + gamma_spec + "]xC(H)";
  StarAlgebra<GR> alg(std::move(labels), std::move(mult), std::move(unit), AntilinearMap<GR>{std::move(star)});
  HopfStarAlgebra<GR> k(name, std::move(alg), std::move(comult), std::move(counit));
  k = k.with_antipode(solve_antipode(k));
  const auto axioms = verify_axioms(k);
  if (axioms.worst() != 0.0)
    throw Error(ErrorKind::Axiom, "crossed_product: axiom failure (" + axioms.failing_axiom(0.0) + ")", axioms.worst());

  const auto h_h = haar_state(hh).h;
  CrossedProduct out{std::move(k), gamma.factors, Functional<GR>(n, GR(0)), Functional<GR>(n, GR(0))};
  for (std::size_t g = 0; g < ng; ++g)
    for (std::size_t j = 0; j < nh; ++j) {
      if (g == 0) out.haar_product[j] = h_h[j];
      out.subgroup_state[g * nh + j] = h_h[j];
    }
  return out;
}

template <class T>
HopfStarAlgebra<T> tensor_product(const HopfStarAlgebra<T>& a, const HopfStarAlgebra<T>& b) {
  const std::size_t na = a.dim(), nb = b.dim(), n = na * nb;
  std::vector<std::string> labels;
  std::vector<SparseVec<T>> mult(n * n);
  std::vector<TensorVec<T>> comult(n);
  Matrix<T> star(n, n);
  Vec<T> unit(n, T(0));
  Functional<T> counit(n, T(0));
  const auto& sa = a.alg().star_map().m;
  const auto& sb = b.alg().star_map().m;
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) {
      const std::size_t r = i * nb + j;
      labels.push_back(a.alg().labels()[i] + "*" + b.alg().labels()[j]);
      unit[r] = a.alg().unit()[i] * b.alg().unit()[j];
      counit[r] = a.counit()[i] * b.counit()[j];
      for (std::size_t k = 0; k < na; ++k)
        for (std::size_t l = 0; l < nb; ++l) {
          star(k * nb + l, r) = sa(k, i) * sb(l, j);
          auto& entry = mult[r * n + k * nb + l];
          for (const auto& [x, u] : a.alg().basis_product(i, k))
            for (const auto& [y, v] : b.alg().basis_product(j, l))
              entry.emplace_back(static_cast<std::uint32_t>(x * nb + y), u * v);
        }
      for (const auto& [p, q, u] : a.coproduct(i))
        for (const auto& [s, t, v] : b.coproduct(j))
          comult[r].emplace_back(static_cast<std::uint32_t>(p * nb + s), static_cast<std::uint32_t>(q * nb + t), u * v);
    }
  std::optional<Matrix<T>> antipode;
  if (a.antipode() && b.antipode()) {
    Matrix<T> s(n, n);
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t j = 0; j < nb; ++j)
        for (std::size_t k = 0; k < na; ++k)
          for (std::size_t l = 0; l < nb; ++l) s(k * nb + l, i * nb + j) = (*a.antipode())(k, i) * (*b.antipode())(l, j);
    antipode = std::move(s);
  }
  StarAlgebra<T> alg(std::move(labels), std::move(mult), std::move(unit), AntilinearMap<T>{std::move(star)});
  const Provenance prov = a.provenance() == b.provenance() ? a.provenance() : Provenance::PromotedFromExact;
  return HopfStarAlgebra<T>(a.name() + "(x)" + b.name(), std::move(alg), std::move(comult), std::move(counit),
                            std::move(antipode), prov);
}

HopfStarAlgebra<GR> trivial_quantum_group() {
  StarAlgebra<GR> alg({"1"}, {{{0, GR(1)}}}, {GR(1)}, AntilinearMap<GR>{Matrix<GR>::identity(1)});
  return HopfStarAlgebra<GR>("C1", std::move(alg), {{{0, 0, GR(1)}}}, {GR(1)}, Matrix<GR>::identity(1));
}

template HopfStarAlgebra<GR> tensor_product(const HopfStarAlgebra<GR>&, const HopfStarAlgebra<GR>&);
template HopfStarAlgebra<Complex> tensor_product(const HopfStarAlgebra<Complex>&, const HopfStarAlgebra<Complex>&);

}  // namespace qds

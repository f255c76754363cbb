#include "qds/corep.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "qds/error.hpp"
#include "qds/linalg.hpp"

namespace qds {

namespace {

constexpr double kMatchTol = 1e-6;

std::size_t closest(const std::vector<Vec<Complex>>& candidates, const Vec<Complex>& x, double* distance) {
  std::size_t best = candidates.size();
  double best_d = 0;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    const double d = max_abs(Vec<Complex>(candidates[k] - x));
    if (best == candidates.size() || d < best_d) {
      best = k;
      best_d = d;
    }
  }
  if (distance) *distance = best_d;
  return best;
}

}  // namespace

Vec<Complex> Irrep::character() const {
  Vec<Complex> chi(u.front().size(), 0.0);
  for (std::size_t k = 0; k < dim; ++k) chi = chi + at(k, k);
  return chi;
}

std::vector<std::size_t> contragredient_pairing(const CorepData& c, double tol) {
  std::vector<Vec<Complex>> centrals;
  for (const auto& b : c.blocks.blocks) centrals.push_back(b.central);
  std::vector<std::size_t> partner(centrals.size());
  for (std::size_t s = 0; s < centrals.size(); ++s) {
    double d = 0;
    partner[s] = closest(centrals, dagger(c.algebra, centrals[s]), &d);
    if (d > std::max(tol, kMatchTol))
      throw Error(ErrorKind::Inconsistency, "contragredient_pairing: dagger does not permute the blocks", d);
  }
  for (std::size_t s = 0; s < partner.size(); ++s)
    if (partner[partner[s]] != s || c.blocks.blocks[s].size != c.blocks.blocks[partner[s]].size)
      throw Error(ErrorKind::Inconsistency, "contragredient_pairing: pairing is not an involution");
  return partner;
}

CorepData extract_irreps(const HopfStarAlgebra<Complex>& h, const Functional<Complex>& haar, double tol,
                         std::uint64_t seed) {
  const HopfStarAlgebra<Complex> hs = h.antipode() ? h : h.with_antipode(solve_antipode(h, tol));
  const std::size_t n = hs.dim();
  const auto& a = hs.alg();
  CorepData out;
  out.algebra = hs;
  out.haar = haar;
  out.dual = dual_algebra(hs);

  for (int attempt = 0; attempt < 4; ++attempt) {
    out.seed = seed + static_cast<std::uint64_t>(attempt) * 0x9E3779B97F4A7C15ULL;
    out.blocks = block_decompose(out.dual, tol, out.seed);
    std::vector<Vec<Complex>> units;
    for (const auto& b : out.blocks.blocks)
      for (const auto& u : b.units) units.push_back(u);
    // e_alpha(u_beta) = delta: the coordinates of u_beta are the columns of (E^T)^{-1}
    const auto inv = linalg::inverse(Matrix<Complex>::from_columns(units, n).transpose(), 1e-12);
    if (!inv) throw Error(ErrorKind::NonSemisimple, "extract_irreps: matrix units are not a basis of the dual");
    out.irreps.clear();
    std::size_t col = 0;
    for (std::size_t s = 0; s < out.blocks.blocks.size(); ++s) {
      Irrep ir;
      ir.index = s;
      ir.dim = out.blocks.blocks[s].size;
      for (std::size_t k = 0; k < ir.dim * ir.dim; ++k) ir.u.push_back(inv->column(col++));
      out.irreps.push_back(std::move(ir));
    }
    out.unitarity_residual = 0;
    out.corep_residual = 0;
    for (const auto& ir : out.irreps) {
      const std::size_t m = ir.dim;
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k) {
          Vec<Complex> rows(n, 0.0), cols(n, 0.0);
          for (std::size_t l = 0; l < m; ++l) {
            rows = rows + a.multiply(ir.at(j, l), a.star(ir.at(k, l)));
            cols = cols + a.multiply(a.star(ir.at(l, j)), ir.at(l, k));
          }
          if (j == k) {
            rows = rows - a.unit();
            cols = cols - a.unit();
          }
          out.unitarity_residual = std::max({out.unitarity_residual, max_abs(rows), max_abs(cols)});
          Matrix<Complex> d = hs.comultiply(ir.at(j, k));
          for (std::size_t l = 0; l < m; ++l) {
            const auto& x = ir.at(j, l);
            const auto& y = ir.at(l, k);
            for (std::size_t p = 0; p < n; ++p)
              for (std::size_t q = 0; q < n; ++q) d(p, q) -= x[p] * y[q];
          }
          out.corep_residual = std::max(out.corep_residual, max_abs(d));
        }
    }
    if (out.unitarity_residual <= std::max(tol, 1e-9) && out.corep_residual <= std::max(tol, 1e-9)) break;
    if (attempt == 3) {
      std::ostringstream os;
      os << "extract_irreps: unitarity fails (residual " << out.unitarity_residual << ")";
      throw Error(ErrorKind::Numerical, os.str(), out.unitarity_residual);
    }
  }

  bool found = false;
  for (const auto& ir : out.irreps)
    if (ir.dim == 1 && max_abs(Vec<Complex>(ir.u[0] - a.unit())) < kMatchTol) {
      if (found) throw Error(ErrorKind::Inconsistency, "extract_irreps: more than one trivial corepresentation");
      out.trivial = ir.index;
      found = true;
    }
  if (!found) throw Error(ErrorKind::Inconsistency, "extract_irreps: no trivial corepresentation");
  const auto partner = contragredient_pairing(out, tol);
  for (std::size_t s = 0; s < out.irreps.size(); ++s) out.irreps[s].contragredient = partner[s];
  return out;
}

double peter_weyl_residual(const CorepData& c) {
  const auto& a = c.algebra.alg();
  double worst = 0;
  for (const auto& s : c.irreps)
    for (std::size_t i = 0; i < s.dim; ++i)
      for (std::size_t j = 0; j < s.dim; ++j) {
        const Vec<Complex> x = a.star(s.at(i, j));
        for (const auto& t : c.irreps)
          for (std::size_t k = 0; k < t.dim; ++k)
            for (std::size_t l = 0; l < t.dim; ++l) {
              Complex v = evaluate(c.haar, a.multiply(x, t.at(k, l)));
              if (s.index == t.index && i == k && j == l) v -= 1.0 / static_cast<double>(s.dim);
              worst = std::max(worst, std::abs(v));
            }
      }
  return worst;
}

GroupLikes group_likes(const CorepData& c, double tol) {
  GroupLikes g;
  g.irreps.push_back(c.trivial);
  for (const auto& ir : c.irreps)
    if (ir.dim == 1 && ir.index != c.trivial) g.irreps.push_back(ir.index);
  for (auto s : g.irreps) g.elements.push_back(c.irreps[s].u[0]);
  const std::size_t m = g.elements.size();
  std::vector<std::vector<std::size_t>> table(m, std::vector<std::size_t>(m));
  std::vector<std::string> names;
  for (std::size_t x = 0; x < m; ++x) {
    names.push_back(x == 0 ? "1" : "g" + std::to_string(g.irreps[x]));
    for (std::size_t y = 0; y < m; ++y) {
      double d = 0;
      table[x][y] = closest(g.elements, c.algebra.alg().multiply(g.elements[x], g.elements[y]), &d);
      if (d > std::max(tol, kMatchTol))
        throw Error(ErrorKind::Inconsistency, "group_likes: product of group-likes is not group-like", d);
    }
  }
  g.table = CayleyTable(std::move(names), std::move(table));
  return g;
}

FusionTable fusion(const CorepData& c, double tol) {
  require_tracial(c.algebra, c.haar, tol);
  const auto& a = c.algebra.alg();
  const std::size_t m = c.irreps.size();
  std::vector<Vec<Complex>> chi, chi_star;
  for (const auto& ir : c.irreps) {
    chi.push_back(ir.character());
    chi_star.push_back(a.star(chi.back()));
  }
  FusionTable f;
  f.count = m;
  f.n.assign(m * m * m, 0);
  for (std::size_t s = 0; s < m; ++s)
    for (std::size_t t = 0; t < m; ++t) {
      const Vec<Complex> st = a.multiply(chi[s], chi[t]);
      for (std::size_t r = 0; r < m; ++r) {
        const Complex v = evaluate(c.haar, a.multiply(st, chi_star[r]));
        const double rounded = std::round(v.real());
        f.integrality = std::max(f.integrality, std::abs(v - Complex(rounded)));
        f.n[(s * m + t) * m + r] = static_cast<int>(rounded);
      }
    }
  if (f.integrality > std::max(tol, 1e-7)) {
    std::ostringstream os;
    os << "fusion: non-integral multiplicity (defect " << f.integrality << ")";
    throw Error(ErrorKind::Inconsistency, os.str(), f.integrality);
  }
  for (std::size_t s = 0; s < m; ++s)
    for (std::size_t t = 0; t < m; ++t) {
      std::size_t total = 0;
      for (std::size_t r = 0; r < m; ++r) {
        if (f.at(s, t, r) < 0) throw Error(ErrorKind::Inconsistency, "fusion: negative multiplicity");
        total += static_cast<std::size_t>(f.at(s, t, r)) * c.irreps[r].dim;
      }
      if (total != c.irreps[s].dim * c.irreps[t].dim)
        throw Error(ErrorKind::Inconsistency, "fusion: dimension sum rule fails");
      if (f.at(s, t, c.trivial) != (t == c.irreps[s].contragredient ? 1 : 0))
        throw Error(ErrorKind::Inconsistency, "fusion: trivial multiplicity disagrees with the contragredient");
    }
  return f;
}

IrrModGamma irr_mod_gamma(const CorepData& c, const GroupLikes& g, const FusionTable& f) {
  const std::size_t m = c.irreps.size();
  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t s = 0; s < m; ++s)
    for (auto gamma : g.irreps)
      for (std::size_t r = 0; r < m; ++r)
        if (f.at(s, gamma, r) > 0) parent[find(r)] = find(s);

  IrrModGamma out;
  out.class_of.assign(m, m);
  std::map<std::size_t, std::size_t> root_to_class;
  root_to_class[find(c.trivial)] = 0;
  out.classes.emplace_back();
  for (std::size_t s = 0; s < m; ++s) {
    const std::size_t root = find(s);
    auto it = root_to_class.find(root);
    if (it == root_to_class.end()) {
      it = root_to_class.emplace(root, out.classes.size()).first;
      out.classes.emplace_back();
    }
    out.class_of[s] = it->second;
    out.classes[it->second].push_back(s);
  }

  const std::size_t k = out.classes.size();
  out.product.assign(k * k, 0);
  out.well_defined = true;
  for (std::size_t x = 0; x < k && out.well_defined; ++x)
    for (std::size_t y = 0; y < k && out.well_defined; ++y) {
      std::set<std::size_t> hit;
      for (auto u : out.classes[x])
        for (auto v : out.classes[y])
          for (std::size_t w = 0; w < m; ++w)
            if (f.at(u, v, w) > 0) hit.insert(out.class_of[w]);
      if (hit.size() != 1) {
        std::ostringstream os;
        os << "class " << x << " times class " << y << " meets " << hit.size() << " classes";
        out.problem = os.str();
        out.well_defined = false;
      } else {
        out.product[x * k + y] = *hit.begin();
      }
    }
  if (!out.well_defined) return out;

  out.abelian = true;
  for (std::size_t x = 0; x < k; ++x)
    for (std::size_t y = 0; y < k; ++y)
      if (out.product[x * k + y] != out.product[y * k + x]) out.abelian = false;
  std::size_t exponent = 1;
  for (std::size_t x = 0; x < k; ++x) {
    std::size_t order = 1;
    for (std::size_t p = x; p != 0 && order <= k; p = out.product[p * k + x]) ++order;
    if (order > k) {
      exponent = 0;
      break;
    }
    exponent = std::lcm(exponent, order);
  }
  out.exponent = exponent;
  return out;
}

std::size_t twist_failures(const CorepData& c, const GroupLikes& g, const FusionTable& f) {
  std::size_t failures = 0;
  for (const auto& u : c.irreps) {
    if (u.dim != 2) continue;
    for (auto gamma : g.irreps) {
      std::size_t w = c.irreps.size();
      for (std::size_t r = 0; r < c.irreps.size(); ++r)
        if (f.at(gamma, u.index, r) > 0) w = r;
      bool found = false;
      for (auto other : g.irreps)
        if (w < c.irreps.size() && f.at(u.index, other, w) > 0) found = true;
      if (!found) ++failures;
    }
  }
  return failures;
}

GeneratedSubalgebra subalgebra_generated(const HopfStarAlgebra<Complex>& h, const Irrep& u, double tol) {
  const auto& a = h.alg();
  const std::size_t n = h.dim();
  const double thr = std::max(tol, 1e-8);

  std::vector<Vec<Complex>> raw, ortho;
  auto add = [&](const Vec<Complex>& x) {
    Vec<Complex> r = x;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : ortho) {
        Complex dot = 0;
        for (std::size_t i = 0; i < n; ++i) dot += std::conj(q[i]) * r[i];
        for (std::size_t i = 0; i < n; ++i) r[i] -= dot * q[i];
      }
    const double nr = norm2(r);
    if (nr <= thr * std::max(1.0, norm2(x))) return false;
    ortho.push_back(scaled(r, Complex(1.0 / nr)));
    raw.push_back(x);
    return true;
  };
  add(a.unit());
  for (const auto& x : u.u) {
    add(x);
    add(a.star(x));
  }
  for (std::size_t done = 0; done < raw.size(); ++done)
    for (std::size_t k = 0; k <= done; ++k) {
      add(a.multiply(raw[done], raw[k]));
      add(a.multiply(raw[k], raw[done]));
    }

  Matrix<Complex> rows(raw.size(), n);
  for (std::size_t p = 0; p < raw.size(); ++p)
    for (std::size_t i = 0; i < n; ++i) rows(p, i) = raw[p][i];
  const auto pivots = linalg::rref(rows, n, thr);
  const std::size_t d = pivots.size();
  GeneratedSubalgebra out;
  for (std::size_t p = 0; p < d; ++p) {
    Vec<Complex> b(rows.row(p).begin(), rows.row(p).end());
    for (auto& x : b)
      if (std::abs(x) < 1e-13) x = 0.0;
    out.basis.push_back(std::move(b));
  }
  double residual = 0;
  auto coords = [&](const Vec<Complex>& x) {
    Vec<Complex> c(d);
    Vec<Complex> rest = x;
    for (std::size_t p = 0; p < d; ++p) {
      c[p] = x[pivots[p]];
      rest = rest - scaled(out.basis[p], c[p]);
    }
    residual = std::max(residual, max_abs(rest));
    return c;
  };

  std::vector<std::string> labels;
  std::vector<SparseVec<Complex>> mult(d * d);
  Matrix<Complex> star(d, d), antipode(d, d);
  std::vector<TensorVec<Complex>> comult(d);
  Functional<Complex> counit(d);
  for (std::size_t p = 0; p < d; ++p) {
    labels.push_back("v" + std::to_string(p));
    for (std::size_t q = 0; q < d; ++q) mult[p * d + q] = sparsify(coords(a.multiply(out.basis[p], out.basis[q])), 1e-13);
    const auto sc = coords(a.star(out.basis[p]));
    const auto ac = coords(h.apply_antipode(out.basis[p]));
    for (std::size_t q = 0; q < d; ++q) {
      star(q, p) = sc[q];
      antipode(q, p) = ac[q];
    }
    counit[p] = evaluate(h.counit(), out.basis[p]);
    Matrix<Complex> dp = h.comultiply(out.basis[p]);
    for (std::size_t x = 0; x < d; ++x)
      for (std::size_t y = 0; y < d; ++y) {
        const Complex v = dp(pivots[x], pivots[y]);
        if (std::abs(v) < 1e-13) continue;
        comult[p].emplace_back(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y), v);
      }
    for (const auto& [x, y, v] : comult[p])
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) dp(i, j) -= v * out.basis[x][i] * out.basis[y][j];
    residual = std::max(residual, max_abs(dp));
  }
  out.restriction_residual = residual;
  if (residual > 1e3 * thr) {
    std::ostringstream os;
    os << "subalgebra_generated: the Hopf structure does not restrict (residual " << residual << ")";
    throw Error(ErrorKind::Inconsistency, os.str(), residual);
  }
  StarAlgebra<Complex> alg(std::move(labels), std::move(mult), coords(a.unit()), AntilinearMap<Complex>{star});
  out.algebra = HopfStarAlgebra<Complex>("A(u" + std::to_string(u.index) + ")", std::move(alg), std::move(comult),
                                         std::move(counit), std::move(antipode), h.provenance());
  return out;
}

CayleyTable identify_commutative(const HopfStarAlgebra<Complex>& h, double tol, std::uint64_t seed) {
  if (!is_commutative(h, std::max(tol, 1e-9)).holds)
    throw Error(ErrorKind::InvalidArgument, "identify_commutative: the algebra is not commutative");
  const std::size_t n = h.dim();
  const auto d = block_decompose(h.alg(), tol, seed);
  if (d.blocks.size() != n) throw Error(ErrorKind::NonSemisimple, "identify_commutative: character count differs from dim");
  std::vector<Vec<Complex>> p;
  for (const auto& b : d.blocks) p.push_back(b.central);
  // b_i = sum_s chi_s(b_i) p_s
  const auto inv = linalg::inverse(Matrix<Complex>::from_columns(p, n), 1e-12);
  if (!inv) throw Error(ErrorKind::NonSemisimple, "identify_commutative: idempotents are not a basis");
  std::vector<Functional<Complex>> chars(n);
  for (std::size_t s = 0; s < n; ++s) {
    chars[s].resize(n);
    for (std::size_t i = 0; i < n; ++i) chars[s][i] = (*inv)(s, i);
  }
  double dist = 0;
  const std::size_t e = closest(chars, h.counit(), &dist);
  if (dist > kMatchTol) throw Error(ErrorKind::Inconsistency, "identify_commutative: counit is not a character");
  std::swap(chars[0], chars[e]);
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  std::vector<std::string> names;
  for (std::size_t x = 0; x < n; ++x) {
    names.push_back(x == 0 ? "e" : "x" + std::to_string(x));
    for (std::size_t y = 0; y < n; ++y) {
      table[x][y] = closest(chars, convolve(h, chars[x], chars[y]), &dist);
      if (dist > kMatchTol)
        throw Error(ErrorKind::Inconsistency, "identify_commutative: characters are not closed under convolution", dist);
    }
  }
  return CayleyTable(std::move(names), std::move(table));
}

bool is_quaternion_group(const CayleyTable& g) {
  if (g.order() != 8) return false;
  std::size_t involution = 0, n2 = 0, n4 = 0;
  for (std::size_t a = 1; a < 8; ++a) {
    const auto o = g.element_order(a);
    if (o == 2) {
      ++n2;
      involution = a;
    } else if (o == 4) {
      ++n4;
    }
  }
  if (n2 != 1 || n4 != 6) return false;
  for (std::size_t a = 1; a < 8; ++a)
    if (g.element_order(a) == 4 && g.mul(a, a) != involution) return false;
  return true;
}

bool groups_isomorphic(const CayleyTable& a, const CayleyTable& b) {
  const std::size_t n = a.order();
  if (b.order() != n) return false;
  std::vector<std::size_t> oa(n), ob(n);
  for (std::size_t x = 0; x < n; ++x) {
    oa[x] = a.element_order(x);
    ob[x] = b.element_order(x);
  }
  {
    auto sa = oa, sb = ob;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
  }
  std::vector<std::size_t> map(n, n);
  std::vector<char> used(n, 0);
  map[0] = 0;
  used[0] = 1;
  auto consistent = [&](std::size_t x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (map[y] == n) continue;
      for (auto [p, q] : {std::pair{x, y}, std::pair{y, x}}) {
        const std::size_t r = a.mul(p, q);
        if (map[r] != n && map[r] != b.mul(map[p], map[q])) return false;
      }
    }
    return true;
  };
  std::function<bool(std::size_t)> extend = [&](std::size_t x) -> bool {
    if (x == n) return true;
    for (std::size_t y = 0; y < n; ++y) {
      if (used[y] || ob[y] != oa[x]) continue;
      map[x] = y;
      used[y] = 1;
      if (consistent(x) && extend(x + 1)) return true;
      map[x] = n;
      used[y] = 0;
    }
    return false;
  };
  return extend(1);
}

}  // namespace qds

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qds/constructors.hpp"
#include "qds/corep.hpp"
#include "qds/dsfamily.hpp"
#include "qds/error.hpp"
#include "qds/linalg.hpp"

using namespace qds;
using GR = GaussRational;
using Clock = std::chrono::steady_clock;

namespace {

class Criterion {
 public:
  void require(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) failures_.push_back(what);
  }
  void note(const std::string& s) { notes_.push_back(s); }
  bool passed() const { return failures_.empty(); }

  std::string summary() const {
    std::ostringstream out;
    out << checks_ << " checks";
    for (const auto& n : notes_) out << "; " << n;
    for (const auto& f : failures_) out << "; FAILED: " << f;
    return out.str();
  }

 private:
  std::size_t checks_ = 0;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(3);
  s << x;
  return s.str();
}

CayleyTable group(const std::string& name) { return load_cayley(std::string(QDS_DATA_DIR "/groups/") + name + ".txt"); }

HopfStarAlgebra<GR> functions_on(const std::string& name) {
  return from_cayley(group(name), GroupVariant::Functions, "C(" + name + ")");
}

HopfStarAlgebra<GR> group_algebra(const std::string& name) {
  return from_cayley(group(name), GroupVariant::GroupAlgebra, "C[" + name + "]");
}

// 1/|G| on every delta function
Functional<GR> uniform(std::size_t n) { return Functional<GR>(n, GR(mpq_class(1, n))); }

bool is_member(const std::vector<BlockClassification>& blocks) {
  return std::all_of(blocks.begin(), blocks.end(), [](const auto& b) { return b.division(); });
}

// one identity, one involution, six elements of order four
bool quaternion_order_profile(const CayleyTable& g) {
  if (g.order() != 8) return false;
  std::size_t by_order[9] = {};
  for (std::size_t x = 0; x < 8; ++x) {
    const auto o = g.element_order(x);
    if (o > 8) return false;
    ++by_order[o];
  }
  return by_order[1] == 1 && by_order[2] == 1 && by_order[4] == 6;
}

struct Named {
  std::string name;
  HopfStarAlgebra<GR> h;
};

std::vector<Named> ds_members() {
  std::vector<Named> out;
  for (const char* g : {"z2", "z3", "z4", "z2xz2", "quaternion", "quaternion_x_z2"}) out.push_back({g, functions_on(g)});
  for (const char* g : {"s3", "d4", "quaternion"}) out.push_back({std::string("C[") + g + "]", group_algebra(g)});
  out.push_back({"crossed 4", crossed_product("4").algebra});
  return out;
}

void ac1(Criterion& c) {
  const std::vector<std::pair<std::string, bool>> cases = {
      {"z2", true},  {"z3", true}, {"z4", true},         {"z2xz2", true},
      {"quaternion", true}, {"quaternion_x_z2", true}, {"d4", false}, {"s3", false}, {"quaternion_x_z4", false}};
  double slowest = 0;
  for (const auto& [name, member] : cases) {
    const auto t0 = Clock::now();
    const auto h = functions_on(name);
    const auto ctx = make_context(h);
    const auto v = ds_verdict(ctx);
    const double t = seconds_since(t0);
    slowest = std::max(slowest, t);
    c.require(t < 5.0, name + " took " + fmt(t) + " s");
    c.require(v.member == member, name + " membership");
    if (member) {
      c.require(v.certificate.has_value(), name + " certificate");
      continue;
    }
    if (!v.witness) {
      c.require(false, name + " witness missing");
      continue;
    }
    const auto& w = *v.witness;
    const std::size_t n = h.dim();
    // oracle: the Haar state of C(G) is the uniform average
    c.require(ctx.exact_haar && *ctx.exact_haar == uniform(n), name + " Haar state is not uniform");
    if (w.exact && w.exact_phi) {
      const auto& phi = *w.exact_phi;
      c.require(convolve(h, phi, phi) == uniform(n), name + " phi*phi != h exactly");
      c.require(phi != uniform(n), name + " phi == h");
      // C(G) is commutative: phi is positive iff phi(delta_g) >= 0 for every g
      bool positive = true;
      for (const auto& x : phi) positive = positive && x.im() == 0 && x.re() >= 0;
      c.require(positive, name + " phi not positive");
    } else {
      const auto hc = to_complex(h);
      const auto sq = convolve(hc, w.phi, w.phi);
      double res = 0, dist = 0, low = 0;
      for (std::size_t g = 0; g < n; ++g) {
        res = std::max(res, std::abs(sq[g] - 1.0 / double(n)));
        dist = std::max(dist, std::abs(w.phi[g] - 1.0 / double(n)));
        low = std::min(low, w.phi[g].real());
      }
      c.require(res <= 1e-9, name + " ||phi*phi - h|| = " + fmt(res));
      c.require(dist > 1e-6, name + " phi == h");
      c.require(low >= -1e-9, name + " phi not positive");
    }
    c.require(w.min_gram >= -1e-9, name + " Gram eigenvalue " + fmt(w.min_gram));
    c.note(name + " eps=" + w.epsilon_text + (w.exact ? " exact" : " float"));
  }
  c.note("slowest " + fmt(slowest) + " s");
}

void ac2(Criterion& c) {
  for (const char* name : {"s3", "d4", "quaternion"}) {
    const auto v = ds_verdict(make_context(group_algebra(name)));
    c.require(v.member, std::string("C[") + name + "] membership");
    for (const auto& b : v.blocks)
      c.require(b.kind != BlockKind::QuaternionType, std::string("C[") + name + "] quaternion block");
  }
}

void ac3(Criterion& c) {
  const auto t0 = Clock::now();
  const auto cp = crossed_product("4");
  const auto& h = cp.algebra;
  c.require(verify_axioms(h).worst() == 0, "exact axioms");
  c.require(h.dim() == 32 && h.dim() % 8 == 0, "dimension");
  c.require(haar_state(h).h == cp.haar_product, "Haar state differs from h_Gamma (x) h_H");
  const auto ctx = make_context(h);
  c.require(!is_commutative(ctx.algebra).holds, "commutative");
  c.require(!is_cocommutative(ctx.algebra).holds, "cocommutative");
  c.require(is_kac(h, cp.haar_product).holds, "not Kac");
  const auto v = ds_verdict(ctx);
  c.require(v.member, "membership");
  std::size_t ones = 0, twos = 0;
  for (const auto& ir : ctx.corep.irreps) {
    ones += ir.dim == 1;
    twos += ir.dim == 2;
  }
  c.require(ones == 16 && twos == 4 && ctx.corep.irreps.size() == 20, "irrep dimensions");
  const double t = seconds_since(t0);
  c.require(t < 60.0, "took " + fmt(t) + " s");
  c.note(fmt(t) + " s");
}

void ac4(Criterion& c) {
  auto star = [](const Matrix<Complex>& q, const Matrix<Complex>& a) { return q * a.conjugate() * *linalg::inverse(q); };
  for (double q : {0.25, 0.5, 1.0}) {
    const auto b = suq2_block(1, q);
    c.require(b.kind == BlockKind::QuaternionType && b.m == 1 && b.division_dim == 4 && !b.nilpotent,
              "spin 1/2 q=" + fmt(q));
  }
  for (double q : {-0.25, -0.5, -1.0}) {
    const auto b = suq2_block(1, q);
    c.require(b.kind == BlockKind::RealType && b.m == 2, "spin 1/2 q=" + fmt(q) + " kind");
    const Complex r(0, std::sqrt(-q));
    Matrix<Complex> n(2, 2);
    n(0, 0) = r;
    n(0, 1) = -q;
    n(1, 0) = 1;
    n(1, 1) = -r;
    const auto qm = suq2_intertwiner(2, q);
    const double sq = max_abs(n * n), fixed = max_abs(star(qm, n) - n);
    c.require(sq <= 1e-12 && fixed <= 1e-12, "q=" + fmt(q) + " witness residuals " + fmt(sq) + ", " + fmt(fixed));
    c.require(b.closed_form_witness && max_abs(*b.closed_form_witness - n) <= 1e-12, "q=" + fmt(q) + " witness mismatch");
  }
  for (int twice : {2, 3})
    for (double q : {-0.5, 0.5, 1.0}) {
      const auto b = suq2_block(twice, q);
      const std::string tag = "spin " + std::to_string(twice) + "/2 q=" + fmt(q);
      c.require(b.m > 1, tag + " division");
      if (!b.nilpotent) {
        c.require(false, tag + " no nilpotent");
        continue;
      }
      const auto& n = *b.nilpotent;
      const auto qm = suq2_intertwiner(b.n, q);
      c.require(max_abs(n) > 1e-6, tag + " zero nilpotent");
      c.require(max_abs(n * n) <= 1e-9 * std::max(1.0, max_abs(n)), tag + " N^2 != 0");
      c.require(max_abs(star(qm, n) - n) <= 1e-9, tag + " not fixed");
    }
}

void ac5(Criterion& c) {
  std::vector<Named> suite;
  for (const char* g : {"z2", "z3", "z4", "z2xz2", "quaternion", "quaternion_x_z2", "d4", "s3", "quaternion_x_z4"})
    suite.push_back({g, functions_on(g)});
  for (const char* g : {"z4", "s3", "d4", "quaternion"}) suite.push_back({std::string("C[") + g + "]", group_algebra(g)});
  for (const char* g : {"1", "2", "4", "2x2"}) suite.push_back({std::string("crossed ") + g, crossed_product(g).algebra});
  suite.push_back({"C(quaternion)(x)C(z2)", tensor_product(functions_on("quaternion"), functions_on("z2"))});
  suite.push_back({"C(z2)(x)C[s3]", tensor_product(functions_on("z2"), group_algebra("s3"))});
  std::size_t members = 0;
  for (const auto& a : suite) {
    c.require(a.h.dim() >= 2 && a.h.dim() <= 32, a.name + " dimension out of range");
    const auto ctx = make_context(a.h);
    const bool by_blocks = is_member(classify_all(ctx));
    const auto r = square_root(ctx);
    c.require(by_blocks == r.certificate.has_value(), a.name + " routes disagree");
    c.require(r.certificate.has_value() != r.witness.has_value(), a.name + " neither or both");
    members += by_blocks;
  }
  c.require(suite.size() >= 12, "suite too small");
  c.note(std::to_string(suite.size()) + " algebras, " + std::to_string(members) + " members");
}

void ac6(Criterion& c) {
  const auto ch = to_complex(functions_on("quaternion"));
  const auto cc = extract_irreps(ch, haar_state(ch).h);
  const double r1 = peter_weyl_residual(cc);
  c.require(r1 <= 1e-9, "C(H) residual " + fmt(r1));
  double worst = 0;
  for (const auto& ir : cc.irreps) {
    if (ir.dim != 2) continue;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        // delta basis: the coordinates of u_ij are its values at the 8 group elements
        double avg = 0;
        for (std::size_t g = 0; g < 8; ++g) avg += std::norm(ir.at(i, j)[g]) / 8.0;
        worst = std::max(worst, std::abs(avg - 0.5));
      }
  }
  c.require(worst <= 1e-9, "pointwise average off by " + fmt(worst));
  const auto cp = crossed_product("4");
  const auto kc = to_complex(cp.algebra);
  const double r2 = peter_weyl_residual(extract_irreps(kc, to_complex(cp.haar_product)));
  c.require(r2 <= 1e-9, "crossed product residual " + fmt(r2));
  c.note("residuals " + fmt(r1) + ", " + fmt(r2));
}

void ac7(Criterion& c) {
  std::size_t tested = 0;
  for (const auto& a : ds_members()) {
    const auto ctx = make_context(a.h);
    for (const auto& ir : ctx.corep.irreps) {
      if (ir.dim != 2) continue;
      ++tested;
      const auto sub = subalgebra_generated(ctx.algebra, ir);
      const std::string tag = a.name + " irrep " + std::to_string(ir.index);
      c.require(sub.algebra.dim() == 8, tag + " dimension");
      c.require(is_commutative(sub.algebra).holds, tag + " not commutative");
      c.require(quaternion_order_profile(identify_commutative(sub.algebra)), tag + " not the quaternion group");
    }
  }
  c.require(tested > 0, "no 2-dim irreps");
  c.note(std::to_string(tested) + " irreps");
}

void ac8(Criterion& c) {
  auto quotient = [](const HopfStarAlgebra<GR>& h) {
    const auto ctx = make_context(h);
    const auto gl = group_likes(ctx.corep);
    return irr_mod_gamma(ctx.corep, gl, fusion(ctx.corep));
  };
  c.require(quotient(group_algebra("s3")).classes.size() == 1, "C[S3] not trivial");
  for (const auto& [name, h] : {Named{"C(H)", functions_on("quaternion")}, Named{"crossed 4", crossed_product("4").algebra}}) {
    const auto r = quotient(h);
    c.require(r.well_defined && r.classes.size() == 2 && r.exponent == 2, name + " not Z2");
  }
  for (const auto& a : ds_members()) {
    const auto r = quotient(a.h);
    c.require(r.well_defined, a.name + " ill-defined: " + r.problem);
    c.require(r.abelian, a.name + " not abelian");
    c.require(r.exponent >= 1 && r.exponent <= 2, a.name + " exponent " + std::to_string(r.exponent));
  }
}

void ac9(Criterion& c) {
  double worst = 0;
  for (const auto& a : ds_members()) {
    const auto ctx = make_context(a.h);
    const auto r = hamiltonian_certificate(ctx, ds_verdict(ctx));
    c.require(r.passes && r.worst_commutator <= 1e-9, a.name + " commutator " + fmt(r.worst_commutator));
    worst = std::max(worst, r.worst_commutator);
  }
  const auto d4 = make_context(functions_on("d4"));
  const auto r = hamiltonian_certificate(d4, ds_verdict(d4));
  c.require(!r.passes && r.noncentral_commutator >= 0.1, "C(D4) commutator " + fmt(r.noncentral_commutator));
  const auto& p = r.noncentral_idempotent;
  const auto& dual = d4.corep.dual;
  c.require(max_abs(Vec<Complex>(dual.multiply(p, p) - p)) <= 1e-9, "C(D4) not idempotent");
  c.require(max_abs(Vec<Complex>(dagger(d4.algebra, p) - p)) <= 1e-9, "C(D4) not hermitian");
  // oracle: commutators with the functionals e_g directly
  double direct = 0;
  for (std::size_t g = 0; g < d4.algebra.dim(); ++g) {
    Functional<Complex> e(d4.algebra.dim(), 0.0);
    e[g] = 1;
    direct = std::max(direct, max_abs(Vec<Complex>(dual.multiply(p, e) - dual.multiply(e, p))));
  }
  c.require(direct > 1e-3, "C(D4) idempotent is central");
  c.note("members worst " + fmt(worst) + ", C(D4) " + fmt(r.noncentral_commutator));
}

void ac10(Criterion& c) {
  std::size_t blocks = 0;
  for (const char* name :
       {"z2", "z3", "z4", "z2xz2", "quaternion", "quaternion_x_z2", "quaternion_x_z4", "d4", "s3"}) {
    const auto g = group(name);
    for (auto variant : {GroupVariant::Functions, GroupVariant::GroupAlgebra}) {
      const auto ctx = make_context(from_cayley(g, variant));
      for (const auto& b : classify_all(ctx)) {
        const auto& ir = ctx.corep.irreps[b.s];
        double nu = 0;
        if (variant == GroupVariant::Functions) {
          const auto chi = ir.character();
          for (std::size_t x = 0; x < g.order(); ++x) nu += chi[g.mul(x, x)].real() / double(g.order());
        } else {
          // the corepresentation is lambda_x; its indicator is [x^2 = e]
          std::size_t x = 0;
          while (x < g.order() && std::abs(ir.u[0][x] - 1.0) > 1e-9) ++x;
          nu = x < g.order() && g.mul(x, x) == 0 ? 1 : 0;
        }
        const BlockKind expect =
            nu > 0.5 ? BlockKind::RealType : nu < -0.5 ? BlockKind::QuaternionType : BlockKind::ComplexType;
        c.require(b.kind == expect, std::string(name) + " block " + std::to_string(b.s) + " nu=" + fmt(nu));
        ++blocks;
      }
    }
  }
  c.note(std::to_string(blocks) + " blocks");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Criterion&)>>> criteria = {
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5},
      {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}, {"AC10", ac10},
  };
  int failed = 0;
  for (const auto& [id, run] : criteria) {
    Criterion c;
    try {
      run(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    std::cout << id << (c.passed() ? " PASS " : " FAIL ") << c.summary() << std::endl;
    failed += !c.passed();
  }
  return failed == 0 ? 0 : 1;
}

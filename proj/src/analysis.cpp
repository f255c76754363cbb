#include "qds/analysis.hpp"

#include <chrono>
#include <sstream>

#include "qds/corep.hpp"
#include "qds/error.hpp"

namespace qds {

namespace {

using Clock = std::chrono::steady_clock;

class Timer {
 public:
  void lap(const char* stage) {
    const auto now = Clock::now();
    laps_[stage] = std::chrono::duration<double>(now - last_).count();
    last_ = now;
  }
  Json json() const {
    Json j = laps_;
    j["total"] = std::chrono::duration<double>(last_ - start_).count();
    return j;
  }

 private:
  Clock::time_point start_ = Clock::now();
  Clock::time_point last_ = start_;
  Json laps_ = Json::object();
};

Json check_json(const PropertyCheck& c) { return Json{{"holds", c.holds}, {"residual", c.residual}}; }

Json axioms_json(const AxiomReport& r, double tol) {
  Json j;
  j["passes"] = r.passes(tol);
  j["worst"] = r.worst();
  j["algebra"] = Json{{"associativity", r.algebra.associativity},
                      {"unit", r.algebra.unit},
                      {"involution", r.algebra.involution},
                      {"antimultiplicative", r.algebra.antimultiplicative}};
  j["comult_homomorphism"] = r.comult_homomorphism;
  j["comult_star"] = r.comult_star;
  j["comult_unit"] = r.comult_unit;
  j["coassociativity"] = r.coassociativity;
  j["counit"] = r.counit;
  j["antipode"] = r.antipode ? Json(*r.antipode) : Json(nullptr);
  return j;
}

bool exact_input(const AnyQGroup& h) { return std::holds_alternative<HopfStarAlgebra<GaussRational>>(h); }

}  // namespace

AxiomReport require_axioms(const AnyQGroup& h, double tol) {
  const AxiomReport r = std::visit([](const auto& x) { return verify_axioms(x); }, h);
  const double limit = exact_input(h) ? 0.0 : tol;
  if (!r.passes(limit)) {
    std::ostringstream os;
    os << "axiom failure: " << r.failing_axiom(limit) << " (residual " << r.worst() << ")";
    throw Error(ErrorKind::Axiom, os.str(), r.worst());
  }
  return r;
}

DsContext context_for(const AnyQGroup& h, double tol, std::uint64_t seed) {
  return std::visit([&](const auto& x) { return make_context(x, tol, seed); }, h);
}

Json block_json(const BlockClassification& b) {
  Json j;
  j["index"] = b.s;
  j["partner"] = b.sc;
  j["size"] = b.n;
  j["kind"] = to_string(b.kind);
  j["m"] = b.m;
  j["division"] = b.division();
  j["c"] = b.q ? Json(b.c) : Json(nullptr);
  j["q_residual"] = b.q_residual;
  j["division_dim"] = b.division_dim;
  return j;
}

Json witness_json(const SquareRootWitness& w) {
  Json j;
  j["block"] = w.block;
  j["exact"] = w.exact;
  j["epsilon"] = w.epsilon_text;
  j["epsilon_value"] = w.epsilon;
  j["lambda_min"] = w.lambda_min;
  j["residuals"] = Json{{"psi_squared", w.nilpotent_residual},
                        {"phi_squared_minus_haar", w.sqrt_residual},
                        {"positivity_min_eigenvalue", w.min_gram},
                        {"distance_from_haar", w.distance_from_haar}};
  j["psi"] = vector_json(w.psi);
  j["density"] = vector_json(w.x);
  j["phi"] = w.exact_phi ? vector_json(*w.exact_phi) : vector_json(w.phi);
  return j;
}

Json certificate_json(const NoneCertificate& c) {
  Json blocks = Json::array();
  for (const auto& b : c.blocks) blocks.push_back(block_json(b));
  return Json{{"all_division", true}, {"blocks", std::move(blocks)}};
}

Json suq2_json(const SuqBlock& b) {
  auto matrix = [](const Matrix<Complex>& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      Json row = Json::array();
      for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(scalar_json(m(i, k)));
      rows.push_back(std::move(row));
    }
    return rows;
  };
  Json j;
  j["schema"] = kSuqSchema;
  j["spin"] = b.twice_spin / 2.0;
  j["q"] = b.q;
  j["n"] = b.n;
  j["Q"] = matrix(b.Q);
  j["c"] = b.c;
  j["kind"] = to_string(b.kind);
  j["m"] = b.m;
  j["division"] = b.m == 1;
  j["real_dim"] = b.real_dim;
  j["division_dim"] = b.division_dim;
  if (b.nilpotent) {
    j["nilpotent"] = matrix(*b.nilpotent);
    j["nilpotent_residual"] = b.nilpotent_residual;
  } else {
    j["nilpotent"] = nullptr;
  }
  if (b.closed_form_witness) {
    j["closed_form_witness"] = matrix(*b.closed_form_witness);
    j["closed_form_witness_residual"] = b.closed_form_witness_residual;
  }
  return j;
}

Json analyze(const AnyQGroup& h, const AnalysisOptions& opt) {
  Timer timer;
  Json j;
  j["schema"] = kReportSchema;
  j["name"] = name_of(h);
  const auto hc = as_complex(h);
  j["dim"] = hc.dim();
  j["scalar"] = exact_input(h) ? ScalarTraits<GaussRational>::mode_name : ScalarTraits<Complex>::mode_name;
  j["seed"] = opt.seed;
  j["tolerance"] = opt.tol;

  const AxiomReport axioms = require_axioms(h, opt.tol);
  j["axioms"] = axioms_json(axioms, exact_input(h) ? 0.0 : opt.tol);
  timer.lap("axioms");

  const DsContext ctx = context_for(h, opt.tol, opt.seed);
  Json haar;
  haar["state"] = ctx.exact_haar ? vector_json(*ctx.exact_haar) : vector_json(ctx.haar);
  haar["exact"] = ctx.exact_haar.has_value();
  haar["min_gram_eigenvalue"] = positivity_margin(ctx.algebra, ctx.haar, opt.tol);
  j["haar"] = std::move(haar);
  j["flags"] = Json{{"commutative", check_json(is_commutative(ctx.algebra, opt.tol))},
                    {"cocommutative", check_json(is_cocommutative(ctx.algebra, opt.tol))},
                    {"kac", check_json(is_kac(ctx.algebra, ctx.haar, opt.tol))}};
  timer.lap("haar");

  const auto& c = ctx.corep;
  Json dims = Json::array();
  for (const auto& ir : c.irreps) dims.push_back(ir.dim);
  j["irreps"] = Json{{"count", c.irreps.size()},
                     {"dims", std::move(dims)},
                     {"trivial", c.trivial},
                     {"corep_residual", c.corep_residual},
                     {"unitarity_residual", c.unitarity_residual},
                     {"peter_weyl_residual", peter_weyl_residual(c)},
                     {"block_residual", c.blocks.residual}};
  timer.lap("irreps");

  const auto gl = group_likes(c, opt.tol);
  const auto f = fusion(c, opt.tol);
  j["group_likes"] = Json{{"order", gl.table.order()}, {"abelian", gl.table.is_abelian()}};
  j["fusion"] = Json{{"integrality", f.integrality}};
  timer.lap("fusion");

  SquareRootOptions so;
  so.epsilon = opt.epsilon;
  const DsVerdict v = ds_verdict(ctx, so);
  Json blocks = Json::array();
  for (const auto& b : v.blocks) blocks.push_back(block_json(b));
  j["blocks"] = std::move(blocks);
  Json ds;
  ds["member"] = v.member;
  if (v.witness) ds["witness"] = witness_json(*v.witness);
  if (v.certificate) ds["certificate"] = certificate_json(*v.certificate);
  j["ds"] = std::move(ds);
  timer.lap("ds");

  const auto q = irr_mod_gamma(c, gl, f);
  Json irr;
  irr["well_defined"] = q.well_defined;
  irr["class_count"] = q.classes.size();
  irr["abelian"] = q.abelian;
  irr["exponent"] = q.exponent;
  if (!q.problem.empty()) irr["problem"] = q.problem;
  irr["twist_failures"] = twist_failures(c, gl, f);
  j["irr_mod_gamma"] = std::move(irr);

  const auto nz = nz_check(ctx, v);
  j["nz_check"] = Json{{"applicable", nz.applicable}, {"passes", nz.passes}, {"dim", nz.dim}};

  const auto ham = hamiltonian_certificate(ctx, v);
  Json hj;
  hj["passes"] = ham.passes;
  hj["block_units"] = ham.block_units;
  hj["subsums_checked"] = ham.subsums_checked;
  hj["worst_commutator"] = ham.worst_commutator;
  if (ham.noncentral_block) {
    hj["noncentral_idempotent"] = Json{{"block", *ham.noncentral_block},
                                       {"commutator_norm", ham.noncentral_commutator},
                                       {"functional", vector_json(ham.noncentral_idempotent)}};
  }
  j["hamiltonian"] = std::move(hj);
  timer.lap("structure");

  if (opt.timings) j["timings"] = timer.json();
  return j;
}

Json sqrt_report(const AnyQGroup& h, const AnalysisOptions& opt) {
  require_axioms(h, opt.tol);
  const DsContext ctx = context_for(h, opt.tol, opt.seed);
  SquareRootOptions so;
  so.epsilon = opt.epsilon;
  const auto r = square_root(ctx, so);
  Json j;
  j["schema"] = kSqrtSchema;
  j["name"] = name_of(h);
  j["seed"] = opt.seed;
  j["tolerance"] = opt.tol;
  if (r.witness) {
    j["result"] = "witness";
    j["witness"] = witness_json(*r.witness);
  } else {
    j["result"] = "certificate";
    j["certificate"] = certificate_json(*r.certificate);
  }
  return j;
}

namespace {

// six significant digits for the text views
std::string num(const Json& x) {
  if (!x.is_number_float()) return x.dump();
  std::ostringstream s;
  s.precision(6);
  s << x.get<double>();
  return s.str();
}

}  // namespace

std::string report_text(const Json& r) {
  std::ostringstream os;
  os << r["name"].get<std::string>() << "  dim " << r["dim"] << "  (" << r["scalar"].get<std::string>() << ")\n";
  os << "axioms          pass, worst residual " << num(r["axioms"]["worst"]) << "\n";
  const auto& fl = r["flags"];
  os << "commutative     " << fl["commutative"]["holds"] << "\n";
  os << "cocommutative   " << fl["cocommutative"]["holds"] << "\n";
  os << "kac             " << fl["kac"]["holds"] << "\n";
  os << "irreps          " << r["irreps"]["dims"].dump() << "\n";
  os << "group-likes     order " << r["group_likes"]["order"] << "\n";
  os << "blocks\n";
  for (const auto& b : r["blocks"]) {
    os << "  " << b["index"] << (b["index"] == b["partner"] ? "" : "/" + b["partner"].dump()) << "  n=" << b["size"]
       << "  " << b["kind"].get<std::string>() << "  m=" << b["m"];
    if (!b["c"].is_null()) os << "  c=" << num(b["c"]);
    os << "\n";
  }
  const auto& ds = r["ds"];
  os << "ds member       " << ds["member"] << "\n";
  if (ds.contains("witness")) {
    const auto& w = ds["witness"];
    os << "  witness on block " << w["block"] << ", epsilon " << w["epsilon"].get<std::string>() << ", exact "
       << w["exact"] << ", ||phi*phi - h|| = " << num(w["residuals"]["phi_squared_minus_haar"]) << "\n";
  }
  const auto& q = r["irr_mod_gamma"];
  os << "Irr/~Gamma      ";
  if (q["well_defined"].get<bool>())
    os << q["class_count"] << " classes, exponent " << q["exponent"] << "\n";
  else
    os << "product not well defined (" << q["problem"].get<std::string>() << ")\n";
  const auto& nz = r["nz_check"];
  os << "dim mod 8       " << (nz["applicable"].get<bool>() ? (nz["passes"].get<bool>() ? "pass" : "fail") : "n/a")
     << "\n";
  const auto& hm = r["hamiltonian"];
  os << "hamiltonian     " << (hm["passes"].get<bool>() ? "pass" : "fail") << " (" << hm["subsums_checked"]
     << " sub-sums)\n";
  if (hm.contains("noncentral_idempotent"))
    os << "  non-central idempotent, commutator " << num(hm["noncentral_idempotent"]["commutator_norm"]) << "\n";
  return os.str();
}

std::string suq2_text(const Json& r) {
  std::ostringstream os;
  os << "spin " << num(r["spin"]) << "  q " << num(r["q"]) << "  n " << r["n"] << "\n";
  os << "Q conj(Q) = " << num(r["c"]) << " I\n";
  os << "kind " << r["kind"].get<std::string>() << "  m " << r["m"] << (r["division"].get<bool>() ? "  division" : "")
     << "\n";
  if (!r["nilpotent"].is_null()) os << "nilpotent found, residual " << num(r["nilpotent_residual"]) << "\n";
  if (r.contains("closed_form_witness"))
    os << "witness [[sqrt q, -q], [1, -sqrt q]] residual " << num(r["closed_form_witness_residual"]) << "\n";
  return os.str();
}

}  // namespace qds

#pragma once

// The full analysis of a quantum group file as a schema-versioned report.

#include <cstdint>
#include <optional>
#include <string>

#include "qds/dsfamily.hpp"
#include "qds/io.hpp"

namespace qds {

inline constexpr const char* kReportSchema = "qds.report/1";
inline constexpr const char* kSqrtSchema = "qds.sqrt/1";
inline constexpr const char* kSuqSchema = "qds.suq2/1";

struct AnalysisOptions {
  double tol = kDefaultTolerance;
  std::uint64_t seed = 0;
  std::optional<double> epsilon;
  bool timings = false;  // wall-clock timings make the report non-deterministic
};

/// Throws Error(Axiom) naming the worst failing axiom. Exact inputs must pass
/// with zero residual.
AxiomReport require_axioms(const AnyQGroup& h, double tol);

DsContext context_for(const AnyQGroup& h, double tol, std::uint64_t seed);

Json block_json(const BlockClassification& b);
Json witness_json(const SquareRootWitness& w);
Json certificate_json(const NoneCertificate& c);
Json suq2_json(const SuqBlock& b);

Json analyze(const AnyQGroup& h, const AnalysisOptions& opt = {});
/// Witness or certificate for `qds sqrt`.
Json sqrt_report(const AnyQGroup& h, const AnalysisOptions& opt = {});

std::string report_text(const Json& report);
std::string suq2_text(const Json& report);

}  // namespace qds

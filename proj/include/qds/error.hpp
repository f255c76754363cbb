#pragma once

#include <stdexcept>
#include <string>

namespace qds {

enum class ErrorKind {
  InvalidArgument,
  Parse,
  Axiom,             // Hopf *-algebra axiom failure
  NotAQuantumGroup,  // Haar solution space not one-dimensional, Haar not faithful
  NonSemisimple,
  Numerical,         // a residual above tolerance in an approximate computation
  Unsupported,       // e.g. non-tracial Haar state where the tracial theory is needed
  Inconsistency,     // a result that contradicts a theorem: signals corruption
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, double residual = 0.0)
      : std::runtime_error(what), kind_(kind), residual_(residual) {}

  ErrorKind kind() const { return kind_; }
  /// Worst residual that triggered the error, when one applies.
  double residual() const { return residual_; }

 private:
  ErrorKind kind_;
  double residual_;
};

}  // namespace qds

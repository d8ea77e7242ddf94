#pragma once

#include <stdexcept>
#include <string>

namespace pursuit {

// Error taxonomy shared by all solvers. The CLI maps these onto exit codes,
// so every throw site picks the kind deliberately.
class Error : public std::runtime_error {
 public:
  enum class Kind {
    kDomain,      // input outside the mathematical domain (v >= Vp, D < 0, ...)
    kArgument,    // structurally invalid argument (not a permutation, empty matrix)
    kSize,        // instance exceeds a hard size guard
    kInfeasible,  // no feasible solution exists for the given data
    kInternal,    // invariant violated inside a solver
  };

  Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

  static Error domain(const std::string& what) { return {Kind::kDomain, what}; }
  static Error argument(const std::string& what) { return {Kind::kArgument, what}; }
  static Error size(const std::string& what) { return {Kind::kSize, what}; }
  static Error infeasible(const std::string& what) { return {Kind::kInfeasible, what}; }
  static Error internal(const std::string& what) { return {Kind::kInternal, what}; }

 private:
  Kind kind_;
};

}  // namespace pursuit

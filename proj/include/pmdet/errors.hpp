#ifndef PMDET_ERRORS_HPP
#define PMDET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pmdet {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input rejected while parsing / validating an instance description.
struct SchemaError : Error {
  explicit SchemaError(const std::string& msg) : Error("schema: " + msg) {}
};

// Numeric text that is not a valid rational ("1/0", "abc", ...).
struct ParseError : SchemaError {
  explicit ParseError(const std::string& msg) : SchemaError("parse: " + msg) {}
};

// Arrangement does not span the ambient space or has no vertex.
struct NotEssential : Error {
  explicit NotEssential(const std::string& msg) : Error("not essential: " + msg) {}
};

// Two input functionals cut out the same hyperplane.
struct DuplicateHyperplane : Error {
  explicit DuplicateHyperplane(const std::string& msg)
      : Error("duplicate hyperplane: " + msg) {}
};

// A functional with zero linear part was supplied where a hyperplane is required.
struct ZeroForm : Error {
  explicit ZeroForm(const std::string& msg) : Error("zero form: " + msg) {}
};

// Lookup of an intersection that is not actually in the lattice.
struct EdgeNotInLattice : Error {
  explicit EdgeNotInLattice(const std::string& msg)
      : Error("edge not in lattice: " + msg) {}
};

// The direction functional of an exponential weight is constant (zero linear part).
struct ConstantF0 : Error {
  explicit ConstantF0(const std::string& msg) : Error("constant f0: " + msg) {}
};

// A gamma factor in a closed-form product sits at a non-positive integer.
struct GammaPole : Error {
  explicit GammaPole(const std::string& msg) : Error("gamma pole: " + msg) {}
};

// A chamber expected to grow in the weight direction does not.
struct NotGrowing : Error {
  explicit NotGrowing(const std::string& msg) : Error("not growing: " + msg) {}
};

// Integration over an unbounded region without a damping weight.
struct Unbounded : Error {
  explicit Unbounded(const std::string& msg) : Error("unbounded: " + msg) {}
};

// The damping functional is unbounded below on a growth chamber.
struct UnboundedBelow : Unbounded {
  explicit UnboundedBelow(const std::string& msg) : Unbounded(msg) {}
};

// The chamber <-> base correspondence failed to be one-to-one.
struct BijectionFailure : Error {
  explicit BijectionFailure(const std::string& msg)
      : Error("bijection failure: " + msg) {}
};

// An orientation frame was requested for a flag that does not touch the chamber.
struct DegenerateFlag : Error {
  explicit DegenerateFlag(const std::string& msg)
      : Error("degenerate flag: " + msg) {}
};

// Evaluation of a multivalued integrand at a point lying on a hyperplane.
struct PointOnHyperplane : Error {
  explicit PointOnHyperplane(const std::string& msg)
      : Error("point on hyperplane: " + msg) {}
};

// No admissible truncation level could be chosen.
struct TThreshold : Error {
  explicit TThreshold(const std::string& msg) : Error("truncation level: " + msg) {}
};

// Adaptive integration failed to converge within its subdivision budget.
struct MaxDepthExceeded : Error {
  explicit MaxDepthExceeded(const std::string& msg)
      : Error("max depth exceeded: " + msg) {}
};

}  // namespace pmdet

#endif

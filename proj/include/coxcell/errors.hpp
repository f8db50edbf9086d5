#ifndef COXCELL_ERRORS_HPP
#define COXCELL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace coxcell {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input document violates the graph JSON schema.
struct SchemaError : Error {
    explicit SchemaError(const std::string& what) : Error("schema: " + what) {}
};

// Coxeter matrix entries out of range (m[s][s] != 1 or m[s][t] < 2).
struct LabelError : Error {
    explicit LabelError(const std::string& what) : Error("label: " + what) {}
};

// Two elements or roots from different Coxeter graphs were combined.
struct GraphMismatch : Error {
    GraphMismatch() : Error("operands belong to different Coxeter graphs") {}
};

// Exact arithmetic was requested but some finite label is outside {2,3,4,5,6}.
struct ArithmeticModeUnavailable : Error {
    explicit ArithmeticModeUnavailable(const std::string& what)
        : Error("exact arithmetic unavailable: " + what) {}
};

// Enumeration over an infinite group or root system needs an explicit bound.
struct BoundRequired : Error {
    explicit BoundRequired(const std::string& what) : Error("bound required: " + what) {}
};

// A root beyond the truncation frontier has no recorded (w, s) witness.
struct NoWitness : Error {
    explicit NoWitness(const std::string& what) : Error("no witness: " + what) {}
};

// A root pair with infinite (or undetermined) label was used where a finite
// label is required.
struct NotFinitelyPaired : Error {
    explicit NotFinitelyPaired(const std::string& what) : Error("not finitely paired: " + what) {}
};

struct NotSpherical : Error {
    explicit NotSpherical(const std::string& what) : Error("not spherical: " + what) {}
};

// Premise of a pairwise certificate check does not hold for the given input.
struct PremiseViolated : Error {
    explicit PremiseViolated(const std::string& what) : Error("premise violated: " + what) {}
};

struct NotTwoDimensional : Error {
    explicit NotTwoDimensional(const std::string& what) : Error("not two-dimensional: " + what) {}
};

// A metric hypothesis (finitely many isometry classes) is violated, e.g. by a
// truncated build of an infinite complex.
struct HypothesisNotMet : Error {
    explicit HypothesisNotMet(const std::string& what) : Error("hypothesis not met: " + what) {}
};

// A library-internal identity failed; always a defect, never user error.
struct InternalInvariantViolation : Error {
    explicit InternalInvariantViolation(const std::string& what)
        : Error("internal invariant violation: " + what) {}
};

} // namespace coxcell

#endif

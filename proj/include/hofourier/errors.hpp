#pragma once

#include <stdexcept>
#include <string>

namespace hofourier {

/// Invalid argument to a numeric routine (negative multiplicity, lambda <= 0, ...).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A configured size limit (degree cap, node cap) would be exceeded.
class ResourceLimitError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// The requested weighted integral diverges, e.g. f is not in L^p(dm_k).
class IntegrabilityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A function produced a non-finite value at a quadrature node.
class EvaluationError : public std::runtime_error {
public:
    EvaluationError(const std::string& what, double node)
        : std::runtime_error(what), node_(node) {}
    double node() const noexcept { return node_; }

private:
    double node_;
};

/// A refinement loop hit its cap before meeting the tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double previous, double last)
        : std::runtime_error(what), previous_(previous), last_(last) {}
    double previous_estimate() const noexcept { return previous_; }
    double last_estimate() const noexcept { return last_; }

private:
    double previous_;
    double last_;
};

/// A precondition on a computed object was violated (e.g. a quadrature rule of
/// insufficient degree, or a verified identity failed its tolerance).
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace hofourier

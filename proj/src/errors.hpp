#pragma once

#include <stdexcept>
#include <string>

namespace g4 {

// Syntax-level failures (expression / fixture parsing), reported with position.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t pos = std::string::npos)
        : std::runtime_error(what), position(pos) {}
    std::size_t position;
};

// Violations of structural contracts (mismatched variable tables, malformed
// inputs that never reach the mathematics).
class structural_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class domain_fault {
    zero_input,      // an operation that needs a nonzero object got zero
    non_reduced,     // repeated component through the point of interest
    non_isolated,    // infinite local intersection number
    ribbon_input,    // z^2 = 0: non-reduced Weierstrass data
    ribbon_direction,// 4A = B^2: the tacnode normal form degenerates
    precondition,    // classifier disagrees with the operation's assumption
    out_of_range,    // parameter outside the supported chamber range
    pole,            // evaluation at a pole of a rational map
    not_split,       // no rational isotropic vector found for a quadric
    inconsistent,    // state the theory forbids (e.g. invariant cover of even A-type)
    unsupported,     // ambient/degree combination outside the contract
};

inline const char* fault_name(domain_fault f) {
    switch (f) {
    case domain_fault::zero_input: return "ZeroInput";
    case domain_fault::non_reduced: return "NonReduced";
    case domain_fault::non_isolated: return "NonIsolated";
    case domain_fault::ribbon_input: return "RibbonInput";
    case domain_fault::ribbon_direction: return "RibbonDirection";
    case domain_fault::precondition: return "Precondition";
    case domain_fault::out_of_range: return "OutOfRange";
    case domain_fault::pole: return "Pole";
    case domain_fault::not_split: return "NotSplit";
    case domain_fault::inconsistent: return "Inconsistent";
    case domain_fault::unsupported: return "Unsupported";
    }
    return "Unknown";
}

// Mathematically meaningful failures: the input is well-formed but outside
// the domain of the operation.
class domain_error : public std::runtime_error {
public:
    domain_error(domain_fault f, const std::string& what)
        : std::runtime_error(std::string(fault_name(f)) + ": " + what), fault(f) {}
    domain_fault fault;
};

} // namespace g4

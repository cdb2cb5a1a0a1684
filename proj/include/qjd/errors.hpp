#pragma once

#include <stdexcept>
#include <string>

namespace qjd {

// Input failed a structural invariant (non-Hermitian matrix, bad weights,
// malformed parameters).
class validation_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Spectrum left the domain of the generator function.
class spectrum_domain_error : public std::runtime_error {
public:
    spectrum_domain_error(const std::string& what, double offending_eigenvalue)
        : std::runtime_error(what), offending_eigenvalue_(offending_eigenvalue) {}

    double offending_eigenvalue() const { return offending_eigenvalue_; }

private:
    double offending_eigenvalue_;
};

// A hypothesis of the theory under test does not hold (f'' <= 0 on the
// sampled hull, singular derivative superoperator).
class precondition_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace qjd

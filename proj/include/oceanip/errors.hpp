#pragma once

#include <stdexcept>
#include <string>

namespace oceanip {

/// Malformed input: bad profile, inconsistent arrays, wrong file layout.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical stage could not produce a trustworthy result
/// (bracket failure, pole hit, fit divergence, singular system).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace oceanip

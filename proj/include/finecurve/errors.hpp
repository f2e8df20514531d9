#pragma once

#include <stdexcept>
#include <string>

namespace finecurve {

// Malformed input: unparsable files, out-of-range indices, bad rationals.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A well-formed request that violates an operation's precondition.
class ContractError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The surface model cannot answer this question (for example isotopy keys on
// a genus-two octagon).
class UnsupportedSurface : public ContractError {
public:
    using ContractError::ContractError;
};

// A construction that should always succeed did not; indicates a bug or an
// input outside the supported envelope.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace finecurve

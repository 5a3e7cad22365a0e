#pragma once

#include <stdexcept>
#include <string>

namespace ridgecov {

/// Bad user-supplied data or parameters (non-finite values, empty inputs, bad files).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Caller broke an API precondition, e.g. a query of the wrong dimension.
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// An iteration left the region where the density is representable.
class DivergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ridgecov

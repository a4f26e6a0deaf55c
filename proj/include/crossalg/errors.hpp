#pragma once

#include <stdexcept>
#include <string>

namespace crossalg {

// Malformed input (CLI exit 1).
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A size cap or enumeration budget was hit (CLI exit 2).
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A mathematical precondition or invariant failed; message carries the witness (CLI exit 3).
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace crossalg

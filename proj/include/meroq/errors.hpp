#pragma once

#include <stdexcept>
#include <string>

namespace meroq {

// Base class for every failure this library reports deliberately.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A Gram block whose leading principal minors are not all positive.
struct NotSPD : Error {
    using Error::Error;
};

// Operands whose ambient dimensions (or sizes) cannot be reconciled.
struct DimensionMismatch : Error {
    using Error::Error;
};

// Expression text that does not match the input grammar.
struct SyntaxError : Error {
    using Error::Error;
};

// A divisor that is not a scalar times a product of rational linear forms.
struct NonLinearPole : Error {
    using Error::Error;
};

// Division by a germ that is identically zero.
struct ZeroDivision : Error {
    using Error::Error;
};

// A variable or coordinate index outside 1..k.
struct IndexOutOfRange : Error {
    using Error::Error;
};

// A permutation whose size differs from the ambient dimension.
struct PermutationSizeMismatch : Error {
    using Error::Error;
};

// Ambient dimension above the configured factorial budget.
struct DegreeBudgetExceeded : Error {
    using Error::Error;
};

// A germ used where a holomorphic one is required.
struct NotHolomorphic : Error {
    using Error::Error;
};

// The zero covector used where a genuine linear form is required.
struct ZeroForm : Error {
    using Error::Error;
};

}  // namespace meroq

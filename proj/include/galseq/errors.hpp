#pragma once

#include <stdexcept>
#include <string>

namespace galseq {

// Base class for all errors thrown by this library.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or inconsistent user input (bad config, non-monic modulus, ...).
struct input_error : error {
    explicit input_error(const std::string& what) : error(what) {}
};

// A matrix that was required to be invertible turned out rank deficient.
struct singular_matrix_error : error {
    explicit singular_matrix_error(const std::string& what) : error(what) {}
};

// Division by a non-invertible element.  In a quotient ring Q[x]/(F) this
// signals that F is reducible; the offending factor is attached.
struct zero_divisor_error : error {
    explicit zero_divisor_error(const std::string& what) : error(what) {}
};

// A claimed root failed exact verification.
struct not_a_root_error : error {
    explicit not_a_root_error(const std::string& what) : error(what) {}
};

// Numeric machinery could not reach the requested reliability even at the
// precision ceiling.
struct precision_error : error {
    explicit precision_error(const std::string& what) : error(what) {}
};

// An element expected to generate a normal basis fails to do so.
struct not_normal_basis_error : error {
    explicit not_normal_basis_error(const std::string& what) : error(what) {}
};

} // namespace galseq

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lsq {

// Argument outside the mathematical domain of an operation (n = 0 etc).
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Input is valid but exceeds the supported magnitude or memory budget.
class capacity_error : public std::length_error {
public:
    using std::length_error::length_error;
};

// Two independent computation paths disagreed. Always an implementation bug.
class verification_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Malformed or version-mismatched checkpoint / CSV input.
class format_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require_positive(std::uint64_t n, const char* op) {
    if (n == 0) {
        throw domain_error(std::string(op) + ": n must be >= 1 (got n=0)");
    }
}

}  // namespace detail
}  // namespace lsq

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ccbound {

inline constexpr double kLn2 = 0.69314718055994530941723212145817657;

inline double nats_to_bits(double nats) { return nats / kLn2; }
inline double bits_to_nats(double bits) { return bits * kLn2; }

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input data violates a documented invariant (dimensions, probabilities, domains).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A computation would exceed the configured memory budget.
class BudgetError : public Error {
public:
    using Error::Error;
};

/// File or schema problem while reading or writing artifacts.
class IoError : public Error {
public:
    using Error::Error;
};

/// Execution policy for the data-parallel kernels. Both policies produce
/// bit-identical results; parallel uses OpenMP when compiled in.
enum class Exec { serial, parallel };

/// FNV-1a 64-bit hash, used to stamp output files with a digest of their inputs.
inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string fnv1a64_hex(std::string_view bytes);

} // namespace ccbound

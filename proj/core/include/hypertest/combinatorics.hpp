#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace hypertest {

/// C(n, k) in 64-bit integer arithmetic; nullopt when the value exceeds 2^64-1.
std::optional<std::uint64_t> binomial_exact(std::uint64_t n, std::uint64_t k) noexcept;

/// C(n, k) as a double: exact integer conversion when it fits in 64 bits,
/// otherwise exp(lgamma) evaluation.
double binomial(std::uint64_t n, std::uint64_t k) noexcept;

/// log C(n, k); -inf when k > n.
double log_binomial(std::uint64_t n, std::uint64_t k) noexcept;

/// k! for k <= 20.
std::uint64_t factorial(unsigned k);

/// a + b, throwing CountOverflow on wraparound. `what` names the counter.
std::uint64_t checked_add(std::uint64_t a, std::uint64_t b, std::string_view what);
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, std::string_view what);

}  // namespace hypertest

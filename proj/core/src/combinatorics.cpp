#include "hypertest/combinatorics.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "hypertest/error.hpp"

namespace hypertest {

std::optional<std::uint64_t> binomial_exact(std::uint64_t n, std::uint64_t k) noexcept {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  // result_i = C(n-k+i, i) is an integer at every step; divide before
  // multiplying where possible to delay overflow.
  __extension__ unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  }
  return static_cast<std::uint64_t>(result);
}

double log_binomial(std::uint64_t n, std::uint64_t k) noexcept {
  if (k > n) return -std::numeric_limits<double>::infinity();
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

double binomial(std::uint64_t n, std::uint64_t k) noexcept {
  if (auto exact = binomial_exact(n, k)) return static_cast<double>(*exact);
  return std::exp(log_binomial(n, k));
}

std::uint64_t factorial(unsigned k) {
  if (k > 20) throw Error(Errc::CountOverflow, std::to_string(k) + "! exceeds 64 bits");
  std::uint64_t f = 1;
  for (unsigned i = 2; i <= k; ++i) f *= i;
  return f;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b, std::string_view what) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw Error(Errc::CountOverflow, std::string(what) + " overflowed 64 bits");
  }
  return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, std::string_view what) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw Error(Errc::CountOverflow, std::string(what) + " overflowed 64 bits");
  }
  return r;
}

}  // namespace hypertest

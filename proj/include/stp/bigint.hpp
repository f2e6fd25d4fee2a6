#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace stp {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// log2 of a positive integer from its bit length plus a 64-bit mantissa
// window; relative error well below 1e-15 regardless of magnitude.
inline double log2_big(const BigInt& v) {
    if (v <= 0) throw std::invalid_argument("log2_big: value must be positive");
    const std::int64_t bits = static_cast<std::int64_t>(boost::multiprecision::msb(v)) + 1;
    if (bits <= 63) return std::log2(static_cast<double>(v.convert_to<std::uint64_t>()));
    const std::int64_t shift = bits - 63;
    const std::uint64_t mant = BigInt(v >> shift).convert_to<std::uint64_t>();
    return static_cast<double>(shift) + std::log2(static_cast<double>(mant));
}

// smallest k with 2^k >= v (v >= 1), exact
inline std::int64_t ceil_log2_big(const BigInt& v) {
    if (v <= 0) throw std::invalid_argument("ceil_log2_big: value must be positive");
    const std::int64_t m = static_cast<std::int64_t>(boost::multiprecision::msb(v));
    const bool pow2 = (v == (BigInt(1) << m));
    return pow2 ? m : m + 1;
}

inline BigInt pow2_big(std::uint64_t n) { return BigInt(1) << n; }

}  // namespace stp

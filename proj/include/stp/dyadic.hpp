#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stp/bigint.hpp"

namespace stp {

// Thrown when a finite digit prefix cannot determine the quantity asked for
// (e.g. a Birkhoff sum whose last summand needs digits past the prefix).
struct InsufficientDigits : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Digit = std::uint8_t;  // 0 or 1

class BinaryWord {
public:
    BinaryWord() = default;
    explicit BinaryWord(std::vector<Digit> digits);

    // "0101" -> word; anything but '0'/'1' rejects
    static BinaryWord parse(std::string_view text);

    std::string str() const;

    std::size_t size() const { return digits_.size(); }
    bool empty() const { return digits_.empty(); }
    Digit operator[](std::size_t i) const { return digits_[i]; }

    void push_back(Digit d);
    void append(const BinaryWord& other);
    void append_run(Digit d, std::uint64_t count);

    const std::vector<Digit>& digits() const { return digits_; }

    bool operator==(const BinaryWord&) const = default;

private:
    std::vector<Digit> digits_;
};

enum class StreamKind {
    UniformRandom,
    GibbsSampled,
    CantorConstructed,
    Periodic,
    ExplicitPrefix,
};

// Lazy digit source; the only representation of a point of (0,1].
// Single-threaded per instance, movable across threads.
class DigitStream {
public:
    DigitStream(StreamKind kind, std::function<std::optional<Digit>()> gen)
        : kind_(kind), gen_(std::move(gen)) {}

    StreamKind kind() const { return kind_; }

    // next digit at index position()+1; throws InsufficientDigits when an
    // explicit prefix is exhausted
    Digit next();

    std::uint64_t position() const { return position_; }

    BinaryWord take(std::size_t n);

private:
    StreamKind kind_;
    std::function<std::optional<Digit>()> gen_;
    std::uint64_t position_ = 0;
};

DigitStream uniform_stream(std::uint64_t seed);
DigitStream periodic_stream(BinaryWord period);
DigitStream prefix_stream(BinaryWord prefix);  // finite; exhausts

// Return-time blocks of a digit prefix: block k is the pattern 0^{n_k-1}1;
// trailing digits that do not complete a block go to the remainder.
struct BlockDecomposition {
    std::vector<std::uint64_t> blocks;
    BinaryWord remainder;

    BinaryWord render() const;
    std::uint64_t digit_count() const;  // sum of blocks, remainder excluded
};

struct PhiValue {
    BigInt value;            // 2^hitting_time
    std::uint64_t hitting_time;
};

// Potential value determined by a prefix, or nullopt if no 1 was seen yet.
std::optional<PhiValue> phi_prefix(const BinaryWord& prefix);

BlockDecomposition return_blocks(const BinaryWord& prefix);

// Exact Birkhoff sums of the dyadic-payoff potential along the orbit.
struct BigSumTrace {
    std::vector<BigInt> values;  // S_1..S_N, strictly increasing
};

BigSumTrace birkhoff_phi_trace(DigitStream& stream, std::uint64_t n);
BigSumTrace birkhoff_phi_trace(const BinaryWord& prefix, std::uint64_t n);
inline BigSumTrace birkhoff_phi_trace(DigitStream&& stream, std::uint64_t n) {
    return birkhoff_phi_trace(stream, n);
}

// Just S_n, without materializing the trace.
BigInt birkhoff_phi_sum(DigitStream& stream, std::uint64_t n);

struct AcceleratedSums {
    std::vector<BigInt> s_hat;    // partial sums of 2^{n_k - 1}
    std::vector<BigInt> induced;  // partial sums of 2^{n_k} - 1
};

AcceleratedSums accelerated_sums(const BlockDecomposition& blocks);

// Half-open dyadic interval (num/2^exp, (num+1)/2^exp]; the cylinder of a
// word w is dyadic_cylinder(w).
struct DyadicInterval {
    BigInt num;
    std::uint64_t exp = 0;

    BigRat lower() const { return BigRat(num, pow2_big(exp)); }
    BigRat upper() const { return BigRat(num + 1, pow2_big(exp)); }
};

DyadicInterval dyadic_cylinder(const BinaryWord& word);

// Cylinder of the complete blocks (the accelerated system's cylinder of
// order blocks.size()); the remainder plays no part.
DyadicInterval accelerated_cylinder(const BlockDecomposition& blocks);

struct RationalInterval {
    BigRat lower;
    BigRat upper;

    bool contains(const BigRat& x) const { return lower <= x && x <= upper; }
    bool inside(const BigRat& lo, const BigRat& hi) const {
        return lo <= lower && upper <= hi;
    }
};

// Enclosures of the partial sums of 1/x along the orbit: entry j bounds
// sum_{i<=j} g(T^i x) over every x in the cylinder of the prefix. Exact
// rational endpoints, no rounding.
std::vector<RationalInterval> birkhoff_g_interval_trace(const BinaryWord& prefix,
                                                        std::uint64_t n);

// Outward double conversion for presentation of exact rationals.
double to_double_down(const BigRat& x);
double to_double_up(const BigRat& x);

}  // namespace stp

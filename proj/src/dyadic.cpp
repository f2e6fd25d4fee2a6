#include "stp/dyadic.hpp"

#include <algorithm>
#include <cmath>

#include "stp/rng.hpp"

namespace stp {

BinaryWord::BinaryWord(std::vector<Digit> digits) : digits_(std::move(digits)) {
    for (Digit d : digits_)
        if (d > 1) throw std::invalid_argument("BinaryWord: digit out of {0,1}");
}

BinaryWord BinaryWord::parse(std::string_view text) {
    BinaryWord w;
    w.digits_.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("BinaryWord::parse: expected '0' or '1'");
        w.digits_.push_back(static_cast<Digit>(c - '0'));
    }
    return w;
}

std::string BinaryWord::str() const {
    std::string s;
    s.reserve(digits_.size());
    for (Digit d : digits_) s.push_back(static_cast<char>('0' + d));
    return s;
}

void BinaryWord::push_back(Digit d) {
    if (d > 1) throw std::invalid_argument("BinaryWord: digit out of {0,1}");
    digits_.push_back(d);
}

void BinaryWord::append(const BinaryWord& other) {
    digits_.insert(digits_.end(), other.digits_.begin(), other.digits_.end());
}

void BinaryWord::append_run(Digit d, std::uint64_t count) {
    if (d > 1) throw std::invalid_argument("BinaryWord: digit out of {0,1}");
    digits_.insert(digits_.end(), count, d);
}

Digit DigitStream::next() {
    std::optional<Digit> d = gen_();
    if (!d) throw InsufficientDigits("digit stream exhausted at position " +
                                     std::to_string(position_ + 1));
    ++position_;
    return *d;
}

BinaryWord DigitStream::take(std::size_t n) {
    BinaryWord w;
    for (std::size_t i = 0; i < n; ++i) w.push_back(next());
    return w;
}

DigitStream uniform_stream(std::uint64_t seed) {
    auto rng = std::make_shared<Rng>(seed);
    return DigitStream(StreamKind::UniformRandom,
                       [rng]() -> std::optional<Digit> {
                           return static_cast<Digit>(rng->coin());
                       });
}

DigitStream periodic_stream(BinaryWord period) {
    if (period.empty()) throw std::invalid_argument("periodic_stream: empty period");
    bool has_one = false;
    for (std::size_t i = 0; i < period.size(); ++i) has_one |= period[i] == 1;
    if (!has_one)
        throw std::invalid_argument("periodic_stream: all-zero period has no 1s");
    auto pos = std::make_shared<std::size_t>(0);
    auto p = std::make_shared<BinaryWord>(std::move(period));
    return DigitStream(StreamKind::Periodic, [pos, p]() -> std::optional<Digit> {
        Digit d = (*p)[*pos];
        *pos = (*pos + 1) % p->size();
        return d;
    });
}

DigitStream prefix_stream(BinaryWord prefix) {
    auto pos = std::make_shared<std::size_t>(0);
    auto p = std::make_shared<BinaryWord>(std::move(prefix));
    return DigitStream(StreamKind::ExplicitPrefix,
                       [pos, p]() -> std::optional<Digit> {
                           if (*pos >= p->size()) return std::nullopt;
                           return (*p)[(*pos)++];
                       });
}

BinaryWord BlockDecomposition::render() const {
    BinaryWord w;
    for (std::uint64_t nk : blocks) {
        w.append_run(0, nk - 1);
        w.push_back(1);
    }
    w.append(remainder);
    return w;
}

std::uint64_t BlockDecomposition::digit_count() const {
    std::uint64_t total = 0;
    for (std::uint64_t nk : blocks) total += nk;
    return total;
}

std::optional<PhiValue> phi_prefix(const BinaryWord& prefix) {
    for (std::size_t i = 0; i < prefix.size(); ++i)
        if (prefix[i] == 1) return PhiValue{pow2_big(i), i};
    return std::nullopt;
}

BlockDecomposition return_blocks(const BinaryWord& prefix) {
    BlockDecomposition out;
    std::uint64_t run = 0;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        ++run;
        if (prefix[i] == 1) {
            out.blocks.push_back(run);
            run = 0;
        }
    }
    out.remainder.append_run(0, run);
    return out;
}

namespace {

// Reads blocks until position n is covered and the block containing or
// following it is complete; returns block lengths. Keeps positions 1-based.
struct BlockReader {
    DigitStream& stream;
    std::uint64_t run = 0;

    // next complete block length
    std::uint64_t next_block() {
        for (;;) {
            Digit d = stream.next();
            ++run;
            if (d == 1) {
                std::uint64_t nk = run;
                run = 0;
                return nk;
            }
        }
    }
};

}  // namespace

BigSumTrace birkhoff_phi_trace(DigitStream& stream, std::uint64_t n) {
    BigSumTrace trace;
    trace.values.reserve(n);
    BigInt s = 0;
    BlockReader reader{stream};
    std::uint64_t filled = 0;
    while (filled < n) {
        std::uint64_t nk = reader.next_block();
        // within a block 0^{nk-1}1 the summands are 2^{nk-1},...,2,1
        for (std::uint64_t i = 0; i < nk && filled < n; ++i) {
            s += pow2_big(nk - 1 - i);
            trace.values.push_back(s);
            ++filled;
        }
    }
    return trace;
}

BigSumTrace birkhoff_phi_trace(const BinaryWord& prefix, std::uint64_t n) {
    DigitStream s = prefix_stream(prefix);
    return birkhoff_phi_trace(s, n);
}

BigInt birkhoff_phi_sum(DigitStream& stream, std::uint64_t n) {
    // u128 fast path; falls back to exact big integers when a block is so
    // large that 2^{n_k} would not fit.
    unsigned __int128 acc = 0;
    BigInt big = 0;
    bool use_big = false;
    BlockReader reader{stream};
    std::uint64_t filled = 0;
    while (filled < n) {
        std::uint64_t nk = reader.next_block();
        std::uint64_t take = std::min(nk, n - filled);
        // sum of 2^{nk-1} + ... + 2^{nk-take} (+1 if the whole block fits)
        if (!use_big && nk <= 100) {
            unsigned __int128 blocksum;
            if (take == nk)
                blocksum = ((static_cast<unsigned __int128>(1) << nk) - 1);
            else
                blocksum = ((static_cast<unsigned __int128>(1) << nk) -
                            (static_cast<unsigned __int128>(1) << (nk - take)));
            unsigned __int128 prev = acc;
            acc += blocksum;
            if (acc < prev) {  // overflow; promote
                use_big = true;
                big = BigInt(static_cast<std::uint64_t>(prev >> 64)) << 64 |
                      BigInt(static_cast<std::uint64_t>(prev));
            } else {
                filled += take;
                continue;
            }
        } else if (!use_big) {
            use_big = true;
            big = BigInt(static_cast<std::uint64_t>(acc >> 64)) << 64 |
                  BigInt(static_cast<std::uint64_t>(acc));
        }
        if (take == nk)
            big += pow2_big(nk) - 1;
        else
            big += pow2_big(nk) - pow2_big(nk - take);
        filled += take;
    }
    if (!use_big)
        return (BigInt(static_cast<std::uint64_t>(acc >> 64)) << 64) |
               BigInt(static_cast<std::uint64_t>(acc));
    return big;
}

AcceleratedSums accelerated_sums(const BlockDecomposition& blocks) {
    if (blocks.blocks.empty())
        throw std::invalid_argument("accelerated_sums: empty decomposition");
    AcceleratedSums out;
    out.s_hat.reserve(blocks.blocks.size());
    out.induced.reserve(blocks.blocks.size());
    BigInt sh = 0, ind = 0;
    for (std::uint64_t nk : blocks.blocks) {
        sh += pow2_big(nk - 1);
        ind += pow2_big(nk) - 1;
        out.s_hat.push_back(sh);
        out.induced.push_back(ind);
    }
    return out;
}

DyadicInterval dyadic_cylinder(const BinaryWord& word) {
    DyadicInterval iv;
    iv.exp = word.size();
    for (std::size_t i = 0; i < word.size(); ++i) {
        iv.num <<= 1;
        if (word[i]) iv.num |= 1;
    }
    return iv;
}

DyadicInterval accelerated_cylinder(const BlockDecomposition& blocks) {
    BlockDecomposition complete;
    complete.blocks = blocks.blocks;
    return dyadic_cylinder(complete.render());
}

std::vector<RationalInterval> birkhoff_g_interval_trace(const BinaryWord& prefix,
                                                        std::uint64_t n) {
    if (n == 0) return {};
    if (n > prefix.size())
        throw InsufficientDigits("g-interval trace: prefix shorter than n");
    // last index holding a 1; every position up to n-1 (0-based) must see one
    std::size_t last_one = prefix.size();
    for (std::size_t i = prefix.size(); i-- > 0;)
        if (prefix[i] == 1) { last_one = i; break; }
    if (last_one == prefix.size() || last_one + 1 < n)
        throw InsufficientDigits(
            "g-interval trace: suffix cylinder touches 0, 1/x unbounded");

    std::vector<RationalInterval> out;
    out.reserve(n);
    BigRat lo = 0, hi = 0;
    // suffix starting at step j has cylinder (b, b + 2^-len]; g lands in
    // [1/(b + 2^-len), 1/b]
    for (std::uint64_t j = 0; j < n; ++j) {
        BigInt num = 0;
        std::uint64_t len = prefix.size() - j;
        for (std::size_t i = j; i < prefix.size(); ++i) {
            num <<= 1;
            if (prefix[i]) num |= 1;
        }
        BigInt den = pow2_big(len);
        lo += BigRat(den, num + 1);
        hi += BigRat(den, num);
        out.push_back(RationalInterval{lo, hi});
    }
    return out;
}

double to_double_down(const BigRat& x) {
    double d = x.convert_to<double>();
    while (BigRat(d) > x) d = std::nextafter(d, -HUGE_VAL);
    return d;
}

double to_double_up(const BigRat& x) {
    double d = x.convert_to<double>();
    while (BigRat(d) < x) d = std::nextafter(d, HUGE_VAL);
    return d;
}

}  // namespace stp

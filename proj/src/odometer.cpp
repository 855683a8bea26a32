#include "weakgibbs/odometer.hpp"

namespace weakgibbs {

Residue step(const Residue& r, long long t) {
    u128 span = r.depth < 128 ? pow2_u128(r.depth) : 0;
    u128 v;
    if (t >= 0) {
        v = r.value + u128(t);
    } else {
        u128 d = u128(-(t + 1)) + 1;  // |t| without overflowing on LLONG_MIN
        d %= span;
        v = r.value + span - d;
    }
    if (span) v %= span;
    return Residue(r.depth, v);
}

u128 dn(const Residue& r, int k) {
    if (k < 1 || k > r.depth)
        throw insufficient_depth("dn: k exceeds residue depth");
    return k < 128 ? r.value & (pow2_u128(k) - 1) : r.value;
}

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

OdometerPoint::OdometerPoint(Residue r, Tail tail, std::uint64_t seed)
    : res_(r), tail_(tail), seed_(seed) {}

void OdometerPoint::ensure_words(std::size_t n) const {
    if (words_.size() >= n) return;
    std::uint64_t state = seed_;
    // regenerate from scratch so the memo is a pure function of the seed
    std::vector<std::uint64_t> fresh;
    fresh.reserve(n);
    for (std::size_t i = 0; i < n; ++i) fresh.push_back(splitmix64(state));
    words_ = std::move(fresh);
}

bool OdometerPoint::bit(long i) const {
    if (i < 0) throw std::invalid_argument("OdometerPoint::bit: negative index");
    if (i < res_.depth) return res_.bit(static_cast<int>(i));
    switch (tail_) {
        case Tail::AllZeros: return false;
        case Tail::AllOnes: return true;
        case Tail::SeededRandom: {
            // seeded tails index the stream by absolute bit position, so a
            // residue cut from the same stream lines up with its own tail
            ensure_words(static_cast<std::size_t>(i / 64 + 1));
            return (words_[static_cast<std::size_t>(i / 64)] >> (i % 64)) & 1;
        }
    }
    return false;
}

mpz_class OdometerPoint::dn(long k) const {
    if (k < 1) throw std::invalid_argument("dn: k must be positive");
    mpz_class v = 0;
    for (long i = k - 1; i >= 0; --i) {
        v <<= 1;
        if (bit(i)) v |= 1;
    }
    return v;
}

std::optional<long> kappa(const OdometerPoint& p, long scan_limit) {
    bool residue_zero = p.residue().value == 0;
    if (residue_zero && p.tail() == Tail::AllZeros) return std::nullopt;
    for (long i = 0; i < scan_limit; ++i)
        if (p.bit(i)) return i;
    throw scan_limit_exceeded("kappa: no one-bit within scan limit");
}

OdometerPoint sample_point(std::uint64_t seed) {
    std::uint64_t state = seed;
    std::uint64_t w = splitmix64(state);
    // residue = first 64 stream bits; tail continues the same stream
    return OdometerPoint(Residue(64, u128(w)), Tail::SeededRandom, seed);
}

}  // namespace weakgibbs

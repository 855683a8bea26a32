#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "weakgibbs/dyadic.hpp"

namespace weakgibbs {

using u128 = unsigned __int128;

constexpr int kMaxResidueDepth = 120;
constexpr long kDefaultScanLimit = 1l << 16;

inline u128 pow2_u128(int e) { return u128(1) << e; }

/// Depth-K truncation of an odometer point: the first `depth` bits,
/// encoded low-bit-first as an integer value < 2^depth.
struct Residue {
    int depth;
    u128 value;

    Residue(int d, u128 v) : depth(d), value(v) {
        if (d < 1 || d > kMaxResidueDepth)
            throw std::invalid_argument("Residue: depth out of range");
        if (d < 128 && v >= pow2_u128(d))
            throw std::invalid_argument("Residue: value >= 2^depth");
    }

    bool bit(int i) const { return (value >> i) & 1; }

    /// Append one bit, preserving value mod 2^depth.
    Residue refined(bool b) const {
        return Residue(depth + 1, value | (u128(b) << depth));
    }
};

// adding machine: (v + t) mod 2^depth; t=1 is T, t=-1 is T^{-1}
Residue step(const Residue& r, long long t);
u128 dn(const Residue& r, int k);

enum class Tail { SeededRandom, AllZeros, AllOnes };

/// A full odometer point: a residue plus a deterministic rule for every
/// bit beyond it. Seeded tails come from a splitmix64 stream, so the
/// same seed reproduces the same point across runs.
class OdometerPoint {
public:
    OdometerPoint(Residue r, Tail tail, std::uint64_t seed = 0);

    bool bit(long i) const;
    const Residue& residue() const { return res_; }
    Tail tail() const { return tail_; }

    /// First k bits as an integer (materializes tail bits on demand).
    mpz_class dn(long k) const;

    /// Bits [0, k) as an mpz, identical to dn; named for call sites that
    /// treat it as the point's value at depth k.
    mpz_class value_at_depth(long k) const { return dn(k); }

private:
    Residue res_;
    Tail tail_;
    std::uint64_t seed_;
    mutable std::vector<std::uint64_t> words_;  // memoized tail words
    void ensure_words(std::size_t n) const;
};

/// 2-adic valuation of the point's bit sequence; nullopt means infinity
/// (the all-zeros point). Scanning past `scan_limit` bits throws.
std::optional<long> kappa(const OdometerPoint& p,
                          long scan_limit = kDefaultScanLimit);

/// nu-distributed point: independent fair bits derived from the seed.
OdometerPoint sample_point(std::uint64_t seed);

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace weakgibbs

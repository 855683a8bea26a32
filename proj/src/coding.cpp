#include "weakgibbs/coding.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <unordered_map>

namespace weakgibbs {

namespace {

constexpr long kTailFloorExp = -240;  // tiny tail bounds are rounded up here

inline u128 low_bits(u128 u, int i) {
    return i >= 128 ? u : u & (pow2_u128(i) - 1);
}

inline int ctz_u128(u128 u) {
    std::uint64_t lo = static_cast<std::uint64_t>(u);
    if (lo) return std::countr_zero(lo);
    std::uint64_t hi = static_cast<std::uint64_t>(u >> 64);
    return 64 + std::countr_zero(hi);
}

}  // namespace

bool fires_in_range_naive(u128 u, int ilo, int ihi) {
    for (int i = std::max(ilo, 1); i <= ihi; ++i)
        if (low_bits(u, i) < u128(i)) return true;
    return false;
}

bool fires_in_range(u128 u, int ilo, int ihi) {
    if (ilo < 1) ilo = 1;
    if (ihi > kMaxResidueDepth) ihi = kMaxResidueDepth;
    for (int i = ilo; i <= std::min(ihi, 7); ++i)
        if (low_bits(u, i) < u128(i)) return true;
    if (ihi < 8) return false;
    // for i >= 8 the value u mod 2^i is < i <= 120 < 256 only when
    // bits 8..i-1 are all clear; then it equals u mod 256
    unsigned s = static_cast<unsigned>(u & 255);
    u128 high = u >> 8;
    int tz = high == 0 ? kMaxResidueDepth : ctz_u128(high);
    int imax = std::min(ihi, 8 + tz);
    int lo8 = std::max(ilo, 8);
    return imax >= lo8 && s < static_cast<unsigned>(imax);
}

namespace {

// crude union-bound tail: sum over i > M of P(DN_i < i) with
// M = max(depth, v, min_level-1); see the derivation in the tests
Dyadic crude_tail(u128 v, int depth, int min_level) {
    long vl = v > u128(1) << 62 ? (1l << 62) : static_cast<long>(v);
    long M = std::max<long>({depth, vl, min_level - 1});
    // 2^{depth-M} + (M - v + 2) * 2^{-M}, rounded up coarsely
    Dyadic first = Dyadic::pow2(depth - M);
    Dyadic second = Dyadic::scaled(M - vl + 2 > 0 ? M - vl + 2 : 0, -M);
    Dyadic b = (first + second).ceil_to_exp(kTailFloorExp);
    return b < Dyadic(1) ? b : Dyadic(1);
}

Dyadic tail_rec(u128 v, int depth, int min_level, int budget) {
    Dyadic crude = crude_tail(v, depth, min_level);
    if (budget <= 0 || depth >= kMaxResidueDepth || v >= 4096) return crude;

    static thread_local std::unordered_map<std::uint64_t, Dyadic> memo;
    std::uint64_t key = static_cast<std::uint64_t>(v) |
                        (std::uint64_t(depth) << 12) |
                        (std::uint64_t(min_level) << 20);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    int d1 = depth + 1;
    Dyadic m[2];
    for (int b = 0; b < 2; ++b) {
        u128 child = v + (b ? pow2_u128(depth) : 0);
        if (d1 >= min_level && child < u128(d1))
            m[b] = Dyadic(1);
        else
            m[b] = tail_rec(child, d1, min_level, budget - 1);
    }
    Dyadic rec = (m[0] + m[1]).half().ceil_to_exp(kTailFloorExp);
    Dyadic out = rec < crude ? rec : crude;
    if (memo.size() < (1u << 22)) memo.emplace(key, out);
    return out;
}

}  // namespace

Dyadic level_tail_mass(u128 v, int depth, int min_level, int budget) {
    return tail_rec(v, depth, min_level, budget);
}

Membership member_A(const Residue& r) {
    if (r.depth < 5) throw insufficient_depth("member_A: depth < 5");
    if (fires_in_range(r.value, 5, r.depth))
        return {MemberStatus::In, Dyadic()};
    return {MemberStatus::Possibly, level_tail_mass(r.value, r.depth, 5)};
}

Membership member_family(const Residue& r, const SetQuery& q) {
    using K = SetQuery::Kind;
    switch (q.kind) {
        case K::A:
            return member_A(r);
        case K::Ak: {
            int k = q.param;
            if (k < 5) throw std::invalid_argument("A_k: k < 5");
            if (r.depth < 5) throw insufficient_depth("A_k: depth < 5");
            if (fires_in_range(r.value, 5, std::min(k, r.depth)))
                return {MemberStatus::In, Dyadic()};
            if (r.depth >= k) return {MemberStatus::Possibly, Dyadic()};
            return {MemberStatus::Possibly,
                    level_tail_mass(r.value, r.depth, 5)};
        }
        case K::Ek: {
            int k = q.param;
            if (k < 5) throw std::invalid_argument("E_k: k < 5");
            if (r.depth > k && fires_in_range(r.value, k + 1, r.depth))
                return {MemberStatus::In, Dyadic()};
            return {MemberStatus::Possibly,
                    level_tail_mass(r.value, r.depth, k + 1)};
        }
        case K::Bm: {
            int m = q.param;
            if (m < 5) throw std::invalid_argument("B_m: m < 5");
            if (r.depth < m) throw insufficient_depth("B_m: depth < m");
            bool in;
            if (m == 5) {
                in = low_bits(r.value, 5) < 5;
            } else {
                in = low_bits(r.value, m) < u128(m) &&
                     !fires_in_range(r.value, 5, m - 1);
            }
            if (in) return {MemberStatus::In, Dyadic()};
            return {MemberStatus::Possibly, Dyadic()};
        }
    }
    throw std::logic_error("member_family: bad kind");
}

std::pair<Letter, Membership> phi_letter(const Residue& r) {
    Membership m = member_A(r);
    return {m.certain() ? Letter::Beta : Letter::Alpha, m};
}

std::vector<WindowLetter> phi_window(const Residue& r, long n_from, long n_to) {
    if (n_from > n_to) throw std::invalid_argument("phi_window: empty range");
    long reach = std::max(std::labs(n_from), std::labs(n_to));
    if (r.depth < reach + 5)
        throw insufficient_depth("phi_window: depth < |n| + 5");
    std::vector<WindowLetter> out;
    out.reserve(static_cast<std::size_t>(n_to - n_from + 1));
    for (long n = n_from; n <= n_to; ++n) {
        auto [letter, mem] = phi_letter(step(r, n));
        out.push_back({letter, mem});
    }
    return out;
}

std::vector<WindowLetter> phi_window(const OdometerPoint& p, long n_from,
                                     long n_to, int refine_to) {
    if (refine_to < 5) throw insufficient_depth("phi_window: refine_to < 5");
    int d = std::min(refine_to, kMaxResidueDepth);
    mpz_class v = p.dn(d);
    u128 value = 0;
    for (int i = d - 1; i >= 0; --i)
        value = (value << 1) | u128(mpz_tstbit(v.get_mpz_t(), i));
    return phi_window(Residue(d, value), n_from, n_to);
}

std::optional<Letter> letter_from_value(const mpz_class& v, int bits, Tail tail) {
    if (sgn(v) < 0) throw std::invalid_argument("letter_from_value: negative");
    mpz_class low;
    mpz_fdiv_r_2exp(low.get_mpz_t(), v.get_mpz_t(), 120);
    u128 v120 = 0;
    for (int w = 0; w < 2; ++w) {
        std::uint64_t part = 0;
        for (int b = 0; b < 64; ++b)
            if (mpz_tstbit(low.get_mpz_t(), 64 * w + b)) part |= 1ull << b;
        v120 |= u128(part) << (64 * w);
    }
    if (fires_in_range(v120, 5, std::min(bits, kMaxResidueDepth))) return Letter::Beta;
    if (bits < 120) return std::nullopt;  // too few bits to even cover level 120
    if (v120 >= pow2_u128(61)) return Letter::Alpha;
    // low value is small; a level fires iff a long-enough zero run follows
    u128 lim = v120 > u128(120) ? v120 : u128(120);
    unsigned long j = mpz_scan1(v.get_mpz_t(), 61);  // bits 61..119 are zero here
    if (j != ~0ul && j < static_cast<unsigned long>(bits))
        return u128(j) > lim ? Letter::Beta : Letter::Alpha;
    // no one-bit among the materialized bits: levels in (lim, bits] see the
    // bare value and fire
    if (u128(bits) > lim) return Letter::Beta;
    switch (tail) {
        case Tail::AllZeros: return Letter::Beta;  // finite value, high level fires
        case Tail::AllOnes: return Letter::Alpha;
        case Tail::SeededRandom: return std::nullopt;
    }
    return std::nullopt;
}

std::optional<Letter> resolved_letter(const OdometerPoint& p, long shift,
                                      int max_bits) {
    for (int bits = 256; bits <= max_bits; bits *= 2) {
        mpz_class v = p.value_at_depth(bits) + shift;
        if (sgn(v) < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) >
                              static_cast<std::size_t>(bits))
            continue;  // borrow or carry past the materialized range
        auto l = letter_from_value(v, bits, p.tail());
        if (l) return l;
        if (p.tail() != Tail::SeededRandom) return std::nullopt;
    }
    return std::nullopt;
}

int q_coefficient(long m) {
    if (m < 6) throw std::invalid_argument("q_coefficient: m < 6");
    // levels above 62 cannot swallow T^{m-1}[0^m] unless m-1 mod 2^i is
    // tiny, and (m-1) itself is the residue for i >= bitlength(m-1)
    for (int i = 5; i < m && i <= 62; ++i) {
        long r = (m - 1) & ((1l << i) - 1);
        if (r <= i - 1) return 0;
    }
    return 1;
}

}  // namespace weakgibbs

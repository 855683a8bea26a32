#pragma once

#include <utility>
#include <vector>

#include "weakgibbs/odometer.hpp"

namespace weakgibbs {

enum class Letter : unsigned char { Alpha, Beta };

inline char letter_char(Letter l) { return l == Letter::Beta ? 'b' : 'a'; }

/// Tri-state set membership decided from finitely many bits. IN means every
/// extension of the residue lies in the set; POSSIBLY carries a rigorous
/// upper bound on the conditional mass of extensions that do.
enum class MemberStatus : unsigned char { In, Possibly };

struct Membership {
    MemberStatus status;
    Dyadic tail_mass;  // meaningful iff status == Possibly

    bool certain() const { return status == MemberStatus::In; }
    bool certainly_out() const {
        return status == MemberStatus::Possibly && tail_mass.is_zero();
    }
};

/// Exact check of "exists i in [ilo, ihi] with u mod 2^i < i".
/// This is the membership workhorse: x in A iff some i >= 5 fires.
bool fires_in_range(u128 u, int ilo, int ihi);
bool fires_in_range_naive(u128 u, int ilo, int ihi);  // oracle for tests

/// Rigorous upper bound on the probability (uniform extension bits) that
/// some level i > depth with i >= min_level fires.
Dyadic level_tail_mass(u128 v, int depth, int min_level, int budget = 48);

struct SetQuery {
    enum class Kind : unsigned char { A, Ak, Ek, Bm } kind;
    int param = 0;  // k or m; unused for A

    static SetQuery whole_A() { return {Kind::A, 0}; }
    static SetQuery A_k(int k) { return {Kind::Ak, k}; }
    static SetQuery E_k(int k) { return {Kind::Ek, k}; }
    static SetQuery B_m(int m) { return {Kind::Bm, m}; }
};

Membership member_A(const Residue& r);
Membership member_family(const Residue& r, const SetQuery& q);

std::pair<Letter, Membership> phi_letter(const Residue& r);

struct WindowLetter {
    Letter letter;
    Membership membership;  // of A at this offset
};

std::vector<WindowLetter> phi_window(const Residue& r, long n_from, long n_to);
std::vector<WindowLetter> phi_window(const OdometerPoint& p, long n_from,
                                     long n_to, int refine_to);

/// q_m of the nu(A) series: 1 when B_m is the single cylinder
/// T^{m-1}[0^m], 0 when that cylinder is swallowed by lower levels.
int q_coefficient(long m);

/// Letter of the coded sequence at a concrete point, from `bits`
/// materialized low bits (the value V must already include any shift and
/// be the exact low-`bits` value of the point). Levels whose firing would
/// require more than 2^60 further zero bits are treated as non-firing;
/// for seeded points that event has probability below 2^{-2^59}.
/// nullopt means the materialized bits cannot settle the letter.
std::optional<Letter> letter_from_value(const mpz_class& v, int bits, Tail tail);

/// Convenience wrapper: letter of Phi(p) at position `shift`, materializing
/// tail bits as needed up to max_bits.
std::optional<Letter> resolved_letter(const OdometerPoint& p, long shift,
                                      int max_bits = 1 << 14);

}  // namespace weakgibbs

#pragma once

#include <cstdint>
#include <vector>

#include "weakgibbs/language.hpp"

namespace weakgibbs {

struct EventConstraint {
    long offset;
    SetQuery set;
    bool inside;  // false queries the complement
};

/// Intersection over constraints of T^{-offset}(set or complement).
struct WindowEvent {
    std::vector<EventConstraint> constraints;

    static WindowEvent from_word(const Word& w);  // beta=in A, alpha=out
    static WindowEvent single(SetQuery q, bool inside = true) {
        return WindowEvent{{{0, q, inside}}};
    }
};

struct MeasureResult {
    DyadicInterval interval;
    int depth_used = 0;
    Dyadic undetermined_mass;
    bool converged = false;
};

/// Adaptive residue-tree enclosure of the nu-probability of the event.
/// Splits the node with the largest unresolved mass until the total gap
/// drops below tolerance (or rel_tolerance times the certain mass, when
/// rel_tolerance is nonzero) or every unresolved node is at depth_cap.
MeasureResult event_measure(const WindowEvent& e, const Dyadic& tolerance,
                            int depth_cap = 40,
                            const Dyadic& rel_tolerance = Dyadic());

/// nu(A) = 5/32 + sum q_m 2^{-m}; returns the partial sum plus a 2^{-M}
/// tail allowance.
DyadicInterval nu_A_series(int terms);

/// mu of the Z-cylinder of w, as the nu-measure of the matching window event.
MeasureResult mu_cylinder(const Word& w, const Dyadic& tolerance,
                          int depth_cap = 40);

struct MonteCarloResult {
    double estimate;
    double std_error;
    long samples;
    long discarded;
};
MonteCarloResult monte_carlo_cylinder(const Word& w, long samples,
                                      std::uint64_t seed);

struct FamilyRow {
    int k;
    Dyadic nu_Ak;            // exact at depth k
    DyadicInterval nu_Ek;    // enclosure
    Dyadic tail_formula;     // (k+2) 2^{-k}
    bool tail_ok;            // nu_Ek.hi <= tail_formula
};
std::vector<FamilyRow> family_measures(int k_max);

}  // namespace weakgibbs

#include "weakgibbs/measure.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace weakgibbs {

WindowEvent WindowEvent::from_word(const Word& w) {
    WindowEvent e;
    for (int j = 0; j < w.len; ++j)
        e.constraints.push_back(
            {j, SetQuery::whole_A(), w.at(j) == Letter::Beta});
    return e;
}

namespace {

struct CondProb {
    Dyadic lo, hi;
};

// conditional probability enclosure of the event given the residue:
// upper = weakest single constraint, lower = union bound over deficits
CondProb classify(const Residue& r, const WindowEvent& e) {
    Dyadic one(1);
    Dyadic deficit;  // sum of (1 - lo_i)
    Dyadic hi = one;
    for (const EventConstraint& c : e.constraints) {
        Membership m = member_family(step(r, c.offset), c.set);
        Dyadic lo_i, hi_i;
        if (c.inside) {
            if (m.certain()) {
                lo_i = one;
                hi_i = one;
            } else {
                lo_i = Dyadic();
                hi_i = m.tail_mass < one ? m.tail_mass : one;
            }
        } else {
            if (m.certain()) {
                lo_i = Dyadic();
                hi_i = Dyadic();
            } else {
                Dyadic t = m.tail_mass < one ? m.tail_mass : one;
                lo_i = one - t;
                hi_i = one;
            }
        }
        deficit = deficit + (one - lo_i);
        if (hi_i < hi) hi = hi_i;
    }
    Dyadic lo = one - deficit;
    if (lo.sign() < 0) lo = Dyadic();
    if (hi < lo) hi = lo;  // can only happen via the crude union bound
    return {lo, hi};
}

struct Node {
    Dyadic gap;
    Residue r;
    Dyadic lo_abs, hi_abs;
};

struct NodeLess {
    bool operator()(const Node& a, const Node& b) const { return a.gap < b.gap; }
};

}  // namespace

MeasureResult event_measure(const WindowEvent& e, const Dyadic& tolerance,
                            int depth_cap, const Dyadic& rel_tolerance) {
    if (tolerance.sign() <= 0)
        throw std::invalid_argument("event_measure: tolerance must be positive");
    int need = 5;
    for (const EventConstraint& c : e.constraints)
        if (c.set.kind == SetQuery::Kind::Bm)
            need = std::max(need, c.set.param);
    int base = std::max(12, need);
    int cap = std::min(std::max(depth_cap, base + 4), kMaxResidueDepth);

    std::priority_queue<Node, std::vector<Node>, NodeLess> pq;
    Dyadic total_lo, total_gap;
    int depth_used = base;

    auto add_node = [&](const Residue& r) {
        CondProb p = classify(r, e);
        Dyadic scale = Dyadic::pow2(-r.depth);
        Dyadic lo_abs = p.lo * scale;
        Dyadic hi_abs = p.hi * scale;
        Dyadic gap = hi_abs - lo_abs;
        total_lo = total_lo + lo_abs;
        total_gap = total_gap + gap;
        depth_used = std::max(depth_used, r.depth);
        if (gap.sign() > 0 && r.depth < cap)
            pq.push({gap, r, lo_abs, hi_abs});
    };

    if (e.constraints.empty()) {
        return {DyadicInterval(Dyadic(1)), base, Dyadic(), true};
    }
    for (u128 v = 0; v < pow2_u128(base); ++v)
        add_node(Residue(base, v));

    bool converged = false;
    while (true) {
        Dyadic tol = tolerance;
        if (!rel_tolerance.is_zero()) {
            Dyadic rel = rel_tolerance * total_lo;
            if (tol < rel) tol = rel;
        }
        if (total_gap <= tol) {
            converged = true;
            break;
        }
        if (pq.empty()) break;
        Node n = pq.top();
        pq.pop();
        total_lo = total_lo - n.lo_abs;
        total_gap = total_gap - n.gap;
        add_node(n.r.refined(false));
        add_node(n.r.refined(true));
    }

    Dyadic hi = total_lo + total_gap;
    if (Dyadic(1) < hi) hi = Dyadic(1);
    return {DyadicInterval(total_lo, hi), depth_used, total_gap, converged};
}

DyadicInterval nu_A_series(int terms) {
    if (terms < 6) throw std::invalid_argument("nu_A_series: need terms >= 6");
    Dyadic sum = Dyadic::scaled(5, -5);
    for (int m = 6; m <= terms; ++m)
        if (q_coefficient(m)) sum = sum + Dyadic::pow2(-m);
    return {sum, sum + Dyadic::pow2(-terms)};
}

MeasureResult mu_cylinder(const Word& w, const Dyadic& tolerance,
                          int depth_cap) {
    if (w.len < 1) throw std::invalid_argument("mu_cylinder: empty word");
    return event_measure(WindowEvent::from_word(w), tolerance, depth_cap);
}

MonteCarloResult monte_carlo_cylinder(const Word& w, long samples,
                                      std::uint64_t seed) {
    if (samples < 1)
        throw std::invalid_argument("monte_carlo_cylinder: samples < 1");
    long hits = 0, discarded = 0;
    std::uint64_t state = seed;
    for (long s = 0; s < samples; ++s) {
        OdometerPoint p = sample_point(splitmix64(state));
        bool match = true, resolved = true;
        for (int j = 0; j < w.len && match; ++j) {
            auto l = resolved_letter(p, j);
            if (!l) {
                resolved = false;
                break;
            }
            match = (*l == w.at(j));
        }
        if (!resolved)
            ++discarded;
        else if (match)
            ++hits;
    }
    long used = samples - discarded;
    double est = used > 0 ? static_cast<double>(hits) / used : 0.0;
    double se = used > 0 ? std::sqrt(est * (1.0 - est) / used) : 0.0;
    return {est, se, samples, discarded};
}

std::vector<FamilyRow> family_measures(int k_max) {
    if (k_max < 5 || k_max > 24)
        throw std::invalid_argument("family_measures: k_max out of [5,24]");
    std::vector<FamilyRow> rows;
    for (int k = 5; k <= k_max; ++k) {
        long count = 0;
        for (u128 v = 0; v < pow2_u128(k); ++v)
            if (fires_in_range(v, 5, k)) ++count;
        Dyadic nu_Ak = Dyadic::scaled(count, -k);
        MeasureResult ek = event_measure(WindowEvent::single(SetQuery::E_k(k)),
                                         Dyadic::pow2(-(k + 10)), 40);
        Dyadic tail = Dyadic::scaled(k + 2, -k);
        rows.push_back({k, nu_Ak, ek.interval, tail, ek.interval.hi <= tail});
    }
    return rows;
}

}  // namespace weakgibbs

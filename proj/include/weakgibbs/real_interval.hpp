#pragma once

#include "weakgibbs/dyadic.hpp"

namespace weakgibbs {

/// Outward-rounded floating interval. Directed rounding is emulated by
/// widening each result by a fixed ulp slack, so results are portable
/// enclosures regardless of the FPU rounding mode.
struct RealInterval {
    double lo = 0.0, hi = 0.0;

    RealInterval() = default;
    RealInterval(double l, double h);
    static RealInterval point(double x) { return RealInterval(x, x); }
    static RealInterval from_dyadic(const Dyadic& d);
    static RealInterval from_dyadic(const DyadicInterval& d);

    double mid() const { return 0.5 * (lo + hi); }
    double width() const { return hi - lo; }
    bool contains(double x) const { return lo <= x && x <= hi; }
    bool contains(const RealInterval& o) const { return lo <= o.lo && o.hi <= hi; }

    RealInterval operator+(const RealInterval& o) const;
    RealInterval operator-(const RealInterval& o) const;
    RealInterval operator-() const { return RealInterval(-hi, -lo); }
    RealInterval operator*(const RealInterval& o) const;
    RealInterval operator/(const RealInterval& o) const;  // o must not contain 0
    RealInterval& operator+=(const RealInterval& o) { return *this = *this + o; }
};

RealInterval outward_exp(const RealInterval& x);
RealInterval outward_log(const RealInterval& x);   // requires x.lo > 0
RealInterval outward_sqrt(const RealInterval& x);  // requires x.lo >= 0
RealInterval pow_int(const RealInterval& x, int n);

// widen a double by k ulps in the given direction
double nudge_up(double x, int ulps = 1);
double nudge_down(double x, int ulps = 1);

}  // namespace weakgibbs

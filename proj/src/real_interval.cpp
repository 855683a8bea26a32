#include "weakgibbs/real_interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace weakgibbs {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kExpSlack = 4;  // libm exp/log are not correctly rounded
}  // namespace

double nudge_up(double x, int ulps) {
    for (int i = 0; i < ulps; ++i) x = std::nextafter(x, kInf);
    return x;
}

double nudge_down(double x, int ulps) {
    for (int i = 0; i < ulps; ++i) x = std::nextafter(x, -kInf);
    return x;
}

RealInterval::RealInterval(double l, double h) : lo(l), hi(h) {
    if (std::isnan(l) || std::isnan(h) || l > h)
        throw std::invalid_argument("RealInterval: bad endpoints");
}

RealInterval RealInterval::from_dyadic(const Dyadic& d) {
    double x = d.to_double();
    return RealInterval(nudge_down(x, kExpSlack), nudge_up(x, kExpSlack));
}

RealInterval RealInterval::from_dyadic(const DyadicInterval& d) {
    return RealInterval(nudge_down(d.lo.to_double(), kExpSlack),
                        nudge_up(d.hi.to_double(), kExpSlack));
}

RealInterval RealInterval::operator+(const RealInterval& o) const {
    return RealInterval(nudge_down(lo + o.lo), nudge_up(hi + o.hi));
}

RealInterval RealInterval::operator-(const RealInterval& o) const {
    return RealInterval(nudge_down(lo - o.hi), nudge_up(hi - o.lo));
}

RealInterval RealInterval::operator*(const RealInterval& o) const {
    double c[4] = {lo * o.lo, lo * o.hi, hi * o.lo, hi * o.hi};
    double mn = *std::min_element(c, c + 4);
    double mx = *std::max_element(c, c + 4);
    return RealInterval(nudge_down(mn), nudge_up(mx));
}

RealInterval RealInterval::operator/(const RealInterval& o) const {
    if (o.lo <= 0.0 && o.hi >= 0.0)
        throw std::domain_error("RealInterval division by interval containing 0");
    double c[4] = {lo / o.lo, lo / o.hi, hi / o.lo, hi / o.hi};
    double mn = *std::min_element(c, c + 4);
    double mx = *std::max_element(c, c + 4);
    return RealInterval(nudge_down(mn), nudge_up(mx));
}

RealInterval outward_exp(const RealInterval& x) {
    if (x.hi > 709.78)
        throw range_exceeded("outward_exp: upper endpoint overflows");
    double lo = nudge_down(std::exp(x.lo), kExpSlack);
    double hi = nudge_up(std::exp(x.hi), kExpSlack);
    return RealInterval(std::max(lo, 0.0), hi);
}

RealInterval outward_log(const RealInterval& x) {
    if (x.lo <= 0.0) throw std::domain_error("outward_log: nonpositive endpoint");
    return RealInterval(nudge_down(std::log(x.lo), kExpSlack),
                        nudge_up(std::log(x.hi), kExpSlack));
}

RealInterval outward_sqrt(const RealInterval& x) {
    if (x.lo < 0.0) throw std::domain_error("outward_sqrt: negative endpoint");
    return RealInterval(std::max(0.0, nudge_down(std::sqrt(x.lo))),
                        nudge_up(std::sqrt(x.hi)));
}

RealInterval pow_int(const RealInterval& x, int n) {
    RealInterval r = RealInterval::point(1.0);
    for (int i = 0; i < n; ++i) r = r * x;
    return r;
}

}  // namespace weakgibbs

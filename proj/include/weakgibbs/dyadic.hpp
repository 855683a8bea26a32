#pragma once

#include <compare>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace weakgibbs {

struct insufficient_depth : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct range_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct scan_limit_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exact dyadic rational: mantissa * 2^exponent, mantissa odd or zero,
/// zero has exponent 0. All arithmetic is exact.
class Dyadic {
public:
    Dyadic() : mant_(0), exp_(0) {}
    Dyadic(long v) : mant_(v), exp_(0) { normalize(); }
    Dyadic(mpz_class m, long e) : mant_(std::move(m)), exp_(e) { normalize(); }

    static Dyadic pow2(long e) { return Dyadic(mpz_class(1), e); }
    // num * 2^e
    static Dyadic scaled(long num, long e) { return Dyadic(mpz_class(num), e); }

    const mpz_class& mantissa() const { return mant_; }
    long exponent() const { return exp_; }
    bool is_zero() const { return mant_ == 0; }
    int sign() const { return sgn(mant_); }

    Dyadic operator-() const { return Dyadic(-mant_, exp_); }
    Dyadic operator+(const Dyadic& o) const;
    Dyadic operator-(const Dyadic& o) const { return *this + (-o); }
    Dyadic operator*(const Dyadic& o) const {
        return Dyadic(mant_ * o.mant_, exp_ + o.exp_);
    }
    // division by a power of two is exact
    Dyadic half() const { return is_zero() ? Dyadic() : Dyadic(mant_, exp_ - 1); }

    std::strong_ordering operator<=>(const Dyadic& o) const;
    bool operator==(const Dyadic& o) const {
        return mant_ == o.mant_ && exp_ == o.exp_;
    }

    double to_double() const;  // nearest; use enclosure() when rigor matters

    // smallest representable step granularity is not relevant for exactness;
    // round *up* to 2^emin when smaller, keeping upper-bound semantics cheap.
    Dyadic ceil_to_exp(long emin) const;

    std::string str() const;  // canonical "m*2^e"

private:
    void normalize();
    mpz_class mant_;
    long exp_;
};

/// Closed interval of dyadic rationals, lo <= hi.
struct DyadicInterval {
    Dyadic lo, hi;

    DyadicInterval() = default;
    DyadicInterval(Dyadic p) : lo(p), hi(std::move(p)) {}
    DyadicInterval(Dyadic l, Dyadic h) : lo(std::move(l)), hi(std::move(h)) {
        if (hi < lo) throw std::invalid_argument("DyadicInterval: lo > hi");
    }

    Dyadic width() const { return hi - lo; }
    bool contains(const Dyadic& x) const { return lo <= x && x <= hi; }
    bool contains(const DyadicInterval& o) const {
        return lo <= o.lo && o.hi <= hi;
    }
    bool overlaps(const DyadicInterval& o) const {
        return !(hi < o.lo || o.hi < lo);
    }

    DyadicInterval operator+(const DyadicInterval& o) const {
        return {lo + o.lo, hi + o.hi};
    }
    DyadicInterval operator-() const { return {-hi, -lo}; }
    DyadicInterval operator*(const DyadicInterval& o) const;
    DyadicInterval scale(long k) const {  // multiply by integer k
        Dyadic f(k);
        if (k >= 0) return {lo * f, hi * f};
        return {hi * f, lo * f};
    }
};

}  // namespace weakgibbs

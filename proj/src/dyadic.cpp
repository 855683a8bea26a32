#include "weakgibbs/dyadic.hpp"

#include <cmath>

namespace weakgibbs {

void Dyadic::normalize() {
    if (mant_ == 0) {
        exp_ = 0;
        return;
    }
    mp_bitcnt_t tz = mpz_scan1(mant_.get_mpz_t(), 0);
    if (tz > 0) {
        mant_ >>= tz;
        exp_ += static_cast<long>(tz);
    }
}

Dyadic Dyadic::operator+(const Dyadic& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    long e = std::min(exp_, o.exp_);
    mpz_class a = mant_ << static_cast<unsigned long>(exp_ - e);
    mpz_class b = o.mant_ << static_cast<unsigned long>(o.exp_ - e);
    return Dyadic(a + b, e);
}

std::strong_ordering Dyadic::operator<=>(const Dyadic& o) const {
    int sl = sign(), sr = o.sign();
    if (sl != sr) return sl <=> sr;
    if (sl == 0) return std::strong_ordering::equal;
    // same nonzero sign; compare |m|*2^e via bit lengths first
    long bl = static_cast<long>(mpz_sizeinbase(mant_.get_mpz_t(), 2)) + exp_;
    long br = static_cast<long>(mpz_sizeinbase(o.mant_.get_mpz_t(), 2)) + o.exp_;
    if (bl != br) return sl > 0 ? bl <=> br : br <=> bl;
    Dyadic d = *this - o;
    return d.sign() <=> 0;
}

double Dyadic::to_double() const {
    if (is_zero()) return 0.0;
    // keep at most 64 mantissa bits before ldexp to avoid overflow in get_d
    long bits = static_cast<long>(mpz_sizeinbase(mant_.get_mpz_t(), 2));
    long drop = bits > 64 ? bits - 64 : 0;
    mpz_class m = mant_ >> static_cast<unsigned long>(drop);
    double md = m.get_d();
    long e = exp_ + drop;
    if (e > 3000) return sign() > 0 ? HUGE_VAL : -HUGE_VAL;
    if (e < -3000) e = -3000;  // underflows to 0/denormal, fine for nearest use
    return std::ldexp(md, static_cast<int>(e));
}

Dyadic Dyadic::ceil_to_exp(long emin) const {
    if (is_zero() || exp_ >= emin) return *this;
    unsigned long shift = static_cast<unsigned long>(emin - exp_);
    mpz_class q = mant_ >> shift;  // floor division
    mpz_class r = mant_ - (q << shift);
    if (r != 0) q += 1;
    return Dyadic(q, emin);
}

std::string Dyadic::str() const {
    return mant_.get_str() + "*2^" + std::to_string(exp_);
}

DyadicInterval DyadicInterval::operator*(const DyadicInterval& o) const {
    Dyadic c[4] = {lo * o.lo, lo * o.hi, hi * o.lo, hi * o.hi};
    Dyadic mn = c[0], mx = c[0];
    for (int i = 1; i < 4; ++i) {
        if (c[i] < mn) mn = c[i];
        if (mx < c[i]) mx = c[i];
    }
    return {mn, mx};
}

}  // namespace weakgibbs

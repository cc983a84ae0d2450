#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "sbq/rational.hpp"
#include "sbq/rational_interval.hpp"

namespace sbq {

// Fixed-precision binary float over mpfr_t.  Every inexact operation names
// its rounding direction at the call site, so enclosure code reads as a
// chain of explicit outward roundings.
class bfloat {
public:
    static constexpr mpfr_prec_t precision = 128;

    bfloat() {
        mpfr_init2(v_, precision);
        mpfr_set_zero(v_, 1);
    }
    bfloat(const bfloat& o) {
        mpfr_init2(v_, precision);
        mpfr_set(v_, o.v_, MPFR_RNDN); // same precision: exact
    }
    bfloat(bfloat&& o) noexcept {
        mpfr_init2(v_, precision);
        mpfr_swap(v_, o.v_);
    }
    bfloat& operator=(bfloat o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~bfloat() { mpfr_clear(v_); }

    static bfloat of_long(long x) {
        bfloat r;
        mpfr_set_si(r.v_, x, MPFR_RNDN); // exact for |x| < 2^precision
        return r;
    }
    static bfloat of_rational(const rational& x, mpfr_rnd_t rnd) {
        bfloat r;
        mpfr_set_q(r.v_, x.raw().get_mpq_t(), rnd);
        return r;
    }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

    int sign() const { return mpfr_sgn(v_); }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }

    // The exact value of a finite binary float is a rational.
    rational to_rational() const {
        mpq_class q;
        mpfr_get_q(q.get_mpq_t(), v_);
        return rational(q);
    }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    friend int cmp(const bfloat& a, const bfloat& b) { return mpfr_cmp(a.v_, b.v_); }
    friend int cmp(const bfloat& a, const rational& b) { return mpfr_cmp_q(a.v_, b.raw().get_mpq_t()); }
    friend bool operator<(const bfloat& a, const bfloat& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const bfloat& a, const bfloat& b) { return cmp(a, b) <= 0; }
    friend bool operator==(const bfloat& a, const bfloat& b) { return cmp(a, b) == 0; }

    friend bfloat add(const bfloat& a, const bfloat& b, mpfr_rnd_t r) { return binop(mpfr_add, a, b, r); }
    friend bfloat sub(const bfloat& a, const bfloat& b, mpfr_rnd_t r) { return binop(mpfr_sub, a, b, r); }
    friend bfloat mul(const bfloat& a, const bfloat& b, mpfr_rnd_t r) { return binop(mpfr_mul, a, b, r); }
    friend bfloat div(const bfloat& a, const bfloat& b, mpfr_rnd_t r) { return binop(mpfr_div, a, b, r); }
    friend bfloat neg(const bfloat& a) {
        bfloat r;
        mpfr_neg(r.v_, a.v_, MPFR_RNDN); // exact
        return r;
    }
    friend bfloat min(const bfloat& a, const bfloat& b) { return a < b ? a : b; }
    friend bfloat max(const bfloat& a, const bfloat& b) { return a < b ? b : a; }

private:
    using raw_fn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
    static bfloat binop(raw_fn fn, const bfloat& a, const bfloat& b, mpfr_rnd_t r) {
        bfloat out;
        fn(out.v_, a.v_, b.v_, r);
        return out;
    }

    mpfr_t v_;
};

// Directed interval with binary-float endpoints; all arithmetic rounds the
// lower endpoint down and the upper endpoint up.
class float_interval {
public:
    float_interval() = default;
    float_interval(bfloat lo, bfloat hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
        if (cmp(hi_, lo_) < 0) throw domain_error("float_interval: lo > hi");
    }
    static float_interval of_point(const rational& x) {
        return {bfloat::of_rational(x, MPFR_RNDD), bfloat::of_rational(x, MPFR_RNDU)};
    }
    static float_interval of(const rational_interval& x) {
        return {bfloat::of_rational(x.lo(), MPFR_RNDD), bfloat::of_rational(x.hi(), MPFR_RNDU)};
    }
    static float_interval of_long(long lo, long hi) { return {bfloat::of_long(lo), bfloat::of_long(hi)}; }

    const bfloat& lo() const { return lo_; }
    const bfloat& hi() const { return hi_; }
    rational lo_rational() const { return lo_.to_rational(); }
    rational hi_rational() const { return hi_.to_rational(); }
    rational_interval to_rational_interval() const { return {lo_rational(), hi_rational()}; }

    bfloat width() const { return sub(hi_, lo_, MPFR_RNDU); }
    bool contains(const rational& x) const { return cmp(lo_, x) <= 0 && cmp(hi_, x) >= 0; }
    bool contains(const bfloat& x) const { return cmp(lo_, x) <= 0 && 0 <= cmp(hi_, x); }
    bool overlaps(const float_interval& o) const { return cmp(lo_, o.hi_) <= 0 && cmp(o.lo_, hi_) <= 0; }
    bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
    bfloat sup_abs() const {
        bfloat a = lo_, b = hi_;
        mpfr_abs(a.get(), a.get(), MPFR_RNDU);
        mpfr_abs(b.get(), b.get(), MPFR_RNDU);
        return max(a, b);
    }

    friend float_interval operator+(const float_interval& a, const float_interval& b) {
        return {add(a.lo_, b.lo_, MPFR_RNDD), add(a.hi_, b.hi_, MPFR_RNDU)};
    }
    friend float_interval operator-(const float_interval& a, const float_interval& b) {
        return {sub(a.lo_, b.hi_, MPFR_RNDD), sub(a.hi_, b.lo_, MPFR_RNDU)};
    }
    friend float_interval operator-(const float_interval& a) { return {neg(a.hi_), neg(a.lo_)}; }
    friend float_interval operator*(const float_interval& a, const float_interval& b) {
        const bfloat lo = min(min(mul(a.lo_, b.lo_, MPFR_RNDD), mul(a.lo_, b.hi_, MPFR_RNDD)),
                              min(mul(a.hi_, b.lo_, MPFR_RNDD), mul(a.hi_, b.hi_, MPFR_RNDD)));
        const bfloat hi = max(max(mul(a.lo_, b.lo_, MPFR_RNDU), mul(a.lo_, b.hi_, MPFR_RNDU)),
                              max(mul(a.hi_, b.lo_, MPFR_RNDU), mul(a.hi_, b.hi_, MPFR_RNDU)));
        return {lo, hi};
    }

    float_interval& operator+=(const float_interval& b) {
        lo_ = add(lo_, b.lo_, MPFR_RNDD);
        hi_ = add(hi_, b.hi_, MPFR_RNDU);
        return *this;
    }

private:
    bfloat lo_, hi_;
};

// ln k (or log2 k) rounded to nearest at 128 bits and then taken as the
// exact value of that binary float.  Fixed convention so log-scaled trend
// quantities are reproducible exact rationals.
inline rational log_rational(unsigned long k) {
    bfloat t;
    mpfr_set_ui(t.get(), k, MPFR_RNDN);
    mpfr_log(t.get(), t.get(), MPFR_RNDN);
    return t.to_rational();
}

inline rational log2_rational(unsigned long k) {
    bfloat t;
    mpfr_set_ui(t.get(), k, MPFR_RNDN);
    mpfr_log2(t.get(), t.get(), MPFR_RNDN);
    return t.to_rational();
}

// Exact terminating decimal of a rational whose denominator is a power of
// two; used to serialize float endpoints without loss.
inline std::string exact_decimal_string(const rational& x) {
    mpz_class num = x.num(), den = x.den();
    const bool negative = num < 0;
    if (negative) num = -num;
    const auto k = mpz_scan1(den.get_mpz_t(), 0);
    if ((den >> k) != 1)
        throw domain_error("exact_decimal_string: denominator is not a power of two");
    mpz_class five;
    mpz_ui_pow_ui(five.get_mpz_t(), 5, k);
    std::string digits = mpz_class(num * five).get_str();
    if (digits.size() <= k) digits.insert(0, k + 1 - digits.size(), '0');
    std::string out = digits.substr(0, digits.size() - k);
    std::string frac = digits.substr(digits.size() - k);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty()) out += "." + frac;
    return negative ? "-" + out : out;
}

} // namespace sbq

#pragma once

#include <utility>
#include <variant>

#include "sbq/float_interval.hpp"
#include "sbq/rational_interval.hpp"

namespace sbq {

// Result-facing wrapper over the two enclosure flavors.
class enclosure {
public:
    enclosure(rational_interval r) : v_(std::move(r)) {} // NOLINT
    enclosure(float_interval f) : v_(std::move(f)) {}    // NOLINT

    bool rational_flavor() const { return std::holds_alternative<rational_interval>(v_); }
    const rational_interval& as_rational() const { return std::get<rational_interval>(v_); }
    const float_interval& as_float() const { return std::get<float_interval>(v_); }

    std::string flavor() const { return rational_flavor() ? "rational" : "float"; }
    std::string lo_string() const {
        return rational_flavor() ? as_rational().lo().str()
                                 : exact_decimal_string(as_float().lo_rational());
    }
    std::string hi_string() const {
        return rational_flavor() ? as_rational().hi().str()
                                 : exact_decimal_string(as_float().hi_rational());
    }

private:
    std::variant<rational_interval, float_interval> v_;
};

namespace detail {

inline mpz_class rational_floor(const rational& x) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), x.num().get_mpz_t(), x.den().get_mpz_t());
    return q;
}

inline bool range_contains_integer(const rational& lo, const rational& hi) {
    mpz_class ceil_lo;
    mpz_cdiv_q(ceil_lo.get_mpz_t(), lo.num().get_mpz_t(), lo.den().get_mpz_t());
    return rational(ceil_lo) <= hi;
}

// Guard radius around the extrema of cos(2*pi*t); far wider than the
// uncertainty of the pi approximation, so endpoint evaluation is safe
// outside it.
inline const rational& extremum_guard() {
    static const rational eps(mpz_class(1), mpz_class(1) << 100);
    return eps;
}

// Sound bounds for cos(2*pi*t) at an exact rational t.
inline float_interval cos_turn_point(const rational& t) {
    const rational tn = t - rational(rational_floor(t)); // in [0, 1)
    const rational& eps = extremum_guard();
    const rational half(1, 2);

    // 2*pi*tn bracketed despite the inexact pi (tn >= 0).
    bfloat pi_dn, pi_up;
    mpfr_const_pi(pi_dn.get(), MPFR_RNDD);
    mpfr_const_pi(pi_up.get(), MPFR_RNDU);
    bfloat t_dn, t_up;
    mpfr_mul_q(t_dn.get(), pi_dn.get(), tn.raw().get_mpq_t(), MPFR_RNDD);
    mpfr_mul_2ui(t_dn.get(), t_dn.get(), 1, MPFR_RNDD);
    mpfr_mul_q(t_up.get(), pi_up.get(), tn.raw().get_mpq_t(), MPFR_RNDU);
    mpfr_mul_2ui(t_up.get(), t_up.get(), 1, MPFR_RNDU);

    bfloat lo, hi;
    if (abs(tn - half) < eps) {
        mpfr_set_si(lo.get(), -1, MPFR_RNDN);
    } else {
        // no interior minimum: min over [t_dn, t_up] sits at an endpoint
        bfloat c1, c2;
        mpfr_cos(c1.get(), t_dn.get(), MPFR_RNDD);
        mpfr_cos(c2.get(), t_up.get(), MPFR_RNDD);
        lo = min(c1, c2);
    }
    if (tn < eps || rational(1) - tn < eps) {
        mpfr_set_si(hi.get(), 1, MPFR_RNDN);
    } else {
        bfloat c1, c2;
        mpfr_cos(c1.get(), t_dn.get(), MPFR_RNDU);
        mpfr_cos(c2.get(), t_up.get(), MPFR_RNDU);
        hi = max(c1, c2);
    }
    return {lo, hi};
}

// Sound bounds for cos(2*pi*t) over t in [t1, t2] (turns).
inline float_interval cos_turn_range(const rational& t1, const rational& t2) {
    if (t2 - t1 >= rational(1)) return float_interval::of_long(-1, 1);
    const float_interval a = cos_turn_point(t1);
    const float_interval b = cos_turn_point(t2);
    const rational half(1, 2);

    bfloat hi;
    if (range_contains_integer(t1, t2)) {
        mpfr_set_si(hi.get(), 1, MPFR_RNDN);
    } else {
        hi = max(a.hi(), b.hi());
    }
    bfloat lo;
    if (range_contains_integer(t1 - half, t2 - half)) {
        mpfr_set_si(lo.get(), -1, MPFR_RNDN);
    } else {
        lo = min(a.lo(), b.lo());
    }
    return {lo, hi};
}

} // namespace detail

// Enclosures of (cos 2*pi*theta, sin 2*pi*theta) valid for every theta in
// the input interval, measured in turns.  A full turn or more collapses to
// [-1,1] x [-1,1].
inline std::pair<float_interval, float_interval> enclose_unit_circle(const rational_interval& turns) {
    const rational quarter(1, 4);
    return {detail::cos_turn_range(turns.lo(), turns.hi()),
            detail::cos_turn_range(turns.lo() - quarter, turns.hi() - quarter)};
}

inline std::pair<float_interval, float_interval> enclose_unit_circle(const float_interval& turns) {
    return enclose_unit_circle(turns.to_rational_interval());
}

} // namespace sbq

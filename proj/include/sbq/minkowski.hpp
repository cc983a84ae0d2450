#pragma once

#include <vector>

#include "sbq/continued_fraction.hpp"
#include "sbq/dyadic.hpp"
#include "sbq/rational.hpp"

namespace sbq {

// ?(x) for rational x in [0,1]: the finite alternating sum
// 2 * sum_k (-1)^(k-1) 2^(-(a_1+...+a_k)) over the quotients of x,
// assembled exactly as j / 2^(a_1+...+a_t - 1).
inline dyadic question_mark(const rational& x) {
    const continued_fraction cf = cf_expand(x); // validates [0,1]
    if (cf.empty()) return {};
    mpz_class total = 0;
    for (const auto& a : cf.quotients()) total += a;
    if (!total.fits_ulong_p())
        throw resource_limit_error("question_mark: dyadic exponent does not fit a machine word");
    const unsigned long n = total.get_ui() - 1; // exponent of the dyadic value
    mpz_class j = 0;
    mpz_class partial = 0;
    int sign = 1;
    for (const auto& a : cf.quotients()) {
        partial += a;
        const unsigned long shift = mpz_class(total - partial).get_ui();
        if (sign > 0) {
            j += mpz_class(1) << shift;
        } else {
            j -= mpz_class(1) << shift;
        }
        sign = -sign;
    }
    return {std::move(j), static_cast<long>(n)};
}

// m(x), the inverse of ?(x), on dyadic arguments.  The binary digits of
// the argument are read as runs: a leading run of z zeros gives a_1 = z+1,
// later runs map to quotients directly, and a trailing [..., a, 1] merges
// to [..., a+1] to restore the canonical form.
inline rational question_mark_inverse(const dyadic& d) {
    const mpz_class& j = d.numerator();
    const long n = d.exponent();
    if (j == 0) return rational(0);
    if (n == 0) return rational(1);

    std::vector<mpz_class> a;
    int current_bit = 0; // runs start with the (possibly empty) zero run
    mpz_class run = 0;
    for (long i = n - 1; i >= 0; --i) { // digits b_1..b_n, most significant first
        const int bit = mpz_tstbit(j.get_mpz_t(), static_cast<unsigned long>(i)) ? 1 : 0;
        if (bit == current_bit) {
            ++run;
        } else {
            a.push_back(run);
            current_bit = bit;
            run = 1;
        }
    }
    a.push_back(run);
    a.front() += 1;
    if (a.size() >= 2 && a.back() == 1) {
        a.pop_back();
        a.back() += 1;
    }
    return cf_value(continued_fraction(std::move(a)));
}

// The two functional identities of ?, checked exactly.
struct identity_report {
    bool reflection_ok = false; // ?(1-x) = 1 - ?(x)
    bool halving_ok = false;    // ?(x/(1+x)) = ?(x)/2
    bool all_ok() const { return reflection_ok && halving_ok; }
};

inline identity_report identity_checks(const rational& x) {
    if (x < rational(0) || x > rational(1))
        throw domain_error("identity_checks: input outside [0,1]");
    const dyadic qx = question_mark(x);
    identity_report r;
    r.reflection_ok = question_mark(rational(1) - x) == qx.one_minus();
    r.halving_ok = question_mark(x / (rational(1) + x)) == qx.halve();
    return r;
}

} // namespace sbq

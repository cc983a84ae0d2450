#pragma once

#include <vector>

#include "sbq/rational.hpp"

namespace sbq {

// Finite continued fraction [0; a1, ..., at] of a rational in [0,1].
// The integer part is implicitly 0.  Canonical form: the empty list is 0,
// [0;1] is 1, and otherwise at >= 2.
class continued_fraction {
public:
    continued_fraction() = default;
    explicit continued_fraction(std::vector<mpz_class> quotients) : a_(std::move(quotients)) {
        for (const auto& a : a_)
            if (a <= 0) throw domain_error("continued_fraction: quotients must be positive");
    }

    const std::vector<mpz_class>& quotients() const { return a_; }
    std::size_t length() const { return a_.size(); }
    bool empty() const { return a_.empty(); }

    bool is_canonical() const {
        if (a_.empty()) return true;
        if (a_.size() == 1) return true;     // [0;a1], any a1 >= 1
        return a_.back() >= 2;
    }

private:
    std::vector<mpz_class> a_;
};

// Euclidean expansion of x in [0,1].  The division chain ends with a
// quotient >= 2 automatically except for x = 1, which yields [0;1].
inline continued_fraction cf_expand(const rational& x) {
    if (x < rational(0) || x > rational(1))
        throw domain_error("cf_expand: input outside [0,1]");
    std::vector<mpz_class> a;
    mpz_class u = x.den(), v = x.num();
    while (v != 0) {
        mpz_class q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t());
        a.push_back(q);
        u = v;
        v = r;
    }
    return continued_fraction(std::move(a));
}

// Exact value by backward evaluation; accepts any positive quotients.
inline rational cf_value(const continued_fraction& cf) {
    rational v(0);
    const auto& a = cf.quotients();
    for (auto it = a.rbegin(); it != a.rend(); ++it) {
        if (*it <= 0) throw domain_error("cf_value: quotients must be positive");
        v = (rational(*it) + v).reciprocal();
    }
    return v;
}

inline mpz_class quotient_sum(const continued_fraction& cf) {
    mpz_class s = 0;
    for (const auto& a : cf.quotients()) s += a;
    return s;
}

} // namespace sbq

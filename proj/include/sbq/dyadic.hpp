#pragma once

#include <string>

#include "sbq/rational.hpp"

namespace sbq {

// Dyadic rational j/2^n in [0,1], normalized so j is odd except for the
// endpoint encodings 0/2^0 and 1/2^0.
class dyadic {
public:
    dyadic() : j_(0), n_(0) {}
    dyadic(mpz_class j, long n) : j_(std::move(j)), n_(n) {
        if (n_ < 0 || j_ < 0) throw domain_error("dyadic: negative component");
        while (n_ > 0 && mpz_even_p(j_.get_mpz_t())) {
            j_ >>= 1;
            --n_;
        }
        mpz_class limit = mpz_class(1) << static_cast<unsigned long>(n_);
        if (j_ > limit) throw domain_error("dyadic: value above 1");
    }

    // Requires the reduced denominator of x to be a power of two.
    static dyadic from_rational(const rational& x) {
        mpz_class den = x.den();
        const auto k = mpz_scan1(den.get_mpz_t(), 0); // den >= 1, so k is valid
        if ((den >> k) != 1) throw domain_error("dyadic: denominator is not a power of two");
        return dyadic(x.num(), static_cast<long>(k));
    }

    const mpz_class& numerator() const { return j_; }
    long exponent() const { return n_; }

    rational to_rational() const {
        return rational(j_, mpz_class(1) << static_cast<unsigned long>(n_));
    }

    dyadic one_minus() const {
        return dyadic((mpz_class(1) << static_cast<unsigned long>(n_)) - j_, n_);
    }

    dyadic halve() const { return dyadic(j_, n_ + 1); }

    friend bool operator==(const dyadic& a, const dyadic& b) { return a.j_ == b.j_ && a.n_ == b.n_; }
    friend bool operator!=(const dyadic& a, const dyadic& b) { return !(a == b); }
    friend bool operator<(const dyadic& a, const dyadic& b) {
        // j_a/2^na < j_b/2^nb  <=>  j_a * 2^nb < j_b * 2^na
        const long n = std::max(a.n_, b.n_);
        return (a.j_ << static_cast<unsigned long>(n - a.n_)) < (b.j_ << static_cast<unsigned long>(n - b.n_));
    }
    friend bool operator<=(const dyadic& a, const dyadic& b) { return a == b || a < b; }

    std::string str() const { return to_rational().str(); }

private:
    mpz_class j_;
    long n_;
};

} // namespace sbq

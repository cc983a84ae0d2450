#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

#include "sbq/error.hpp"

namespace sbq {

// Exact rational p/q with gcd(p,q) = 1 and q >= 1.  A thin shell over
// mpq_class: GMP keeps values canonical through arithmetic, construction
// canonicalizes and rejects zero denominators.
class rational {
public:
    rational() : v_(0) {}
    rational(long n) : v_(n) {} // NOLINT: integers embed implicitly
    rational(long num, long den) : rational(mpz_class(num), mpz_class(den)) {}
    rational(const mpz_class& num, const mpz_class& den) {
        if (den == 0) throw domain_error("rational: zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }
    explicit rational(const mpz_class& n) : v_(n) {}
    explicit rational(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }

    // Accepts "p/q" or a bare integer "p".
    static rational parse(const std::string& s) {
        const auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return rational(mpz_class(s));
            return rational(mpz_class(s.substr(0, slash)), mpz_class(s.substr(slash + 1)));
        } catch (const std::invalid_argument&) {
            throw domain_error("rational: cannot parse '" + s + "'");
        }
    }

    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }
    mpq_class& raw() { return v_; }

    int sign() const { return sgn(v_); }
    bool is_integer() const { return v_.get_den() == 1; }

    rational reciprocal() const {
        if (v_ == 0) throw domain_error("rational: reciprocal of zero");
        rational r;
        mpq_inv(r.v_.get_mpq_t(), v_.get_mpq_t());
        return r;
    }

    // x^e for e >= 0 (and negative e away from zero).
    rational pow(long e) const {
        if (e < 0) return reciprocal().pow(-e);
        rational r(1);
        mpz_pow_ui(r.v_.get_num_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(r.v_.get_den_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(e));
        return r; // powers of a canonical fraction stay canonical
    }

    friend rational abs(const rational& a) {
        rational r;
        mpq_abs(r.v_.get_mpq_t(), a.v_.get_mpq_t());
        return r;
    }

    friend rational operator+(const rational& a, const rational& b) { return rational::wrap(a.v_ + b.v_); }
    friend rational operator-(const rational& a, const rational& b) { return rational::wrap(a.v_ - b.v_); }
    friend rational operator*(const rational& a, const rational& b) { return rational::wrap(a.v_ * b.v_); }
    friend rational operator/(const rational& a, const rational& b) {
        if (b.v_ == 0) throw domain_error("rational: division by zero");
        return rational::wrap(a.v_ / b.v_);
    }
    friend rational operator-(const rational& a) { return rational::wrap(-a.v_); }

    rational& operator+=(const rational& b) { v_ += b.v_; return *this; }
    rational& operator-=(const rational& b) { v_ -= b.v_; return *this; }
    rational& operator*=(const rational& b) { v_ *= b.v_; return *this; }
    rational& operator/=(const rational& b) {
        if (b.v_ == 0) throw domain_error("rational: division by zero");
        v_ /= b.v_;
        return *this;
    }

    friend bool operator==(const rational& a, const rational& b) { return mpq_equal(a.v_.get_mpq_t(), b.v_.get_mpq_t()) != 0; }
    friend bool operator!=(const rational& a, const rational& b) { return !(a == b); }
    friend bool operator<(const rational& a, const rational& b) { return cmp(a.v_, b.v_) < 0; }
    friend bool operator<=(const rational& a, const rational& b) { return cmp(a.v_, b.v_) <= 0; }
    friend bool operator>(const rational& a, const rational& b) { return cmp(a.v_, b.v_) > 0; }
    friend bool operator>=(const rational& a, const rational& b) { return cmp(a.v_, b.v_) >= 0; }

    // Always "p/q", matching the wire format used by the CLI.
    std::string str() const { return v_.get_num().get_str() + "/" + v_.get_den().get_str(); }

    friend std::ostream& operator<<(std::ostream& os, const rational& r) { return os << r.str(); }

private:
    static rational wrap(mpq_class q) {
        rational r;
        r.v_ = std::move(q); // mpq arithmetic on canonical inputs is canonical
        return r;
    }

    mpq_class v_;
};

inline rational min(const rational& a, const rational& b) { return a < b ? a : b; }
inline rational max(const rational& a, const rational& b) { return a < b ? b : a; }

} // namespace sbq

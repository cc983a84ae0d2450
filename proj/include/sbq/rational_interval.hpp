#pragma once

#include <initializer_list>

#include "sbq/rational.hpp"

namespace sbq {

// Closed interval with exact rational endpoints.  Arithmetic is exact, so
// "outward rounding" is the identity; soundness is pure containment
// bookkeeping.  Point inputs stay points through +, -, * and square.
class rational_interval {
public:
    rational_interval() : lo_(0), hi_(0) {}
    rational_interval(const rational& point) : lo_(point), hi_(point) {} // NOLINT
    rational_interval(rational lo, rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
        if (hi_ < lo_) throw domain_error("rational_interval: lo > hi");
    }

    const rational& lo() const { return lo_; }
    const rational& hi() const { return hi_; }
    rational width() const { return hi_ - lo_; }
    rational midpoint() const { return (lo_ + hi_) / rational(2); }
    bool is_point() const { return lo_ == hi_; }

    bool contains(const rational& x) const { return lo_ <= x && x <= hi_; }
    bool contains(const rational_interval& other) const { return lo_ <= other.lo_ && other.hi_ <= hi_; }
    bool overlaps(const rational_interval& other) const { return lo_ <= other.hi_ && other.lo_ <= hi_; }
    bool contains_zero() const { return contains(rational(0)); }

    // max(|x|) over the interval.
    rational sup_abs() const { return max(abs(lo_), abs(hi_)); }

    friend rational_interval operator+(const rational_interval& a, const rational_interval& b) {
        return {a.lo_ + b.lo_, a.hi_ + b.hi_};
    }
    friend rational_interval operator-(const rational_interval& a, const rational_interval& b) {
        return {a.lo_ - b.hi_, a.hi_ - b.lo_};
    }
    friend rational_interval operator-(const rational_interval& a) { return {-a.hi_, -a.lo_}; }
    friend rational_interval operator*(const rational_interval& a, const rational_interval& b) {
        const rational p1 = a.lo_ * b.lo_, p2 = a.lo_ * b.hi_, p3 = a.hi_ * b.lo_, p4 = a.hi_ * b.hi_;
        return {min(min(p1, p2), min(p3, p4)), max(max(p1, p2), max(p3, p4))};
    }
    friend rational_interval operator*(const rational& s, const rational_interval& a) {
        return s >= rational(0) ? rational_interval{s * a.lo_, s * a.hi_}
                                : rational_interval{s * a.hi_, s * a.lo_};
    }

    rational_interval& operator+=(const rational_interval& b) { lo_ += b.lo_; hi_ += b.hi_; return *this; }

    // A sign change inside the interval collapses the lower bound to 0.
    rational_interval square() const {
        const rational a = lo_ * lo_, b = hi_ * hi_;
        if (contains_zero()) return {rational(0), max(a, b)};
        return {min(a, b), max(a, b)};
    }

    // Requires 0 strictly outside.
    rational_interval reciprocal() const {
        if (contains_zero()) throw domain_error("rational_interval: reciprocal over zero");
        return {hi_.reciprocal(), lo_.reciprocal()};
    }

    std::string str() const { return "[" + lo_.str() + ", " + hi_.str() + "]"; }

private:
    rational lo_, hi_;
};

} // namespace sbq

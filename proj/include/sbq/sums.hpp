#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "sbq/operators.hpp"
#include "sbq/rational_interval.hpp"
#include "sbq/stern_brocot.hpp"

namespace sbq {

struct power_sum_result {
    rational sum;
    rational deviation; // distance from the limiting value
};

// sum_{k=2^(n-1)}^{2^n} (-1)^k xi_k^m, with its deviation from 1/2 + 2^-(m+1).
inline power_sum_result alt_power_sum_half(int n, int m, level_store& store) {
    if (n < 1 || m < 0) throw domain_error("alt_power_sum_half: need n >= 1, m >= 0");
    const level& L = store.at(n);
    rational sum(0);
    for (std::size_t k = L.size() / 2; k < L.size(); ++k) {
        const rational term = to_rational(L[k]).pow(m);
        sum += (k % 2 == 0) ? term : -term;
    }
    const rational target = rational(1, 2) + rational(mpz_class(1), mpz_class(1) << (m + 1));
    return {sum, sum - target};
}

// sum_{k=0}^{2^n} (-1)^k xi_k^m, with its deviation from 1/2.
inline power_sum_result alt_power_sum_full(int n, int m, level_store& store) {
    if (n < 1 || m < 1) throw domain_error("alt_power_sum_full: need n >= 1, m >= 1");
    const level& L = store.at(n);
    rational sum(0);
    for (std::size_t k = 0; k < L.size(); ++k) {
        const rational term = to_rational(L[k]).pow(m);
        sum += (k % 2 == 0) ? term : -term;
    }
    return {sum, sum - rational(1, 2)};
}

// Integrand for the alternating integral sum: either an exact polynomial
// (ascending coefficients) or a difference g - h of increasing functions
// that evaluate exactly on rationals.
class bv_function {
public:
    static bv_function polynomial(std::vector<rational> ascending_coeffs) {
        bv_function f;
        f.poly_ = std::move(ascending_coeffs);
        return f;
    }
    static bv_function monotone_difference(function_handle g, function_handle h) {
        bv_function f;
        f.monotone_.emplace(std::move(g), std::move(h));
        return f;
    }
    // Built-ins map onto the two supported shapes; anything else is refused.
    static bv_function from_handle(const function_handle& f) {
        if (f.name() == "one") return polynomial({rational(1)});
        if (f.name() == "identity") return polynomial({rational(0), rational(1)});
        if (f.name() == "qm_shift")
            return monotone_difference(function_handle::qm_shift(),
                                       function_handle::custom("zero", [](const rational&) {
                                           return rational(0);
                                       }));
        if (f.name() == "f0")
            return monotone_difference(function_handle::identity(), function_handle::qm_shift());
        throw unsupported_function_error("bv_function: no polynomial form or monotone split for '" +
                                         f.name() + "'");
    }

    bool is_polynomial() const { return poly_.has_value(); }
    const std::vector<rational>& coefficients() const { return *poly_; }
    const std::pair<function_handle, function_handle>& split() const { return *monotone_; }

private:
    bv_function() = default;

    std::optional<std::vector<rational>> poly_;
    std::optional<std::pair<function_handle, function_handle>> monotone_;
};

namespace detail {

// Antiderivative of an ascending-coefficient polynomial, evaluated exactly.
inline rational poly_antiderivative(const std::vector<rational>& c, const rational& x) {
    rational acc(0);
    rational xp = x;
    for (std::size_t i = 0; i < c.size(); ++i) {
        acc += c[i] * xp / rational(static_cast<long>(i + 1));
        xp *= x;
    }
    return acc;
}

} // namespace detail

// sum_{k=2^(n-1)}^{2^n - 1} (-1)^k integral of F over [xi_k, xi_{k+1}]:
// exact for polynomial F, an enclosure from endpoint bounds of the
// monotone split otherwise.
inline rational_interval corollary1_sum(int n, const bv_function& F, level_store& store) {
    if (n < 1) throw domain_error("corollary1_sum: n >= 1 required");
    const level& L = store.at(n);
    rational_interval total;
    for (std::size_t k = L.size() / 2; k + 1 < L.size(); ++k) {
        const rational a = to_rational(L[k]), b = to_rational(L[k + 1]);
        rational_interval piece;
        if (F.is_polynomial()) {
            const auto& c = F.coefficients();
            piece = detail::poly_antiderivative(c, b) - detail::poly_antiderivative(c, a);
        } else {
            const auto& [g, h] = F.split();
            const rational len = b - a;
            piece = rational_interval(len * (g(a) - h(b)), len * (g(b) - h(a)));
        }
        total += (k % 2 == 0) ? piece : -piece;
    }
    return total;
}

} // namespace sbq

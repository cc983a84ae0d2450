#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "sbq/float_interval.hpp"
#include "sbq/minkowski.hpp"
#include "sbq/parallel.hpp"
#include "sbq/rational_interval.hpp"
#include "sbq/stern_brocot.hpp"

namespace sbq {

// Pointwise-evaluable function on [1/2, 1] with exact rational values.
class function_handle {
public:
    using eval_fn = std::function<rational(const rational&)>;

    static function_handle identity() {
        return {"identity", [](const rational& x) { return x; }};
    }
    static function_handle one() {
        return {"one", [](const rational&) { return rational(1); }};
    }
    // ?(x) - 1/2
    static function_handle qm_shift() {
        return {"qm_shift",
                [](const rational& x) { return question_mark(x).to_rational() - rational(1, 2); }};
    }
    // x - ?(x)
    static function_handle f0() {
        return {"f0", [](const rational& x) { return x - question_mark(x).to_rational(); }};
    }
    static function_handle custom(std::string name, eval_fn fn) { return {std::move(name), std::move(fn)}; }

    rational operator()(const rational& x) const { return fn_(x); }
    const std::string& name() const { return name_; }

private:
    function_handle(std::string name, eval_fn fn) : name_(std::move(name)), fn_(std::move(fn)) {}

    std::string name_;
    eval_fn fn_;
};

namespace detail {

inline void check_unit_upper_half(const rational& x, const char* who) {
    if (x < rational(1, 2) || x > rational(1))
        throw domain_error(std::string(who) + ": argument outside [1/2, 1]");
}

inline constexpr int t_power_max = 22;      // 2^n leaf evaluations
inline constexpr int recurrence_max = 12;   // sum of 2^(n-k) evaluations

inline rational t_power_rec(const function_handle& f, int n, const rational& x) {
    if (n == 0) return f(x);
    const rational a = (rational(2) - x).reciprocal(); // in [2/3, 1]
    const rational b = (rational(1) + x).reciprocal(); // in [1/2, 2/3]
    return t_power_rec(f, n - 1, a) * a * a - t_power_rec(f, n - 1, b) * b * b;
}

} // namespace detail

// (Tf)(x) = f(1/(2-x))/(2-x)^2 - f(1/(1+x))/(1+x)^2
inline rational t_apply(const function_handle& f, const rational& x) {
    detail::check_unit_upper_half(x, "t_apply");
    return detail::t_power_rec(f, 1, x);
}

// Unsigned companion with the + sign.
inline rational t_plus_apply(const function_handle& f, const rational& x) {
    detail::check_unit_upper_half(x, "t_plus_apply");
    const rational a = (rational(2) - x).reciprocal();
    const rational b = (rational(1) + x).reciprocal();
    return f(a) * a * a + f(b) * b * b;
}

// f_n(x) = (T^n f)(x) by direct recursion; the cost is 2^n evaluations of
// f, which is the point: this is the oracle the closed forms are checked
// against, so it stays free of any shared structure with them.
inline rational t_power(const function_handle& f, int n, const rational& x) {
    if (n < 0) throw domain_error("t_power: negative power");
    if (n > detail::t_power_max)
        throw resource_limit_error("t_power: n exceeds the 2^n evaluation budget");
    detail::check_unit_upper_half(x, "t_power");
    return detail::t_power_rec(f, n, x);
}

// One signed summand of a closed form over W_n.
struct signed_term {
    frac64 f;
    rational coeff;
};

// Sign tree for T^n 1: the child q/(2q-p) inherits the parent sign, the
// child (q-p)/(2q-p) flips it; the root 1/2 carries +1.
inline std::vector<signed_term> one_closed_terms(int n) {
    if (n < 1) throw domain_error("one_closed_terms: n >= 1 required");
    std::vector<signed_term> terms = {{{1, 2}, rational(1)}};
    for (int lvl = 1; lvl < n; ++lvl) {
        std::vector<signed_term> next;
        next.reserve(terms.size() * 2);
        for (const auto& t : terms) {
            const std::uint64_t d = 2 * t.f.q - t.f.p;
            next.push_back({{t.f.q, d}, t.coeff});
            next.push_back({{t.f.q - t.f.p, d}, -t.coeff});
        }
        terms.swap(next);
    }
    return terms;
}

// Coefficient tree for T^n(?(x) - 1/2): stepping from W_l to W_{l+1} adds
// 2^-(l+2), with the same inherit/flip pattern as the sign tree; the root
// coefficient is 1/4.
inline std::vector<signed_term> qm_closed_terms(int n) {
    if (n < 1) throw domain_error("qm_closed_terms: n >= 1 required");
    std::vector<signed_term> terms = {{{1, 2}, rational(1, 4)}};
    for (int lvl = 1; lvl < n; ++lvl) {
        const rational step(mpz_class(1), mpz_class(1) << (lvl + 2));
        std::vector<signed_term> next;
        next.reserve(terms.size() * 2);
        for (const auto& t : terms) {
            const std::uint64_t d = 2 * t.f.q - t.f.p;
            next.push_back({{t.f.q, d}, step + t.coeff});
            next.push_back({{t.f.q - t.f.p, d}, step - t.coeff});
        }
        terms.swap(next);
    }
    return terms;
}

// W_n as a plain fraction list (refinement-map orbit of 1/2; unsorted).
inline std::vector<frac64> w_orbit(int n) {
    if (n < 1) throw domain_error("w_orbit: n >= 1 required");
    std::vector<frac64> w = {{1, 2}};
    for (int lvl = 1; lvl < n; ++lvl) {
        std::vector<frac64> next;
        next.reserve(w.size() * 2);
        for (const frac64 f : w) {
            const std::uint64_t d = 2 * f.q - f.p;
            next.push_back({f.q, d});
            next.push_back({f.q - f.p, d});
        }
        w.swap(next);
    }
    return w;
}

namespace detail {

// 1/(q - p x)^2 - 1/(q - p (1-x))^2
inline rational sq_bracket(frac64 f, const rational& x, const rational& xm) {
    const rational p(static_cast<long>(f.p));
    const rational q(static_cast<long>(f.q));
    return (q - p * x).pow(-2) - (q - p * xm).pow(-2);
}

template <typename Leaf>
rational sum_terms(std::size_t count, Leaf leaf) {
    tree_accumulator<rational, void (*)(rational&, const rational&)> acc(
        [](rational& into, const rational& from) { into += from; });
    for (std::size_t i = 0; i < count; ++i) acc.push(leaf(i));
    return acc.finish(rational(0));
}

} // namespace detail

// T^n 1 evaluated through its signed closed form over W_n.
inline rational tn_one_closed_eval(const std::vector<signed_term>& terms, const rational& x) {
    const rational xm = rational(1) - x;
    return detail::sum_terms(terms.size(), [&](std::size_t i) {
        return terms[i].coeff * detail::sq_bracket(terms[i].f, x, xm);
    });
}

inline rational tn_one_closed(int n, const rational& x) {
    detail::check_unit_upper_half(x, "tn_one_closed");
    return tn_one_closed_eval(one_closed_terms(n), x);
}

// psi_n(x) = sum over W_n of 1/(q-px)^2 + 1/(q-p(1-x))^2, defined on all
// of [0,1].
inline rational psi_closed_eval(const std::vector<frac64>& w, const rational& x) {
    if (x < rational(0) || x > rational(1)) throw domain_error("psi_closed: argument outside [0,1]");
    const rational xm = rational(1) - x;
    return detail::sum_terms(w.size(), [&](std::size_t i) {
        const rational p(static_cast<long>(w[i].p));
        const rational q(static_cast<long>(w[i].q));
        return (q - p * x).pow(-2) + (q - p * xm).pow(-2);
    });
}

inline rational psi_closed(int n, const rational& x) { return psi_closed_eval(w_orbit(n), x); }

// T^n(?(x) - 1/2) on [1/2, 2/3]: the damped ?(x) term plus the coefficient
// sum over W_n.
inline rational tn_qm_closed_eval(const std::vector<signed_term>& terms,
                                  const std::vector<frac64>& w, int n, const rational& x) {
    if (x < rational(1, 2) || x > rational(2, 3))
        throw domain_error("tn_qm_closed: argument outside [1/2, 2/3]");
    const rational damped = rational(mpz_class(1), mpz_class(1) << n) *
                            (question_mark(x).to_rational() - rational(1, 2)) *
                            psi_closed_eval(w, x);
    const rational xm = rational(1) - x;
    return damped + detail::sum_terms(terms.size(), [&](std::size_t i) {
               return terms[i].coeff * detail::sq_bracket(terms[i].f, x, xm);
           });
}

inline rational tn_qm_closed(int n, const rational& x) {
    return tn_qm_closed_eval(qm_closed_terms(n), w_orbit(n), n, x);
}

// T^n x via the descendant-pair closed form over W_{n-1}; needs the full
// level n-1 for neighbor mediants.
inline rational tn_identity_closed_eval(const level& prev, const rational& x) {
    const rational xm = rational(1) - x;
    const std::size_t count = prev.size() / 2;
    return detail::sum_terms(count, [&](std::size_t i) {
        const std::size_t j = 2 * i + 1;
        const frac64 mid = prev[j];
        const auto [lo, hi] = descendants(prev, j);
        const rational p(static_cast<long>(mid.p)), q(static_cast<long>(mid.q));
        const rational pl(static_cast<long>(lo.p)), ql(static_cast<long>(lo.q));
        const rational ph(static_cast<long>(hi.p)), qh(static_cast<long>(hi.q));
        const auto cube_gap = [&](const rational& t) {
            return (qh - ph * t).pow(-3) - (ql - pl * t).pow(-3);
        };
        return (q - p * x) * cube_gap(x) - (q - p * xm) * cube_gap(xm);
    });
}

inline rational tn_identity_closed(int n, const rational& x, level_store& store) {
    if (n < 2) throw domain_error("tn_identity_closed: stated for n >= 2");
    detail::check_unit_upper_half(x, "tn_identity_closed");
    return tn_identity_closed_eval(store.at(n - 1), x);
}

// T^n(x - ?(x)) assembled by linearity from the three closed forms;
// restricted to [1/2, 2/3] by the ?(x) part.
inline rational f0_power_closed(int n, const rational& x, level_store& store) {
    if (n < 2) throw domain_error("f0_power_closed: stated for n >= 2");
    return tn_identity_closed(n, x, store) - tn_qm_closed(n, x) -
           rational(1, 2) * tn_one_closed(n, x);
}

// Exact check of the evaluation-shift recurrence
//   f_n(y/(y+1)) = (y+1)^2 ( f(x_n)/(y+n+1)^2
//                            - sum_k f_{n-k}((y+k)/(2y+2k-1))/(2y+2k-1)^2 ).
struct recurrence_report {
    rational lhs, rhs;
    bool equal = false;
};

inline recurrence_report power_recurrence_check(const function_handle& f, int n, const rational& y) {
    if (y < rational(1)) throw domain_error("power_recurrence_check: y >= 1 required");
    if (n < 1) throw domain_error("power_recurrence_check: n >= 1 required");
    if (n > detail::recurrence_max)
        throw resource_limit_error("power_recurrence_check: n exceeds the evaluation budget");

    recurrence_report r;
    r.lhs = t_power(f, n, y / (y + rational(1)));
    const rational yn1 = y + rational(n) + rational(1);
    rational sum(0);
    for (int k = 1; k <= n; ++k) {
        const rational d = rational(2) * y + rational(2 * k - 1);
        sum += t_power(f, n - k, (y + rational(k)) / d) / (d * d);
    }
    r.rhs = (y + rational(1)).pow(2) * (f((y + rational(n)) / yn1) / (yn1 * yn1) - sum);
    r.equal = r.lhs == r.rhs;
    return r;
}

// Exact check of the decay bounds
//   |f_n(y/(y+1))| <= 2M ((y+1)/(y+n+1))^2
//   |f_{n-k}((y+k)/(2y+2k-1))| <= 32M/(n-k)^2   (skipped when n = k).
struct decay_report {
    rational value1, bound1;
    bool ok1 = false;
    bool second_checked = false;
    rational value2, bound2;
    bool ok2 = true;
    bool all_ok() const { return ok1 && ok2; }
};

inline decay_report power_decay_check(const function_handle& f, const rational& M, int n, int k,
                                      const rational& y) {
    if (y < rational(1)) throw domain_error("power_decay_check: y >= 1 required");
    if (n < 0 || k < 0 || k > n) throw domain_error("power_decay_check: need 0 <= k <= n");
    if (n > detail::recurrence_max)
        throw resource_limit_error("power_decay_check: n exceeds the evaluation budget");

    decay_report r;
    r.value1 = abs(t_power(f, n, y / (y + rational(1))));
    r.bound1 = rational(2) * M * ((y + rational(1)) / (y + rational(n) + rational(1))).pow(2);
    r.ok1 = r.value1 <= r.bound1;
    if (k >= 1 && k < n) {
        const rational d = rational(2) * y + rational(2 * k - 1);
        r.second_checked = true;
        r.value2 = abs(t_power(f, n - k, (y + rational(k)) / d));
        r.bound2 = rational(32) * M / rational(static_cast<long>(n - k)).pow(2);
        r.ok2 = r.value2 <= r.bound2;
    }
    return r;
}

// Equally spaced rational grid; the default monitor grid is 33 points on
// [1/2 + 1/64, 2/3], leaving out 1/2 where the monitored ratio is 0/0.
inline std::vector<rational> slope_grid(std::size_t count, const rational& a, const rational& b) {
    if (count < 2 || b <= a) throw domain_error("slope_grid: bad parameters");
    std::vector<rational> g;
    g.reserve(count);
    const rational step = (b - a) / rational(static_cast<long>(count - 1));
    for (std::size_t i = 0; i < count; ++i) g.push_back(a + rational(static_cast<long>(i)) * step);
    return g;
}

inline std::vector<rational> default_slope_grid() {
    return slope_grid(33, rational(33, 64), rational(2, 3));
}

// max over the grid of |T^n f0(x)| * ln n / (x - 1/2), computed from the
// closed forms; the log factor is the fixed 128-bit rational convention.
inline rational scaled_slope_max(int n, const std::vector<rational>& grid, level_store& store,
                                 unsigned threads = 1) {
    if (n < 2) throw domain_error("scaled_slope_max: n >= 2 required");
    for (const rational& x : grid) {
        if (x == rational(1, 2)) throw domain_error("scaled_slope_max: ratio undefined at 1/2");
        if (x < rational(1, 2) || x > rational(2, 3))
            throw domain_error("scaled_slope_max: grid point outside (1/2, 2/3]");
    }
    const auto prev = store.get(n - 1); // fetched before the parallel region
    const auto signs = one_closed_terms(n);
    const auto coeffs = qm_closed_terms(n);
    const auto orbit = w_orbit(n);
    const rational log_n = log_rational(static_cast<unsigned long>(n));

    return parallel_reduce<rational>(
        grid.size(), threads, rational(0),
        [&](std::size_t i) {
            const rational& x = grid[i];
            const rational fn = tn_identity_closed_eval(*prev, x) -
                                tn_qm_closed_eval(coeffs, orbit, n, x) -
                                rational(1, 2) * tn_one_closed_eval(signs, x);
            return abs(fn) * log_n / (x - rational(1, 2));
        },
        [](rational& into, const rational& from) { into = max(into, from); });
}

// sigma_n(y) = sum_{k=1..n} 1/(y+k)^2 * min(1/((y+k) ln(n-k+2)), 1/(n-k)^2),
// with ln taken through the fixed rational convention; exact given that.
inline rational sigma_n(const rational& y, int n) {
    if (y < rational(1)) throw domain_error("sigma_n: y >= 1 required");
    if (n < 2) throw domain_error("sigma_n: n >= 2 required");
    rational total(0);
    for (int k = 1; k <= n; ++k) {
        const rational w = y + rational(k);
        const rational log_branch =
            (w * log_rational(static_cast<unsigned long>(n - k + 2))).reciprocal();
        rational m = log_branch;
        if (k < n) m = min(m, rational(static_cast<long>(n - k)).pow(-2));
        total += w.pow(-2) * m;
    }
    return total;
}

// Enclosure of the integral of sigma_n over [1, infinity): both branches
// integrate in closed form on [1, Y_max], and the tail is bounded through
// sigma_n(y) <= (3/2) n / y^3 (each summand is at most 1/((y+k)^3 ln 2)).
inline rational_interval sigma_integral(int n, long y_max = 1000000) {
    if (n < 2) throw domain_error("sigma_integral: n >= 2 required");
    const rational a(1), b(y_max);
    rational main(0);
    for (int k = 1; k <= n; ++k) {
        const rational kk(k);
        const rational c = log_rational(static_cast<unsigned long>(n - k + 2)).reciprocal();
        const auto flat_part = [&](const rational& lo, const rational& hi, const rational& d) {
            return d * ((lo + kk).reciprocal() - (hi + kk).reciprocal());
        };
        const auto log_part = [&](const rational& lo, const rational& hi) {
            return rational(1, 2) * c * ((lo + kk).pow(-2) - (hi + kk).pow(-2));
        };
        if (k == n) {
            main += log_part(a, b); // the flat branch is vacuous at k = n
            continue;
        }
        const rational d = rational(static_cast<long>(n - k)).pow(-2);
        const rational crossover = c / d - kk; // where the two branches meet
        const rational s = max(a, min(crossover, b));
        main += flat_part(a, s, d) + log_part(s, b);
    }
    const rational tail = rational(3 * n) / (rational(4) * rational(y_max).pow(2));
    return {main, main + tail};
}

// T^n(x - ?(x)) over an interval through plain interval recursion; the
// base case uses the exact monotone range of ?.
inline rational_interval t_power_f0_interval(int n, const rational_interval& X) {
    if (n > 14) throw resource_limit_error("t_power_f0_interval: n exceeds the evaluation budget");
    if (X.lo() < rational(1, 2) || X.hi() > rational(1))
        throw domain_error("t_power_f0_interval: interval outside [1/2, 1]");
    if (n == 0) {
        return X - rational_interval(question_mark(X.lo()).to_rational(),
                                     question_mark(X.hi()).to_rational());
    }
    const rational_interval a = (rational_interval(rational(2)) - X).reciprocal();
    const rational_interval b = (rational_interval(rational(1)) + X).reciprocal();
    return t_power_f0_interval(n - 1, a) * a.square() - t_power_f0_interval(n - 1, b) * b.square();
}

} // namespace sbq

#include <catch2/catch_amalgamated.hpp>

#include "sbq/operators.hpp"

using namespace sbq;

namespace {

rational rat(long p, long q) { return {p, q}; }

// Independent oracle for psi_n = (T_+)^n 1 on [1/2, 1].
rational tplus_power_one(int n, const rational& x) {
    if (n == 0) return rational(1);
    const rational a = (rational(2) - x).reciprocal();
    const rational b = (rational(1) + x).reciprocal();
    return tplus_power_one(n - 1, a) * a * a + tplus_power_one(n - 1, b) * b * b;
}

const std::vector<rational> upper_points = {rat(1, 2), rat(13, 24), rat(5, 8), rat(3, 4), rational(1)};
const std::vector<rational> narrow_points = {rat(1, 2), rat(13, 24), rat(5, 8), rat(7, 11), rat(2, 3)};

} // namespace

TEST_CASE("t_apply basics") {
    CHECK(t_apply(function_handle::one(), rat(1, 2)) == rational(0));
    CHECK(t_apply(function_handle::one(), rational(1)) == rat(3, 4));
    CHECK(t_apply(function_handle::identity(), rational(1)) == rat(7, 8)); // 1 - (1/2)/4
    CHECK_THROWS_AS(t_apply(function_handle::one(), rat(1, 4)), domain_error);
    CHECK_THROWS_AS(t_apply(function_handle::one(), rat(3, 2)), domain_error);
}

TEST_CASE("t_plus_apply basics") {
    CHECK(t_plus_apply(function_handle::one(), rat(1, 2)) == rat(8, 9));
    CHECK(t_plus_apply(function_handle::one(), rational(1)) == rat(5, 4));
    CHECK(t_plus_apply(function_handle::one(), rat(3, 4)) == psi_closed(1, rat(3, 4)));
}

TEST_CASE("t_power basics and Property 3") {
    const auto id = function_handle::identity();
    CHECK(t_power(id, 0, rat(3, 5)) == rat(3, 5));
    CHECK(t_power(function_handle::one(), 1, rational(1)) == rat(3, 4));
    for (const auto& f : {function_handle::identity(), function_handle::qm_shift()}) {
        const rational t1 = t_apply(f, rational(1));
        for (int k = 1; k <= 10; ++k) REQUIRE(t_power(f, k, rational(1)) == t1);
    }
    CHECK_THROWS_AS(t_power(id, 23, rat(3, 4)), resource_limit_error);
    CHECK_THROWS_AS(t_power(id, -1, rat(3, 4)), domain_error);
}

TEST_CASE("Property 2: everything vanishes at one half") {
    for (const auto& f : {function_handle::identity(), function_handle::one(),
                          function_handle::qm_shift(), function_handle::f0()})
        CHECK(t_apply(f, rat(1, 2)) == rational(0));
}

TEST_CASE("Property 1: T preserves strict monotonicity on a grid") {
    const auto grid = slope_grid(33, rat(1, 2), rational(1));
    for (const auto& f : {function_handle::identity(), function_handle::qm_shift()}) {
        rational prev = t_apply(f, grid.front());
        CHECK(prev == rational(0));
        for (std::size_t i = 1; i < grid.size(); ++i) {
            const rational cur = t_apply(f, grid[i]);
            REQUIRE(prev < cur); // increasing, hence nonnegative past 1/2
            prev = cur;
        }
    }
}

TEST_CASE("closed form for powers of one") {
    // n = 1 base case by hand
    const rational x = rat(5, 7);
    CHECK(tn_one_closed(1, x) ==
          (rational(2) - x).pow(-2) - (rational(1) + x).pow(-2));
    for (int n = 1; n <= 10; ++n)
        for (const auto& p : upper_points)
            REQUIRE(tn_one_closed(n, p) == t_power(function_handle::one(), n, p));
}

TEST_CASE("sign tree sums to zero beyond the first level") {
    for (int n = 2; n <= 10; ++n) {
        rational sum(0);
        for (const auto& t : one_closed_terms(n)) sum += t.coeff;
        REQUIRE(sum == rational(0));
    }
}

TEST_CASE("psi closed form") {
    CHECK(psi_closed(1, rat(1, 2)) == rat(8, 9));
    CHECK(psi_closed(1, rational(0)) == rat(5, 4));
    CHECK(psi_closed(2, rat(1, 2)) == tplus_power_one(2, rat(1, 2)));
    for (int n = 1; n <= 10; ++n)
        for (const auto& p : upper_points)
            REQUIRE(psi_closed(n, p) == tplus_power_one(n, p));
    // symmetric under x -> 1-x
    CHECK(psi_closed(5, rat(1, 3)) == psi_closed(5, rat(2, 3)));
}

TEST_CASE("closed form for powers of the shifted question mark") {
    CHECK(tn_qm_closed(1, rat(1, 2)) == rational(0));
    CHECK(tn_qm_closed(2, rat(5, 8)) == t_power(function_handle::qm_shift(), 2, rat(5, 8)));
    for (int n = 1; n <= 10; ++n)
        for (const auto& p : narrow_points)
            REQUIRE(tn_qm_closed(n, p) == t_power(function_handle::qm_shift(), n, p));
    CHECK_THROWS_AS(tn_qm_closed(2, rat(3, 4)), domain_error);
}

TEST_CASE("coefficient tree stays inside the stated bound") {
    for (int n = 1; n <= 12; ++n) {
        const rational bound = rat(1, 2) - rational(mpz_class(1), mpz_class(1) << (n + 1));
        rational biggest(0);
        for (const auto& t : qm_closed_terms(n)) biggest = max(biggest, abs(t.coeff));
        REQUIRE(biggest <= bound);
    }
}

TEST_CASE("closed form for powers of the identity") {
    level_store store;
    CHECK(tn_identity_closed(2, rat(1, 2), store) == rational(0));
    CHECK(tn_identity_closed(2, rat(3, 4), store) == t_power(function_handle::identity(), 2, rat(3, 4)));
    CHECK(tn_identity_closed(5, rat(2, 3), store) == t_power(function_handle::identity(), 5, rat(2, 3)));
    for (int n = 2; n <= 10; ++n)
        for (const auto& p : upper_points)
            REQUIRE(tn_identity_closed(n, p, store) == t_power(function_handle::identity(), n, p));
    CHECK_THROWS_AS(tn_identity_closed(1, rat(3, 4), store), domain_error);
}

TEST_CASE("shift recurrence holds exactly") {
    const auto checks = {
        power_recurrence_check(function_handle::one(), 1, rational(1)),
        power_recurrence_check(function_handle::f0(), 3, rational(2)),
        power_recurrence_check(function_handle::identity(), 5, rat(3, 2)),
    };
    for (const auto& r : checks) REQUIRE(r.equal);
    CHECK(power_recurrence_check(function_handle::one(), 1, rational(1)).lhs == rational(0));
    CHECK_THROWS_AS(power_recurrence_check(function_handle::one(), 13, rational(1)),
                    resource_limit_error);
    CHECK_THROWS_AS(power_recurrence_check(function_handle::one(), 3, rat(1, 2)), domain_error);
}

TEST_CASE("decay bounds hold") {
    const auto f0 = function_handle::f0();
    const rational one(1);
    CHECK(power_decay_check(f0, one, 6, 0, rational(1)).all_ok());
    const auto both = power_decay_check(f0, one, 8, 4, rational(2));
    CHECK(both.second_checked);
    CHECK(both.all_ok());
    const auto degenerate = power_decay_check(f0, one, 5, 5, rational(1));
    CHECK_FALSE(degenerate.second_checked);
    CHECK(degenerate.all_ok());
}

TEST_CASE("assembled f0 power agrees with the oracle") {
    level_store store;
    CHECK(f0_power_closed(4, rat(5, 8), store) == t_power(function_handle::f0(), 4, rat(5, 8)));
    for (int n = 2; n <= 8; ++n)
        for (const auto& p : narrow_points)
            REQUIRE(f0_power_closed(n, p, store) == t_power(function_handle::f0(), n, p));
}

TEST_CASE("scaled slope stays in a narrow band") {
    level_store store;
    const auto grid = default_slope_grid();
    const rational r4 = scaled_slope_max(4, grid, store);
    const rational r8 = scaled_slope_max(8, grid, store, 2);
    REQUIRE(r4 > rational(0));
    REQUIRE(r8 > rational(0));
    CHECK(r8 <= rational(5) * r4);
    CHECK(r4 <= rational(5) * r8);
    // the monitored quantity vanishes at the left end of the range
    CHECK(f0_power_closed(4, rat(1, 2), store) == rational(0));
    CHECK(abs(f0_power_closed(4, grid.front(), store)) <
          abs(f0_power_closed(4, rat(2, 3), store)));
    CHECK_THROWS_AS(scaled_slope_max(4, {rat(1, 2)}, store), domain_error);
}

TEST_CASE("sigma point values") {
    // two-term sum by hand, sharing only the log convention
    const rational expected = rat(1, 4) * min((rational(2) * log_rational(3)).reciprocal(), rational(1)) +
                              rat(1, 9) * (rational(3) * log_rational(2)).reciprocal();
    CHECK(sigma_n(rational(1), 2) == expected);
    CHECK(sigma_n(rational(1), 8) > sigma_n(rat(3, 2), 8));
    CHECK(sigma_n(rat(3, 2), 8) > sigma_n(rational(2), 8));
    CHECK_THROWS_AS(sigma_n(rat(1, 2), 4), domain_error);
}

TEST_CASE("sigma integral encloses a Riemann check and decays") {
    // crude lower Riemann sum on [1, 21] with step 1/4 (sigma decreases in y)
    for (int n : {8, 16}) {
        const auto enc = sigma_integral(n);
        rational riemann(0);
        for (int i = 0; i < 80; ++i)
            riemann += rat(1, 4) * sigma_n(rational(1) + rat(i + 1, 4), n);
        REQUIRE(riemann < enc.hi());
        REQUIRE(enc.lo() > rational(0));
        REQUIRE(enc.lo() <= enc.hi());
    }
    CHECK(sigma_integral(16).hi() < sigma_integral(8).lo());
}

TEST_CASE("interval power evaluation") {
    // point intervals reproduce the exact recursion
    for (int n = 0; n <= 5; ++n) {
        const rational x = rat(5, 8);
        const auto pt = t_power_f0_interval(n, rational_interval(x));
        REQUIRE(pt.is_point());
        REQUIRE(pt.lo() == t_power(function_handle::f0(), n, x));
    }
    // genuine intervals contain interior point values
    const rational_interval X(rat(5, 8), rat(11, 16));
    for (int n = 0; n <= 6; ++n) {
        const auto enc = t_power_f0_interval(n, X);
        for (const auto& x : {rat(5, 8), rat(21, 32), rat(11, 16)})
            REQUIRE(enc.contains(t_power(function_handle::f0(), n, x)));
    }
}

#include <catch2/catch_amalgamated.hpp>

#include "sbq/sums.hpp"

using namespace sbq;

namespace {
rational rat(long p, long q) { return {p, q}; }

long binom(int m, int l) {
    long r = 1;
    for (int i = 0; i < l; ++i) r = r * (m - i) / (i + 1);
    return r;
}
} // namespace

TEST_CASE("half-range alternating power sums") {
    level_store store;
    for (int n = 2; n <= 10; ++n) {
        const auto r = alt_power_sum_half(n, 0, store);
        REQUIRE(r.sum == rational(1)); // 2^(n-1)+1 alternating ones, +1 at both ends
        REQUIRE(r.deviation == rational(0));
    }
    // n = 1 starts at the odd index 1, so the alternating ones cancel
    CHECK(alt_power_sum_half(1, 0, store).sum == rational(0));
    const auto r21 = alt_power_sum_half(2, 1, store);
    CHECK(r21.sum == rat(5, 6)); // 1/2 - 2/3 + 1
    CHECK(r21.deviation == rat(1, 12));
    CHECK_THROWS_AS(alt_power_sum_half(0, 1, store), domain_error);
}

TEST_CASE("full-range alternating power sums") {
    level_store store;
    for (int n = 1; n <= 12; ++n)
        REQUIRE(alt_power_sum_full(n, 1, store).deviation == rational(0));
    const auto r22 = alt_power_sum_full(2, 2, store);
    CHECK(r22.sum == rat(25, 36)); // 0 - 1/9 + 1/4 - 4/9 + 1
    CHECK(r22.deviation == rat(7, 36));
    CHECK_THROWS_AS(alt_power_sum_full(2, 0, store), domain_error);
}

TEST_CASE("full sum equals the reflected half-sum combination") {
    level_store store;
    for (int n = 2; n <= 10; ++n) {
        for (int m = 1; m <= 4; ++m) {
            rational combo = alt_power_sum_half(n, m, store).sum - rat(1, 2).pow(m);
            for (int l = 0; l <= m; ++l) {
                const rational piece = rational(binom(m, l)) * alt_power_sum_half(n, l, store).sum;
                combo += (l % 2 == 0) ? piece : -piece;
            }
            REQUIRE(alt_power_sum_full(n, m, store).sum == combo);
        }
    }
}

TEST_CASE("alternating integral sums, hand cases") {
    level_store store;
    // F = 1 over F_2: +(2/3 - 1/2) - (1 - 2/3)
    const auto c_one = corollary1_sum(2, bv_function::polynomial({rational(1)}), store);
    REQUIRE(c_one.is_point());
    CHECK(c_one.lo() == rat(-1, 6));
    // F = x over F_2: +int_{1/2}^{2/3} x - int_{2/3}^{1} x = 7/72 - 5/18
    const auto c_x = corollary1_sum(2, bv_function::polynomial({rational(0), rational(1)}), store);
    REQUIRE(c_x.is_point());
    CHECK(c_x.lo() == rat(-13, 72));
}

TEST_CASE("alternating integral sums telescope to the half sums") {
    level_store store;
    for (int n = 2; n <= 10; ++n) {
        for (int m = 1; m <= 4; ++m) {
            // d/dx of x^m spread over the cells: m * sum (-1)^k int x^(m-1)
            std::vector<rational> coeffs(static_cast<std::size_t>(m), rational(0));
            coeffs.back() = rational(m);
            const auto c = corollary1_sum(n, bv_function::polynomial(coeffs), store);
            REQUIRE(c.is_point());
            const rational expected = rat(1, 2).pow(m) + rational(1) -
                                      rational(2) * alt_power_sum_half(n, m, store).sum;
            REQUIRE(c.lo() == expected);
        }
    }
}

TEST_CASE("monotone-split integrands give sound enclosures") {
    level_store store;
    // f0 = x - ?(x) split as identity minus qm part
    const auto F = bv_function::from_handle(function_handle::f0());
    const auto enc = corollary1_sum(3, F, store);
    CHECK(enc.lo() <= enc.hi());
    // the same quantity through a finer exact route: refine the level and
    // integrate the polynomial part exactly; here just check containment
    // against a much finer monotone enclosure
    const auto fine = corollary1_sum(3, F, store); // same cells; sanity only
    CHECK(enc.overlaps(fine));
    CHECK_THROWS_AS(bv_function::from_handle(function_handle::custom(
                        "mystery", [](const rational& x) { return x; })),
                    unsupported_function_error);
}

TEST_CASE("deviations shrink with depth") {
    level_store store;
    for (int m = 2; m <= 3; ++m) {
        const rational d6 = abs(alt_power_sum_full(6, m, store).deviation);
        const rational d12 = abs(alt_power_sum_full(12, m, store).deviation);
        REQUIRE(d12 < d6);
    }
    for (int m = 1; m <= 3; ++m) {
        const rational d6 = abs(alt_power_sum_half(6, m, store).deviation);
        const rational d12 = abs(alt_power_sum_half(12, m, store).deviation);
        REQUIRE(d12 < d6);
    }
}

#include <catch2/catch_amalgamated.hpp>

#include "sbq/minkowski.hpp"
#include "sbq/stern_brocot.hpp"

using namespace sbq;

namespace {
rational rat(long p, long q) { return {p, q}; }
dyadic dy(long j, long n) { return {mpz_class(j), n}; }
} // namespace

TEST_CASE("question mark on small rationals") {
    CHECK(question_mark(rational(0)) == dy(0, 0));
    CHECK(question_mark(rational(1)) == dy(1, 0));
    CHECK(question_mark(rat(1, 2)) == dy(1, 1));
    CHECK(question_mark(rat(1, 3)) == dy(1, 2)); // [0;3] -> 2*2^-3
    CHECK(question_mark(rat(2, 5)) == dy(3, 3)); // [0;2,2] -> 2(2^-2 - 2^-4)
    CHECK(question_mark(rat(2, 3)) == dy(3, 2)); // [0;1,2] -> 1 - 1/4
    CHECK_THROWS_AS(question_mark(rat(4, 3)), domain_error);
}

TEST_CASE("inverse on small dyadics") {
    CHECK(question_mark_inverse(dy(1, 2)) == rat(1, 3));
    CHECK(question_mark_inverse(dy(1, 1)) == rat(1, 2));
    CHECK(question_mark_inverse(dy(3, 3)) == rat(2, 5));
    CHECK(question_mark_inverse(dy(0, 0)) == rational(0));
    CHECK(question_mark_inverse(dy(1, 0)) == rational(1));
}

TEST_CASE("functional identities") {
    CHECK(identity_checks(rat(1, 3)).all_ok());
    CHECK(question_mark(rat(2, 3)) == dy(3, 2)); // ?(2/3) = 1 - 1/4
    CHECK(identity_checks(rational(1)).all_ok());
    CHECK(identity_checks(rational(0)).all_ok());
    for (long p = 0; p <= 17; ++p) CHECK(identity_checks(rat(p, 17)).all_ok());
}

TEST_CASE("distribution identity over levels") {
    level_store store;
    for (int n = 1; n <= 12; ++n) {
        const level& L = store.at(n);
        for (std::size_t j = 0; j < L.size(); ++j)
            REQUIRE(question_mark(to_rational(L[j])).to_rational() ==
                    rational(mpz_class(j), mpz_class(1) << n));
    }
}

TEST_CASE("strict monotonicity on a level") {
    level_store store;
    const level& L = store.at(12);
    dyadic prev = question_mark(to_rational(L[0]));
    for (std::size_t j = 1; j < L.size(); ++j) {
        const dyadic cur = question_mark(to_rational(L[j]));
        REQUIRE(prev < cur);
        prev = cur;
    }
}

TEST_CASE("round trips") {
    level_store store;
    const level& L = store.at(12);
    for (std::size_t j = 0; j < L.size(); ++j) {
        const rational x = to_rational(L[j]);
        REQUIRE(question_mark_inverse(question_mark(x)) == x);
    }
    for (long j = 0; j <= 4096; ++j) {
        const dyadic d(mpz_class(j), 12);
        REQUIRE(question_mark(question_mark_inverse(d)) == d);
    }
}

TEST_CASE("slope bound right of one half") {
    // ?(x) - 1/2 <= 201 (x - 1/2) on [1/2, 2/3], checked exactly on level 14
    level_store store;
    const level& L = store.at(14);
    const std::size_t lo = L.size() / 2;          // index of 1/2
    const std::size_t hi = (L.size() - 1) / 4 * 3; // index of 2/3 = 2^14 * ?(2/3)
    REQUIRE(L[lo] == frac64{1, 2});
    REQUIRE(L[hi] == frac64{2, 3});
    for (std::size_t j = lo; j <= hi; ++j) {
        const rational x = to_rational(L[j]);
        REQUIRE(question_mark(x).to_rational() - rat(1, 2) <= rational(201) * (x - rat(1, 2)));
    }
}

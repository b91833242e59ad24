#include "doctest.h"

#include <stdexcept>

#include <random>

#include "fsq/arith.hpp"

using namespace fsq;

TEST_CASE("isqrt examples") {
    CHECK(isqrt(u64{0}) == 0);
    CHECK(isqrt(u64{99}) == 9);
    CHECK(isqrt(u64{1'000'000'000'000'000'000ULL}) == 1'000'000'000ULL);
    CHECK(isqrt(~u64{0}) == 4294967295ULL);
    u128 big = u128{10} * (u128{1} << 60);
    u128 r = isqrt(big);
    CHECK(r * r <= big);
    CHECK((r + 1) * (r + 1) > big);
}

TEST_CASE("isqrt is exact up to 10^6") {
    for (u64 n = 0; n <= 1'000'000; ++n) {
        u64 r = isqrt(n);
        REQUIRE(r * r <= n);
        REQUIRE((r + 1) * (r + 1) > n);
    }
}

TEST_CASE("isqrt around large squares") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 20000; ++i) {
        u64 r = rng() >> 34;  // < 2^30
        u64 sq = r * r;
        CHECK(isqrt(sq) == r);
        CHECK(isqrt(sq - 1) == r - (r > 0 ? 1 : 0));
        CHECK(isqrt(sq + 2 * r) == r);
        CHECK(isqrt(sq + 2 * r + 1) == r + 1);
    }
}

TEST_CASE("fourth roots") {
    CHECK(ifourth_root_floor(u64{16}) == 2);
    CHECK(ifourth_root_ceil(u64{17}) == 3);
    CHECK(ifourth_root_floor(u64{0}) == 0);
    CHECK(ifourth_root_ceil(u64{0}) == 0);
    CHECK(ifourth_root_ceil(u64{16}) == 2);
    for (u64 n = 0; n <= 1'000'000; ++n) {
        u64 f = ifourth_root_floor(n);
        REQUIRE(f == isqrt(isqrt(n)));
        REQUIRE(f * f * f * f <= n);
        REQUIRE((f + 1) * (f + 1) * (f + 1) * (f + 1) > n);
        u64 c = ifourth_root_ceil(n);
        REQUIRE(c * c * c * c >= n);
        REQUIRE((c == 0 || (c - 1) * (c - 1) * (c - 1) * (c - 1) < n));
    }
}

TEST_CASE("is_square") {
    CHECK(is_square(2401) == 49);
    CHECK_FALSE(is_square(7));
    CHECK(is_square(0) == 0);
    CHECK_FALSE(is_square(-4));
    for (i64 n = 0; n <= 200'000; ++n) {
        auto r = isqrt(static_cast<u64>(n));
        REQUIRE(is_square(n).has_value() == (static_cast<i64>(r * r) == n));
    }
}

TEST_CASE("is_power_of_4") {
    CHECK(is_power_of_4(1) == 0);
    CHECK(is_power_of_4(64) == 3);
    CHECK_FALSE(is_power_of_4(8));
    CHECK_FALSE(is_power_of_4(0));
    CHECK_FALSE(is_power_of_4(-4));
    i64 p = 1;
    for (int k = 0; k <= 30; ++k, p *= 4) {
        CHECK(is_power_of_4(p) == k);
        CHECK_FALSE(is_power_of_4(2 * p));
    }
}

TEST_CASE("ord2") {
    CHECK(ord2(28) == 2);
    CHECK(ord2(1) == 0);
    CHECK(ord2(96) == 5);
    CHECK_THROWS_AS(ord2(0), std::domain_error);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "shadowscatter/rng.hpp"

using namespace shadowscatter;

TEST_CASE("philox4x64-10 known-answer vectors") {
    // canonical vectors for the raw bijection (cross-checked against the
    // numpy implementation, which emits block f(counter+1) first)
    auto out = philox4x64_10({0, 0, 0, 0}, {0, 0});
    CHECK(out[0] == 0x16554d9eca36314cULL);
    CHECK(out[1] == 0xdb20fe9d672d0fdcULL);
    CHECK(out[2] == 0xd7e772cee186176bULL);
    CHECK(out[3] == 0x7e68b68aec7ba23bULL);

    out = philox4x64_10({0xffffffffffffffffULL, 0xffffffffffffffffULL, 0xffffffffffffffffULL,
                         0xffffffffffffffffULL},
                        {0xffffffffffffffffULL, 0xffffffffffffffffULL});
    CHECK(out[0] == 0x87b092c3013fe90bULL);
    CHECK(out[1] == 0x438c3c67be8d0224ULL);
    CHECK(out[2] == 0x9cc7d7c69cd777b6ULL);
    CHECK(out[3] == 0xa09caebf594f0ba0ULL);

    out = philox4x64_10({0x243f6a8885a308d3ULL, 0x13198a2e03707344ULL, 0xa4093822299f31d0ULL,
                         0x082efa98ec4e6c89ULL},
                        {0x452821e638d01377ULL, 0xbe5466cf34e90c6cULL});
    CHECK(out[0] == 0xa528f45403e61d95ULL);
    CHECK(out[1] == 0x38c72dbd566e9788ULL);
    CHECK(out[2] == 0xa5a1610e72fd18b5ULL);
    CHECK(out[3] == 0x57bd43b5e52b7fe6ULL);

    out = philox4x64_10({1, 0, 0, 0}, {0xdeadbeefcafebabeULL, 0x0123456789abcdefULL});
    CHECK(out[0] == 0x8cb02875e6aa71e1ULL);
    CHECK(out[1] == 0x1f84d1fe706e95a6ULL);
    CHECK(out[2] == 0x8a6c63d74f29544bULL);
    CHECK(out[3] == 0x6564077227998747ULL);
}

TEST_CASE("uniform draws stay strictly inside (0,1)") {
    Philox rng(123, 0);
    double lo = 1, hi = 0, acc = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform01();
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        acc += u;
    }
    CHECK(lo > 0.0);
    CHECK(hi < 1.0);
    CHECK(acc / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("normal moments") {
    Philox rng(7, 3);
    const int n = 400000;
    double s = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal();
        s += z;
        s2 += z * z;
    }
    CHECK(s / n == doctest::Approx(0.0).epsilon(1).scale(0.01));
    CHECK(s2 / n == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("gamma moments across the shape boundary") {
    for (const double a : {0.6, 1.0, 2.5, 7.0}) {
        Philox rng(42, 9);
        const int n = 400000;
        double s = 0, s2 = 0;
        for (int i = 0; i < n; ++i) {
            const double g = rng.gamma(a);
            s += g;
            s2 += g * g;
        }
        const double mean = s / n;
        const double var = s2 / n - mean * mean;
        CHECK(mean == doctest::Approx(a).epsilon(0.02));
        CHECK(var == doctest::Approx(a).epsilon(0.05));
    }
}

TEST_CASE("streams are reproducible and distinct") {
    Philox a(2020, 5), b(2020, 5), c(2020, 6);
    bool all_equal_ab = true, any_diff_ac = false;
    for (int i = 0; i < 1000; ++i) {
        const auto x = a.next_u64(), y = b.next_u64(), z = c.next_u64();
        all_equal_ab = all_equal_ab && (x == y);
        any_diff_ac = any_diff_ac || (x != z);
    }
    CHECK(all_equal_ab);
    CHECK(any_diff_ac);
}

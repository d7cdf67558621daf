#include <doctest.h>

#include <cmath>

#include "qpke/analysis.hpp"
#include "qpke/errors.hpp"
#include "qpke/experiments.hpp"

using namespace qpke;

TEST_SUITE("analysis") {

TEST_CASE("binomial") {
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(5, 7) == 0);
    CHECK(binomial(64, 32) == 1832624140942590534ULL);
    CHECK(binomial(66, 33) == 7219428434016265740ULL);
    CHECK_THROWS_AS(binomial(70, 35), ParameterError);
    CHECK(binomial(-1, 0) == 0);
}

TEST_CASE("conditional success examples") {
    CHECK(p_success_conditional(2, 2, 0) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(p_success_conditional(2, 2, 1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(p_success_conditional(5, 1, 0) == 1.0);
    CHECK(p_success_conditional(4, 1, 1) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK_THROWS_AS(p_success_conditional(2, 2, 2), ParameterError);
}

TEST_CASE("closed form examples") {
    CHECK(p_success_closed(2, 1) == 0.75);
    CHECK(p_success_closed(2, 2) == 0.625);
    CHECK(p_success_average(3, 2) == doctest::Approx(13.0 / 18.0).epsilon(1e-15));
    CHECK(p_success_closed(3, 3) == doctest::Approx(0.5 + 4.0 / 27.0).epsilon(1e-15));
    // The advantage 2^-65 is below double resolution at 1/2.
    CHECK(p_success_closed(2, 64) - 0.5 < 1e-9);
    CHECK(p_success_closed(2, 40) > 0.5);
}

TEST_CASE("double sum equals the closed form") {
    for (int t = 2; t <= 12; ++t) {
        for (int s = 1; s <= kMaxCodewordLength; ++s) {
            CHECK(std::abs(p_success_average(t, s) - p_success_closed(t, s)) <= 1e-10);
        }
    }
}

TEST_CASE("success decreases in s and increases in T") {
    for (int t = 2; t <= 20; ++t) {
        for (int s = 1; s < 30; ++s) {
            CHECK(p_success_closed(t, s + 1) < p_success_closed(t, s));
            CHECK(p_success_closed(t + 1, s) > p_success_closed(t, s));
            CHECK(p_success_closed(t, s) > 0.5);
        }
    }
}

TEST_CASE("domain checks") {
    CHECK_THROWS_AS(p_success_closed(1, 3), ParameterError);
    CHECK_THROWS_AS(p_success_closed(3, 0), ParameterError);
    CHECK_THROWS_AS(p_success_average(3, kMaxCodewordLength + 1), ParameterError);
    CHECK_THROWS_AS(SecurityThreshold(0.0), ParameterError);
    CHECK_THROWS_AS(SecurityThreshold(0.5), ParameterError);
    CHECK_THROWS_AS(SecurityThreshold(-0.1), ParameterError);
    CHECK_NOTHROW(SecurityThreshold(0.25));
}

TEST_CASE("s_min examples") {
    CHECK(s_min_tight(2, SecurityThreshold(0.125)) == 2);
    CHECK(s_min_simple(2, SecurityThreshold(0.125)) == 4);
    CHECK(s_min_tight(10, SecurityThreshold(std::ldexp(1.0, -10))) == 60);
    CHECK(s_min_simple(10, SecurityThreshold(std::ldexp(1.0, -10))) == 90);
    CHECK(p_success_closed(2, 2) == doctest::Approx(0.625));
}

TEST_CASE("s_min clamps to one when eps >= 1/2 is approached") {
    // 1 + log2(eps) > 0 for eps in (1/2, ...) is excluded; near 1/2 the
    // numerator tends to zero and the clamp applies.
    const SecurityThreshold loose(0.4999);
    CHECK(s_min_tight(2, loose) == 1);
    CHECK(s_min_simple(2, loose) == 1);
    CHECK(s_min_tight(100, loose) == 1);
}

TEST_CASE("s_min relations over a sweep") {
    for (int t = 2; t <= 100; ++t) {
        for (int e = 2; e <= 20; ++e) {
            const SecurityThreshold threshold(std::ldexp(1.0, -e));
            const int tight = s_min_tight(t, threshold);
            const int simple = s_min_simple(t, threshold);
            CHECK(tight >= 1);
            CHECK(simple >= tight);
            CHECK(p_success_closed(t, tight) <= 0.5 + threshold.epsilon() + 1e-15);
            if (tight > 1) {
                CHECK(p_success_closed(t, tight - 1) > 0.5 + threshold.epsilon());
            }
        }
    }
}

TEST_CASE("both log terms are negative, so the absolute values flip signs") {
    for (int t = 2; t <= 50; ++t) {
        CHECK(std::log2(static_cast<double>(t - 1) / t) < 0.0);
    }
    for (int e = 2; e <= 20; ++e) {
        CHECK(1.0 + std::log2(std::ldexp(1.0, -e)) < 0.0);
    }
}

TEST_CASE("success table") {
    const SuccessTable table = success_table(3, 6);
    CHECK(table.copies == 3);
    REQUIRE(table.rows.size() == 6);
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        CHECK(row.length == static_cast<int>(i) + 1);
        CHECK(row.p_success == doctest::Approx((row.p_success_b0 + row.p_success_b1) / 2));
        CHECK(std::abs(row.p_success - row.closed_form) <= 1e-12);
    }
}

TEST_CASE("Monte Carlo agrees with the closed form") {
    const auto scheme = DeterministicScheme::standard([] {
        KeyFamilySpec spec;
        spec.key_bits = 6;
        return KeyFamily(spec);
    }());
    for (int t : {2, 3, 5}) {
        for (int s = 1; s <= 10; ++s) {
            CompoundTrialOptions options;
            options.copies = t;
            options.length = s;
            const auto est = simulate_compound_attack(
                scheme, options,
                {2718, static_cast<std::uint64_t>(100 * t + s), 20000, 4});
            CHECK_MESSAGE(within_sigma(est, p_success_closed(t, s), 3.0), "T=", t, " s=", s,
                          " rate ", est.rate());
        }
    }
}

}  // TEST_SUITE

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "qpke/errors.hpp"
#include "qpke/keys.hpp"

using namespace qpke;

namespace {

KeyFamily rotation(int n) {
    KeyFamilySpec spec;
    spec.key_bits = n;
    return KeyFamily(spec);
}

}  // namespace

TEST_SUITE("keys") {

TEST_CASE("private key string and index conventions") {
    const PrivateKey k = PrivateKey::from_string("10");
    CHECK(k.index() == 2);
    CHECK(k.to_string() == "10");
    CHECK(PrivateKey::from_index(5, 4).to_string() == "0101");
    CHECK_THROWS_AS(PrivateKey::from_string("012"), KeyError);
    CHECK_THROWS_AS(PrivateKey::from_string(""), KeyError);
    CHECK_THROWS_AS(PrivateKey::from_index(4, 2), KeyError);
}

TEST_CASE("sample_private_key is reproducible per stream") {
    const KeyFamily family = rotation(1);
    RngStream a(99);
    RngStream b(99);
    for (int i = 0; i < 20; ++i) {
        CHECK(family.sample_private_key(a) == family.sample_private_key(b));
    }
}

TEST_CASE("distinct seeds give distinct key sequences") {
    const KeyFamily family = rotation(8);
    RngStream a(1);
    RngStream b(2);
    int differing = 0;
    for (int i = 0; i < 100; ++i) {
        if (!(family.sample_private_key(a) == family.sample_private_key(b))) {
            ++differing;
        }
    }
    CHECK(differing > 0);
}

TEST_CASE("sampled key bits are unbiased") {
    const KeyFamily family = rotation(4);
    RngStream rng(2024);
    constexpr int kDraws = 100000;
    std::array<int, 4> ones{};
    for (int i = 0; i < kDraws; ++i) {
        const PrivateKey k = family.sample_private_key(rng);
        for (std::size_t b = 0; b < 4; ++b) {
            ones[b] += k.bits()[b];
        }
    }
    const double sigma = std::sqrt(0.25 / kDraws);
    for (int count : ones) {
        CHECK(std::abs(static_cast<double>(count) / kDraws - 0.5) <= 3.0 * sigma);
    }
}

TEST_CASE("rotation family states") {
    const KeyFamily family = rotation(1);
    const auto zero = family.public_key_state(PrivateKey::from_string("0"));
    CHECK(zero.state().approx_equal(StateVector{1.0, 0.0}, 0.0));

    const auto one = family.public_key_state(PrivateKey::from_string("1"));
    const double h = std::cos(std::numbers::pi / 4);
    CHECK(one.state().approx_equal(StateVector{h, h}, 1e-15));

    const auto again = family.public_key_state(PrivateKey::from_string("1"));
    CHECK(std::equal(one.state().amplitudes().begin(), one.state().amplitudes().end(),
                     again.state().amplitudes().begin()));

    CHECK_THROWS_AS(family.public_key_state(PrivateKey::from_string("01")), KeyError);
}

TEST_CASE("rotation angles for n = 3 follow pi * int(k) / 2^{n+1}") {
    const KeyFamily family = rotation(3);
    for (std::uint64_t x = 0; x < 8; ++x) {
        const double theta = std::numbers::pi * static_cast<double>(x) / 16.0;
        const auto pk = family.public_key_state(PrivateKey::from_index(x, 3));
        CHECK(pk.state().approx_equal(StateVector{std::cos(theta), std::sin(theta)}, 1e-15));
    }
}

TEST_CASE("harness fingerprint links a public key to its private key") {
    const KeyFamily family = rotation(3);
    const PrivateKey k = PrivateKey::from_string("101");
    const auto pk = family.public_key_state(k);
    CHECK(HarnessAccess::fingerprint(pk) == HarnessAccess::fingerprint(k));
    CHECK(HarnessAccess::fingerprint(pk) !=
          HarnessAccess::fingerprint(PrivateKey::from_string("100")));
}

TEST_CASE("pairwise overlap bound of the rotation family") {
    const auto one = pairwise_overlap_bound(rotation(1));
    CHECK(one.exhaustive);
    CHECK(one.value == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));

    const auto two = pairwise_overlap_bound(rotation(2));
    CHECK(two.value == doctest::Approx(std::cos(std::numbers::pi / 8)).epsilon(1e-14));

    double previous = 0.0;
    for (int n = 1; n <= 12; ++n) {
        const auto bound = pairwise_overlap_bound(rotation(n));
        CHECK(bound.exhaustive);
        CHECK(bound.value < 1.0 - 1e-12);
        CHECK(bound.value >= previous);
        previous = bound.value;
    }
}

TEST_CASE("large rotation families fall back to a flagged sampled estimate") {
    const auto bound = pairwise_overlap_bound(rotation(20));
    CHECK_FALSE(bound.exhaustive);
    CHECK(bound.value < 1.0);
    CHECK(bound.value > std::cos(std::numbers::pi / 8));
}

TEST_CASE("duplicated states are rejected") {
    const std::vector<StateVector> states{StateVector{1.0, 0.0}, StateVector{0.6, 0.8},
                                          StateVector{0.6, 0.8}};
    CHECK_THROWS_AS(max_pairwise_overlap(states), FamilyInvalidError);
    // A global phase does not make a state distinct.
    const std::vector<StateVector> phased{StateVector{1.0, 0.0},
                                          StateVector{Complex{0.0, 1.0}, 0.0}};
    CHECK_THROWS_AS(max_pairwise_overlap(phased), FamilyInvalidError);
}

TEST_CASE("seeded-random family is reproducible and respects the overlap bound") {
    KeyFamilySpec spec;
    spec.kind = FamilyKind::seeded_random;
    spec.key_bits = 3;
    spec.register_dim = 4;
    spec.overlap_bound = 0.9;
    spec.family_seed = 1234;
    const KeyFamily a(spec);
    const KeyFamily b(spec);
    for (std::uint64_t x = 0; x < 8; ++x) {
        CHECK(a.state_at(x).approx_equal(b.state_at(x), 0.0));
        CHECK(a.state_at(x).is_normalized());
    }
    CHECK(a.pairwise_overlap_bound().value < 0.9);

    spec.family_seed = 4321;
    const KeyFamily c(spec);
    CHECK_FALSE(a.state_at(0).approx_equal(c.state_at(0), 1e-6));
}

TEST_CASE("seeded-random family that cannot meet delta is invalid") {
    KeyFamilySpec spec;
    spec.kind = FamilyKind::seeded_random;
    spec.key_bits = 4;
    spec.register_dim = 2;
    spec.overlap_bound = 0.05;
    CHECK_THROWS_AS(KeyFamily{spec}, FamilyInvalidError);
}

TEST_CASE("family settings validation names the offending field") {
    KeyFamilySpec spec;
    spec.max_copies = 0;
    CHECK_THROWS_WITH_AS(spec.validate(), doctest::Contains("copies-t"), ParameterError);
    spec = {};
    spec.overlap_bound = 1.0;
    CHECK_THROWS_WITH_AS(spec.validate(), doctest::Contains("overlap-bound"), ParameterError);
    spec = {};
    spec.register_dim = 3;
    CHECK_THROWS_AS(spec.validate(), ParameterError);  // rotation family is qubit-only
}

TEST_CASE("holevo check") {
    KeyFamilySpec spec;
    spec.key_bits = 100;
    spec.max_copies = 4;
    spec.holevo_margin = 10.0;
    auto check = holevo_check(spec);
    CHECK(check.ratio == doctest::Approx(25.0));
    CHECK(check.pass);

    spec.key_bits = 8;
    check = holevo_check(spec);
    CHECK(check.ratio == doctest::Approx(2.0));
    CHECK_FALSE(check.pass);

    spec.max_copies = 0;
    CHECK_THROWS_AS(holevo_check(spec), ParameterError);
}

}  // TEST_SUITE

#include "qpke/experiments.hpp"

#include <limits>

#include "qpke/errors.hpp"
#include "qpke/symmetry.hpp"

namespace qpke {

namespace {

constexpr std::size_t kErrorSampleKeys = 1024;
constexpr std::uint64_t kErrorSampleTag = 0x6572722d736d70ULL;  // "err-smp"

}  // namespace

double sigma_count(double empirical, double predicted, double std_error) {
    const double deviation = std::abs(empirical - predicted);
    if (std_error == 0.0) {
        return deviation == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return deviation / std_error;
}

bool within_sigma(const BinomialEstimate& estimate, double predicted, double k) {
    const double se = binomial_std_error(predicted, estimate.trials);
    return sigma_count(estimate.rate(), predicted, se) <= k;
}

BinomialEstimate simulate_symmetry_test(const StateVector& xi, const StateVector& chi,
                                        int num_registers, const TrialPlan& plan) {
    // The outcome distribution is fixed by the inputs; evaluate it once.
    const double p = p_zero_exact(xi, chi, num_registers);
    const auto hits = count_hits(plan, [&](std::uint64_t, RngStream& rng) {
        return rng.uniform() < p;
    });
    return {plan.trials, hits};
}

BinomialEstimate simulate_forward_search_errors(const DeterministicScheme& scheme, int copies,
                                                std::optional<int> plaintext, double prior,
                                                const TrialPlan& plan) {
    if (copies < 2) {
        throw InsufficientCopiesError("forward search needs T >= 2");
    }
    const KeyFamily& family = scheme.family();
    const auto hits = count_hits(plan, [&](std::uint64_t, RngStream& rng) {
        const PrivateKey key = family.sample_private_key(rng);
        const int b = plaintext ? *plaintext : (rng.bernoulli(prior) ? 0 : 1);
        const PublicKeyState pk = family.public_key_state(key);
        const Ciphertext ct = scheme.encrypt_bit(pk, b);
        const std::vector<PublicKeyState> eve_copies(static_cast<std::size_t>(copies - 1), pk);
        return forward_search_attack(scheme, ct, eve_copies, rng) != b;
    });
    return {plan.trials, hits};
}

BinomialEstimate simulate_compound_attack(const DeterministicScheme& scheme,
                                          const CompoundTrialOptions& options,
                                          const TrialPlan& plan) {
    if (options.copies < 2) {
        throw InsufficientCopiesError("compound attack needs T >= 2");
    }
    if (options.length < 1) {
        throw ParameterError("codeword-len: s must be at least 1");
    }
    if (options.forced_codeword &&
        options.forced_codeword->size() != static_cast<std::size_t>(options.length)) {
        throw ParameterError("forced codeword length does not match s");
    }
    const KeyFamily& family = scheme.family();
    const auto s = static_cast<std::size_t>(options.length);
    const auto eve_count = static_cast<std::size_t>(options.copies - 1);

    const auto hits = count_hits(plan, [&](std::uint64_t, RngStream& rng) {
        std::vector<PublicKeyState> pks;
        std::vector<std::vector<PublicKeyState>> eve_copies;
        pks.reserve(s);
        eve_copies.reserve(s);
        for (std::size_t i = 0; i < s; ++i) {
            const PrivateKey key = family.sample_private_key(rng);
            pks.push_back(family.public_key_state(key));
            eve_copies.emplace_back(eve_count, pks.back());
        }

        int b = 0;
        CompoundCiphertext ct;
        if (options.forced_codeword) {
            b = options.forced_codeword->parity();
            ct = encrypt_codeword(scheme, pks, *options.forced_codeword);
        } else {
            b = options.plaintext ? *options.plaintext : rng.bit();
            ct = encrypt_randomized(scheme, pks, b, rng).first;
        }
        return compound_attack(scheme, ct, eve_copies, options.mode, rng).guess == b;
    });
    return {plan.trials, hits};
}

BinomialEstimate simulate_round_trips(const DeterministicScheme& scheme, int length,
                                      const TrialPlan& plan) {
    if (length < 1) {
        throw ParameterError("codeword-len: s must be at least 1");
    }
    const KeyFamily& family = scheme.family();
    const auto hits = count_hits(plan, [&](std::uint64_t, RngStream& rng) {
        std::vector<PrivateKey> keys;
        std::vector<PublicKeyState> pks;
        for (int i = 0; i < length; ++i) {
            keys.push_back(family.sample_private_key(rng));
            pks.push_back(family.public_key_state(keys.back()));
        }
        const int b = rng.bit();
        const auto [ct, codeword] = encrypt_randomized(scheme, pks, b, rng);
        return decrypt_randomized(scheme, keys, ct) == b && codeword.parity() == b;
    });
    return {plan.trials, hits};
}

double mean_one_bit_error(const DeterministicScheme& scheme, int copies) {
    const KeyFamily& family = scheme.family();
    auto error_for = [&](const PrivateKey& key) {
        const PublicKeyState pk = family.public_key_state(key);
        const double lambda =
            state_overlap(scheme.encrypt_bit(pk, 1).state(), scheme.encrypt_bit(pk, 0).state());
        return q_closed_form(copies, lambda);
    };
    double sum = 0.0;
    std::uint64_t count = 0;
    if (family.enumerable()) {
        for (std::uint64_t x = 0; x < family.spec().key_count(); ++x, ++count) {
            sum += error_for(PrivateKey::from_index(x, family.spec().key_bits));
        }
    } else {
        RngStream rng(family.spec().family_seed, kErrorSampleTag);
        for (; count < kErrorSampleKeys; ++count) {
            sum += error_for(family.sample_private_key(rng));
        }
    }
    return sum / static_cast<double>(count);
}

}  // namespace qpke

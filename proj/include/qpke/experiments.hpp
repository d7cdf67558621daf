// experiments.hpp
// Monte Carlo drivers shared by the CLI and the acceptance suite.
//
// Trial i of an experiment draws all of its randomness from
// RngStream(master_seed, tag, i). Trials are split into contiguous chunks
// across threads and only integer counts are merged, so the outcome is
// bit-identical for every thread count.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

#include "qpke/adversary.hpp"
#include "qpke/parity.hpp"
#include "qpke/rng.hpp"
#include "qpke/scheme.hpp"

namespace qpke {

struct TrialPlan {
    std::uint64_t master_seed = 0;
    std::uint64_t tag = 0;
    std::uint64_t trials = 0;
    unsigned threads = 1;
};

// Counts trials for which trial(index, rng) returns true.
template <typename TrialFn>
std::uint64_t count_hits(const TrialPlan& plan, TrialFn&& trial) {
    const unsigned workers = static_cast<unsigned>(
        std::max<std::uint64_t>(1, std::min<std::uint64_t>(plan.threads, plan.trials)));
    std::vector<std::uint64_t> hits(workers, 0);
    auto work = [&](unsigned w) {
        const std::uint64_t begin = plan.trials * w / workers;
        const std::uint64_t end = plan.trials * (w + 1) / workers;
        std::uint64_t local = 0;
        for (std::uint64_t i = begin; i < end; ++i) {
            RngStream rng(plan.master_seed, plan.tag, i);
            if (trial(i, rng)) {
                ++local;
            }
        }
        hits[w] = local;
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work, w);
        }
    }
    std::uint64_t total = 0;
    for (auto h : hits) {
        total += h;
    }
    return total;
}

struct BinomialEstimate {
    std::uint64_t trials = 0;
    std::uint64_t hits = 0;

    double rate() const { return trials == 0 ? 0.0 : static_cast<double>(hits) / trials; }
};

// Standard error of a frequency over `trials` draws with success probability p.
inline double binomial_std_error(double p, std::uint64_t trials) {
    if (trials == 0) {
        return 0.0;
    }
    return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(trials));
}

// |empirical - predicted| / std_error; a degenerate prediction (p in {0, 1})
// gives 0 for an exact match and +infinity otherwise.
double sigma_count(double empirical, double predicted, double std_error);

// Within k binomial standard errors of the prediction.
bool within_sigma(const BinomialEstimate& estimate, double predicted, double k);

// Symmetry test on fixed inputs; hits count "zero" outcomes.
BinomialEstimate simulate_symmetry_test(const StateVector& xi, const StateVector& chi,
                                        int num_registers, const TrialPlan& plan);

// Forward-search attack with T copies per key. Each trial samples a fresh
// private key; plaintext is fixed when given, otherwise drawn with
// P(b = 0) = prior. Hits count wrong guesses.
BinomialEstimate simulate_forward_search_errors(const DeterministicScheme& scheme, int copies,
                                                std::optional<int> plaintext, double prior,
                                                const TrialPlan& plan);

// Compound attack on the parity scheme with s fresh keys per trial and a
// uniform plaintext (or a fixed one / a forced codeword). Hits count
// correct guesses.
struct CompoundTrialOptions {
    int copies = 2;
    int length = 1;
    AttackMode mode = AttackMode::bernoulli;
    std::optional<int> plaintext;
    std::optional<Codeword> forced_codeword;
};
BinomialEstimate simulate_compound_attack(const DeterministicScheme& scheme,
                                          const CompoundTrialOptions& options,
                                          const TrialPlan& plan);

// Randomized encrypt/decrypt round trips; hits count correct decryptions.
BinomialEstimate simulate_round_trips(const DeterministicScheme& scheme, int length,
                                      const TrialPlan& plan);

// Exact expectation of q_{T,lambda_k} over the family's keys (all keys when
// enumerable, otherwise a fixed sample).
double mean_one_bit_error(const DeterministicScheme& scheme, int copies);

}  // namespace qpke

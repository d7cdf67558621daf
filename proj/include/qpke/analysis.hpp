// analysis.hpp
// Closed-form success probabilities of the compound symmetry-test attack on
// the parity scheme, and the codeword lengths that push it below a threshold.
//
// Throughout, q = q_{T,0} = 1/T is the per-bit probability that Eve reads a
// 1-bit of the codeword as 0.

#pragma once

#include <cstdint>
#include <vector>

namespace qpke {

inline constexpr int kMaxCodewordLength = 64;

// Advantage bound: Eve's success must stay <= 1/2 + epsilon, 0 < epsilon < 1/2.
class SecurityThreshold {
public:
    explicit SecurityThreshold(double epsilon);
    double epsilon() const noexcept { return epsilon_; }

private:
    double epsilon_;
};

// C(n, k) in exact 64-bit arithmetic; throws ParameterError on overflow.
std::uint64_t binomial(int n, int k);

// Double sum over codeword weights alpha of parity b and even error counts
// gamma: 2^{1-s} sum C(s,alpha) C(alpha,gamma) q^gamma (1-q)^{alpha-gamma}.
double p_success_conditional(int copies, int length, int bit);

// Average of the two conditional probabilities.
double p_success_average(int copies, int length);

// 1/2 + (1-q)^s / 2.
double p_success_closed(int copies, int length);

// Smallest s >= |(1 + log2 eps) / log2((T-1)/T)|, clamped to s >= 1.
// Sufficient against the symmetry-test attack, not a security proof.
int s_min_tight(int copies, SecurityThreshold threshold);

// ceil(T |1 + log2 eps|), clamped to s >= 1. Never smaller than s_min_tight.
int s_min_simple(int copies, SecurityThreshold threshold);

struct SuccessRow {
    int length = 0;
    double p_success_b0 = 0.0;
    double p_success_b1 = 0.0;
    double p_success = 0.0;
    double closed_form = 0.0;
};

struct SuccessTable {
    int copies = 0;
    std::vector<SuccessRow> rows;
};

// Rows for s = 1..max_length.
SuccessTable success_table(int copies, int max_length);

}  // namespace qpke

// symmetry.hpp
// (1, N-1)-copy state distinguishing by projection onto the symmetric
// subspace of N registers.
//
// The controlled-permutation circuit with a Fourier transform on the N!-level
// control register reduces exactly to <in|P_sym|in> for the probability of
// the all-zero control outcome, so the projector form is what gets simulated.

#pragma once

#include <span>

#include "qpke/linalg.hpp"
#include "qpke/rng.hpp"

namespace qpke {

struct SymmetryTestSpec {
    std::size_t num_registers = 2;  // N
    std::size_t register_dim = 2;   // d
};

struct SymmetryTestOutcome {
    enum class Result { zero, nonzero };

    Result outcome = Result::zero;
    double p_zero = 1.0;  // probability with which "zero" was drawn

    bool is_zero() const noexcept { return outcome == Result::zero; }
};

enum class Verdict { equal, different };

// (1 + (N-1) lambda^2) / N.
double q_closed_form(int num_registers, double overlap);

// |<xi|chi>| clamped into [0, 1].
double state_overlap(const StateVector& xi, const StateVector& chi);

// ||P_sym (|xi> (x) |chi>^{(x)(N-1)})||^2 by brute force over S_N.
double p_zero_exact(const StateVector& xi, const StateVector& chi, int num_registers);

SymmetryTestOutcome run_symmetry_test(const StateVector& xi, const StateVector& chi,
                                      int num_registers, RngStream& rng);

// Uses N = 1 + chi_copies.size(). All copies must be the same state.
Verdict distinguish(const StateVector& xi, std::span<const StateVector> chi_copies,
                    RngStream& rng);

}  // namespace qpke

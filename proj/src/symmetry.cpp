#include "qpke/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qpke/errors.hpp"

namespace qpke {

namespace {

constexpr double kCopyTolerance = 1e-12;

void check_pair(const StateVector& xi, const StateVector& chi, int num_registers) {
    if (num_registers < 1) {
        throw ParameterError("symmetry test needs N >= 1 registers");
    }
    if (xi.dim() != chi.dim()) {
        throw PreconditionError("xi and chi must have the same dimension");
    }
    if (xi.dim() < 2) {
        throw PreconditionError("register dimension must be at least 2");
    }
    if (!xi.is_normalized() || !chi.is_normalized()) {
        throw PreconditionError("symmetry test inputs must be normalized");
    }
}

}  // namespace

double q_closed_form(int num_registers, double overlap) {
    if (num_registers < 1) {
        throw ParameterError("q_closed_form: N must be at least 1");
    }
    if (!(overlap >= 0.0 && overlap <= 1.0)) {
        throw ParameterError("q_closed_form: lambda must lie in [0, 1]");
    }
    const double n = static_cast<double>(num_registers);
    return (1.0 + (n - 1.0) * overlap * overlap) / n;
}

double state_overlap(const StateVector& xi, const StateVector& chi) {
    return std::clamp(std::abs(xi.inner(chi)), 0.0, 1.0);
}

double p_zero_exact(const StateVector& xi, const StateVector& chi, int num_registers) {
    check_pair(xi, chi, num_registers);
    const TensorLayout layout{static_cast<std::size_t>(num_registers), xi.dim()};
    if (layout.num_registers > kMaxPermutationRegisters) {
        throw SimulationSizeError("symmetry test N exceeds permutation guard",
                                  layout.num_registers, kMaxPermutationRegisters);
    }
    layout.total_dim();

    const StateVector input =
        tensor_product(xi, tensor_power(chi, layout.num_registers - 1));
    const double p = symmetric_projector_apply(input, layout).norm_squared();
    return std::clamp(p, 0.0, 1.0);
}

SymmetryTestOutcome run_symmetry_test(const StateVector& xi, const StateVector& chi,
                                      int num_registers, RngStream& rng) {
    const double p = p_zero_exact(xi, chi, num_registers);
    const double u = rng.uniform();
    return {u < p ? SymmetryTestOutcome::Result::zero : SymmetryTestOutcome::Result::nonzero, p};
}

Verdict distinguish(const StateVector& xi, std::span<const StateVector> chi_copies,
                    RngStream& rng) {
    if (chi_copies.empty()) {
        return Verdict::equal;
    }
    const StateVector& chi = chi_copies.front();
    for (const auto& copy : chi_copies.subspan(1)) {
        if (!copy.approx_equal(chi, kCopyTolerance)) {
            throw PreconditionError("distinguish: chi copies are not identical states");
        }
    }
    const int n = static_cast<int>(chi_copies.size()) + 1;
    return run_symmetry_test(xi, chi, n, rng).is_zero() ? Verdict::equal : Verdict::different;
}

}  // namespace qpke

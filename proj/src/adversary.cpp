#include "qpke/adversary.hpp"

#include <cmath>
#include <string>

#include "qpke/errors.hpp"

namespace qpke {

namespace {

constexpr double kDensityTolerance = 1e-10;

std::vector<StateVector> test_ciphertexts(const DeterministicScheme& scheme,
                                          std::span<const PublicKeyState> pk_copies,
                                          int test_plaintext) {
    const Operator& u = scheme.encryption_operator(test_plaintext);
    std::vector<StateVector> out;
    out.reserve(pk_copies.size());
    for (const auto& pk : pk_copies) {
        out.push_back(u.apply(pk.state()));
    }
    return out;
}

int guess_from_verdict(Verdict v, int test_plaintext) {
    return v == Verdict::equal ? test_plaintext : 1 - test_plaintext;
}

}  // namespace

std::string_view to_string(AttackMode mode) {
    return mode == AttackMode::quantum ? "quantum" : "bernoulli";
}

AttackMode parse_attack_mode(std::string_view text) {
    if (text == "quantum") {
        return AttackMode::quantum;
    }
    if (text == "bernoulli") {
        return AttackMode::bernoulli;
    }
    throw ParameterError("mode: expected 'quantum' or 'bernoulli', got '" + std::string(text) +
                         "'");
}

int forward_search_attack(const DeterministicScheme& scheme, const Ciphertext& ct,
                          std::span<const PublicKeyState> pk_copies, RngStream& rng) {
    const AttackResources resources{static_cast<int>(pk_copies.size()) + 1, 0};
    if (resources.copies < 2) {
        throw InsufficientCopiesError(
            "forward search needs T >= 2 (at least one public-key copy besides the ciphertext)");
    }
    const auto chi = test_ciphertexts(scheme, pk_copies, resources.test_plaintext);
    return guess_from_verdict(distinguish(ct.state(), chi, rng), resources.test_plaintext);
}

CompoundAttackResult compound_attack(const DeterministicScheme& scheme,
                                     const CompoundCiphertext& ct,
                                     std::span<const std::vector<PublicKeyState>> copies_per_part,
                                     AttackMode mode, RngStream& rng) {
    if (!scheme.orthogonal()) {
        throw UnsupportedModeError("compound attack is defined for orthogonal schemes only");
    }
    if (copies_per_part.size() != ct.size() || ct.size() == 0) {
        throw ParameterError("compound attack: need one copy set per ciphertext part");
    }

    CompoundAttackResult result;
    result.part_guesses.reserve(ct.size());
    result.outcomes.reserve(ct.size());
    constexpr int kTestPlaintext = 0;
    for (std::size_t i = 0; i < ct.size(); ++i) {
        const auto& copies = copies_per_part[i];
        if (copies.empty()) {
            throw InsufficientCopiesError("compound attack: every part needs T >= 2");
        }
        const auto chi = test_ciphertexts(scheme, copies, kTestPlaintext);
        for (std::size_t c = 1; c < chi.size(); ++c) {
            if (!chi[c].approx_equal(chi[0], 1e-12)) {
                throw PreconditionError("compound attack: copies of one key differ");
            }
        }
        const int n = static_cast<int>(copies.size()) + 1;
        const StateVector& xi = ct.parts[i].state();

        SymmetryTestOutcome outcome;
        if (mode == AttackMode::quantum) {
            outcome = run_symmetry_test(xi, chi[0], n, rng);
        } else {
            const double p = q_closed_form(n, state_overlap(xi, chi[0]));
            outcome = {rng.uniform() < p ? SymmetryTestOutcome::Result::zero
                                         : SymmetryTestOutcome::Result::nonzero,
                       p};
        }
        const int part_guess = outcome.is_zero() ? kTestPlaintext : 1 - kTestPlaintext;
        result.part_guesses.push_back(part_guess);
        result.outcomes.push_back(outcome);
        result.guess ^= part_guess;
    }
    return result;
}

void DiscriminationInstance::validate() const {
    if (!(prior >= 0.0 && prior <= 1.0)) {
        throw PreconditionError("prior must lie in [0, 1]");
    }
    if (rho0.dim() != rho1.dim()) {
        throw PreconditionError("rho_0 and rho_1 have different dimensions");
    }
    for (const Operator* rho : {&rho0, &rho1}) {
        if (std::abs(rho->trace() - Complex{1.0}) > kDensityTolerance) {
            throw PreconditionError("density operator does not have unit trace");
        }
        const auto values = hermitian_eigenvalues(*rho);
        if (values.front() < -kDensityTolerance) {
            throw PreconditionError("density operator is not positive semidefinite");
        }
    }
}

DiscriminationInstance build_discrimination_instance(const DeterministicScheme& scheme,
                                                     int copies, double prior) {
    if (copies < 1) {
        throw ParameterError("copies-t: T must be at least 1");
    }
    if (!(prior >= 0.0 && prior <= 1.0)) {
        throw ParameterError("prior: p must lie in [0, 1]");
    }
    const KeyFamily& family = scheme.family();
    const int n = family.spec().key_bits;
    if (n > kMaxEnsembleKeyBits) {
        throw SimulationSizeError("discrimination ensemble 2^n exceeds guard",
                                  family.spec().key_count(),
                                  std::size_t{1} << kMaxEnsembleKeyBits);
    }
    const std::size_t d = family.register_dim();
    std::size_t total = 1;
    for (int t = 0; t < copies; ++t) {
        if (total > kMaxOperatorDim / d) {
            throw SimulationSizeError("d^T exceeds operator dimension guard", total * d,
                                      kMaxOperatorDim);
        }
        total *= d;
    }

    const std::uint64_t keys = family.spec().key_count();
    const double weight = 1.0 / static_cast<double>(keys);
    Operator rho[2] = {Operator(total), Operator(total)};
    for (std::uint64_t x = 0; x < keys; ++x) {
        const PublicKeyState pk = family.public_key_state(PrivateKey::from_index(x, n));
        const StateVector prefix = tensor_power(pk.state(), static_cast<std::size_t>(copies - 1));
        for (int b = 0; b < 2; ++b) {
            const StateVector joint =
                tensor_product(prefix, scheme.encrypt_bit(pk, b).state());
            rho[b] += Operator::projector(joint) * Complex{weight};
        }
    }
    DiscriminationInstance instance{std::move(rho[0]), std::move(rho[1]), prior};
    instance.validate();
    return instance;
}

double helstrom_success(const DiscriminationInstance& instance) {
    instance.validate();
    const Operator gap =
        instance.rho0 * Complex{instance.prior} - instance.rho1 * Complex{1.0 - instance.prior};
    return 0.5 * (1.0 + trace_norm(gap));
}

}  // namespace qpke

// adversary.hpp
// Eve's side: forward search by symmetry test, the compound attack on the
// parity scheme, and the Helstrom benchmark for rho_0 vs rho_1.
//
// Nothing here accepts a PrivateKey or a Codeword. Eve works only from the
// intercepted ciphertext, the public-key copies she holds, and the public
// encryption operators.

#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "qpke/linalg.hpp"
#include "qpke/parity.hpp"
#include "qpke/rng.hpp"
#include "qpke/scheme.hpp"
#include "qpke/symmetry.hpp"

namespace qpke {

// Largest key ensemble summed into a discrimination instance.
inline constexpr int kMaxEnsembleKeyBits = 10;

struct AttackResources {
    int copies = 2;          // T: copies of each public key in circulation
    int test_plaintext = 0;  // Eve's comparison plaintext
};

// Guesses the plaintext behind ct using the T-1 public-key copies she holds.
// Verdict "equal" against U_0|Psi_k> means guess 0. Throws
// InsufficientCopiesError when T < 2.
int forward_search_attack(const DeterministicScheme& scheme, const Ciphertext& ct,
                          std::span<const PublicKeyState> pk_copies, RngStream& rng);

enum class AttackMode {
    // Symmetry test simulated on the actual states (p_zero_exact).
    quantum,
    // "zero" drawn with probability q_{T,lambda}, lambda read off the states.
    // Same distribution as quantum mode, O(d) per part.
    bernoulli,
};

std::string_view to_string(AttackMode mode);
AttackMode parse_attack_mode(std::string_view text);

struct CompoundAttackResult {
    int guess = 0;
    std::vector<int> part_guesses;
    std::vector<SymmetryTestOutcome> outcomes;
};

// One forward search per part; the plaintext guess is the parity of the part
// guesses. copies_per_part[i] holds the T-1 copies of |Psi_{k_i}>.
CompoundAttackResult compound_attack(const DeterministicScheme& scheme,
                                     const CompoundCiphertext& ct,
                                     std::span<const std::vector<PublicKeyState>> copies_per_part,
                                     AttackMode mode, RngStream& rng);

struct DiscriminationInstance {
    Operator rho0;
    Operator rho1;
    double prior = 0.5;  // probability of plaintext 0

    // Throws PreconditionError unless both are unit-trace PSD within 1e-10
    // and the prior lies in [0, 1].
    void validate() const;
};

// rho_b = 2^{-n} sum_x |Psi_x><Psi_x|^{(x)(T-1)} (x) |Phi_{x,b}><Phi_{x,b}|.
DiscriminationInstance build_discrimination_instance(const DeterministicScheme& scheme,
                                                     int copies, double prior);

// (1/2)(1 + || p rho_0 - (1-p) rho_1 ||_1).
double helstrom_success(const DiscriminationInstance& instance);

}  // namespace qpke

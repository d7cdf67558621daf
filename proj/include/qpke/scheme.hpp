// scheme.hpp
// Deterministic quantum-public-key bit encryption |Phi_{k,b}> = U_b |Psi_k>.

#pragma once

#include <optional>

#include "qpke/keys.hpp"
#include "qpke/linalg.hpp"

namespace qpke {

// Ciphertext state only; plaintext and key never travel with it.
class Ciphertext {
public:
    explicit Ciphertext(StateVector state);

    const StateVector& state() const noexcept { return state_; }
    std::size_t dim() const noexcept { return state_.dim(); }

private:
    StateVector state_;
};

// Real rotation by angle phi in each coordinate pair (0,1), (2,3), ...; an odd
// trailing coordinate is left fixed. At phi = pi/2 this sends |0> -> |1>,
// |1> -> -|0>, which is orthogonal to its input for every real state when d
// is even.
Operator pairwise_rotation(std::size_t dim, double phi);

class DeterministicScheme {
public:
    // Throws PreconditionError when u0 or u1 is not a d x d unitary.
    DeterministicScheme(KeyFamily family, Operator u0, Operator u1);

    // U_0 = I, U_1 = pairwise_rotation(d, pi/2).
    static DeterministicScheme standard(KeyFamily family);
    // U_0 = I, U_1 = pairwise_rotation(d, phi); gives lambda = cos(phi) on the
    // rotation family.
    static DeterministicScheme tilted(KeyFamily family, double phi);

    const KeyFamily& family() const noexcept { return family_; }
    std::size_t register_dim() const noexcept { return family_.register_dim(); }
    const Operator& encryption_operator(int bit) const;

    Ciphertext encrypt_bit(const PublicKeyState& pk, int bit) const;

    // |<Phi_{k,0}|Phi_{k,1}>| for the key behind pk.
    double ciphertext_overlap(const PublicKeyState& pk) const;

    // True when every key (or, for non-enumerable families, a fixed sample of
    // keys) has ciphertext overlap <= 1e-12.
    bool orthogonal() const noexcept { return orthogonal_; }
    // Largest ciphertext overlap seen while classifying the scheme.
    double max_ciphertext_overlap() const noexcept { return max_overlap_; }

private:
    KeyFamily family_;
    Operator u0_;
    Operator u1_;
    bool orthogonal_ = false;
    double max_overlap_ = 0.0;
};

Ciphertext encrypt_bit(const DeterministicScheme& scheme, const PublicKeyState& pk, int bit);

}  // namespace qpke

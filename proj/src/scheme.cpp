#include "qpke/scheme.hpp"

#include <cmath>
#include <numbers>

#include "qpke/errors.hpp"

namespace qpke {

namespace {

constexpr double kOrthogonalTolerance = 1e-12;
constexpr std::size_t kOrthogonalitySample = 4096;
constexpr std::uint64_t kOrthogonalityTag = 0x6f7274686f67ULL;  // "orthog"

void check_bit(int bit) {
    if (bit != 0 && bit != 1) {
        throw ParameterError("plaintext bit must be 0 or 1");
    }
}

}  // namespace

Ciphertext::Ciphertext(StateVector state) : state_(std::move(state)) {
    if (!state_.is_normalized()) {
        throw PreconditionError("ciphertext state must be normalized");
    }
}

Operator pairwise_rotation(std::size_t dim, double phi) {
    Operator r = Operator::identity(dim);
    // Exact quarter turn, so the default U_1 has no round-off in its zeros.
    const bool quarter = phi == std::numbers::pi / 2.0;
    const double c = quarter ? 0.0 : std::cos(phi);
    const double s = quarter ? 1.0 : std::sin(phi);
    for (std::size_t i = 0; i + 1 < dim; i += 2) {
        r(i, i) = c;
        r(i, i + 1) = -s;
        r(i + 1, i) = s;
        r(i + 1, i + 1) = c;
    }
    return r;
}

DeterministicScheme::DeterministicScheme(KeyFamily family, Operator u0, Operator u1)
    : family_(std::move(family)), u0_(std::move(u0)), u1_(std::move(u1)) {
    const std::size_t d = family_.register_dim();
    if (u0_.dim() != d || u1_.dim() != d) {
        throw PreconditionError("encryption operators must be d x d");
    }
    if (!u0_.is_unitary() || !u1_.is_unitary()) {
        throw PreconditionError("encryption operators must be unitary within 1e-12");
    }

    auto classify = [&](const PrivateKey& key) {
        max_overlap_ = std::max(max_overlap_, ciphertext_overlap(family_.public_key_state(key)));
    };
    if (family_.enumerable()) {
        for (std::uint64_t x = 0; x < family_.spec().key_count(); ++x) {
            classify(PrivateKey::from_index(x, family_.spec().key_bits));
        }
    } else {
        RngStream rng(family_.spec().family_seed, kOrthogonalityTag);
        for (std::size_t i = 0; i < kOrthogonalitySample; ++i) {
            classify(family_.sample_private_key(rng));
        }
    }
    orthogonal_ = max_overlap_ <= kOrthogonalTolerance;
}

DeterministicScheme DeterministicScheme::standard(KeyFamily family) {
    return tilted(std::move(family), std::numbers::pi / 2.0);
}

DeterministicScheme DeterministicScheme::tilted(KeyFamily family, double phi) {
    const std::size_t d = family.register_dim();
    return DeterministicScheme(std::move(family), Operator::identity(d), pairwise_rotation(d, phi));
}

const Operator& DeterministicScheme::encryption_operator(int bit) const {
    check_bit(bit);
    return bit == 0 ? u0_ : u1_;
}

Ciphertext DeterministicScheme::encrypt_bit(const PublicKeyState& pk, int bit) const {
    if (pk.state().dim() != register_dim()) {
        throw PreconditionError("public key dimension does not match the scheme");
    }
    return Ciphertext(encryption_operator(bit).apply(pk.state()));
}

double DeterministicScheme::ciphertext_overlap(const PublicKeyState& pk) const {
    const StateVector phi0 = u0_.apply(pk.state());
    const StateVector phi1 = u1_.apply(pk.state());
    return std::abs(phi0.inner(phi1));
}

Ciphertext encrypt_bit(const DeterministicScheme& scheme, const PublicKeyState& pk, int bit) {
    return scheme.encrypt_bit(pk, bit);
}

}  // namespace qpke

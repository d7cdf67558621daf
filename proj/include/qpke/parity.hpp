// parity.hpp
// Parity-encoded randomized bit encryption built on a DeterministicScheme used
// strictly as a black box: plaintext b becomes a uniformly random s-bit
// codeword w of weight parity b, and bit i of w is encrypted under its own
// independent key k_i.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qpke/rng.hpp"
#include "qpke/scheme.hpp"

namespace qpke {

class Codeword {
public:
    explicit Codeword(std::vector<std::uint8_t> bits);
    static Codeword from_string(std::string_view bits);

    std::size_t size() const noexcept { return bits_.size(); }
    std::span<const std::uint8_t> bits() const noexcept { return bits_; }
    std::size_t weight() const noexcept { return weight_; }
    int parity() const noexcept { return static_cast<int>(weight_ % 2); }
    std::string to_string() const;

    bool operator==(const Codeword&) const = default;

private:
    std::vector<std::uint8_t> bits_;
    std::size_t weight_ = 0;
};

struct CompoundCiphertext {
    std::vector<Ciphertext> parts;

    std::size_t size() const noexcept { return parts.size(); }
};

// Uniform over the 2^{s-1} strings of length s with weight parity b.
Codeword sample_codeword(std::size_t length, int bit, RngStream& rng);

// Part i = encrypt_bit(pks[i], w_i).
CompoundCiphertext encrypt_codeword(const DeterministicScheme& scheme,
                                    std::span<const PublicKeyState> pks, const Codeword& codeword);

// The codeword is returned for harness-side verification only.
std::pair<CompoundCiphertext, Codeword> encrypt_randomized(const DeterministicScheme& scheme,
                                                           std::span<const PublicKeyState> pks,
                                                           int bit, RngStream& rng);

// Recovers each w_i by comparing part i with U_0|Psi_{k_i}> and U_1|Psi_{k_i}>,
// then returns the weight parity. Needs an orthogonal scheme.
int decrypt_randomized(const DeterministicScheme& scheme, std::span<const PrivateKey> keys,
                       const CompoundCiphertext& ct);

}  // namespace qpke

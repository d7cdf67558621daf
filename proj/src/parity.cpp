#include "qpke/parity.hpp"

#include <cmath>

#include "qpke/errors.hpp"

namespace qpke {

namespace {

constexpr double kDecryptTolerance = 1e-10;

}  // namespace

Codeword::Codeword(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    if (bits_.empty()) {
        throw ParameterError("codeword length s must be at least 1");
    }
    for (auto b : bits_) {
        if (b > 1) {
            throw ParameterError("codeword bits must be 0 or 1");
        }
        weight_ += b;
    }
}

Codeword Codeword::from_string(std::string_view bits) {
    std::vector<std::uint8_t> out;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw ParameterError("codeword string may contain only '0' and '1'");
        }
        out.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return Codeword(std::move(out));
}

std::string Codeword::to_string() const {
    std::string out;
    for (auto b : bits_) {
        out.push_back(static_cast<char>('0' + b));
    }
    return out;
}

Codeword sample_codeword(std::size_t length, int bit, RngStream& rng) {
    if (length < 1) {
        throw ParameterError("codeword-len: s must be at least 1");
    }
    if (bit != 0 && bit != 1) {
        throw ParameterError("plaintext bit must be 0 or 1");
    }
    // s-1 free bits; the last one fixes the parity.
    std::vector<std::uint8_t> bits(length);
    int parity = 0;
    for (std::size_t i = 0; i + 1 < length; ++i) {
        bits[i] = static_cast<std::uint8_t>(rng.bit());
        parity ^= bits[i];
    }
    bits[length - 1] = static_cast<std::uint8_t>(parity ^ bit);
    return Codeword(std::move(bits));
}

CompoundCiphertext encrypt_codeword(const DeterministicScheme& scheme,
                                    std::span<const PublicKeyState> pks, const Codeword& codeword) {
    if (pks.size() != codeword.size()) {
        throw ParameterError("encrypt_codeword: need one public key per codeword bit (" +
                             std::to_string(codeword.size()) + "), got " +
                             std::to_string(pks.size()));
    }
    CompoundCiphertext ct;
    ct.parts.reserve(pks.size());
    for (std::size_t i = 0; i < pks.size(); ++i) {
        ct.parts.push_back(scheme.encrypt_bit(pks[i], codeword.bits()[i]));
    }
    return ct;
}

std::pair<CompoundCiphertext, Codeword> encrypt_randomized(const DeterministicScheme& scheme,
                                                           std::span<const PublicKeyState> pks,
                                                           int bit, RngStream& rng) {
    if (pks.empty()) {
        throw ParameterError("encrypt_randomized: need at least one public key");
    }
    Codeword w = sample_codeword(pks.size(), bit, rng);
    CompoundCiphertext ct = encrypt_codeword(scheme, pks, w);
    return {std::move(ct), std::move(w)};
}

int decrypt_randomized(const DeterministicScheme& scheme, std::span<const PrivateKey> keys,
                       const CompoundCiphertext& ct) {
    if (!scheme.orthogonal()) {
        throw UnsupportedModeError(
            "decrypt_randomized needs orthogonal ciphertexts (perfect decryption)");
    }
    if (keys.size() != ct.size() || keys.empty()) {
        throw ParameterError("decrypt_randomized: key count does not match ciphertext length");
    }
    int parity = 0;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        const PublicKeyState pk = scheme.family().public_key_state(keys[i]);
        const StateVector& part = ct.parts[i].state();
        bool matched[2] = {false, false};
        for (int b = 0; b < 2; ++b) {
            const StateVector reference = scheme.encryption_operator(b).apply(pk.state());
            matched[b] = std::abs(std::abs(reference.inner(part)) - 1.0) <= kDecryptTolerance;
        }
        if (matched[0] == matched[1]) {
            throw CorruptedCiphertextError("ciphertext part " + std::to_string(i) +
                                           " matches neither encryption of its key");
        }
        parity ^= matched[1] ? 1 : 0;
    }
    return parity;
}

}  // namespace qpke

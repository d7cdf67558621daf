// keys.hpp
// Public-key state families: private keys k in {0,1}^n mapped to d-dimensional
// pure states |Psi_k>, plus the overlap and Holevo sanity checks on a family.

#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qpke/linalg.hpp"
#include "qpke/rng.hpp"

namespace qpke {

enum class FamilyKind {
    // Real qubit states cos(theta_k)|0> + sin(theta_k)|1>, theta_k = pi int(k) / 2^{n+1}.
    rotation,
    // Haar-random d-dimensional states drawn from a family seed, redrawn
    // until every pair has overlap below overlap_bound.
    seeded_random,
};

std::string_view to_string(FamilyKind kind);
FamilyKind parse_family_kind(std::string_view text);

// Largest 2^n for which families are enumerated exhaustively.
inline constexpr std::size_t kMaxEnumeratedKeys = 4096;

struct KeyFamilySpec {
    FamilyKind kind = FamilyKind::rotation;
    int key_bits = 1;               // n
    std::size_t register_dim = 2;   // d
    int max_copies = 1;             // T
    double overlap_bound = 0.99;    // delta
    double holevo_margin = 10.0;    // c in n >= c T log2(d)
    std::uint64_t family_seed = 0;  // seeded_random only

    // Throws ParameterError naming the offending field.
    void validate() const;
    std::uint64_t key_count() const;  // 2^n, saturating at 2^63
};

class PrivateKey {
public:
    // Most significant bit first: "10" is int(k) = 2.
    static PrivateKey from_string(std::string_view bits);
    static PrivateKey from_index(std::uint64_t index, int key_bits);

    explicit PrivateKey(std::vector<std::uint8_t> bits);

    std::size_t size() const noexcept { return bits_.size(); }
    std::span<const std::uint8_t> bits() const noexcept { return bits_; }
    std::string to_string() const;
    // int(k); requires n <= 64.
    std::uint64_t index() const;

    bool operator==(const PrivateKey&) const = default;

private:
    std::vector<std::uint8_t> bits_;
};

struct HarnessAccess;

// One copy of the quantum public key. The fingerprint ties a state back to
// its private key for the test harness; adversary code only sees state().
class PublicKeyState {
public:
    const StateVector& state() const noexcept { return state_; }

private:
    friend class KeyFamily;
    friend struct HarnessAccess;

    PublicKeyState(StateVector state, std::uint64_t fingerprint)
        : state_(std::move(state)), fingerprint_(fingerprint) {}

    StateVector state_;
    std::uint64_t fingerprint_;
};

// Harness-side bookkeeping. Not for use by attack code.
struct HarnessAccess {
    static std::uint64_t fingerprint(const PublicKeyState& pk) { return pk.fingerprint_; }
    static std::uint64_t fingerprint(const PrivateKey& key);
};

struct OverlapBound {
    double value = 0.0;      // max_{x != x'} |<Psi_x'|Psi_x>|
    bool exhaustive = true;  // false when estimated from sampled keys
};

struct HolevoCheck {
    double ratio = 0.0;  // n / (T log2 d)
    bool pass = false;
};

class KeyFamily {
public:
    explicit KeyFamily(KeyFamilySpec spec);

    const KeyFamilySpec& spec() const noexcept { return spec_; }
    std::size_t register_dim() const noexcept { return spec_.register_dim; }

    PrivateKey sample_private_key(RngStream& rng) const;
    PublicKeyState public_key_state(const PrivateKey& key) const;
    // T copies of |Psi_k>.
    std::vector<PublicKeyState> public_key_copies(const PrivateKey& key, std::size_t count) const;

    // |Psi_x> for x = int(k); requires an enumerable family.
    const StateVector& state_at(std::uint64_t index) const;
    bool enumerable() const noexcept { return spec_.key_count() <= kMaxEnumeratedKeys; }

    OverlapBound pairwise_overlap_bound() const;

private:
    StateVector compute_state(const PrivateKey& key) const;

    KeyFamilySpec spec_;
    // Table of all 2^n states for enumerable families.
    std::shared_ptr<const std::vector<StateVector>> table_;
};

// Free-function forms.
PrivateKey sample_private_key(const KeyFamily& family, RngStream& rng);
PublicKeyState public_key_state(const KeyFamily& family, const PrivateKey& key);
OverlapBound pairwise_overlap_bound(const KeyFamily& family);
HolevoCheck holevo_check(const KeyFamilySpec& spec);

// max_{i != j} |<s_i|s_j>|; throws FamilyInvalidError when two states
// coincide up to phase (overlap >= 1 - 1e-12).
double max_pairwise_overlap(std::span<const StateVector> states);

// Haar-distributed pure state of dimension dim.
StateVector random_state(std::size_t dim, RngStream& rng);

}  // namespace qpke

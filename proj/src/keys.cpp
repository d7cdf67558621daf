#include "qpke/keys.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qpke/errors.hpp"

namespace qpke {

namespace {

constexpr double kDegenerateOverlap = 1.0 - 1e-12;
constexpr int kMaxRejections = 10000;
constexpr std::uint64_t kFamilyStreamTag = 0x6b65792d66616dULL;    // "key-fam"
constexpr std::uint64_t kSampledOverlapTag = 0x6f766c702d736dULL;  // "ovlp-sm"

}  // namespace

std::string_view to_string(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::rotation:
            return "rotation";
        case FamilyKind::seeded_random:
            return "random";
    }
    return "unknown";
}

FamilyKind parse_family_kind(std::string_view text) {
    if (text == "rotation") {
        return FamilyKind::rotation;
    }
    if (text == "random" || text == "seeded-random") {
        return FamilyKind::seeded_random;
    }
    throw ParameterError("family: expected 'rotation' or 'random', got '" + std::string(text) +
                         "'");
}

void KeyFamilySpec::validate() const {
    if (key_bits < 1) {
        throw ParameterError("key-bits: n must be at least 1");
    }
    if (register_dim < 2) {
        throw ParameterError("register-dim: d must be at least 2");
    }
    if (max_copies < 1) {
        throw ParameterError("copies-t: T must be at least 1");
    }
    if (!(overlap_bound > 0.0 && overlap_bound < 1.0)) {
        throw ParameterError("overlap-bound: delta must lie in (0, 1)");
    }
    if (!(holevo_margin >= 1.0)) {
        throw ParameterError("holevo-margin: c must be at least 1");
    }
    if (kind == FamilyKind::rotation && register_dim != 2) {
        throw ParameterError("register-dim: the rotation family is defined for d = 2 only");
    }
    if (kind == FamilyKind::seeded_random && key_count() > kMaxEnumeratedKeys) {
        throw SimulationSizeError("seeded-random family must be enumerable (2^n keys)",
                                  key_count(), kMaxEnumeratedKeys);
    }
}

std::uint64_t KeyFamilySpec::key_count() const {
    if (key_bits >= 63) {
        return std::uint64_t{1} << 63;
    }
    return std::uint64_t{1} << key_bits;
}

// ---------------------------------------------------------------------------
// PrivateKey

PrivateKey::PrivateKey(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    if (bits_.empty()) {
        throw KeyError("private key must have at least one bit");
    }
    for (auto b : bits_) {
        if (b > 1) {
            throw KeyError("private key bits must be 0 or 1");
        }
    }
}

PrivateKey PrivateKey::from_string(std::string_view bits) {
    std::vector<std::uint8_t> out;
    out.reserve(bits.size());
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw KeyError("private key string may contain only '0' and '1'");
        }
        out.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return PrivateKey(std::move(out));
}

PrivateKey PrivateKey::from_index(std::uint64_t index, int key_bits) {
    if (key_bits < 1 || key_bits > 64) {
        throw KeyError("from_index supports 1 <= n <= 64");
    }
    if (key_bits < 64 && index >> key_bits != 0) {
        throw KeyError("key index does not fit in n bits");
    }
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(key_bits));
    for (int i = 0; i < key_bits; ++i) {
        bits[static_cast<std::size_t>(key_bits - 1 - i)] =
            static_cast<std::uint8_t>((index >> i) & 1U);
    }
    return PrivateKey(std::move(bits));
}

std::string PrivateKey::to_string() const {
    std::string out;
    out.reserve(bits_.size());
    for (auto b : bits_) {
        out.push_back(static_cast<char>('0' + b));
    }
    return out;
}

std::uint64_t PrivateKey::index() const {
    if (bits_.size() > 64) {
        throw KeyError("key index is only defined for n <= 64");
    }
    std::uint64_t value = 0;
    for (auto b : bits_) {
        value = (value << 1) | b;
    }
    return value;
}

std::uint64_t HarnessAccess::fingerprint(const PrivateKey& key) {
    std::uint64_t h = mix64(key.size());
    for (auto b : key.bits()) {
        h = mix64(h ^ b);
    }
    return h;
}

// ---------------------------------------------------------------------------
// KeyFamily

StateVector random_state(std::size_t dim, RngStream& rng) {
    std::vector<Complex> amps(dim);
    for (;;) {
        for (auto& a : amps) {
            const double re = rng.normal();
            const double im = rng.normal();
            a = Complex{re, im};
        }
        StateVector v(amps);
        if (v.norm_squared() > 1e-24) {
            return v.normalized();
        }
    }
}

KeyFamily::KeyFamily(KeyFamilySpec spec) : spec_(spec) {
    spec_.validate();

    if (spec_.kind == FamilyKind::seeded_random) {
        // Key x's state is redrawn (attempt counter) until it keeps every
        // overlap with keys 0..x-1 below delta.
        auto table = std::make_shared<std::vector<StateVector>>();
        const std::uint64_t count = spec_.key_count();
        table->reserve(count);
        for (std::uint64_t x = 0; x < count; ++x) {
            bool accepted = false;
            for (int attempt = 0; attempt < kMaxRejections && !accepted; ++attempt) {
                RngStream rng(spec_.family_seed, kFamilyStreamTag,
                              (x << 16) ^ static_cast<std::uint64_t>(attempt));
                StateVector candidate = random_state(spec_.register_dim, rng);
                accepted = true;
                for (const auto& prior : *table) {
                    if (std::abs(prior.inner(candidate)) >= spec_.overlap_bound) {
                        accepted = false;
                        break;
                    }
                }
                if (accepted) {
                    table->push_back(std::move(candidate));
                }
            }
            if (!accepted) {
                throw FamilyInvalidError(
                    "seeded-random family: could not place key " + std::to_string(x) +
                    " below the overlap bound; raise overlap-bound or register-dim");
            }
        }
        table_ = std::move(table);
    } else if (enumerable()) {
        auto table = std::make_shared<std::vector<StateVector>>();
        table->reserve(spec_.key_count());
        for (std::uint64_t x = 0; x < spec_.key_count(); ++x) {
            table->push_back(compute_state(PrivateKey::from_index(x, spec_.key_bits)));
        }
        table_ = std::move(table);
    }
}

StateVector KeyFamily::compute_state(const PrivateKey& key) const {
    // theta = (pi/2) * 0.k_1 k_2 ... k_n (binary fraction); bits past the
    // 64th fall below double resolution.
    long double fraction = 0.0L;
    long double weight = 0.5L;
    const std::size_t used = std::min<std::size_t>(key.size(), 64);
    for (std::size_t i = 0; i < used; ++i) {
        if (key.bits()[i] != 0) {
            fraction += weight;
        }
        weight *= 0.5L;
    }
    const double theta = static_cast<double>(fraction * std::numbers::pi_v<long double> / 2.0L);
    return StateVector{Complex{std::cos(theta)}, Complex{std::sin(theta)}};
}

PrivateKey KeyFamily::sample_private_key(RngStream& rng) const {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(spec_.key_bits));
    for (auto& b : bits) {
        b = static_cast<std::uint8_t>(rng.bit());
    }
    return PrivateKey(std::move(bits));
}

const StateVector& KeyFamily::state_at(std::uint64_t index) const {
    if (!table_ || index >= table_->size()) {
        throw KeyError("state_at: key index outside the enumerated family");
    }
    return (*table_)[index];
}

PublicKeyState KeyFamily::public_key_state(const PrivateKey& key) const {
    if (key.size() != static_cast<std::size_t>(spec_.key_bits)) {
        throw KeyError("private key has " + std::to_string(key.size()) + " bits, family expects " +
                       std::to_string(spec_.key_bits));
    }
    const std::uint64_t fp = HarnessAccess::fingerprint(key);
    if (table_) {
        return PublicKeyState(state_at(key.index()), fp);
    }
    return PublicKeyState(compute_state(key), fp);
}

std::vector<PublicKeyState> KeyFamily::public_key_copies(const PrivateKey& key,
                                                         std::size_t count) const {
    const PublicKeyState pk = public_key_state(key);
    return std::vector<PublicKeyState>(count, pk);
}

OverlapBound KeyFamily::pairwise_overlap_bound() const {
    if (table_) {
        return {max_pairwise_overlap(*table_), true};
    }
    // Too many keys to enumerate: estimate over a sample of distinct keys.
    RngStream rng(spec_.family_seed, kSampledOverlapTag);
    std::vector<StateVector> sample;
    std::vector<PrivateKey> seen;
    sample.reserve(kMaxEnumeratedKeys);
    while (sample.size() < kMaxEnumeratedKeys) {
        PrivateKey k = sample_private_key(rng);
        if (std::find(seen.begin(), seen.end(), k) != seen.end()) {
            continue;
        }
        sample.push_back(compute_state(k));
        seen.push_back(std::move(k));
    }
    return {max_pairwise_overlap(sample), false};
}

double max_pairwise_overlap(std::span<const StateVector> states) {
    double worst = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i) {
        for (std::size_t j = i + 1; j < states.size(); ++j) {
            const double overlap = std::abs(states[i].inner(states[j]));
            if (overlap >= kDegenerateOverlap) {
                throw FamilyInvalidError("keys " + std::to_string(i) + " and " +
                                         std::to_string(j) +
                                         " map to the same public-key state");
            }
            worst = std::max(worst, overlap);
        }
    }
    return worst;
}

PrivateKey sample_private_key(const KeyFamily& family, RngStream& rng) {
    return family.sample_private_key(rng);
}

PublicKeyState public_key_state(const KeyFamily& family, const PrivateKey& key) {
    return family.public_key_state(key);
}

OverlapBound pairwise_overlap_bound(const KeyFamily& family) {
    return family.pairwise_overlap_bound();
}

HolevoCheck holevo_check(const KeyFamilySpec& spec) {
    spec.validate();
    const double ratio = static_cast<double>(spec.key_bits) /
                         (static_cast<double>(spec.max_copies) *
                          std::log2(static_cast<double>(spec.register_dim)));
    return {ratio, ratio >= spec.holevo_margin};
}

}  // namespace qpke

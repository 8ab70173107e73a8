// Copyright 2026 The sealbid Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>
#include <utility>

#include "sealbid/types.hpp"

namespace sealbid {

using Key128 = FixedBytes<16>;

Bytes32 sha256(ByteView data);
Bytes32 hmac_sha256(ByteView key, ByteView data);
/// AES-128 in CTR mode; encryption and decryption are the same call.
Bytes aes128_ctr(const Key128& key, const Key128& iv, ByteView data);

// ---------------------------------------------------------------------------
// Hash commitment over the 768-bit preimage address(32) || price(32) || r(32)
// ---------------------------------------------------------------------------

/// The committed bid: a one-time address and a price. Serializes to exactly
/// 64 bytes, the address left-padded with zeros to a 32-byte word followed by
/// the big-endian price word.
struct BidMessage {
    static constexpr std::size_t kSize = 64;

    Address onetime_address;
    Wei price;

    std::array<std::uint8_t, kSize> serialize() const;
    /// Rejects encodings with non-zero address padding.
    static std::optional<BidMessage> parse(ByteView bytes);

    friend bool operator==(const BidMessage&, const BidMessage&) = default;
};

struct Commitment {
    Bytes32 digest;
    std::string hex() const { return digest.hex(); }
    friend auto operator<=>(const Commitment&, const Commitment&) = default;
};

struct Decommitment {
    Bytes32 r;
    std::string hex() const { return r.hex(); }
    friend auto operator<=>(const Decommitment&, const Decommitment&) = default;
};

/// digest = SHA256(serialize(msg) || r) with r drawn from `rng`.
std::pair<Commitment, Decommitment> commit(const BidMessage& msg, RandomSource& rng);
Commitment commit_with(const BidMessage& msg, const Decommitment& dec);
bool com_open(const Commitment& com, const Decommitment& dec, const BidMessage& msg);
/// Opens against a raw 64-byte message encoding. Any malformed encoding rejects.
bool com_open_serialized(const Commitment& com, const Decommitment& dec, ByteView message);

// ---------------------------------------------------------------------------
// Signatures (Ed25519)
// ---------------------------------------------------------------------------

struct Signature {
    std::array<std::uint8_t, 64> bytes{};
    std::string hex() const { return to_hex(bytes); }
    static std::optional<Signature> from_bytes(ByteView raw);
    friend bool operator==(const Signature&, const Signature&) = default;
};

struct VerifyKey {
    FixedBytes<32> key;
    std::string hex() const { return key.hex(); }
    friend bool operator==(const VerifyKey&, const VerifyKey&) = default;
};

/// Holds the 32-byte Ed25519 private seed.
struct SigningKey {
    FixedBytes<32> seed;
};

struct OracleKeypair {
    VerifyKey vk;
    SigningKey sigk;

    static OracleKeypair generate(RandomSource& rng);
};

Signature sign(const SigningKey& sigk, ByteView message);
bool verify(const VerifyKey& vk, ByteView message, const Signature& sig);
bool verify(const VerifyKey& vk, ByteView message, ByteView raw_signature);

}  // namespace sealbid

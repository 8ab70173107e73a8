// Copyright 2026 The sealbid Authors
// SPDX-License-Identifier: Apache-2.0

#include "sealbid/crypto.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>

#include <openssl/evp.h>
#include <openssl/hmac.h>

namespace sealbid {

namespace {

struct PkeyDeleter {
    void operator()(EVP_PKEY* p) const noexcept { EVP_PKEY_free(p); }
};
struct MdCtxDeleter {
    void operator()(EVP_MD_CTX* p) const noexcept { EVP_MD_CTX_free(p); }
};
struct CipherCtxDeleter {
    void operator()(EVP_CIPHER_CTX* p) const noexcept { EVP_CIPHER_CTX_free(p); }
};
using PkeyPtr = std::unique_ptr<EVP_PKEY, PkeyDeleter>;
using MdCtxPtr = std::unique_ptr<EVP_MD_CTX, MdCtxDeleter>;
using CipherCtxPtr = std::unique_ptr<EVP_CIPHER_CTX, CipherCtxDeleter>;

[[noreturn]] void openssl_failure(const char* what) { throw std::runtime_error(std::string("openssl: ") + what); }

PkeyPtr ed25519_private(const SigningKey& sigk) {
    PkeyPtr key{EVP_PKEY_new_raw_private_key(EVP_PKEY_ED25519, nullptr, sigk.seed.data(), sigk.seed.size())};
    if (!key) openssl_failure("ed25519 private key");
    return key;
}

}  // namespace

Bytes32 sha256(ByteView data) {
    Bytes32 out;
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 || len != 32) {
        openssl_failure("sha256");
    }
    return out;
}

Bytes32 hmac_sha256(ByteView key, ByteView data) {
    Bytes32 out;
    unsigned int len = 0;
    if (HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), data.data(), data.size(), out.data(), &len) ==
            nullptr ||
        len != 32) {
        openssl_failure("hmac-sha256");
    }
    return out;
}

Bytes aes128_ctr(const Key128& key, const Key128& iv, ByteView data) {
    CipherCtxPtr ctx{EVP_CIPHER_CTX_new()};
    if (!ctx || EVP_EncryptInit_ex(ctx.get(), EVP_aes_128_ctr(), nullptr, key.data(), iv.data()) != 1) {
        openssl_failure("aes-128-ctr init");
    }
    Bytes out(data.size());
    int len = 0;
    if (!data.empty() &&
        EVP_EncryptUpdate(ctx.get(), out.data(), &len, data.data(), static_cast<int>(data.size())) != 1) {
        openssl_failure("aes-128-ctr update");
    }
    return out;
}

std::array<std::uint8_t, BidMessage::kSize> BidMessage::serialize() const {
    std::array<std::uint8_t, kSize> out{};
    std::copy(onetime_address.begin(), onetime_address.end(), out.begin() + 12);
    auto word = to_word(price);
    std::copy(word.begin(), word.end(), out.begin() + 32);
    return out;
}

std::optional<BidMessage> BidMessage::parse(ByteView bytes) {
    if (bytes.size() != kSize) return std::nullopt;
    if (std::any_of(bytes.begin(), bytes.begin() + 12, [](std::uint8_t b) { return b != 0; })) return std::nullopt;
    BidMessage msg;
    std::copy(bytes.begin() + 12, bytes.begin() + 32, msg.onetime_address.bytes.begin());
    Bytes32 word;
    std::copy(bytes.begin() + 32, bytes.end(), word.bytes.begin());
    msg.price = from_word(word);
    return msg;
}

namespace {

Commitment digest_of(ByteView message, const Decommitment& dec) {
    std::array<std::uint8_t, 96> preimage{};
    std::copy(message.begin(), message.end(), preimage.begin());
    std::copy(dec.r.begin(), dec.r.end(), preimage.begin() + 64);
    return Commitment{sha256(preimage)};
}

}  // namespace

std::pair<Commitment, Decommitment> commit(const BidMessage& msg, RandomSource& rng) {
    Decommitment dec{rng.bytes32()};
    return {commit_with(msg, dec), dec};
}

Commitment commit_with(const BidMessage& msg, const Decommitment& dec) { return digest_of(msg.serialize(), dec); }

bool com_open(const Commitment& com, const Decommitment& dec, const BidMessage& msg) {
    return commit_with(msg, dec) == com;
}

bool com_open_serialized(const Commitment& com, const Decommitment& dec, ByteView message) {
    auto msg = BidMessage::parse(message);
    return msg.has_value() && com_open(com, dec, *msg);
}

std::optional<Signature> Signature::from_bytes(ByteView raw) {
    Signature sig;
    if (raw.size() != sig.bytes.size()) return std::nullopt;
    std::copy(raw.begin(), raw.end(), sig.bytes.begin());
    return sig;
}

OracleKeypair OracleKeypair::generate(RandomSource& rng) {
    OracleKeypair kp;
    kp.sigk.seed = rng.bytes<32>();
    auto key = ed25519_private(kp.sigk);
    std::size_t len = kp.vk.key.size();
    if (EVP_PKEY_get_raw_public_key(key.get(), kp.vk.key.data(), &len) != 1 || len != 32) {
        openssl_failure("ed25519 public key");
    }
    return kp;
}

Signature sign(const SigningKey& sigk, ByteView message) {
    auto key = ed25519_private(sigk);
    MdCtxPtr ctx{EVP_MD_CTX_new()};
    if (!ctx || EVP_DigestSignInit(ctx.get(), nullptr, nullptr, nullptr, key.get()) != 1) {
        openssl_failure("ed25519 sign init");
    }
    Signature sig;
    std::size_t len = sig.bytes.size();
    if (EVP_DigestSign(ctx.get(), sig.bytes.data(), &len, message.data(), message.size()) != 1 || len != 64) {
        openssl_failure("ed25519 sign");
    }
    return sig;
}

bool verify(const VerifyKey& vk, ByteView message, const Signature& sig) {
    PkeyPtr key{EVP_PKEY_new_raw_public_key(EVP_PKEY_ED25519, nullptr, vk.key.data(), vk.key.size())};
    if (!key) return false;
    MdCtxPtr ctx{EVP_MD_CTX_new()};
    if (!ctx || EVP_DigestVerifyInit(ctx.get(), nullptr, nullptr, nullptr, key.get()) != 1) return false;
    return EVP_DigestVerify(ctx.get(), sig.bytes.data(), sig.bytes.size(), message.data(), message.size()) == 1;
}

bool verify(const VerifyKey& vk, ByteView message, ByteView raw_signature) {
    auto sig = Signature::from_bytes(raw_signature);
    return sig.has_value() && verify(vk, message, *sig);
}

}  // namespace sealbid

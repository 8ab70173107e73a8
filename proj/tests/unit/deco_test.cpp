// Copyright 2026 The sealbid Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <openssl/evp.h>

#include <cctype>

#include "fixtures.hpp"
#include "sealbid/deco.hpp"
#include "sealbid/error.hpp"

namespace sealbid {
namespace {

using testing::eth;
using testing::ProtocolFixture;

template <typename Fn>
ErrorCode code_of(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an error";
    return ErrorCode::kIo;
}

std::string base64(ByteView bytes) {
    std::string out(4 * ((bytes.size() + 2) / 3) + 1, '\0');
    const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), bytes.data(),
                                  static_cast<int>(bytes.size()));
    out.resize(static_cast<std::size_t>(n));
    return out;
}

std::string upper(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

/// True when the address shows up in `blob` as raw bytes, hex or base64.
bool leaks(const std::string& blob, const Address& a) {
    const std::string raw(a.bytes.begin(), a.bytes.end());
    const std::string hex = to_hex(a.view(), false);
    return blob.find(raw) != std::string::npos || blob.find(hex) != std::string::npos ||
           upper(blob).find(upper(hex)) != std::string::npos || blob.find(base64(a.view())) != std::string::npos;
}

TEST(KeyShares, AdditionWrapsModulo2To128) {
    const auto max = Key128::from_hex("ffffffffffffffffffffffffffffffff");
    const auto one = Key128::from_hex("00000000000000000000000000000001");
    EXPECT_EQ(add_mod128(max, one), Key128{});
    EXPECT_EQ(sub_mod128(Key128{}, one), max);
    const auto carry = Key128::from_hex("000000000000000000000000000000ff");
    EXPECT_EQ(add_mod128(carry, one).hex(), "0x00000000000000000000000000000100");
}

TEST(KeyShares, ProverShareAloneDoesNotFixTheKey) {
    // For a fixed k_P, every k_MAC is reachable by some k_V.
    SeededRandom rng(1);
    const auto kp = rng.bytes<16>();
    for (int i = 0; i < 100; ++i) {
        const auto target = rng.bytes<16>();
        EXPECT_EQ(add_mod128(kp, sub_mod128(target, kp)), target);
    }
}

TEST(Handshake, SharesReconstructTheSourceKey) {
    ProtocolFixture f(2);
    f.ledger.close_setup();
    auto s1 = AttestationSession::three_party_handshake(f.source, f.oracle, f.rng);
    auto s2 = AttestationSession::three_party_handshake(f.source, f.oracle, f.rng);
    EXPECT_EQ(add_mod128(s1.prover_share(), s1.verifier_share()), f.source.mac_key(s1.session_id()));
    EXPECT_EQ(add_mod128(s2.prover_share(), s2.verifier_share()), f.source.mac_key(s2.session_id()));
    EXPECT_NE(f.source.mac_key(s1.session_id()), f.source.mac_key(s2.session_id()));
    EXPECT_NE(s1.prover_share(), s2.prover_share());
}

TEST(QueryBalance, ReturnsLedgerBalanceWithValidTag) {
    ProtocolFixture f(3);
    const Address funding = f.wallet(eth("1"));
    f.ledger.close_setup();
    const Address theta = f.rng.address();
    f.ledger.transfer(funding, theta, eth("0.3"));
    auto s = AttestationSession::three_party_handshake(f.source, f.oracle, f.rng);
    const auto q = s.query_balance(theta, f.rng);
    EXPECT_EQ(q.balance, Wei{"300000000000000000"});
    Bytes body(theta.begin(), theta.end());
    const auto word = to_word(q.balance);
    body.insert(body.end(), word.begin(), word.end());
    EXPECT_EQ(hmac_sha256(f.source.mac_key(s.session_id()).view(), body), q.tag);
    EXPECT_EQ(code_of([&] { s.query_balance(theta, f.rng); }), ErrorCode::kProtocolOrder);
}

TEST(QueryBalance, UnknownAddressReadsZero) {
    ProtocolFixture f(4);
    f.ledger.close_setup();
    auto s = AttestationSession::three_party_handshake(f.source, f.oracle, f.rng);
    EXPECT_EQ(s.query_balance(f.rng.address(), f.rng).balance, Wei{0});
}

// One honest attestation up to (but excluding) verify_and_attest.
struct Prepared {
    Address theta;
    Address identity;
    Commitment com;
    Decommitment dec;
    Wei price;
    std::uint64_t bid_id = 0;
};

Prepared prepare(ProtocolFixture& f, const Address& funding, const Wei& price) {
    Prepared p;
    p.identity = f.keyed();
    p.price = price;
    p.theta = f.house.make_onetime_address(p.identity, f.auction_id, f.rng).first;
    std::tie(p.com, p.dec) = commit(BidMessage{p.theta, price}, f.rng);
    f.ledger.transfer(funding, p.theta, price);
    p.bid_id = f.house.submit_commitment(p.identity, f.auction_id, p.com);
    return p;
}

// Property: honest parties always end with a credential that verifies.
TEST(AttestationProperty, Completeness) {
    ProtocolFixture f(5);
    const Address funding = f.wallet(eth("100000"));
    f.open();
    for (int i = 0; i < 100; ++i) {
        const auto p = prepare(f, funding, f.rng.uniform_wei(1, eth("500")));
        auto s = AttestationSession::three_party_handshake(f.source, f.oracle, f.rng);
        const auto q = s.query_balance(p.theta, f.rng);
        ASSERT_EQ(q.balance, p.price);
        const auto proof = s.prove_bid(p.com, p.theta, q.balance, p.dec, f.rng);
        EXPECT_TRUE(f.backend->check(ProofStatement{p.com, *s.transcript().exchange_commitment}, proof));
        const auto cred = s.verify_and_attest(f.house, f.auction_id, p.bid_id, p.com, proof);
        EXPECT_TRUE(verify(f.oracle.vk(), credential_message(f.auction_id, p.bid_id, p.com), cred.signature));
        EXPECT_FALSE(leaks(s.transcript().serialize(), p.theta));
    }
}

class Soundness : public ::testing::Test {
  protected:
    void SetUp() override {
        funding_ = f_.wallet(eth("10"));
        f_.open();
        p_ = prepare(f_, funding_, eth("0.4"));
    }

    ProtocolFixture f_{6};
    Address funding_;
    Prepared p_;
};

TEST_F(Soundness, WrongAddressFailsMacCheck) {
    auto s = AttestationSession::three_party_handshake(f_.source, f_.oracle, f_.rng);
    const auto q = s.query_balance(p_.theta, f_.rng);
    EXPECT_EQ(code_of([&] { s.prove_bid(p_.com, f_.rng.address(), q.balance, p_.dec, f_.rng); }),
              ErrorCode::kMacCheckFailed);
}

TEST_F(Soundness, BalanceOffByOneFailsMacCheck) {
    auto s = AttestationSession::three_party_handshake(f_.source, f_.oracle, f_.rng);
    const auto q = s.query_balance(p_.theta, f_.rng);
    EXPECT_EQ(code_of([&] { s.prove_bid(p_.com, p_.theta, q.balance + 1, p_.dec, f_.rng); }),
              ErrorCode::kMacCheckFailed);
}

TEST_F(Soundness, CorruptedSourceTagFailsMacCheck) {
    f_.source.set_corrupt_tags(true);
    auto s = AttestationSession::three_party_handshake(f_.source, f_.oracle, f_.rng);
    const auto q = s.query_balance(p_.theta, f_.rng);
    EXPECT_EQ(code_of([&] { s.prove_bid(p_.com, p_.theta, q.balance, p_.dec, f_.rng); }), ErrorCode::kMacCheckFailed);
}

TEST_F(Soundness, ForeignDecommitmentIsRejected) {
    auto s = AttestationSession::three_party_handshake(f_.source, f_.oracle, f_.rng);
    const auto q = s.query_balance(p_.theta, f_.rng);
    const auto other_dec = commit(BidMessage{p_.theta, p_.price}, f_.rng).second;
    const auto proof = s.prove_bid(p_.com, p_.theta, q.balance, other_dec, f_.rng);
    EXPECT_EQ(code_of([&] { s.verify_and_attest(f_.house, f_.auction_id, p_.bid_id, p_.com, proof); }),
              ErrorCode::kProofRejected);
    EXPECT_EQ(s.transcript().rejection, "ProofRejected");
}

TEST_F(Soundness, TamperedProofFieldsAreRejectedByCheck) {
    auto s = AttestationSession::three_party_handshake(f_.source, f_.oracle, f_.rng);
    const auto q = s.query_balance(p_.theta, f_.rng);
    const auto proof = s.prove_bid(p_.com, p_.theta, q.balance, p_.dec, f_.rng);
    const ProofStatement st{p_.com, *s.transcript().exchange_commitment};
    ASSERT_TRUE(f_.backend->check(st, proof));

    auto bad = proof;
    bad.disclosed_balance = *proof.disclosed_balance + 1;
    EXPECT_FALSE(f_.backend->check(st, bad));
    bad = proof;
    bad.disclosed_dec->r.bytes[0] ^= 1;
    EXPECT_FALSE(f_.backend->check(st, bad));
    bad = proof;
    bad.seal[5] ^= 1;
    EXPECT_FALSE(f_.backend->check(st, bad));
    bad = proof;
    bad.backend = "other";
    EXPECT_FALSE(f_.backend->check(st, bad));
    bad = proof;
    bad.disclosed_balance.reset();
    EXPECT_FALSE(f_.backend->check(st, bad));

    auto st2 = st;
    st2.com_p.digest.bytes[0] ^= 1;
    EXPECT_FALSE(f_.backend->check(st2, proof));
    st2 = st;
    st2.exchange_commitment.bytes[31] ^= 1;
    EXPECT_FALSE(f_.backend->check(st2, proof));
}

TEST_F(Soundness, ProofForAnotherCommitmentIsRejected) {
    auto s = AttestationSession::three_party_handshake(f_.source, f_.oracle, f_.rng);
    const auto q = s.query_balance(p_.theta, f_.rng);
    const auto proof = s.prove_bid(p_.com, p_.theta, q.balance, p_.dec, f_.rng);
    const auto other = prepare(f_, funding_, eth("0.1"));
    EXPECT_EQ(code_of([&] { s.verify_and_attest(f_.house, f_.auction_id, other.bid_id, p_.com, proof); }),
              ErrorCode::kProofRejected);
}

TEST_F(Soundness, UnknownBidIdIsRejected) {
    auto s = AttestationSession::three_party_handshake(f_.source, f_.oracle, f_.rng);
    const auto q = s.query_balance(p_.theta, f_.rng);
    const auto proof = s.prove_bid(p_.com, p_.theta, q.balance, p_.dec, f_.rng);
    EXPECT_EQ(code_of([&] { s.verify_and_attest(f_.house, f_.auction_id, 999, p_.com, proof); }),
              ErrorCode::kUnknownBidId);
}

TEST_F(Soundness, ReplayedCredentialFailsAtTheContract) {
    auto s = AttestationSession::three_party_handshake(f_.source, f_.oracle, f_.rng);
    const auto q = s.query_balance(p_.theta, f_.rng);
    const auto proof = s.prove_bid(p_.com, p_.theta, q.balance, p_.dec, f_.rng);
    const auto cred = s.verify_and_attest(f_.house, f_.auction_id, p_.bid_id, p_.com, proof);
    const auto other = prepare(f_, funding_, eth("0.1"));
    EXPECT_EQ(code_of([&] { f_.house.submit_credential(other.identity, f_.auction_id, other.bid_id, cred); }),
              ErrorCode::kBadSignature);
    f_.house.submit_credential(p_.identity, f_.auction_id, p_.bid_id, cred);
}

TEST_F(Soundness, StepsOutOfOrderAreRefused) {
    auto s = AttestationSession::three_party_handshake(f_.source, f_.oracle, f_.rng);
    EXPECT_EQ(code_of([&] { s.prove_bid(p_.com, p_.theta, p_.price, p_.dec, f_.rng); }), ErrorCode::kProtocolOrder);
    BalanceProof empty;
    EXPECT_EQ(code_of([&] { s.verify_and_attest(f_.house, f_.auction_id, p_.bid_id, p_.com, empty); }),
              ErrorCode::kProtocolOrder);
}

TEST(Transcript, SerializationIsKeyOrderedAndStable) {
    ProtocolFixture f(7);
    const Address funding = f.wallet(eth("1"));
    f.open();
    const auto p = prepare(f, funding, eth("0.2"));
    auto s = AttestationSession::three_party_handshake(f.source, f.oracle, f.rng);
    const auto q = s.query_balance(p.theta, f.rng);
    const auto proof = s.prove_bid(p.com, p.theta, q.balance, p.dec, f.rng);
    s.verify_and_attest(f.house, f.auction_id, p.bid_id, p.com, proof);
    const auto text = s.transcript().serialize();
    EXPECT_EQ(text, s.transcript().serialize());
    EXPECT_LT(text.find("\"auction_id\""), text.find("\"bid_id\""));
    EXPECT_LT(text.find("\"bid_id\""), text.find("\"com_p\""));
    EXPECT_NE(text.find("\"verifier_share_released\":true"), std::string::npos);
    EXPECT_FALSE(leaks(text, p.theta));
}

}  // namespace
}  // namespace sealbid

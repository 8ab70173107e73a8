// Copyright 2026 The sealbid Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "sealbid/crypto.hpp"
#include "sealbid/ledger.hpp"

namespace sealbid {

// Three-party balance attestation in the style of DECO. A balance source
// (the block-explorer stand-in), the prover (bidder) and the verifier (oracle)
// share a MAC key additively. The TLS channel, garbled circuits and the MPC are
// simulated: the message flow, the key split and the check order are kept, and
// the verifier only ever handles ciphertexts and commitments.

/// k_P + k_V = k_MAC over 128-bit big-endian integers.
struct KeyShares {
    Key128 prover;
    Key128 verifier;
};

Key128 add_mod128(const Key128& a, const Key128& b);
Key128 sub_mod128(const Key128& a, const Key128& b);
inline Key128 reconstruct(const KeyShares& shares) { return add_mod128(shares.prover, shares.verifier); }

/// Prover-to-source query, encrypted under the prover/source channel key.
struct QueryEnvelope {
    Key128 iv;
    Bytes ciphertext;
    Bytes32 tag;  // channel MAC, produced jointly by prover and verifier
};

/// Source-to-prover response; `tag` = HMAC(k_MAC, address || balance word).
struct SourceReply {
    Key128 iv;
    Bytes ciphertext;
    Bytes32 tag;
};

/// Balance lookup service answering from the live ledger at query time.
/// Unknown addresses answer 0 with a valid tag.
class BalanceSource {
  public:
    explicit BalanceSource(const Ledger& ledger) : ledger_{&ledger} {}

    /// Server half of the handshake. Returns the session id.
    std::uint64_t accept_handshake(const Key128& mac_key, const Key128& channel_key);
    SourceReply answer(std::uint64_t session, const QueryEnvelope& query, RandomSource& rng) const;

    const Key128& mac_key(std::uint64_t session) const;

    /// Fault injection: flip a bit in every subsequent response tag.
    void set_corrupt_tags(bool on) noexcept { corrupt_tags_ = on; }

  private:
    struct Keys {
        Key128 mac;
        Key128 channel;
    };
    const Keys& keys(std::uint64_t session) const;

    const Ledger* ledger_;
    std::map<std::uint64_t, Keys> sessions_;
    std::uint64_t next_session_ = 1;
    bool corrupt_tags_ = false;
};

// ---------------------------------------------------------------------------
// Proof backends
// ---------------------------------------------------------------------------

/// Public inputs: the registered commitment and the prover's commitment to
/// the query/response exchange, both already held by the verifier.
struct ProofStatement {
    Commitment com_p;
    Bytes32 exchange_commitment;

    Bytes encode() const;
};

struct ProofWitness {
    Address onetime_address;
    Wei balance;
    Decommitment dec;
    Bytes query_ciphertext;
    SourceReply reply;
    Bytes32 exchange_nonce;
    Key128 channel_key;
    Key128 mac_key;
};

/// Proof object as sent to the verifier. Fields a backend discloses are set;
/// a zero-knowledge backend leaves `disclosed_*` empty.
struct BalanceProof {
    std::string backend;
    std::optional<Wei> disclosed_balance;
    std::optional<Decommitment> disclosed_dec;
    Bytes seal;
};

class ProofBackend {
  public:
    virtual ~ProofBackend() = default;
    virtual std::string_view name() const noexcept = 0;
    virtual BalanceProof prove(const ProofStatement& statement, const ProofWitness& witness) const = 0;
    virtual bool check(const ProofStatement& statement, const BalanceProof& proof) const = 0;
};

/// Sound, not zero-knowledge. `prove` evaluates the whole relation on the
/// witness (exchange commitment opens, response decrypts to address||balance,
/// the source tag verifies, and com_p = Commit(address, balance; dec)) and
/// seals the verdict with a setup key held only by the backend; `check`
/// verifies the seal against the statement and the disclosed balance and dec.
class ReferenceProofBackend final : public ProofBackend {
  public:
    explicit ReferenceProofBackend(RandomSource& setup_rng);

    std::string_view name() const noexcept override { return "reference"; }
    BalanceProof prove(const ProofStatement& statement, const ProofWitness& witness) const override;
    bool check(const ProofStatement& statement, const BalanceProof& proof) const override;

    static bool relation_holds(const ProofStatement& statement, const ProofWitness& witness);

  private:
    OracleKeypair setup_;
};

// ---------------------------------------------------------------------------
// Oracle and session
// ---------------------------------------------------------------------------

/// Signed over auction_id(8, BE) || bid_id(8, BE) || com_p(32).
struct OracleCredential {
    std::uint64_t auction_id = 0;
    std::uint64_t bid_id = 0;
    Signature signature;
};

Bytes credential_message(std::uint64_t auction_id, std::uint64_t bid_id, const Commitment& com_p);

/// Read-only view of commitments registered on-chain.
class CommitmentRegistry {
  public:
    virtual ~CommitmentRegistry() = default;
    virtual std::optional<Commitment> registered_commitment(std::uint64_t auction_id,
                                                            std::uint64_t bid_id) const = 0;
};

class Oracle {
  public:
    Oracle(OracleKeypair keys, std::shared_ptr<const ProofBackend> backend);

    const VerifyKey& vk() const noexcept { return keys_.vk; }
    const ProofBackend& backend() const noexcept { return *backend_; }
    OracleCredential issue(std::uint64_t auction_id, std::uint64_t bid_id, const Commitment& com_p) const;

  private:
    OracleKeypair keys_;
    std::shared_ptr<const ProofBackend> backend_;
};

struct QueryResult {
    Wei balance;
    Bytes32 tag;
};

/// Everything the verifier stores. Never contains the one-time address.
struct AttestationTranscript {
    std::uint64_t session_id = 0;
    Key128 verifier_share;
    std::optional<QueryEnvelope> query;
    std::optional<Bytes32> exchange_commitment;
    bool verifier_share_released = false;
    std::optional<Commitment> com_p;
    std::optional<BalanceProof> proof;
    std::optional<std::uint64_t> auction_id;
    std::optional<std::uint64_t> bid_id;
    std::optional<OracleCredential> credential;
    std::optional<std::string> rejection;

    /// Canonical key-ordered JSON.
    std::string serialize() const;
};

/// One attestation run. Steps must be called in order:
/// handshake -> query_balance -> prove_bid -> verify_and_attest.
class AttestationSession {
  public:
    static AttestationSession three_party_handshake(BalanceSource& source, const Oracle& oracle,
                                                    RandomSource& rng);

    QueryResult query_balance(const Address& onetime_address, RandomSource& rng);

    /// Commits to the exchange, receives k_V, checks the source MAC on
    /// (address, balance) and asks the backend for a proof.
    /// Throws kMacCheckFailed if the tag does not verify.
    BalanceProof prove_bid(const Commitment& com_p, const Address& onetime_address, const Wei& balance,
                           const Decommitment& dec, RandomSource& rng);

    /// Throws kUnknownBidId or kProofRejected.
    OracleCredential verify_and_attest(const CommitmentRegistry& registry, std::uint64_t auction_id,
                                       std::uint64_t bid_id, const Commitment& com_p, const BalanceProof& proof);

    const AttestationTranscript& transcript() const noexcept { return verifier_.transcript; }
    std::uint64_t session_id() const noexcept { return verifier_.transcript.session_id; }
    const Key128& prover_share() const noexcept { return prover_.share; }
    const Key128& verifier_share() const noexcept { return verifier_.share; }

  private:
    AttestationSession(const BalanceSource& source, const Oracle& oracle) : source_{&source}, oracle_{&oracle} {}

    struct ProverState {
        Key128 share;
        Key128 channel_key;
        std::optional<QueryEnvelope> query;
        std::optional<SourceReply> reply;
        std::optional<Key128> received_verifier_share;
    };
    struct VerifierState {
        Key128 share;
        AttestationTranscript transcript;
    };

    const BalanceSource* source_;
    const Oracle* oracle_;
    ProverState prover_;
    VerifierState verifier_;
};

}  // namespace sealbid

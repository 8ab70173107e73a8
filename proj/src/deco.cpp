// Copyright 2026 The sealbid Authors
// SPDX-License-Identifier: Apache-2.0

#include "sealbid/deco.hpp"

#include <algorithm>

#include "json.hpp"

#include "sealbid/error.hpp"

namespace sealbid {

namespace {

constexpr std::string_view kQueryPrefix = "GET /api?module=account&action=balance&address=";
constexpr std::string_view kSealDomain = "sealbid.reference-proof.v1";

Bytes concat(std::initializer_list<ByteView> parts) {
    Bytes out;
    for (auto p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

ByteView as_bytes(std::string_view s) { return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()}; }

// Stand-in for the 2PC that evaluates the channel MAC: inputs are the two
// shares, output is the tag. Neither caller learns the other's share.
Bytes32 joint_channel_mac(const Key128& prover_share, const Key128& verifier_share, ByteView data) {
    const Key128 key = add_mod128(prover_share, verifier_share);
    return hmac_sha256(key.view(), data);
}

Bytes response_plaintext(const Address& addr, const Wei& balance) {
    auto word = to_word(balance);
    return concat({addr.view(), word.view()});
}

Bytes32 exchange_digest(ByteView query_ciphertext, const SourceReply& reply, const Bytes32& nonce) {
    return sha256(concat({query_ciphertext, reply.iv.view(), reply.ciphertext, reply.tag.view(), nonce.view()}));
}

Bytes seal_message(const ProofStatement& statement, const Wei& balance, const Decommitment& dec, bool verdict) {
    auto word = to_word(balance);
    Bytes msg = concat({as_bytes(kSealDomain), statement.encode(), word.view(), dec.r.view()});
    msg.push_back(verdict ? 1 : 0);
    return msg;
}

}  // namespace

Key128 add_mod128(const Key128& a, const Key128& b) {
    Key128 out;
    unsigned carry = 0;
    for (int i = 15; i >= 0; --i) {
        auto idx = static_cast<std::size_t>(i);
        unsigned sum = unsigned{a.bytes[idx]} + unsigned{b.bytes[idx]} + carry;
        out.bytes[idx] = static_cast<std::uint8_t>(sum);
        carry = sum >> 8;
    }
    return out;
}

Key128 sub_mod128(const Key128& a, const Key128& b) {
    Key128 out;
    int borrow = 0;
    for (int i = 15; i >= 0; --i) {
        auto idx = static_cast<std::size_t>(i);
        int diff = int{a.bytes[idx]} - int{b.bytes[idx]} - borrow;
        borrow = diff < 0 ? 1 : 0;
        out.bytes[idx] = static_cast<std::uint8_t>(diff + (borrow << 8));
    }
    return out;
}

// ---------------------------------------------------------------------------
// BalanceSource

std::uint64_t BalanceSource::accept_handshake(const Key128& mac_key, const Key128& channel_key) {
    auto id = next_session_++;
    sessions_.emplace(id, Keys{mac_key, channel_key});
    return id;
}

const BalanceSource::Keys& BalanceSource::keys(std::uint64_t session) const {
    auto it = sessions_.find(session);
    if (it == sessions_.end()) throw Error(ErrorCode::kUnknownSession, "no session " + std::to_string(session));
    return it->second;
}

const Key128& BalanceSource::mac_key(std::uint64_t session) const { return keys(session).mac; }

SourceReply BalanceSource::answer(std::uint64_t session, const QueryEnvelope& query, RandomSource& rng) const {
    const auto& k = keys(session);
    if (hmac_sha256(k.mac.view(), concat({query.iv.view(), query.ciphertext})) != query.tag) {
        throw Error(ErrorCode::kMacCheckFailed, "source rejected the query MAC");
    }
    Bytes plain = aes128_ctr(k.channel, query.iv, query.ciphertext);
    std::string_view text{reinterpret_cast<const char*>(plain.data()), plain.size()};
    if (!text.starts_with(kQueryPrefix)) throw Error(ErrorCode::kParse, "source: malformed query");
    const Address addr = Address::from_hex(text.substr(kQueryPrefix.size()));

    Bytes body = response_plaintext(addr, ledger_->balance(addr));
    SourceReply reply;
    reply.iv = rng.bytes<16>();
    reply.tag = hmac_sha256(k.mac.view(), body);
    if (corrupt_tags_) reply.tag.bytes[0] ^= 0x01;
    reply.ciphertext = aes128_ctr(k.channel, reply.iv, body);
    return reply;
}

// ---------------------------------------------------------------------------
// Proof backends

Bytes ProofStatement::encode() const { return concat({com_p.digest.view(), exchange_commitment.view()}); }

ReferenceProofBackend::ReferenceProofBackend(RandomSource& setup_rng) : setup_{OracleKeypair::generate(setup_rng)} {}

bool ReferenceProofBackend::relation_holds(const ProofStatement& statement, const ProofWitness& w) {
    if (exchange_digest(w.query_ciphertext, w.reply, w.exchange_nonce) != statement.exchange_commitment) return false;
    const Bytes expected = response_plaintext(w.onetime_address, w.balance);
    if (aes128_ctr(w.channel_key, w.reply.iv, w.reply.ciphertext) != expected) return false;
    if (hmac_sha256(w.mac_key.view(), expected) != w.reply.tag) return false;
    return com_open(statement.com_p, w.dec, BidMessage{w.onetime_address, w.balance});
}

BalanceProof ReferenceProofBackend::prove(const ProofStatement& statement, const ProofWitness& witness) const {
    const bool verdict = relation_holds(statement, witness);
    auto sig = sign(setup_.sigk, seal_message(statement, witness.balance, witness.dec, verdict));
    return BalanceProof{std::string(name()), witness.balance, witness.dec, Bytes(sig.bytes.begin(), sig.bytes.end())};
}

bool ReferenceProofBackend::check(const ProofStatement& statement, const BalanceProof& proof) const {
    if (proof.backend != name() || !proof.disclosed_balance || !proof.disclosed_dec) return false;
    return verify(setup_.vk, seal_message(statement, *proof.disclosed_balance, *proof.disclosed_dec, true), proof.seal);
}

// ---------------------------------------------------------------------------
// Oracle

Bytes credential_message(std::uint64_t auction_id, std::uint64_t bid_id, const Commitment& com_p) {
    Bytes msg;
    put_u64_be(msg, auction_id);
    put_u64_be(msg, bid_id);
    msg.insert(msg.end(), com_p.digest.begin(), com_p.digest.end());
    return msg;
}

Oracle::Oracle(OracleKeypair keys, std::shared_ptr<const ProofBackend> backend)
    : keys_{keys}, backend_{std::move(backend)} {
    if (!backend_) throw Error(ErrorCode::kConfig, "oracle requires a proof backend");
}

OracleCredential Oracle::issue(std::uint64_t auction_id, std::uint64_t bid_id, const Commitment& com_p) const {
    return OracleCredential{auction_id, bid_id, sign(keys_.sigk, credential_message(auction_id, bid_id, com_p))};
}

// ---------------------------------------------------------------------------
// Session

AttestationSession AttestationSession::three_party_handshake(BalanceSource& source, const Oracle& oracle,
                                                             RandomSource& rng) {
    AttestationSession s{source, oracle};
    const Key128 mac_key = rng.bytes<16>();
    s.prover_.share = rng.bytes<16>();
    s.verifier_.share = sub_mod128(mac_key, s.prover_.share);
    s.prover_.channel_key = rng.bytes<16>();
    s.verifier_.transcript.session_id = source.accept_handshake(mac_key, s.prover_.channel_key);
    s.verifier_.transcript.verifier_share = s.verifier_.share;
    return s;
}

QueryResult AttestationSession::query_balance(const Address& onetime_address, RandomSource& rng) {
    if (prover_.query) throw Error(ErrorCode::kProtocolOrder, "balance already queried in this session");

    std::string request(kQueryPrefix);
    request += onetime_address.hex();
    QueryEnvelope env;
    env.iv = rng.bytes<16>();
    env.ciphertext = aes128_ctr(prover_.channel_key, env.iv, as_bytes(request));
    env.tag = joint_channel_mac(prover_.share, verifier_.share, concat({env.iv.view(), env.ciphertext}));
    verifier_.transcript.query = env;
    prover_.query = env;

    SourceReply reply = source_->answer(session_id(), env, rng);
    prover_.reply = reply;

    Bytes body = aes128_ctr(prover_.channel_key, reply.iv, reply.ciphertext);
    if (body.size() != 52) throw Error(ErrorCode::kParse, "malformed source response");
    Bytes32 word;
    std::copy(body.begin() + 20, body.end(), word.bytes.begin());
    return QueryResult{from_word(word), reply.tag};
}

BalanceProof AttestationSession::prove_bid(const Commitment& com_p, const Address& onetime_address,
                                           const Wei& balance, const Decommitment& dec, RandomSource& rng) {
    if (!prover_.reply) throw Error(ErrorCode::kProtocolOrder, "prove_bid before query_balance");
    if (verifier_.transcript.exchange_commitment) throw Error(ErrorCode::kProtocolOrder, "prove_bid called twice");

    // Prover commits to the exchange before learning k_V.
    const Bytes32 nonce = rng.bytes32();
    const Bytes32 exchange = exchange_digest(prover_.query->ciphertext, *prover_.reply, nonce);
    verifier_.transcript.exchange_commitment = exchange;

    verifier_.transcript.verifier_share_released = true;
    prover_.received_verifier_share = verifier_.share;

    const Key128 mac_key = add_mod128(prover_.share, *prover_.received_verifier_share);
    if (hmac_sha256(mac_key.view(), response_plaintext(onetime_address, balance)) != prover_.reply->tag) {
        throw Error(ErrorCode::kMacCheckFailed, "source MAC does not verify for the claimed balance");
    }

    ProofStatement statement{com_p, exchange};
    ProofWitness witness{onetime_address, balance,           dec, prover_.query->ciphertext, *prover_.reply,
                         nonce,           prover_.channel_key, mac_key};
    BalanceProof proof = oracle_->backend().prove(statement, witness);
    verifier_.transcript.com_p = com_p;
    verifier_.transcript.proof = proof;
    return proof;
}

OracleCredential AttestationSession::verify_and_attest(const CommitmentRegistry& registry, std::uint64_t auction_id,
                                                       std::uint64_t bid_id, const Commitment& com_p,
                                                       const BalanceProof& proof) {
    auto& t = verifier_.transcript;
    if (!t.exchange_commitment) throw Error(ErrorCode::kProtocolOrder, "verify_and_attest before prove_bid");
    t.auction_id = auction_id;
    t.bid_id = bid_id;

    auto registered = registry.registered_commitment(auction_id, bid_id);
    if (!registered) {
        t.rejection = "UnknownBidId";
        throw Error(ErrorCode::kUnknownBidId,
                    "no commitment registered for auction " + std::to_string(auction_id) + " bid " +
                        std::to_string(bid_id));
    }
    if (*registered != com_p || !oracle_->backend().check(ProofStatement{com_p, *t.exchange_commitment}, proof)) {
        t.rejection = "ProofRejected";
        throw Error(ErrorCode::kProofRejected, "balance proof rejected for bid " + std::to_string(bid_id));
    }
    t.credential = oracle_->issue(auction_id, bid_id, com_p);
    return *t.credential;
}

std::string AttestationTranscript::serialize() const {
    using nlohmann::json;
    json j;
    j["handshake"] = {{"session_id", session_id}, {"verifier_share", verifier_share.hex()}};
    j["query"] = query ? json{{"iv", query->iv.hex()},
                              {"ciphertext", to_hex(query->ciphertext)},
                              {"tag", query->tag.hex()}}
                       : json(nullptr);
    j["exchange_commitment"] = exchange_commitment ? json(exchange_commitment->hex()) : json(nullptr);
    j["verifier_share_released"] = verifier_share_released;
    j["com_p"] = com_p ? json(com_p->hex()) : json(nullptr);
    if (proof) {
        j["proof"] = {{"backend", proof->backend},
                      {"disclosed_balance_wei",
                       proof->disclosed_balance ? json(proof->disclosed_balance->str()) : json(nullptr)},
                      {"disclosed_dec", proof->disclosed_dec ? json(proof->disclosed_dec->hex()) : json(nullptr)},
                      {"seal", to_hex(proof->seal)}};
    } else {
        j["proof"] = nullptr;
    }
    j["auction_id"] = auction_id ? json(*auction_id) : json(nullptr);
    j["bid_id"] = bid_id ? json(*bid_id) : json(nullptr);
    j["credential"] = credential ? json{{"auction_id", credential->auction_id},
                                        {"bid_id", credential->bid_id},
                                        {"signature", credential->signature.hex()}}
                                 : json(nullptr);
    j["rejection"] = rejection ? json(*rejection) : json(nullptr);
    return j.dump();
}

}  // namespace sealbid

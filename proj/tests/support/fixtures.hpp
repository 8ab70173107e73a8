// Copyright 2026 The sealbid Authors
// SPDX-License-Identifier: Apache-2.0

// Shared test fixtures, generators and brute-force oracles.

#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "sealbid/anonymity.hpp"
#include "sealbid/auction.hpp"
#include "sealbid/crypto.hpp"
#include "sealbid/deco.hpp"
#include "sealbid/keccak.hpp"
#include "sealbid/ledger.hpp"
#include "sealbid/scenario.hpp"

namespace sealbid::testing {

struct Create2Vector {
    const char* deployer;
    const char* salt;
    const char* code_hash;
    const char* address;
};

inline constexpr Create2Vector kCreate2Vectors[] = {
#include "eip1014_vectors.inc"
};

inline Wei eth(const char* text) { return parse_eth(text); }

// ---------------------------------------------------------------------------
// Protocol fixture: a ledger with an auction house, oracle and balance source.

struct PlacedBid {
    Address identity;
    Address funding;
    Address onetime;
    Salt salt;
    Decommitment dec;
    Commitment com;
    Wei price;
    std::uint64_t bid_id = 0;
};

class ProtocolFixture {
  public:
    explicit ProtocolFixture(std::uint64_t seed, AuctionVariant variant = AuctionVariant::kProposed,
                             BlockWindow bidding = {10, 20}, BlockWindow revealing = {21, 30})
        : rng(seed),
          contract(rng.address()),
          keys(OracleKeypair::generate(rng)),
          backend(std::make_shared<ReferenceProofBackend>(rng)),
          oracle(keys, backend),
          house(ledger, contract, fundbinding_code_hash(), oracle.vk()),
          source(ledger),
          seller(rng.address()),
          bidding_(bidding),
          revealing_(revealing),
          variant_(variant) {}

    /// Adds a funded key holder during setup.
    Address wallet(const Wei& amount) {
        Address a = rng.address();
        ledger.fund_genesis(a, amount);
        return a;
    }

    Address keyed() {
        Address a = rng.address();
        ledger.open_account(a);
        return a;
    }

    /// Closes setup, starts the auction and moves into bidding.
    void open() {
        ledger.close_setup();
        auction_id = house.start_auction(seller, AuctionTerms{bidding_, revealing_, variant_, "item-1"});
        ledger.advance_to(bidding_.start_block);
    }

    /// Full honest bid: fund the one-time address, commit, attest, submit.
    PlacedBid place(const Address& funding, const Wei& price) {
        PlacedBid b;
        b.identity = keyed();
        b.funding = funding;
        b.price = price;
        std::tie(b.onetime, b.salt) = house.make_onetime_address(b.identity, auction_id, rng);
        std::tie(b.com, b.dec) = commit(BidMessage{b.onetime, price}, rng);
        ledger.transfer(funding, b.onetime, price);
        b.bid_id = house.submit_commitment(b.identity, auction_id, b.com);
        auto session = AttestationSession::three_party_handshake(source, oracle, rng);
        const auto q = session.query_balance(b.onetime, rng);
        const auto proof = session.prove_bid(b.com, b.onetime, q.balance, b.dec, rng);
        house.submit_credential(b.identity, auction_id, b.bid_id,
                                session.verify_and_attest(house, auction_id, b.bid_id, b.com, proof));
        return b;
    }

    RevealOutcome reveal(const PlacedBid& b) {
        return house.reveal(b.identity, auction_id, b.bid_id, b.price, b.salt, b.dec);
    }

    void to_revealing() { ledger.advance_to(revealing_.start_block); }
    void to_closed() { ledger.advance_to(revealing_.end_block + 1); }

    SeededRandom rng;
    Ledger ledger;
    Address contract;
    OracleKeypair keys;
    std::shared_ptr<ReferenceProofBackend> backend;
    Oracle oracle;
    AuctionHouse house;
    BalanceSource source;
    Address seller;
    std::uint64_t auction_id = 0;

  private:
    BlockWindow bidding_;
    BlockWindow revealing_;
    AuctionVariant variant_;
};

// ---------------------------------------------------------------------------
// Synthetic traces and the brute-force anonymity oracle.

/// Log-uniform value between 0.001 and ~3000 ETH so every default bucket is hit.
inline Wei spread_value(RandomSource& rng) {
    static const Wei kMilli = kWeiPerEth / 1000;
    const std::uint64_t decade = rng.below(7);  // 1e-3 .. 1e3 ETH
    Wei scale = kMilli;
    for (std::uint64_t i = 0; i < decade; ++i) scale *= 10;
    return scale + rng.uniform_wei(0, scale * 3);
}

struct TraceShape {
    std::size_t transfers = 1000;
    std::size_t pool = 100;
    std::uint64_t max_block = 1000;
    double other_kind_ratio = 0.05;  // deploy / contract-call rows mixed in
};

inline std::vector<TraceRecord> random_trace(RandomSource& rng, const TraceShape& shape) {
    std::vector<Address> pool(std::max<std::size_t>(shape.pool, 2));
    for (auto& a : pool) a = rng.address();
    std::vector<std::uint64_t> blocks(shape.transfers);
    for (auto& b : blocks) b = rng.below(shape.max_block + 1);
    std::sort(blocks.begin(), blocks.end());
    std::vector<TraceRecord> out;
    out.reserve(shape.transfers);
    for (auto block : blocks) {
        TraceRecord r;
        r.block = block;
        r.timestamp = 1'600'000'000 + block * 13;
        r.from = pool[rng.below(pool.size())];
        r.to = pool[rng.below(pool.size())];
        r.value = spread_value(rng);
        r.kind = TxKind::kTransfer;
        if (rng.below(1'000'000) < static_cast<std::uint64_t>(shape.other_kind_ratio * 1e6)) {
            r.kind = rng.below(2) == 0 ? TxKind::kDeploy : TxKind::kContractCall;
        }
        out.push_back(r);
    }
    return out;
}

/// Direct transcription of the two conditions, quadratic in the trace size.
inline std::vector<Candidate> naive_candidates(const std::vector<TraceRecord>& trace, const Window& w) {
    std::set<Address> addresses;
    for (const auto& r : trace) {
        if (r.kind == TxKind::kTransfer) addresses.insert(r.to);
    }
    std::vector<Candidate> out;
    for (const auto& a : addresses) {
        bool sends = false;
        std::optional<std::uint64_t> first;
        Wei credit = 0;
        for (const auto& r : trace) {
            if (r.kind != TxKind::kTransfer) continue;
            const bool in = r.block >= w.start.block && r.block <= w.end.block;
            if (in && r.from == a) sends = true;
            if (r.to == a) {
                if (!first) first = r.block;
                if (in) credit += r.value;
            }
        }
        if (!sends && first && *first >= w.start.block && *first <= w.end.block) out.push_back(Candidate{a, credit});
    }
    return out;  // std::set iteration is already address-ordered
}

inline Histogram naive_histogram(const std::vector<Candidate>& candidates, const BucketSpec& spec) {
    Histogram h;
    h.counts.assign(spec.size(), 0);
    for (const auto& c : candidates) {
        bool placed = false;
        for (std::size_t i = 0; i < spec.size(); ++i) {
            const auto& b = spec.buckets()[i];
            if (c.end_balance >= b.lo && (!b.hi || c.end_balance < *b.hi)) {
                ++h.counts[i];
                placed = true;
                break;
            }
        }
        if (!placed) ++h.out_of_range;
    }
    return h;
}

// ---------------------------------------------------------------------------
// Random scenarios.

/// 2..max_bidders bidders with distinct prices, some not revealing, some
/// topping up, plus light decoy traffic.
inline Scenario random_scenario(std::uint64_t seed, std::size_t max_bidders = 20) {
    SeededRandom rng(seed ^ 0x5eedULL);
    Scenario s;
    s.seed = seed;
    s.bidding = BlockWindow{5 + rng.below(10), 0};
    s.bidding.end_block = s.bidding.start_block + 5 + rng.below(30);
    s.revealing.start_block = s.bidding.end_block + 1 + rng.below(5);
    s.revealing.end_block = s.revealing.start_block + 2 + rng.below(20);
    const std::size_t n = 2 + rng.below(max_bidders - 1);
    std::set<Wei> used;
    for (std::size_t i = 0; i < n; ++i) {
        BidderSpec b;
        do {
            b.price = rng.uniform_wei(kWeiPerEth / 100, kWeiPerEth * 5);
        } while (!used.insert(b.price).second);
        if (rng.below(4) == 0) b.top_up = rng.uniform_wei(1, kWeiPerEth);
        b.reveal = rng.below(5) != 0;
        b.deposit = b.price;
        b.wallet = b.price + b.top_up + rng.uniform_wei(0, kWeiPerEth);
        s.bidders.push_back(b);
    }
    s.decoys.count = rng.below(40);
    s.decoys.prewindow_count = rng.below(20);
    s.decoys.min_value = kWeiPerEth / 100;
    s.decoys.max_value = kWeiPerEth * 3;
    return s;
}

}  // namespace sealbid::testing

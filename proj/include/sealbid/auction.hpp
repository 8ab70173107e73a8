// Copyright 2026 The sealbid Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "sealbid/crypto.hpp"
#include "sealbid/deco.hpp"
#include "sealbid/ledger.hpp"

namespace sealbid {

/// Inclusive block range.
struct BlockWindow {
    std::uint64_t start_block = 0;
    std::uint64_t end_block = 0;

    bool contains(std::uint64_t block) const noexcept { return block >= start_block && block <= end_block; }
    friend bool operator==(const BlockWindow&, const BlockWindow&) = default;
};

enum class AuctionVariant { kProposed, kSimpleDeposit, kOpenBid };

/// Derived from the clock; boundary blocks belong to the earlier phase.
enum class Phase { kScheduled, kBidding, kAwaitingReveal, kRevealing, kClosed, kFinalized };

std::string_view to_string(AuctionVariant v) noexcept;
std::string_view to_string(Phase p) noexcept;

struct AuctionTerms {
    BlockWindow bidding;
    BlockWindow revealing;
    AuctionVariant variant = AuctionVariant::kProposed;
    std::string item_token;  // opaque; handed to the winner at finalization
};

struct AuctionConfig {
    std::uint64_t auction_id = 0;
    Address seller;
    BlockWindow bidding;
    BlockWindow revealing;
    Address contract_address;
    Bytes32 fundbinding_bytecode_hash;
    AuctionVariant variant = AuctionVariant::kProposed;
    std::string item_token;
};

/// CREATE2 salt preimage: auction_id(8, BE) || bidder(20) || random(32).
struct Salt {
    std::uint64_t auction_id = 0;
    Address bidder_reveal_address;
    Bytes32 random;

    Bytes serialize() const;
    Bytes32 salt32() const;
};

enum class BidStatus { kCommitted, kAttested, kRevealed, kVoid };

struct RevealedBid {
    Wei price;
    Address onetime_address;
    Wei withdrawn;
    Address refund_to;
};

struct BidRecord {
    std::uint64_t bid_id = 0;
    Address submitter;
    Commitment com_p;
    BidStatus status = BidStatus::kCommitted;
    std::optional<OracleCredential> credential;
    std::optional<RevealedBid> revealed;
    Wei deposit = 0;  // simple-deposit baseline only

    bool attested() const noexcept { return credential.has_value(); }
};

struct HighestBid {
    std::uint64_t bid_id = 0;
    Wei price;
    Address refund_to;
};

struct AuctionState {
    AuctionConfig config;
    bool finalized = false;
    std::map<std::uint64_t, BidRecord> bids;
    std::optional<HighestBid> highest;
    Wei escrow = 0;       // held for `highest` only
    Wei deposits = 0;     // simple-deposit funds not yet settled
    std::uint64_t next_bid_id = 1;
};

enum class RevealStatus {
    kNewHighest,
    kNotHighest,
    kOpenFailed,         // contract deployed and drained; funds refunded, bid void
    kBalanceBelowPrice,  // B < committed price; funds refunded, bid void
};

struct RevealOutcome {
    RevealStatus status = RevealStatus::kNotHighest;
    Address onetime_address;
    Wei withdrawn = 0;
    Wei effective_price = 0;
    Wei refunded = 0;  // to the revealing address, this call
    std::optional<std::pair<Address, Wei>> displaced_refund;
};

struct AuctionResult {
    std::uint64_t auction_id = 0;
    bool no_bids = false;
    std::optional<std::uint64_t> winner_bid_id;
    std::optional<Address> winner;
    Wei price = 0;
    Wei seller_payout = 0;
    std::optional<std::string> item_token;
};

std::string_view to_string(RevealStatus s) noexcept;

/// The auction contract. Lives at `contract_address` on the ledger, is the only
/// authorized deployer of fund-binding contracts and owns every one it deploys.
class AuctionHouse final : public CommitmentRegistry {
  public:
    /// Installs the contract on the ledger, which must still be in setup.
    AuctionHouse(Ledger& ledger, const Address& contract_address, const Bytes32& fundbinding_bytecode_hash,
                 const VerifyKey& oracle_vk);

    std::uint64_t start_auction(const Address& seller, const AuctionTerms& terms);

    /// θ_p = CREATE2(contract, keccak256(salt), fund-binding code hash).
    std::pair<Address, Salt> make_onetime_address(const Address& bidder, std::uint64_t auction_id,
                                                  RandomSource& rng) const;
    Address onetime_address_for(const Salt& salt) const;

    std::uint64_t submit_commitment(const Address& bidder, std::uint64_t auction_id, const Commitment& com_p);
    void submit_credential(const Address& bidder, std::uint64_t auction_id, std::uint64_t bid_id,
                           const OracleCredential& credential);
    RevealOutcome reveal(const Address& bidder, std::uint64_t auction_id, std::uint64_t bid_id, const Wei& price,
                         const Salt& salt, const Decommitment& dec);
    AuctionResult finalize(const Address& seller, std::uint64_t auction_id);

    // Baselines -------------------------------------------------------------
    /// Commit with the full deposit paid to the contract. The commitment is
    /// over BidMessage(bidder, price).
    std::uint64_t baseline_simple_deposit(const Address& bidder, std::uint64_t auction_id, const Commitment& com_p,
                                          const Wei& deposit);
    RevealOutcome baseline_deposit_reveal(const Address& bidder, std::uint64_t auction_id, std::uint64_t bid_id,
                                          const Wei& price, const Decommitment& dec);
    std::uint64_t baseline_open_bid(const Address& bidder, std::uint64_t auction_id, const Wei& price);

    // Queries ---------------------------------------------------------------
    Phase phase(std::uint64_t auction_id) const;
    const AuctionState& state(std::uint64_t auction_id) const;
    const Address& contract_address() const noexcept { return contract_; }
    const Bytes32& fundbinding_bytecode_hash() const noexcept { return code_hash_; }
    std::optional<Commitment> registered_commitment(std::uint64_t auction_id,
                                                    std::uint64_t bid_id) const override;

  private:
    AuctionState& mutable_state(std::uint64_t auction_id);
    void require_phase(const AuctionState& st, Phase expected) const;
    void require_variant(const AuctionState& st, AuctionVariant expected) const;
    BidRecord& bid(AuctionState& st, std::uint64_t bid_id);
    void pay(const Address& to, const Wei& amount);
    /// Applies the highest-bid rule to `amount_held` funds for a valid bid.
    void settle(AuctionState& st, BidRecord& rec, const Wei& amount_held, RevealOutcome& out);

    Ledger* ledger_;
    Address contract_;
    Bytes32 code_hash_;
    VerifyKey oracle_vk_;
    std::map<std::uint64_t, AuctionState> auctions_;
    std::uint64_t next_auction_id_ = 1;
};

}  // namespace sealbid

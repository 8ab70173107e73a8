// Copyright 2026 The sealbid Authors
// SPDX-License-Identifier: Apache-2.0

#include "sealbid/auction.hpp"

#include "sealbid/error.hpp"
#include "sealbid/keccak.hpp"

namespace sealbid {

std::string_view to_string(AuctionVariant v) noexcept {
    switch (v) {
        case AuctionVariant::kProposed: return "proposed";
        case AuctionVariant::kSimpleDeposit: return "simple_deposit";
        case AuctionVariant::kOpenBid: return "open_bid";
    }
    return "proposed";
}

std::string_view to_string(Phase p) noexcept {
    switch (p) {
        case Phase::kScheduled: return "Scheduled";
        case Phase::kBidding: return "Bidding";
        case Phase::kAwaitingReveal: return "AwaitingReveal";
        case Phase::kRevealing: return "Revealing";
        case Phase::kClosed: return "Closed";
        case Phase::kFinalized: return "Finalized";
    }
    return "Scheduled";
}

std::string_view to_string(RevealStatus s) noexcept {
    switch (s) {
        case RevealStatus::kNewHighest: return "new_highest";
        case RevealStatus::kNotHighest: return "not_highest";
        case RevealStatus::kOpenFailed: return "open_failed";
        case RevealStatus::kBalanceBelowPrice: return "balance_below_price";
    }
    return "not_highest";
}

Bytes Salt::serialize() const {
    Bytes out;
    out.reserve(60);
    put_u64_be(out, auction_id);
    out.insert(out.end(), bidder_reveal_address.begin(), bidder_reveal_address.end());
    out.insert(out.end(), random.begin(), random.end());
    return out;
}

Bytes32 Salt::salt32() const { return reduce_salt(serialize()); }

AuctionHouse::AuctionHouse(Ledger& ledger, const Address& contract_address, const Bytes32& fundbinding_bytecode_hash,
                           const VerifyKey& oracle_vk)
    : ledger_{&ledger}, contract_{contract_address}, code_hash_{fundbinding_bytecode_hash}, oracle_vk_{oracle_vk} {
    ledger_->install_contract(contract_, keccak256(ByteView{}));
}

std::uint64_t AuctionHouse::start_auction(const Address& seller, const AuctionTerms& terms) {
    const auto& b = terms.bidding;
    const auto& r = terms.revealing;
    if (b.start_block > b.end_block || r.start_block > r.end_block || b.end_block >= r.start_block) {
        throw Error(ErrorCode::kInvalidWindows, "bidding window must be non-empty and precede a non-empty revealing window");
    }
    if (ledger_->clock().block >= b.start_block) {
        throw Error(ErrorCode::kInvalidWindows, "bidding must start after the current block " +
                                                    std::to_string(ledger_->clock().block));
    }
    const auto id = next_auction_id_++;
    AuctionState st;
    st.config = AuctionConfig{id, seller, b, r, contract_, code_hash_, terms.variant, terms.item_token};
    auctions_.emplace(id, std::move(st));
    return id;
}

std::pair<Address, Salt> AuctionHouse::make_onetime_address(const Address& bidder, std::uint64_t auction_id,
                                                            RandomSource& rng) const {
    Salt salt{auction_id, bidder, rng.bytes32()};
    return {onetime_address_for(salt), salt};
}

Address AuctionHouse::onetime_address_for(const Salt& salt) const {
    return derive_onetime_address(contract_, salt.salt32(), code_hash_);
}

Phase AuctionHouse::phase(std::uint64_t auction_id) const {
    const auto& st = state(auction_id);
    if (st.finalized) return Phase::kFinalized;
    const auto block = ledger_->clock().block;
    if (block < st.config.bidding.start_block) return Phase::kScheduled;
    if (block <= st.config.bidding.end_block) return Phase::kBidding;
    if (block < st.config.revealing.start_block) return Phase::kAwaitingReveal;
    if (block <= st.config.revealing.end_block) return Phase::kRevealing;
    return Phase::kClosed;
}

const AuctionState& AuctionHouse::state(std::uint64_t auction_id) const {
    auto it = auctions_.find(auction_id);
    if (it == auctions_.end()) throw Error(ErrorCode::kUnknownAuction, "no auction " + std::to_string(auction_id));
    return it->second;
}

AuctionState& AuctionHouse::mutable_state(std::uint64_t auction_id) {
    return const_cast<AuctionState&>(state(auction_id));
}

void AuctionHouse::require_phase(const AuctionState& st, Phase expected) const {
    const auto actual = phase(st.config.auction_id);
    if (actual != expected) {
        throw Error(ErrorCode::kWrongPhase, "auction " + std::to_string(st.config.auction_id) + " is in phase " +
                                                std::string(to_string(actual)) + ", expected " +
                                                std::string(to_string(expected)));
    }
}

void AuctionHouse::require_variant(const AuctionState& st, AuctionVariant expected) const {
    if (st.config.variant != expected) {
        throw Error(ErrorCode::kWrongVariant, "auction " + std::to_string(st.config.auction_id) + " runs the " +
                                                  std::string(to_string(st.config.variant)) + " variant");
    }
}

BidRecord& AuctionHouse::bid(AuctionState& st, std::uint64_t bid_id) {
    auto it = st.bids.find(bid_id);
    if (it == st.bids.end()) throw Error(ErrorCode::kUnknownBidId, "no bid " + std::to_string(bid_id));
    return it->second;
}

std::optional<Commitment> AuctionHouse::registered_commitment(std::uint64_t auction_id, std::uint64_t bid_id) const {
    auto a = auctions_.find(auction_id);
    if (a == auctions_.end() || a->second.config.variant != AuctionVariant::kProposed) return std::nullopt;
    auto b = a->second.bids.find(bid_id);
    if (b == a->second.bids.end()) return std::nullopt;
    return b->second.com_p;
}

void AuctionHouse::pay(const Address& to, const Wei& amount) {
    if (amount > 0) ledger_->contract_withdraw(contract_, to, amount, contract_);
}

void AuctionHouse::settle(AuctionState& st, BidRecord& rec, const Wei& amount_held, RevealOutcome& out) {
    const Wei& price = rec.revealed->price;
    const Address& refund_to = rec.revealed->refund_to;
    out.effective_price = price;
    // Strictly greater: on ties the earlier reveal keeps the slot.
    if (!st.highest || price > st.highest->price) {
        if (st.highest) {
            pay(st.highest->refund_to, st.escrow);
            out.displaced_refund = std::make_pair(st.highest->refund_to, st.escrow);
        }
        st.highest = HighestBid{rec.bid_id, price, refund_to};
        st.escrow = price;
        out.refunded = amount_held - price;
        out.status = RevealStatus::kNewHighest;
    } else {
        out.refunded = amount_held;
        out.status = RevealStatus::kNotHighest;
    }
    pay(refund_to, out.refunded);
}

std::uint64_t AuctionHouse::submit_commitment(const Address& bidder, std::uint64_t auction_id,
                                              const Commitment& com_p) {
    auto& st = mutable_state(auction_id);
    require_variant(st, AuctionVariant::kProposed);
    require_phase(st, Phase::kBidding);
    const auto id = st.next_bid_id++;
    BidRecord rec;
    rec.bid_id = id;
    rec.submitter = bidder;
    rec.com_p = com_p;
    st.bids.emplace(id, std::move(rec));
    return id;
}

void AuctionHouse::submit_credential(const Address& /*bidder*/, std::uint64_t auction_id, std::uint64_t bid_id,
                                     const OracleCredential& credential) {
    auto& st = mutable_state(auction_id);
    require_variant(st, AuctionVariant::kProposed);
    require_phase(st, Phase::kBidding);
    auto& rec = bid(st, bid_id);
    // The contract's own ids are what the signature must cover.
    if (!verify(oracle_vk_, credential_message(auction_id, bid_id, rec.com_p), credential.signature)) {
        throw Error(ErrorCode::kBadSignature, "oracle credential does not verify for bid " + std::to_string(bid_id));
    }
    rec.credential = credential;
    if (rec.status == BidStatus::kCommitted) rec.status = BidStatus::kAttested;
}

RevealOutcome AuctionHouse::reveal(const Address& bidder, std::uint64_t auction_id, std::uint64_t bid_id,
                                   const Wei& price, const Salt& salt, const Decommitment& dec) {
    auto& st = mutable_state(auction_id);
    require_variant(st, AuctionVariant::kProposed);
    require_phase(st, Phase::kRevealing);
    auto& rec = bid(st, bid_id);
    if (rec.status == BidStatus::kRevealed || rec.status == BidStatus::kVoid) {
        throw Error(ErrorCode::kAlreadyRevealed, "bid " + std::to_string(bid_id) + " was already revealed");
    }
    if (!rec.attested()) throw Error(ErrorCode::kNotAttested, "bid " + std::to_string(bid_id) + " has no credential");
    if (bidder != rec.submitter) throw Error(ErrorCode::kUnauthorizedCaller, "bid belongs to " + rec.submitter.hex());
    if (bidder != salt.bidder_reveal_address) {
        throw Error(ErrorCode::kUnauthorizedCaller, "salt is bound to " + salt.bidder_reveal_address.hex());
    }

    RevealOutcome out;
    // Deployment throws AddressOccupied on salt reuse before anything moves.
    out.onetime_address = ledger_->deploy_at(contract_, salt.salt32(), code_hash_, contract_);
    out.withdrawn = ledger_->balance(out.onetime_address);
    ledger_->contract_withdraw(out.onetime_address, contract_, out.withdrawn, contract_);

    if (!com_open(rec.com_p, dec, BidMessage{out.onetime_address, price})) {
        rec.status = BidStatus::kVoid;
        out.status = RevealStatus::kOpenFailed;
        out.refunded = out.withdrawn;
        pay(bidder, out.refunded);
        return out;
    }
    if (out.withdrawn < price) {
        rec.status = BidStatus::kVoid;
        out.status = RevealStatus::kBalanceBelowPrice;
        out.refunded = out.withdrawn;
        pay(bidder, out.refunded);
        return out;
    }

    rec.status = BidStatus::kRevealed;
    rec.revealed = RevealedBid{price, out.onetime_address, out.withdrawn, bidder};
    settle(st, rec, out.withdrawn, out);
    return out;
}

AuctionResult AuctionHouse::finalize(const Address& seller, std::uint64_t auction_id) {
    auto& st = mutable_state(auction_id);
    require_phase(st, Phase::kClosed);
    if (seller != st.config.seller) {
        throw Error(ErrorCode::kUnauthorizedCaller, "only the seller may finalize auction " + std::to_string(auction_id));
    }
    AuctionResult result;
    result.auction_id = auction_id;
    if (st.highest) {
        result.winner_bid_id = st.highest->bid_id;
        result.winner = st.highest->refund_to;
        result.price = st.highest->price;
        result.seller_payout = st.escrow;
        if (!st.config.item_token.empty()) result.item_token = st.config.item_token;
        pay(seller, st.escrow);
        st.escrow = 0;
    } else {
        result.no_bids = true;
    }
    st.finalized = true;
    return result;
}

std::uint64_t AuctionHouse::baseline_simple_deposit(const Address& bidder, std::uint64_t auction_id,
                                                    const Commitment& com_p, const Wei& deposit) {
    auto& st = mutable_state(auction_id);
    require_variant(st, AuctionVariant::kSimpleDeposit);
    require_phase(st, Phase::kBidding);
    ledger_->transfer(bidder, contract_, deposit);
    const auto id = st.next_bid_id++;
    BidRecord rec;
    rec.bid_id = id;
    rec.submitter = bidder;
    rec.com_p = com_p;
    rec.deposit = deposit;
    st.bids.emplace(id, std::move(rec));
    st.deposits += deposit;
    return id;
}

RevealOutcome AuctionHouse::baseline_deposit_reveal(const Address& bidder, std::uint64_t auction_id,
                                                    std::uint64_t bid_id, const Wei& price, const Decommitment& dec) {
    auto& st = mutable_state(auction_id);
    require_variant(st, AuctionVariant::kSimpleDeposit);
    require_phase(st, Phase::kRevealing);
    auto& rec = bid(st, bid_id);
    if (rec.status == BidStatus::kRevealed || rec.status == BidStatus::kVoid) {
        throw Error(ErrorCode::kAlreadyRevealed, "bid " + std::to_string(bid_id) + " was already revealed");
    }
    if (bidder != rec.submitter) throw Error(ErrorCode::kUnauthorizedCaller, "bid belongs to " + rec.submitter.hex());

    RevealOutcome out;
    out.withdrawn = rec.deposit;
    if (!com_open(rec.com_p, dec, BidMessage{bidder, price})) {
        rec.status = BidStatus::kVoid;
        st.deposits -= rec.deposit;
        out.status = RevealStatus::kOpenFailed;
        out.refunded = rec.deposit;
        pay(bidder, out.refunded);
        return out;
    }
    if (rec.deposit < price) {
        throw Error(ErrorCode::kInsufficientDeposit,
                    "deposit " + rec.deposit.str() + " wei is below the committed price " + price.str());
    }
    rec.status = BidStatus::kRevealed;
    rec.revealed = RevealedBid{price, bidder, rec.deposit, bidder};
    st.deposits -= rec.deposit;
    settle(st, rec, rec.deposit, out);
    return out;
}

std::uint64_t AuctionHouse::baseline_open_bid(const Address& bidder, std::uint64_t auction_id, const Wei& price) {
    auto& st = mutable_state(auction_id);
    require_variant(st, AuctionVariant::kOpenBid);
    require_phase(st, Phase::kBidding);
    if (st.highest && price <= st.highest->price) {
        throw Error(ErrorCode::kBidTooLow, "open bid must exceed the current highest " + st.highest->price.str());
    }
    ledger_->transfer(bidder, contract_, price);
    const auto id = st.next_bid_id++;
    BidRecord rec;
    rec.bid_id = id;
    rec.submitter = bidder;
    rec.status = BidStatus::kRevealed;
    rec.revealed = RevealedBid{price, bidder, price, bidder};
    auto& stored = st.bids.emplace(id, std::move(rec)).first->second;
    RevealOutcome ignored;
    settle(st, stored, price, ignored);
    return id;
}

}  // namespace sealbid

// Copyright 2026 The sealbid Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sealbid/anonymity.hpp"
#include "sealbid/auction.hpp"
#include "sealbid/fee_model.hpp"
#include "sealbid/ledger.hpp"

namespace sealbid {

struct BidderSpec {
    Wei price = 0;
    Wei wallet = 0;  // genesis balance of the bidder's funding address
    Wei top_up = 0;  // extra sent to the one-time address after attestation
    Wei deposit = 0; // simple-deposit baseline; defaults to price
    bool reveal = true;
};

/// Background transfers from a pool of funded accounts, values uniform in
/// [min_value, max_value].
struct DecoySpec {
    std::uint64_t count = 0;             // inside the bidding window
    std::uint64_t prewindow_count = 0;   // before it, to give recipients history
    Wei min_value = 0;
    Wei max_value = 0;
    std::uint32_t pool_accounts = 8;
    double fresh_recipient_ratio = 0.5;  // in-window decoys paying a never-seen address
    double forward_ratio = 0.2;          // in-window decoys sent by an earlier decoy recipient
};

struct Scenario {
    std::uint64_t seed = 0;
    MarketParams market;
    AuctionVariant variant = AuctionVariant::kProposed;
    BlockWindow bidding{10, 40};
    BlockWindow revealing{41, 60};
    std::string item_token;
    Wei seller_wallet = 0;
    std::vector<BidderSpec> bidders;
    DecoySpec decoys;
    std::optional<std::vector<std::size_t>> reveal_order;  // permutation of bidder indices
    FeeSchedule schedule = FeeSchedule::defaults();
};

/// keccak256 of the simulator's fund-binding bytecode identity.
Bytes32 fundbinding_code_hash();

/// Throws kConfig with the offending field path, e.g. `bidders[2].price_eth`.
Scenario parse_scenario(std::string_view json_text);

struct BidderRun {
    Address identity;         // reveal address; receives refunds
    Address funding_address;  // holds the wallet at genesis
    std::optional<Address> onetime_address;
    std::optional<Salt> salt;
    std::optional<Decommitment> dec;
    std::optional<std::uint64_t> bid_id;
    std::optional<RevealOutcome> reveal;
    std::optional<std::string> error;  // domain error hit by this bidder's own action
    Wei locked = 0;
    std::uint64_t fee_gas = 0;
};

struct ScenarioOutcome {
    Scenario scenario;
    std::unique_ptr<Ledger> ledger;
    std::unique_ptr<AuctionHouse> house;
    std::uint64_t auction_id = 0;
    Address seller;
    std::vector<BidderRun> bidders;
    std::vector<std::size_t> reveal_order;
    AuctionResult result;
    AnalysisResult anonymity;
    std::string report_json;
    std::string trace_csv;
};

/// Runs one auction end to end. Identical scenarios give byte-identical
/// reports and traces.
/// `before_finalize` runs at the last reveal block, while the auction is
/// still in its revealing phase.
ScenarioOutcome run_scenario(const Scenario& scenario,
                             const std::function<void(ScenarioOutcome&)>& before_finalize = {});

}  // namespace sealbid

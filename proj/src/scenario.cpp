// Copyright 2026 The sealbid Authors
// SPDX-License-Identifier: Apache-2.0

#include "sealbid/scenario.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"
#include "sealbid/deco.hpp"
#include "sealbid/error.hpp"
#include "sealbid/keccak.hpp"

namespace sealbid {

namespace {

using json = nlohmann::json;

// Fixed bytecode identity of the fund-binding contract.
constexpr std::string_view kFundBindingCode = "sealbid.fund-binding.v1";

[[noreturn]] void config_error(const std::string& path, const std::string& what) {
    throw Error(ErrorCode::kConfig, path + ": " + what);
}

std::string join(const std::string& path, std::string_view key) {
    return path.empty() ? std::string(key) : path + "." + std::string(key);
}

class Reader {
  public:
    Reader(const json& obj, std::string path) : obj_{obj}, path_{std::move(path)} {
        if (!obj_.is_object()) config_error(path_.empty() ? "config" : path_, "expected an object");
    }

    void allow(std::initializer_list<std::string_view> keys) const {
        for (const auto& [k, _] : obj_.items()) {
            if (std::find(keys.begin(), keys.end(), k) == keys.end()) config_error(join(path_, k), "unknown field");
        }
    }

    bool has(std::string_view key) const { return obj_.contains(key); }
    const json& at(std::string_view key) const { return obj_.at(key); }
    std::string path(std::string_view key) const { return join(path_, key); }

    std::uint64_t u64(std::string_view key, std::optional<std::uint64_t> fallback = std::nullopt) const {
        if (!has(key)) {
            if (fallback) return *fallback;
            config_error(path(key), "required");
        }
        const auto& v = at(key);
        if (!v.is_number_unsigned()) config_error(path(key), "expected a non-negative integer");
        return v.get<std::uint64_t>();
    }

    double positive(std::string_view key, double fallback) const {
        if (!has(key)) return fallback;
        const auto& v = at(key);
        if (!v.is_number() || !(v.get<double>() > 0)) config_error(path(key), "expected a positive number");
        return v.get<double>();
    }

    double ratio(std::string_view key, double fallback) const {
        if (!has(key)) return fallback;
        const auto& v = at(key);
        if (!v.is_number() || v.get<double>() < 0 || v.get<double>() > 1) {
            config_error(path(key), "expected a number in [0, 1]");
        }
        return v.get<double>();
    }

    bool boolean(std::string_view key, bool fallback) const {
        if (!has(key)) return fallback;
        if (!at(key).is_boolean()) config_error(path(key), "expected true or false");
        return at(key).get<bool>();
    }

    std::string text(std::string_view key, std::string fallback) const {
        if (!has(key)) return fallback;
        if (!at(key).is_string()) config_error(path(key), "expected a string");
        return at(key).get<std::string>();
    }

    /// Decimal ETH as a string ("0.25") or a plain JSON number.
    std::optional<Wei> eth(std::string_view key) const {
        if (!has(key)) return std::nullopt;
        const auto& v = at(key);
        std::string text;
        if (v.is_string()) {
            text = v.get<std::string>();
        } else if (v.is_number_unsigned() || v.is_number_float()) {
            text = v.dump();
        } else {
            config_error(path(key), "expected a decimal ETH amount");
        }
        try {
            return parse_eth(text);
        } catch (const std::exception&) {
            config_error(path(key), "'" + text + "' is not a decimal ETH amount");
        }
    }

  private:
    const json& obj_;
    std::string path_;
};

BlockWindow parse_window(const Reader& parent, std::string_view key, BlockWindow fallback) {
    if (!parent.has(key)) return fallback;
    Reader r(parent.at(key), parent.path(key));
    r.allow({"start_block", "end_block"});
    BlockWindow w{r.u64("start_block"), r.u64("end_block")};
    if (w.start_block > w.end_block) config_error(parent.path(key), "start_block exceeds end_block");
    return w;
}

std::string wei_json(const Wei& w) { return w.str(); }

json fee_json(std::uint64_t gas, const MarketParams& m) { return {{"gas", gas}, {"usd", fee_usd(gas, m).value()}}; }

bool chance(RandomSource& rng, double p) {
    constexpr std::uint64_t kScale = 1'000'000;
    return rng.below(kScale) < static_cast<std::uint64_t>(p * static_cast<double>(kScale));
}

struct Event {
    std::uint64_t block = 0;
    enum class Kind { kDecoy, kBid } kind = Kind::kDecoy;
    std::size_t index = 0;
};

}  // namespace

Bytes32 fundbinding_code_hash() {
    const Bytes code(kFundBindingCode.begin(), kFundBindingCode.end());
    return keccak256(code);
}

Scenario parse_scenario(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::kConfig, std::string("config: invalid JSON: ") + e.what());
    }
    Reader root(doc, "");
    root.allow({"seed", "market", "variant", "auction", "seller", "bidders", "decoys", "reveal_order", "fee_schedule"});

    Scenario s;
    s.seed = root.u64("seed", 0);
    if (root.has("market")) {
        Reader m(root.at("market"), "market");
        m.allow({"gas_price_gwei", "eth_usd"});
        s.market.gas_price_gwei = m.positive("gas_price_gwei", s.market.gas_price_gwei);
        s.market.eth_usd = m.positive("eth_usd", s.market.eth_usd);
    }
    if (root.has("variant")) {
        const auto text = root.text("variant", "proposed");
        try {
            s.variant = parse_variant(text);
        } catch (const Error&) {
            config_error("variant", "expected proposed, simple_deposit or open_bid");
        }
    }
    if (root.has("auction")) {
        Reader a(root.at("auction"), "auction");
        a.allow({"bidding", "revealing", "item_token"});
        s.bidding = parse_window(a, "bidding", s.bidding);
        s.revealing = parse_window(a, "revealing", s.revealing);
        s.item_token = a.text("item_token", "");
    }
    if (s.bidding.start_block == 0) config_error("auction.bidding.start_block", "must be at least 1");
    if (s.revealing.start_block <= s.bidding.end_block) {
        config_error("auction.revealing.start_block", "must come after auction.bidding.end_block");
    }
    s.seller_wallet = parse_eth("1");
    if (root.has("seller")) {
        Reader r(root.at("seller"), "seller");
        r.allow({"wallet_eth"});
        if (auto w = r.eth("wallet_eth")) s.seller_wallet = *w;
    }

    if (!root.has("bidders") || !root.at("bidders").is_array() || root.at("bidders").empty()) {
        config_error("bidders", "expected a non-empty array");
    }
    const auto& bidders = root.at("bidders");
    for (std::size_t i = 0; i < bidders.size(); ++i) {
        Reader b(bidders[i], "bidders[" + std::to_string(i) + "]");
        b.allow({"price_eth", "wallet_eth", "top_up_eth", "deposit_eth", "reveal"});
        BidderSpec spec;
        auto price = b.eth("price_eth");
        if (!price) config_error(b.path("price_eth"), "required");
        if (*price == 0) config_error(b.path("price_eth"), "must be positive");
        spec.price = *price;
        spec.top_up = b.eth("top_up_eth").value_or(Wei{0});
        spec.deposit = b.eth("deposit_eth").value_or(spec.price);
        const Wei needed = s.variant == AuctionVariant::kProposed        ? spec.price + spec.top_up
                           : s.variant == AuctionVariant::kSimpleDeposit ? spec.deposit
                                                                         : spec.price;
        spec.wallet = b.eth("wallet_eth").value_or(needed);
        if (spec.wallet < needed) config_error(b.path("wallet_eth"), "below the amount this bidder must send");
        spec.reveal = b.boolean("reveal", true);
        s.bidders.push_back(spec);
    }

    if (root.has("decoys")) {
        Reader d(root.at("decoys"), "decoys");
        d.allow({"count", "prewindow_count", "min_eth", "max_eth", "pool_accounts", "fresh_recipient_ratio",
                 "forward_ratio"});
        s.decoys.count = d.u64("count", 0);
        s.decoys.prewindow_count = d.u64("prewindow_count", s.decoys.count / 2);
        s.decoys.min_value = d.eth("min_eth").value_or(parse_eth("0.01"));
        s.decoys.max_value = d.eth("max_eth").value_or(parse_eth("2"));
        if (s.decoys.max_value < s.decoys.min_value) config_error("decoys.max_eth", "below decoys.min_eth");
        const auto pool = d.u64("pool_accounts", 8);
        if (pool == 0 || pool > 10'000) config_error("decoys.pool_accounts", "expected 1..10000");
        s.decoys.pool_accounts = static_cast<std::uint32_t>(pool);
        s.decoys.fresh_recipient_ratio = d.ratio("fresh_recipient_ratio", 0.5);
        s.decoys.forward_ratio = d.ratio("forward_ratio", 0.2);
    }
    if (s.decoys.prewindow_count > 0 && s.bidding.start_block < 2) {
        config_error("decoys.prewindow_count", "needs auction.bidding.start_block >= 2");
    }

    if (root.has("reveal_order")) {
        const auto& order = root.at("reveal_order");
        if (!order.is_array()) config_error("reveal_order", "expected an array of bidder indices");
        std::vector<std::size_t> perm;
        std::vector<bool> seen(s.bidders.size(), false);
        for (std::size_t i = 0; i < order.size(); ++i) {
            const std::string path = "reveal_order[" + std::to_string(i) + "]";
            if (!order[i].is_number_unsigned()) config_error(path, "expected a bidder index");
            const auto idx = order[i].get<std::size_t>();
            if (idx >= s.bidders.size() || seen[idx]) config_error(path, "not a permutation of bidder indices");
            seen[idx] = true;
            perm.push_back(idx);
        }
        if (perm.size() != s.bidders.size()) config_error("reveal_order", "must list every bidder exactly once");
        s.reveal_order = std::move(perm);
    }

    if (root.has("fee_schedule")) {
        try {
            s.schedule = FeeSchedule::from_json(root.at("fee_schedule").dump());
        } catch (const Error& e) {
            config_error("fee_schedule", e.what());
        }
    }
    return s;
}

ScenarioOutcome run_scenario(const Scenario& sc, const std::function<void(ScenarioOutcome&)>& before_finalize) {
    sc.market.validate();
    if (sc.bidders.empty()) throw Error(ErrorCode::kConfig, "bidders: at least one bidder is required");

    ScenarioOutcome out;
    out.scenario = sc;
    SeededRandom rng(sc.seed);

    out.ledger = std::make_unique<Ledger>();
    Ledger& ledger = *out.ledger;
    const Address contract = rng.address();
    const Bytes32 code_hash = fundbinding_code_hash();

    const auto oracle_keys = OracleKeypair::generate(rng);
    auto backend = std::make_shared<ReferenceProofBackend>(rng);
    Oracle oracle(oracle_keys, backend);
    out.house = std::make_unique<AuctionHouse>(ledger, contract, code_hash, oracle.vk());
    AuctionHouse& house = *out.house;
    BalanceSource source(ledger);

    // Genesis.
    out.seller = rng.address();
    ledger.fund_genesis(out.seller, sc.seller_wallet);
    for (const auto& spec : sc.bidders) {
        BidderRun run;
        run.identity = rng.address();
        run.funding_address = rng.address();
        ledger.fund_genesis(run.funding_address, spec.wallet);
        out.bidders.push_back(run);
    }
    std::vector<Address> pool;
    const auto& dc = sc.decoys;
    const std::uint64_t decoy_total = dc.count + dc.prewindow_count;
    if (decoy_total > 0) {
        // Enough for any one account to pay every decoy.
        const Wei per_account = dc.max_value * decoy_total + kWeiPerEth;
        for (std::uint32_t i = 0; i < dc.pool_accounts; ++i) {
            pool.push_back(rng.address());
            ledger.fund_genesis(pool.back(), per_account);
        }
    }
    ledger.close_setup();
    for (const auto& b : out.bidders) ledger.open_account(b.identity);

    out.auction_id = house.start_auction(out.seller, AuctionTerms{sc.bidding, sc.revealing, sc.variant, sc.item_token});

    // Decoy traffic. Recipients that have been paid may later forward funds.
    std::vector<Address> recipients;
    auto decoy_transfer = [&](bool in_window) {
        const Wei value = rng.uniform_wei(dc.min_value, dc.max_value);
        Address from = pool[rng.below(pool.size())];
        if (in_window && !recipients.empty() && chance(rng, dc.forward_ratio)) {
            const Address& candidate = recipients[rng.below(recipients.size())];
            if (ledger.balance(candidate) >= value) from = candidate;
        }
        Address to;
        if (!in_window || recipients.empty() || chance(rng, dc.fresh_recipient_ratio)) {
            to = rng.address();
            ledger.open_account(to);
            recipients.push_back(to);
        } else {
            to = recipients[rng.below(recipients.size())];
        }
        ledger.transfer(from, to, value);
    };

    std::vector<std::uint64_t> prewindow_blocks;
    for (std::uint64_t i = 0; i < dc.prewindow_count; ++i) {
        prewindow_blocks.push_back(1 + rng.below(sc.bidding.start_block - 1));
    }
    std::sort(prewindow_blocks.begin(), prewindow_blocks.end());
    for (auto block : prewindow_blocks) {
        ledger.advance_to(block);
        decoy_transfer(false);
    }

    // Bidding window: bidder actions and decoys at random blocks.
    const std::uint64_t span = sc.bidding.end_block - sc.bidding.start_block + 1;
    std::vector<Event> events;
    for (std::uint64_t i = 0; i < dc.count; ++i) {
        events.push_back(Event{sc.bidding.start_block + rng.below(span), Event::Kind::kDecoy, i});
    }
    for (std::size_t i = 0; i < sc.bidders.size(); ++i) {
        events.push_back(Event{sc.bidding.start_block + rng.below(span), Event::Kind::kBid, i});
    }
    std::stable_sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.block < b.block; });

    auto place_bid = [&](std::size_t i) {
        const auto& spec = sc.bidders[i];
        auto& run = out.bidders[i];
        switch (sc.variant) {
            case AuctionVariant::kProposed: {
                auto [theta, salt] = house.make_onetime_address(run.identity, out.auction_id, rng);
                auto [com, dec] = commit(BidMessage{theta, spec.price}, rng);
                run.onetime_address = theta;
                run.salt = salt;
                run.dec = dec;
                ledger.transfer(run.funding_address, theta, spec.price);
                run.fee_gas += sc.schedule.gas(op::kSendFunds);
                run.bid_id = house.submit_commitment(run.identity, out.auction_id, com);
                run.fee_gas += sc.schedule.gas(op::kCommitBid);
                auto session = AttestationSession::three_party_handshake(source, oracle, rng);
                const auto q = session.query_balance(theta, rng);
                const auto proof = session.prove_bid(com, theta, q.balance, dec, rng);
                const auto credential = session.verify_and_attest(house, out.auction_id, *run.bid_id, com, proof);
                house.submit_credential(run.identity, out.auction_id, *run.bid_id, credential);
                run.fee_gas += sc.schedule.gas(op::kProveBid);
                if (spec.top_up > 0) {
                    ledger.transfer(run.funding_address, theta, spec.top_up);
                    run.fee_gas += sc.schedule.gas(op::kSendFunds);
                }
                break;
            }
            case AuctionVariant::kSimpleDeposit: {
                auto [com, dec] = commit(BidMessage{run.funding_address, spec.price}, rng);
                run.dec = dec;
                run.bid_id = house.baseline_simple_deposit(run.funding_address, out.auction_id, com, spec.deposit);
                run.fee_gas += sc.schedule.gas(op::kDepositCommitBid);
                break;
            }
            case AuctionVariant::kOpenBid: {
                run.fee_gas += sc.schedule.gas(op::kOpenBidding);
                run.bid_id = house.baseline_open_bid(run.funding_address, out.auction_id, spec.price);
                break;
            }
        }
    };

    for (const auto& ev : events) {
        ledger.advance_to(ev.block);
        if (ev.kind == Event::Kind::kDecoy) {
            decoy_transfer(true);
            continue;
        }
        try {
            place_bid(ev.index);
        } catch (const Error& e) {
            // Rejected bids (an open bid below the current highest) are part
            // of the outcome, not a failure of the run.
            if (e.code() != ErrorCode::kBidTooLow) throw;
            out.bidders[ev.index].error = std::string(to_string(e.code()));
            out.bidders[ev.index].bid_id.reset();
        }
    }

    // Reveal.
    if (sc.reveal_order) {
        out.reveal_order = *sc.reveal_order;
    } else {
        out.reveal_order.resize(sc.bidders.size());
        for (std::size_t i = 0; i < out.reveal_order.size(); ++i) out.reveal_order[i] = i;
        for (std::size_t i = out.reveal_order.size(); i > 1; --i) {
            std::swap(out.reveal_order[i - 1], out.reveal_order[rng.below(i)]);
        }
    }
    if (sc.variant != AuctionVariant::kOpenBid) {
        std::uint64_t block = sc.revealing.start_block;
        for (auto i : out.reveal_order) {
            const auto& spec = sc.bidders[i];
            auto& run = out.bidders[i];
            if (!spec.reveal || !run.bid_id) continue;
            ledger.advance_to(block);
            if (block < sc.revealing.end_block) ++block;
            try {
                if (sc.variant == AuctionVariant::kProposed) {
                    run.reveal = house.reveal(run.identity, out.auction_id, *run.bid_id, spec.price, *run.salt, *run.dec);
                    run.fee_gas += sc.schedule.gas(op::kRevealBid);
                } else {
                    run.reveal = house.baseline_deposit_reveal(run.funding_address, out.auction_id, *run.bid_id,
                                                               spec.price, *run.dec);
                    run.fee_gas += sc.schedule.gas(op::kDepositRevealBid);
                }
            } catch (const Error& e) {
                if (e.code() != ErrorCode::kInsufficientDeposit) throw;
                run.error = std::string(to_string(e.code()));
            }
        }
    }

    if (before_finalize) {
        ledger.advance_to(sc.revealing.end_block);
        before_finalize(out);
    }
    ledger.advance_to(sc.revealing.end_block + 1);
    out.result = house.finalize(out.seller, out.auction_id);

    // Funds nobody can move any more.
    Wei locked_total = 0;
    for (std::size_t i = 0; i < out.bidders.size(); ++i) {
        auto& run = out.bidders[i];
        if (sc.variant == AuctionVariant::kProposed && run.onetime_address && !ledger.has_code(*run.onetime_address)) {
            run.locked = ledger.balance(*run.onetime_address);
        } else if (sc.variant == AuctionVariant::kSimpleDeposit && run.bid_id && !run.reveal) {
            run.locked = sc.bidders[i].deposit;
        }
        locked_total += run.locked;
    }

    // Anonymity over the bidding window of the full trace.
    const auto& trace = ledger.trace();
    Window window;
    window.start.block = sc.bidding.start_block;
    window.end.block = sc.bidding.end_block;
    const auto& opts = ledger.options();
    window.start.timestamp = opts.genesis_timestamp + sc.bidding.start_block * opts.block_time;
    window.end.timestamp = opts.genesis_timestamp + sc.bidding.end_block * opts.block_time;
    out.anonymity = analyze_trace(trace, window);

    std::ostringstream csv;
    write_trace_csv(csv, trace);
    out.trace_csv = csv.str();

    // Report.
    json report;
    report["schema_version"] = 1;
    report["seed"] = sc.seed;
    report["variant"] = to_string(sc.variant);
    report["market"] = {{"gas_price_gwei", sc.market.gas_price_gwei}, {"eth_usd", sc.market.eth_usd}};
    report["auction"] = {{"auction_id", out.auction_id},
                         {"contract_address", contract.hex()},
                         {"seller", out.seller.hex()},
                         {"bidding", {{"start_block", sc.bidding.start_block}, {"end_block", sc.bidding.end_block}}},
                         {"revealing", {{"start_block", sc.revealing.start_block}, {"end_block", sc.revealing.end_block}}},
                         {"item_token", sc.item_token}};
    const auto& r = out.result;
    report["outcome"] = {{"no_bids", r.no_bids},
                         {"winner_bid_id", r.winner_bid_id ? json(*r.winner_bid_id) : json(nullptr)},
                         {"winner", r.winner ? json(r.winner->hex()) : json(nullptr)},
                         {"price_wei", wei_json(r.price)},
                         {"price_eth", format_eth(r.price)},
                         {"seller_payout_wei", wei_json(r.seller_payout)}};
    std::size_t hidden_in_candidates = 0;
    auto bidders = json::array();
    for (std::size_t i = 0; i < out.bidders.size(); ++i) {
        const auto& run = out.bidders[i];
        const auto& spec = sc.bidders[i];
        json b;
        b["index"] = i;
        b["identity"] = run.identity.hex();
        b["funding_address"] = run.funding_address.hex();
        b["onetime_address"] = run.onetime_address ? json(run.onetime_address->hex()) : json(nullptr);
        b["bid_id"] = run.bid_id ? json(*run.bid_id) : json(nullptr);
        b["price_wei"] = wei_json(spec.price);
        b["revealed"] = run.reveal.has_value();
        b["reveal_status"] = run.reveal ? json(to_string(run.reveal->status)) : json(nullptr);
        Wei refunded = run.reveal ? run.reveal->refunded : Wei{0};
        b["refunded_wei"] = wei_json(refunded);
        b["locked_wei"] = wei_json(run.locked);
        b["error"] = run.error ? json(*run.error) : json(nullptr);
        b["fee"] = fee_json(run.fee_gas, sc.market);
        bidders.push_back(b);
        if (run.onetime_address) {
            const auto& c = out.anonymity.candidates;
            if (std::binary_search(c.begin(), c.end(), Candidate{*run.onetime_address, 0},
                                   [](const Candidate& x, const Candidate& y) { return x.address < y.address; })) {
                ++hidden_in_candidates;
            }
        }
    }
    report["bidders"] = bidders;
    report["reveal_order"] = out.reveal_order;
    report["seller_fee"] = fee_json(role_cost(sc.schedule, sc.variant, Role::kSeller, sc.market).gas, sc.market);

    auto locked = json::array();
    for (const auto& run : out.bidders) {
        if (run.locked == 0) continue;
        const Address where = run.onetime_address ? *run.onetime_address : contract;
        locked.push_back({{"address", where.hex()}, {"wei", wei_json(run.locked)}});
    }
    report["locked_funds"] = {{"total_wei", wei_json(locked_total)}, {"entries", locked}};

    const Wei final_total = ledger.total_balance();
    report["conservation"] = {{"genesis_total_wei", wei_json(ledger.genesis_total())},
                              {"final_total_wei", wei_json(final_total)},
                              {"holds", final_total == ledger.genesis_total()}};

    const auto& an = out.anonymity;
    auto hist = json::array();
    for (std::size_t i = 0; i < an.spec.size(); ++i) {
        const auto& bucket = an.spec.buckets()[i];
        hist.push_back({{"range_lo_eth", format_eth(bucket.lo)},
                        {"range_hi_eth", bucket.hi ? json(format_eth(*bucket.hi)) : json(nullptr)},
                        {"count", an.histogram.counts[i]}});
    }
    report["anonymity"] = {{"window", {{"from_block", window.start.block}, {"to_block", window.end.block}}},
                           {"candidate_count", an.candidates.size()},
                           {"max_balance_bound_wei", wei_json(an.max_balance_bound)},
                           {"histogram", hist},
                           {"out_of_range", an.histogram.out_of_range},
                           {"onetime_addresses_in_candidate_set", hidden_in_candidates}};
    report["trace"] = {{"records", trace.size()}};
    out.report_json = report.dump(2) + "\n";
    return out;
}

}  // namespace sealbid

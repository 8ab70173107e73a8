// Copyright 2026 The sealbid Authors
// SPDX-License-Identifier: Apache-2.0

#include "sealbid/fee_model.hpp"

#include <array>
#include <cmath>
#include <cstdio>

#include <boost/multiprecision/cpp_int.hpp>

#include "json.hpp"
#include "sealbid/error.hpp"

namespace sealbid {

namespace {

using boost::multiprecision::cpp_int;

constexpr std::int64_t kMicro = 1'000'000;

constexpr std::array<std::string_view, 4> kProposedBidder{op::kSendFunds, op::kCommitBid, op::kProveBid,
                                                          op::kRevealBid};
constexpr std::array<std::string_view, 2> kSimpleDepositBidder{op::kDepositCommitBid, op::kDepositRevealBid};
constexpr std::array<std::string_view, 1> kOpenBidBidder{op::kOpenBidding};
constexpr std::array<std::string_view, 2> kSeller{op::kStartAuction, op::kFinalizeAuction};

std::string_view label(std::string_view tag) {
    if (tag == op::kSendFunds) return "Sending funds";
    if (tag == op::kCommitBid) return "Committing bid";
    if (tag == op::kProveBid) return "Proving bid";
    if (tag == op::kRevealBid) return "Revealing bid";
    if (tag == op::kStartAuction) return "Starting auction";
    if (tag == op::kFinalizeAuction) return "Finalizing auction";
    if (tag == op::kDepositCommitBid) return "Committing bid";
    if (tag == op::kDepositRevealBid) return "Revealing bid";
    if (tag == op::kOpenBidding) return "Bidding";
    return tag;
}

std::int64_t to_micro(double x) { return std::llround(x * static_cast<double>(kMicro)); }

struct TableSpec {
    std::string_view title;
    AuctionVariant variant;
    Role role;
};

constexpr std::array<TableSpec, 4> kTables{{
    {"Bidder operations, proposed protocol", AuctionVariant::kProposed, Role::kBidder},
    {"Seller operations, proposed protocol", AuctionVariant::kProposed, Role::kSeller},
    {"Bidder operations, simple deposit", AuctionVariant::kSimpleDeposit, Role::kBidder},
    {"Bidder operations, open bid", AuctionVariant::kOpenBid, Role::kBidder},
}};

struct OverheadSpec {
    AuctionVariant a;
    AuctionVariant b;
};

constexpr std::array<OverheadSpec, 3> kOverheads{{
    {AuctionVariant::kProposed, AuctionVariant::kSimpleDeposit},
    {AuctionVariant::kProposed, AuctionVariant::kOpenBid},
    {AuctionVariant::kSimpleDeposit, AuctionVariant::kOpenBid},
}};

std::string format_market(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

}  // namespace

std::string_view to_string(Role role) noexcept { return role == Role::kBidder ? "bidder" : "seller"; }

AuctionVariant parse_variant(std::string_view text) {
    if (text == "proposed") return AuctionVariant::kProposed;
    if (text == "simple_deposit") return AuctionVariant::kSimpleDeposit;
    if (text == "open_bid") return AuctionVariant::kOpenBid;
    throw Error(ErrorCode::kUnknownVariant, "unknown auction variant '" + std::string(text) + "'");
}

Role parse_role(std::string_view text) {
    if (text == "bidder") return Role::kBidder;
    if (text == "seller") return Role::kSeller;
    throw Error(ErrorCode::kConfig, "unknown role '" + std::string(text) + "'");
}

void MarketParams::validate() const {
    if (!(gas_price_gwei > 0) || !std::isfinite(gas_price_gwei) || to_micro(gas_price_gwei) <= 0) {
        throw Error(ErrorCode::kConfig, "gas price must be positive");
    }
    if (!(eth_usd > 0) || !std::isfinite(eth_usd) || to_micro(eth_usd) <= 0) {
        throw Error(ErrorCode::kConfig, "ETH price must be positive");
    }
}

std::string Usd::str() const {
    const std::uint64_t mag = cents < 0 ? static_cast<std::uint64_t>(-(cents + 1)) + 1 : static_cast<std::uint64_t>(cents);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%llu.%02llu", cents < 0 ? "-" : "", static_cast<unsigned long long>(mag / 100),
                  static_cast<unsigned long long>(mag % 100));
    return buf;
}

Usd fee_usd(std::uint64_t gas, const MarketParams& params) {
    params.validate();
    // cents = gas * gwei_u * usd_u * 100 / (1e9 * 1e6 * 1e6)
    const cpp_int num = cpp_int(gas) * to_micro(params.gas_price_gwei) * to_micro(params.eth_usd) * 100;
    const cpp_int den = cpp_int(1'000'000'000) * kMicro * kMicro;
    const cpp_int cents = (num + den / 2) / den;
    return Usd{cents.convert_to<std::int64_t>()};
}

FeeSchedule FeeSchedule::defaults() {
    FeeSchedule s;
    s.gas_.emplace(op::kSendFunds, 21'000);
    s.gas_.emplace(op::kCommitBid, 68'903);
    s.gas_.emplace(op::kProveBid, 52'755);
    s.gas_.emplace(op::kRevealBid, 122'546);
    s.gas_.emplace(op::kStartAuction, 166'510);
    s.gas_.emplace(op::kFinalizeAuction, 40'312);
    s.gas_.emplace(op::kDepositCommitBid, 110'928);
    s.gas_.emplace(op::kDepositRevealBid, 83'119);
    s.gas_.emplace(op::kOpenBidding, 71'137);
    return s;
}

FeeSchedule FeeSchedule::from_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::kParse, std::string("fee schedule: ") + e.what());
    }
    if (!doc.is_object()) throw Error(ErrorCode::kConfig, "fee schedule must be a JSON object");
    FeeSchedule s = defaults();
    for (const auto& [tag, value] : doc.items()) {
        if (!value.is_number_integer() || value.get<std::int64_t>() <= 0) {
            throw Error(ErrorCode::kConfig, "fee schedule ." + tag + ": gas must be a positive integer");
        }
        s.set(tag, value.get<std::uint64_t>());
    }
    return s;
}

std::uint64_t FeeSchedule::gas(std::string_view tag) const {
    auto it = gas_.find(tag);
    if (it == gas_.end()) throw Error(ErrorCode::kUnknownOperation, "unknown operation tag '" + std::string(tag) + "'");
    return it->second;
}

void FeeSchedule::set(std::string_view tag, std::uint64_t gas) {
    auto it = gas_.find(tag);
    if (it == gas_.end()) throw Error(ErrorCode::kUnknownOperation, "unknown operation tag '" + std::string(tag) + "'");
    if (gas == 0) throw Error(ErrorCode::kConfig, "gas for '" + std::string(tag) + "' must be positive");
    it->second = gas;
}

std::span<const std::string_view> operations(AuctionVariant variant, Role role) {
    if (role == Role::kSeller) return kSeller;
    switch (variant) {
        case AuctionVariant::kProposed: return kProposedBidder;
        case AuctionVariant::kSimpleDeposit: return kSimpleDepositBidder;
        case AuctionVariant::kOpenBid: return kOpenBidBidder;
    }
    throw Error(ErrorCode::kUnknownVariant, "unknown auction variant");
}

RoleCost role_cost(const FeeSchedule& schedule, AuctionVariant variant, Role role, const MarketParams& params) {
    RoleCost cost;
    for (auto tag : operations(variant, role)) cost.gas += schedule.gas(tag);
    cost.usd = fee_usd(cost.gas, params);
    return cost;
}

CostDelta overhead(const FeeSchedule& schedule, AuctionVariant a, AuctionVariant b, Role role,
                   const MarketParams& params) {
    const auto ca = role_cost(schedule, a, role, params);
    const auto cb = role_cost(schedule, b, role, params);
    return CostDelta{static_cast<std::int64_t>(ca.gas) - static_cast<std::int64_t>(cb.gas), ca.usd - cb.usd};
}

std::string render_fee_tables(const FeeSchedule& schedule, const MarketParams& params) {
    std::string out = "gas price " + format_market(params.gas_price_gwei) + " gwei, 1 ETH = " +
                      format_market(params.eth_usd) + " USD\n";
    char line[128];
    for (const auto& t : kTables) {
        out += '\n';
        out += t.title;
        out += '\n';
        std::snprintf(line, sizeof line, "  %-22s %10s %12s\n", "operation", "used gas", "fee (USD)");
        out += line;
        for (auto tag : operations(t.variant, t.role)) {
            const auto gas = schedule.gas(tag);
            std::snprintf(line, sizeof line, "  %-22s %10llu %12s\n", std::string(label(tag)).c_str(),
                          static_cast<unsigned long long>(gas), fee_usd(gas, params).str().c_str());
            out += line;
        }
        const auto total = role_cost(schedule, t.variant, t.role, params);
        std::snprintf(line, sizeof line, "  %-22s %10llu %12s\n", "total", static_cast<unsigned long long>(total.gas),
                      total.usd.str().c_str());
        out += line;
    }
    out += "\nBidder overhead\n";
    for (const auto& o : kOverheads) {
        const auto d = overhead(schedule, o.a, o.b, Role::kBidder, params);
        const std::string name = std::string(to_string(o.a)) + " vs " + std::string(to_string(o.b));
        std::snprintf(line, sizeof line, "  %-30s %10lld %12s\n", name.c_str(), static_cast<long long>(d.gas),
                      d.usd.str().c_str());
        out += line;
    }
    return out;
}

std::string render_fee_tables_json(const FeeSchedule& schedule, const MarketParams& params) {
    nlohmann::ordered_json doc;
    doc["market"] = {{"gas_price_gwei", params.gas_price_gwei}, {"eth_usd", params.eth_usd}};
    auto tables = nlohmann::ordered_json::array();
    for (const auto& t : kTables) {
        auto rows = nlohmann::ordered_json::array();
        for (auto tag : operations(t.variant, t.role)) {
            const auto gas = schedule.gas(tag);
            rows.push_back({{"operation", tag}, {"label", label(tag)}, {"gas", gas}, {"usd", fee_usd(gas, params).value()}});
        }
        const auto total = role_cost(schedule, t.variant, t.role, params);
        tables.push_back({{"title", t.title},
                          {"variant", to_string(t.variant)},
                          {"role", to_string(t.role)},
                          {"rows", rows},
                          {"total", {{"gas", total.gas}, {"usd", total.usd.value()}}}});
    }
    doc["tables"] = tables;
    auto deltas = nlohmann::ordered_json::array();
    for (const auto& o : kOverheads) {
        const auto d = overhead(schedule, o.a, o.b, Role::kBidder, params);
        deltas.push_back({{"variant_a", to_string(o.a)},
                          {"variant_b", to_string(o.b)},
                          {"role", "bidder"},
                          {"gas", d.gas},
                          {"usd", d.usd.value()}});
    }
    doc["overhead"] = deltas;
    return doc.dump(2) + "\n";
}

}  // namespace sealbid

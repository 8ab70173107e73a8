// Copyright 2026 The sealbid Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "sealbid/auction.hpp"

namespace sealbid {

enum class Role { kBidder, kSeller };

std::string_view to_string(Role role) noexcept;
AuctionVariant parse_variant(std::string_view text);
Role parse_role(std::string_view text);

/// Gas price in gwei and ETH price in USD. Both are carried to six decimal
/// places; anything finer is rounded away before fee arithmetic.
struct MarketParams {
    double gas_price_gwei = 45.0;
    double eth_usd = 3200.0;

    void validate() const;
};

/// Signed amount of US cents.
struct Usd {
    std::int64_t cents = 0;

    std::string str() const;  // "38.19", "-0.05"
    double value() const noexcept { return static_cast<double>(cents) / 100.0; }
    friend auto operator<=>(const Usd&, const Usd&) = default;
    friend Usd operator-(Usd a, Usd b) noexcept { return Usd{a.cents - b.cents}; }
    friend Usd operator+(Usd a, Usd b) noexcept { return Usd{a.cents + b.cents}; }
};

/// gas * gas_price * 1e-9 * eth_usd, rounded half-up to the cent. Exact.
Usd fee_usd(std::uint64_t gas, const MarketParams& params);

namespace op {
inline constexpr std::string_view kSendFunds = "send_funds";
inline constexpr std::string_view kCommitBid = "commit_bid";
inline constexpr std::string_view kProveBid = "prove_bid";
inline constexpr std::string_view kRevealBid = "reveal_bid";
inline constexpr std::string_view kStartAuction = "start_auction";
inline constexpr std::string_view kFinalizeAuction = "finalize_auction";
inline constexpr std::string_view kDepositCommitBid = "deposit_commit_bid";
inline constexpr std::string_view kDepositRevealBid = "deposit_reveal_bid";
inline constexpr std::string_view kOpenBidding = "open_bidding";
}  // namespace op

class FeeSchedule {
  public:
    /// The published per-operation gas figures.
    static FeeSchedule defaults();
    /// Overlays a `{operation_tag: gas}` JSON object on the defaults.
    /// Unknown tags and non-positive gas are rejected.
    static FeeSchedule from_json(std::string_view text);

    std::uint64_t gas(std::string_view tag) const;
    void set(std::string_view tag, std::uint64_t gas);
    const std::map<std::string, std::uint64_t, std::less<>>& entries() const noexcept { return gas_; }

  private:
    std::map<std::string, std::uint64_t, std::less<>> gas_;
};

/// Operations a role performs once per auction under a variant.
std::span<const std::string_view> operations(AuctionVariant variant, Role role);

struct RoleCost {
    std::uint64_t gas = 0;
    Usd usd;
};

struct CostDelta {
    std::int64_t gas = 0;
    Usd usd;
};

/// Total gas over the role's operations, converted once.
RoleCost role_cost(const FeeSchedule& schedule, AuctionVariant variant, Role role, const MarketParams& params);
CostDelta overhead(const FeeSchedule& schedule, AuctionVariant a, AuctionVariant b, Role role,
                   const MarketParams& params);

/// Plain-text rendering of the four fee tables plus aggregates.
std::string render_fee_tables(const FeeSchedule& schedule, const MarketParams& params);
/// Same content as JSON.
std::string render_fee_tables_json(const FeeSchedule& schedule, const MarketParams& params);

}  // namespace sealbid

// Copyright 2026 The sealbid Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sealbid {

enum class ErrorCode {
    // ledger
    kSetupClosed,
    kInsufficientBalance,
    kNoSigningKey,
    kAddressOccupied,
    kUnauthorizedDeployer,
    kNotAContract,
    kUnauthorizedCaller,
    kInvalidWindow,
    // attestation
    kUnknownSession,
    kProtocolOrder,
    kMacCheckFailed,
    kProofRejected,
    kUnknownBidId,
    // auction
    kInvalidWindows,
    kUnknownAuction,
    kWrongPhase,
    kBadSignature,
    kNotAttested,
    kAlreadyRevealed,
    kInsufficientDeposit,
    kBidTooLow,
    kWrongVariant,
    // fees
    kUnknownVariant,
    kUnknownOperation,
    // anonymity
    kUnsortedTrace,
    kInvalidRatio,
    kInvalidBuckets,
    // plumbing
    kParse,
    kConfig,
    kIo,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_{code} {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

}  // namespace sealbid

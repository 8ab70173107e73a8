// Copyright 2026 The sealbid Authors
// SPDX-License-Identifier: Apache-2.0

#include "sealbid/error.hpp"

namespace sealbid {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::kSetupClosed: return "SetupClosed";
        case ErrorCode::kInsufficientBalance: return "InsufficientBalance";
        case ErrorCode::kNoSigningKey: return "NoSigningKey";
        case ErrorCode::kAddressOccupied: return "AddressOccupied";
        case ErrorCode::kUnauthorizedDeployer: return "UnauthorizedDeployer";
        case ErrorCode::kNotAContract: return "NotAContract";
        case ErrorCode::kUnauthorizedCaller: return "UnauthorizedCaller";
        case ErrorCode::kInvalidWindow: return "InvalidWindow";
        case ErrorCode::kUnknownSession: return "UnknownSession";
        case ErrorCode::kProtocolOrder: return "ProtocolOrder";
        case ErrorCode::kMacCheckFailed: return "MacCheckFailed";
        case ErrorCode::kProofRejected: return "ProofRejected";
        case ErrorCode::kUnknownBidId: return "UnknownBidId";
        case ErrorCode::kInvalidWindows: return "InvalidWindows";
        case ErrorCode::kUnknownAuction: return "UnknownAuction";
        case ErrorCode::kWrongPhase: return "WrongPhase";
        case ErrorCode::kBadSignature: return "BadSignature";
        case ErrorCode::kNotAttested: return "NotAttested";
        case ErrorCode::kAlreadyRevealed: return "AlreadyRevealed";
        case ErrorCode::kInsufficientDeposit: return "InsufficientDeposit";
        case ErrorCode::kBidTooLow: return "BidTooLow";
        case ErrorCode::kWrongVariant: return "WrongVariant";
        case ErrorCode::kUnknownVariant: return "UnknownVariant";
        case ErrorCode::kUnknownOperation: return "UnknownOperation";
        case ErrorCode::kUnsortedTrace: return "UnsortedTrace";
        case ErrorCode::kInvalidRatio: return "InvalidRatio";
        case ErrorCode::kInvalidBuckets: return "InvalidBuckets";
        case ErrorCode::kParse: return "ParseError";
        case ErrorCode::kConfig: return "ConfigError";
        case ErrorCode::kIo: return "IoError";
    }
    return "Unknown";
}

}  // namespace sealbid

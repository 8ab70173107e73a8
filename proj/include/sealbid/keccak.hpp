// Copyright 2026 The sealbid Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "sealbid/types.hpp"

namespace sealbid {

/// Original Keccak-256 (0x01 domain padding), as used by the EVM. This is not
/// FIPS-202 SHA3-256.
Bytes32 keccak256(ByteView data);

}  // namespace sealbid

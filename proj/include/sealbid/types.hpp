// Copyright 2026 The sealbid Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace sealbid {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

// Overflow and underflow throw std::overflow_error / std::range_error.
using Wei = boost::multiprecision::checked_uint256_t;

inline constexpr std::uint64_t kWeiPerGwei = 1'000'000'000ULL;
inline const Wei kWeiPerEth{"1000000000000000000"};

std::string to_hex(ByteView bytes, bool prefix = true);
Bytes from_hex(std::string_view hex);

template <std::size_t N>
struct FixedBytes {
    std::array<std::uint8_t, N> bytes{};

    static constexpr std::size_t size() noexcept { return N; }
    std::uint8_t* data() noexcept { return bytes.data(); }
    const std::uint8_t* data() const noexcept { return bytes.data(); }
    ByteView view() const noexcept { return {bytes.data(), N}; }
    auto begin() const noexcept { return bytes.begin(); }
    auto end() const noexcept { return bytes.end(); }

    std::string hex() const { return to_hex(view()); }

    // Parses exactly N bytes of 0x-optional hex.
    static FixedBytes from_hex(std::string_view hex);

    friend auto operator<=>(const FixedBytes&, const FixedBytes&) = default;
};

/// 20-byte account identifier. Renders as `0x` + 40 lowercase hex chars and
/// orders by byte comparison.
struct Address : FixedBytes<20> {
    static Address from_hex(std::string_view hex);
    friend auto operator<=>(const Address&, const Address&) = default;
};

struct Bytes32 : FixedBytes<32> {
    static Bytes32 from_hex(std::string_view hex);
    friend auto operator<=>(const Bytes32&, const Bytes32&) = default;
};

/// Big-endian 32-byte encoding (EVM word).
Bytes32 to_word(const Wei& value);
Wei from_word(const Bytes32& word);

/// Exact decimal ETH <-> wei. Accepts up to 18 fractional digits.
Wei parse_eth(std::string_view eth);
std::string format_eth(const Wei& wei);

Wei parse_wei(std::string_view decimal);
inline std::string format_wei(const Wei& wei) { return wei.str(); }

void put_u64_be(Bytes& out, std::uint64_t v);

/// Caller-supplied randomness. All protocol randomness flows through this so
/// that a run is reproducible from its seed.
class RandomSource {
  public:
    virtual ~RandomSource() = default;
    virtual void fill(std::span<std::uint8_t> out) = 0;

    template <std::size_t N>
    FixedBytes<N> bytes() {
        FixedBytes<N> b;
        fill(b.bytes);
        return b;
    }
    Bytes32 bytes32() {
        Bytes32 b;
        fill(b.bytes);
        return b;
    }
    Address address() {
        Address a;
        fill(a.bytes);
        return a;
    }
    std::uint64_t next_u64();
    /// Uniform in [0, bound). bound must be non-zero.
    std::uint64_t below(std::uint64_t bound);
    /// Uniform in [lo, hi] by reducing a 256-bit draw; the modulo bias is
    /// negligible for spans far below 2^256.
    Wei uniform_wei(const Wei& lo, const Wei& hi);
};

/// mt19937_64-backed deterministic source; the simulator's only RNG.
class SeededRandom final : public RandomSource {
  public:
    explicit SeededRandom(std::uint64_t seed) : engine_{seed} {}
    void fill(std::span<std::uint8_t> out) override;

  private:
    std::mt19937_64 engine_;
};

}  // namespace sealbid

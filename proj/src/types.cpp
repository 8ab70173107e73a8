// Copyright 2026 The sealbid Authors
// SPDX-License-Identifier: Apache-2.0

#include "sealbid/types.hpp"

#include <algorithm>
#include <limits>

#include "sealbid/error.hpp"

namespace sealbid {

namespace {

int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

std::string_view strip_prefix(std::string_view hex) {
    if (hex.size() >= 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X')) hex.remove_prefix(2);
    return hex;
}

}  // namespace

std::string to_hex(ByteView bytes, bool prefix) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2 + 2);
    if (prefix) out += "0x";
    for (auto b : bytes) {
        out.push_back(kDigits[b >> 4]);
        out.push_back(kDigits[b & 0x0f]);
    }
    return out;
}

Bytes from_hex(std::string_view hex) {
    hex = strip_prefix(hex);
    if (hex.size() % 2 != 0) throw Error(ErrorCode::kParse, "odd-length hex string");
    Bytes out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        int hi = hex_nibble(hex[2 * i]);
        int lo = hex_nibble(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) throw Error(ErrorCode::kParse, "invalid hex digit");
        out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return out;
}

template <std::size_t N>
FixedBytes<N> FixedBytes<N>::from_hex(std::string_view hex) {
    auto raw = sealbid::from_hex(hex);
    if (raw.size() != N) {
        throw Error(ErrorCode::kParse,
                    "expected " + std::to_string(N) + " bytes of hex, got " + std::to_string(raw.size()));
    }
    FixedBytes<N> out;
    std::copy(raw.begin(), raw.end(), out.bytes.begin());
    return out;
}

template struct FixedBytes<16>;
template struct FixedBytes<20>;
template struct FixedBytes<32>;

Address Address::from_hex(std::string_view hex) {
    Address a;
    a.bytes = FixedBytes<20>::from_hex(hex).bytes;
    return a;
}

Bytes32 Bytes32::from_hex(std::string_view hex) {
    Bytes32 b;
    b.bytes = FixedBytes<32>::from_hex(hex).bytes;
    return b;
}

Bytes32 to_word(const Wei& value) {
    Bytes32 word;
    Wei v = value;
    for (int i = 31; i >= 0; --i) {
        word.bytes[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(static_cast<unsigned>(v & 0xff));
        v >>= 8;
    }
    return word;
}

Wei from_word(const Bytes32& word) {
    Wei v = 0;
    for (auto b : word.bytes) {
        v <<= 8;
        v |= b;
    }
    return v;
}

Wei parse_wei(std::string_view decimal) {
    if (decimal.empty()) throw Error(ErrorCode::kParse, "empty wei amount");
    Wei v = 0;
    for (char c : decimal) {
        if (c < '0' || c > '9') throw Error(ErrorCode::kParse, "invalid wei amount '" + std::string(decimal) + "'");
        try {
            v = v * 10 + static_cast<unsigned>(c - '0');
        } catch (const std::exception&) {
            throw Error(ErrorCode::kParse, "wei amount exceeds 256 bits");
        }
    }
    return v;
}

Wei parse_eth(std::string_view eth) {
    auto dot = eth.find('.');
    std::string_view whole = eth.substr(0, dot);
    std::string_view frac = dot == std::string_view::npos ? std::string_view{} : eth.substr(dot + 1);
    if (whole.empty() && frac.empty()) throw Error(ErrorCode::kParse, "empty ETH amount");
    if (frac.size() > 18) throw Error(ErrorCode::kParse, "ETH amount has more than 18 decimals");
    std::string digits(whole.empty() ? "0" : whole);
    digits.append(frac);
    digits.append(18 - frac.size(), '0');
    try {
        return parse_wei(digits);
    } catch (const Error&) {
        throw Error(ErrorCode::kParse, "invalid ETH amount '" + std::string(eth) + "'");
    }
}

std::string format_eth(const Wei& wei) {
    Wei whole = wei / kWeiPerEth;
    Wei frac = wei % kWeiPerEth;
    std::string out = whole.str();
    if (frac != 0) {
        std::string f = frac.str();
        f.insert(0, 18 - f.size(), '0');
        while (!f.empty() && f.back() == '0') f.pop_back();
        out += "." + f;
    }
    return out;
}

void put_u64_be(Bytes& out, std::uint64_t v) {
    for (int shift = 56; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

std::uint64_t RandomSource::next_u64() {
    std::array<std::uint8_t, 8> b{};
    fill(b);
    std::uint64_t v = 0;
    for (auto x : b) v = (v << 8) | x;
    return v;
}

std::uint64_t RandomSource::below(std::uint64_t bound) {
    // Rejection sampling keeps this portable across standard libraries.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
        v = next_u64();
    } while (v >= limit);
    return v % bound;
}

Wei RandomSource::uniform_wei(const Wei& lo, const Wei& hi) {
    if (hi < lo) throw Error(ErrorCode::kConfig, "uniform_wei: hi < lo");
    Wei span = hi - lo;
    Wei draw = from_word(bytes32());
    if (span == std::numeric_limits<Wei>::max()) return draw;
    return lo + draw % (span + 1);
}

void SeededRandom::fill(std::span<std::uint8_t> out) {
    std::size_t i = 0;
    while (i < out.size()) {
        std::uint64_t v = engine_();
        for (int k = 0; k < 8 && i < out.size(); ++k, ++i) {
            out[i] = static_cast<std::uint8_t>(v >> (8 * k));
        }
    }
}

}  // namespace sealbid

// Copyright 2026 The sealbid Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "sealbid/error.hpp"
#include "sealbid/ledger.hpp"

namespace sealbid {
namespace {

using testing::eth;

template <typename Fn>
ErrorCode code_of(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an error";
    return ErrorCode::kIo;
}

TEST(Create2, MatchesIndependentReference) {
    for (const auto& v : testing::kCreate2Vectors) {
        EXPECT_EQ(derive_onetime_address(Address::from_hex(v.deployer), Bytes32::from_hex(v.salt),
                                         Bytes32::from_hex(v.code_hash))
                      .hex(),
                  v.address);
    }
}

TEST(Create2, ZeroInputsWithEmptyCode) {
    EXPECT_EQ(derive_onetime_address(Address{}, Bytes32{}, keccak256(Bytes{})).hex(),
              "0xe33c0c7f7df4809055c3eba6c09cfe4baf1bd9e0");
}

#define SEALBID_ONETIME_VECTOR(d, aid, b, r, h, theta) {d, aid, b, r, h, theta},
struct OnetimeVector {
    const char* deployer;
    std::uint64_t auction_id;
    const char* bidder;
    const char* random;
    const char* code_hash;
    const char* theta;
};
constexpr OnetimeVector kOnetimeVectors[] = {
#include "protocol_vectors.inc"
};
#undef SEALBID_ONETIME_VECTOR

TEST(Create2, SaltedOnetimeAddressMatchesReference) {
    for (const auto& v : kOnetimeVectors) {
        const Salt salt{v.auction_id, Address::from_hex(v.bidder), Bytes32::from_hex(v.random)};
        EXPECT_EQ(salt.serialize().size(), 60u);
        EXPECT_EQ(derive_onetime_address(Address::from_hex(v.deployer), salt.salt32(), Bytes32::from_hex(v.code_hash))
                      .hex(),
                  v.theta);
    }
    EXPECT_EQ(fundbinding_code_hash().hex(), kOnetimeVectors[0].code_hash);
}

TEST(Create2Property, DistinctSaltsNeverCollide) {
    SeededRandom rng(11);
    const Address deployer = rng.address();
    const Bytes32 code = keccak256(Bytes{1, 2, 3});
    std::set<Address> seen;
    for (int i = 0; i < 10000; ++i) ASSERT_TRUE(seen.insert(derive_onetime_address(deployer, rng.bytes32(), code)).second);
}

TEST(Ledger, GenesisOnlyDuringSetup) {
    Ledger l;
    const Address a = Address::from_hex("0x00000000000000000000000000000000000000a1");
    l.fund_genesis(a, eth("1"));
    l.close_setup();
    EXPECT_EQ(code_of([&] { l.fund_genesis(a, eth("1")); }), ErrorCode::kSetupClosed);
    EXPECT_EQ(l.genesis_total(), eth("1"));
}

TEST(Ledger, TransferMovesValueAndRecordsTrace) {
    Ledger l;
    SeededRandom rng(1);
    const Address a = rng.address(), b = rng.address();
    l.fund_genesis(a, eth("1"));
    l.close_setup();
    l.advance_blocks(3);
    const auto tx = l.transfer(a, b, eth("0.3"));
    EXPECT_EQ(l.balance(a), eth("0.7"));
    EXPECT_EQ(l.balance(b), eth("0.3"));
    EXPECT_EQ(tx.block, 3u);
    EXPECT_EQ(tx.timestamp, l.options().genesis_timestamp + 3 * 13);
    EXPECT_EQ(tx.kind, TxKind::kTransfer);
    EXPECT_EQ(l.find(a)->nonce, 1u);
    ASSERT_EQ(l.trace().size(), 1u);
}

TEST(Ledger, FailedTransferLeavesStateUntouched) {
    Ledger l;
    SeededRandom rng(2);
    const Address a = rng.address(), b = rng.address();
    l.fund_genesis(a, eth("0.1"));
    l.close_setup();
    const auto before = l.state();
    EXPECT_EQ(code_of([&] { l.transfer(a, b, eth("0.2")); }), ErrorCode::kInsufficientBalance);
    EXPECT_EQ(l.state(), before);
    EXPECT_EQ(code_of([&] { l.transfer(b, a, Wei{0}); }), ErrorCode::kNoSigningKey);
    EXPECT_EQ(l.state(), before);
}

TEST(Ledger, CounterfactualAddressHasNoKey) {
    Ledger l;
    SeededRandom rng(3);
    const Address deployer = rng.address(), a = rng.address();
    l.install_contract(deployer, keccak256(Bytes{}));
    l.fund_genesis(a, eth("1"));
    l.close_setup();
    const Bytes32 salt = rng.bytes32(), code = keccak256(Bytes{9});
    const Address theta = derive_onetime_address(deployer, salt, code);
    l.transfer(a, theta, eth("0.4"));
    EXPECT_EQ(code_of([&] { l.transfer(theta, a, eth("0.1")); }), ErrorCode::kNoSigningKey);
    EXPECT_EQ(code_of([&] { l.contract_withdraw(theta, a, eth("0.1"), a); }), ErrorCode::kNotAContract);
    EXPECT_EQ(code_of([&] { l.deploy_at(a, salt, code, a); }), ErrorCode::kUnauthorizedDeployer);

    EXPECT_EQ(l.deploy_at(deployer, salt, code, deployer), theta);
    EXPECT_EQ(l.balance(theta), eth("0.4"));  // funds sent before deployment survive it
    EXPECT_EQ(code_of([&] { l.deploy_at(deployer, salt, code, deployer); }), ErrorCode::kAddressOccupied);
    EXPECT_EQ(code_of([&] { l.contract_withdraw(theta, a, eth("0.4"), a); }), ErrorCode::kUnauthorizedCaller);
    EXPECT_EQ(code_of([&] { l.contract_withdraw(theta, a, eth("0.5"), deployer); }), ErrorCode::kInsufficientBalance);
    const auto tx = l.contract_withdraw(theta, a, eth("0.4"), deployer);
    EXPECT_EQ(tx.kind, TxKind::kContractCall);
    EXPECT_EQ(l.balance(a), eth("1"));
    EXPECT_EQ(l.total_balance(), l.genesis_total());
}

// Property: random operation sequences, including failing ones, conserve
// the genesis total, and a failing operation changes nothing.
TEST(LedgerProperty, ConservationAndTransactionalFailure) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        SeededRandom rng(seed);
        Ledger l;
        const Address deployer = rng.address();
        l.install_contract(deployer, keccak256(Bytes{}));
        std::vector<Address> keyed;
        for (int i = 0; i < 6; ++i) {
            keyed.push_back(rng.address());
            l.fund_genesis(keyed.back(), rng.uniform_wei(0, eth("5")));
        }
        l.close_setup();
        const Bytes32 code = keccak256(Bytes{7});
        std::vector<Bytes32> salts;
        for (int i = 0; i < 4; ++i) salts.push_back(rng.bytes32());
        std::vector<Address> all = keyed;
        for (const auto& s : salts) all.push_back(derive_onetime_address(deployer, s, code));
        all.push_back(deployer);

        for (int step = 0; step < 300; ++step) {
            const auto before = l.state();
            bool failed = false;
            try {
                switch (rng.below(4)) {
                    case 0:
                        l.transfer(all[rng.below(all.size())], all[rng.below(all.size())], rng.uniform_wei(0, eth("2")));
                        break;
                    case 1:
                        l.deploy_at(rng.below(3) == 0 ? keyed[0] : deployer, salts[rng.below(salts.size())], code,
                                    deployer);
                        break;
                    case 2:
                        l.contract_withdraw(all[rng.below(all.size())], all[rng.below(all.size())],
                                            rng.uniform_wei(0, eth("2")), rng.below(2) ? deployer : keyed[0]);
                        break;
                    default: l.advance_blocks(rng.below(3)); break;
                }
            } catch (const Error&) {
                failed = true;
            }
            if (failed) {
                ASSERT_EQ(l.state(), before) << "seed " << seed << " step " << step;
            }
            ASSERT_EQ(l.total_balance(), l.genesis_total()) << "seed " << seed << " step " << step;
        }
    }
}

TEST(Ledger, ExportTraceFiltersKindAndWindow) {
    Ledger l;
    SeededRandom rng(4);
    const Address deployer = rng.address(), a = rng.address(), b = rng.address();
    l.install_contract(deployer, keccak256(Bytes{}));
    l.fund_genesis(a, eth("1"));
    l.close_setup();
    l.advance_to(5);
    l.transfer(a, b, eth("0.1"));
    l.deploy_at(deployer, rng.bytes32(), keccak256(Bytes{}), deployer);
    l.advance_to(9);
    l.transfer(a, b, eth("0.1"));
    EXPECT_EQ(l.export_trace(0, 100).size(), 2u);
    EXPECT_EQ(l.export_trace(6, 9).size(), 1u);
    EXPECT_TRUE(l.export_trace(6, 8).empty());
    EXPECT_EQ(code_of([&] { l.export_trace(9, 6); }), ErrorCode::kInvalidWindow);
}

TEST(TraceCsv, RoundTripsAllKinds) {
    SeededRandom rng(5);
    auto trace = testing::random_trace(rng, {200, 20, 50, 0.3});
    std::stringstream ss;
    write_trace_csv(ss, trace);
    const auto text = ss.str();
    EXPECT_EQ(text.substr(0, text.find('\n')), "block,timestamp,from,to,value_wei,kind");
    EXPECT_EQ(parse_trace_csv(ss), trace);
}

TEST(TraceCsv, AcceptsCrlfAndReportsBadLines) {
    std::istringstream ok(
        "block,timestamp,from,to,value_wei,kind\r\n"
        "1,2,0x00000000000000000000000000000000000000a1,0x00000000000000000000000000000000000000a2,5,transfer\r\n");
    EXPECT_EQ(parse_trace_csv(ok).size(), 1u);
    std::istringstream bad_header("a,b\n");
    EXPECT_EQ(code_of([&] { parse_trace_csv(bad_header); }), ErrorCode::kParse);
    std::istringstream bad_kind(
        "block,timestamp,from,to,value_wei,kind\n"
        "1,2,0x00000000000000000000000000000000000000a1,0x00000000000000000000000000000000000000a2,5,mint\n");
    try {
        parse_trace_csv(bad_kind);
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::kParse);
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
    }
}

}  // namespace
}  // namespace sealbid

// Copyright 2026 The sealbid Authors
// SPDX-License-Identifier: Apache-2.0

#include "sealbid/ledger.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <string>

#include "sealbid/error.hpp"
#include "sealbid/keccak.hpp"

namespace sealbid {

namespace {

constexpr std::string_view kTraceHeader = "block,timestamp,from,to,value_wei,kind";

std::uint64_t parse_u64(std::string_view text, std::size_t line) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw Error(ErrorCode::kParse, "trace line " + std::to_string(line) + ": bad integer '" + std::string(text) + "'");
    }
    return v;
}

}  // namespace

std::string_view to_string(TxKind kind) noexcept {
    switch (kind) {
        case TxKind::kTransfer: return "transfer";
        case TxKind::kDeploy: return "deploy";
        case TxKind::kContractCall: return "contract-call";
    }
    return "transfer";
}

std::optional<TxKind> parse_tx_kind(std::string_view text) noexcept {
    if (text == "transfer") return TxKind::kTransfer;
    if (text == "deploy") return TxKind::kDeploy;
    if (text == "contract-call") return TxKind::kContractCall;
    return std::nullopt;
}

Address derive_onetime_address(const Address& deployer, const Bytes32& salt32, const Bytes32& bytecode_hash) {
    std::array<std::uint8_t, 1 + 20 + 32 + 32> preimage{};
    preimage[0] = 0xff;
    std::copy(deployer.begin(), deployer.end(), preimage.begin() + 1);
    std::copy(salt32.begin(), salt32.end(), preimage.begin() + 21);
    std::copy(bytecode_hash.begin(), bytecode_hash.end(), preimage.begin() + 53);
    auto digest = keccak256(preimage);
    Address out;
    std::copy(digest.begin() + 12, digest.end(), out.bytes.begin());
    return out;
}

Bytes32 reduce_salt(ByteView salt) { return keccak256(salt); }

Ledger::Ledger(LedgerOptions options) : options_{options} {
    state_.clock = Clock{0, options_.genesis_timestamp};
}

Account& Ledger::touch(const Address& addr) { return state_.accounts[addr]; }

Transaction Ledger::append(const Address& from, const Address& to, const Wei& value, TxKind kind) {
    Transaction tx{state_.clock.block, state_.clock.timestamp, from, to, value, kind};
    state_.trace.push_back(tx);
    return tx;
}

void Ledger::fund_genesis(const Address& addr, const Wei& amount) {
    if (!setup_open_) throw Error(ErrorCode::kSetupClosed, "fund_genesis after setup stage closed");
    Wei new_total = genesis_total_ + amount;  // may throw before any mutation
    auto& acct = touch(addr);
    acct.balance += amount;
    if (!acct.code) acct.keyed = true;
    genesis_total_ = new_total;
}

void Ledger::install_contract(const Address& addr, const Bytes32& code_hash) {
    if (!setup_open_) throw Error(ErrorCode::kSetupClosed, "install_contract after setup stage closed");
    if (has_code(addr)) throw Error(ErrorCode::kAddressOccupied, "code already present at " + addr.hex());
    auto& acct = touch(addr);
    acct.code = code_hash;
    acct.owner = addr;
    acct.keyed = false;
    deployers_.insert(addr);
}

void Ledger::open_account(const Address& addr) {
    if (has_code(addr)) throw Error(ErrorCode::kAddressOccupied, "cannot key a contract address " + addr.hex());
    touch(addr).keyed = true;
}

Transaction Ledger::transfer(const Address& from, const Address& to, const Wei& value) {
    auto it = state_.accounts.find(from);
    if (it == state_.accounts.end() || !it->second.keyed) {
        throw Error(ErrorCode::kNoSigningKey, "no key can sign for " + from.hex());
    }
    if (it->second.balance < value) {
        throw Error(ErrorCode::kInsufficientBalance, "balance of " + from.hex() + " below " + value.str());
    }
    it->second.balance -= value;
    it->second.nonce += 1;
    touch(to).balance += value;
    return append(from, to, value, TxKind::kTransfer);
}

Address Ledger::deploy_at(const Address& deployer, const Bytes32& salt32, const Bytes32& bytecode_hash,
                          const Address& owner) {
    if (!deployers_.contains(deployer)) {
        throw Error(ErrorCode::kUnauthorizedDeployer, deployer.hex() + " may not deploy fund-binding contracts");
    }
    const Address target = derive_onetime_address(deployer, salt32, bytecode_hash);
    if (has_code(target)) throw Error(ErrorCode::kAddressOccupied, "code already present at " + target.hex());

    auto& acct = touch(target);
    acct.code = bytecode_hash;
    acct.owner = owner;
    acct.keyed = false;
    state_.accounts[deployer].nonce += 1;
    append(deployer, target, 0, TxKind::kDeploy);
    return target;
}

Transaction Ledger::contract_withdraw(const Address& contract, const Address& to, const Wei& amount,
                                      const Address& caller) {
    auto it = state_.accounts.find(contract);
    if (it == state_.accounts.end() || !it->second.code) {
        throw Error(ErrorCode::kNotAContract, contract.hex() + " has no code");
    }
    if (it->second.owner != caller) {
        throw Error(ErrorCode::kUnauthorizedCaller, caller.hex() + " does not own " + contract.hex());
    }
    if (it->second.balance < amount) {
        throw Error(ErrorCode::kInsufficientBalance, "contract balance below " + amount.str());
    }
    it->second.balance -= amount;
    touch(to).balance += amount;
    return append(contract, to, amount, TxKind::kContractCall);
}

void Ledger::advance_blocks(std::uint64_t n, std::uint64_t seconds_per_block) {
    state_.clock.block += n;
    state_.clock.timestamp += n * seconds_per_block;
}

void Ledger::advance_to(std::uint64_t block) {
    if (block > state_.clock.block) advance_blocks(block - state_.clock.block);
}

std::vector<TraceRecord> Ledger::export_trace(std::uint64_t from_block, std::uint64_t to_block) const {
    if (from_block > to_block) {
        throw Error(ErrorCode::kInvalidWindow,
                    "window " + std::to_string(from_block) + ".." + std::to_string(to_block) + " is inverted");
    }
    std::vector<TraceRecord> out;
    for (const auto& tx : state_.trace) {
        if (tx.kind == TxKind::kTransfer && tx.block >= from_block && tx.block <= to_block) out.push_back(tx);
    }
    return out;
}

Wei Ledger::balance(const Address& addr) const {
    auto it = state_.accounts.find(addr);
    return it == state_.accounts.end() ? Wei{0} : it->second.balance;
}

const Account* Ledger::find(const Address& addr) const {
    auto it = state_.accounts.find(addr);
    return it == state_.accounts.end() ? nullptr : &it->second;
}

bool Ledger::has_code(const Address& addr) const {
    const auto* acct = find(addr);
    return acct != nullptr && acct->code.has_value();
}

Wei Ledger::total_balance() const {
    Wei total = 0;
    for (const auto& [_, acct] : state_.accounts) total += acct.balance;
    return total;
}

std::string trace_csv_line(const TraceRecord& r) {
    std::string line = std::to_string(r.block);
    line += ',';
    line += std::to_string(r.timestamp);
    line += ',';
    line += r.from.hex();
    line += ',';
    line += r.to.hex();
    line += ',';
    line += r.value.str();
    line += ',';
    line += to_string(r.kind);
    return line;
}

void write_trace_csv(std::ostream& out, std::span<const TraceRecord> records) {
    out << kTraceHeader << '\n';
    for (const auto& r : records) out << trace_csv_line(r) << '\n';
}

std::vector<TraceRecord> parse_trace_csv(std::istream& in) {
    std::vector<TraceRecord> out;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != kTraceHeader) {
                throw Error(ErrorCode::kParse, "trace header must be '" + std::string(kTraceHeader) + "'");
            }
            header_seen = true;
            continue;
        }
        std::vector<std::string_view> fields;
        std::string_view rest = line;
        for (;;) {
            auto comma = rest.find(',');
            fields.push_back(rest.substr(0, comma));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        if (fields.size() != 6) {
            throw Error(ErrorCode::kParse, "trace line " + std::to_string(line_no) + ": expected 6 fields");
        }
        auto kind = parse_tx_kind(fields[5]);
        if (!kind) throw Error(ErrorCode::kParse, "trace line " + std::to_string(line_no) + ": unknown kind");
        try {
            out.push_back(TraceRecord{parse_u64(fields[0], line_no), parse_u64(fields[1], line_no),
                                      Address::from_hex(fields[2]), Address::from_hex(fields[3]),
                                      parse_wei(fields[4]), *kind});
        } catch (const Error& e) {
            throw Error(ErrorCode::kParse, "trace line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (!header_seen) throw Error(ErrorCode::kParse, "trace is missing its header line");
    return out;
}

}  // namespace sealbid

// Copyright 2026 The sealbid Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string_view>
#include <vector>

#include "sealbid/types.hpp"

namespace sealbid {

enum class TxKind { kTransfer, kDeploy, kContractCall };

std::string_view to_string(TxKind kind) noexcept;
std::optional<TxKind> parse_tx_kind(std::string_view text) noexcept;

struct Clock {
    std::uint64_t block = 0;
    std::uint64_t timestamp = 0;
    friend auto operator<=>(const Clock&, const Clock&) = default;
};

struct Account {
    Wei balance = 0;
    std::uint64_t nonce = 0;
    std::optional<Bytes32> code;   // bytecode-hash marker, set once on deployment
    std::optional<Address> owner;  // only the owner may move a contract's funds
    bool keyed = false;            // an external key holder can sign transfers from it

    friend bool operator==(const Account&, const Account&) = default;
};

/// One ledger entry. Bidding transfers and ordinary transfers share this
/// shape; nothing marks a transfer as auction-related.
struct Transaction {
    std::uint64_t block = 0;
    std::uint64_t timestamp = 0;
    Address from;
    Address to;
    Wei value = 0;
    TxKind kind = TxKind::kTransfer;

    friend bool operator==(const Transaction&, const Transaction&) = default;
};

using TraceRecord = Transaction;

struct LedgerState {
    std::map<Address, Account> accounts;
    std::vector<Transaction> trace;
    Clock clock;

    friend bool operator==(const LedgerState&, const LedgerState&) = default;
};

struct LedgerOptions {
    std::uint64_t genesis_timestamp = 1628985600;  // 2021-08-15T00:00:00Z
    std::uint64_t block_time = 13;
};

/// CREATE2: last 20 bytes of keccak256(0xff || deployer || salt32 || code_hash).
Address derive_onetime_address(const Address& deployer, const Bytes32& salt32, const Bytes32& bytecode_hash);

/// Reduces a variable-length salt to the 32 bytes CREATE2 takes.
Bytes32 reduce_salt(ByteView salt);

/// Account-model ledger. Every mutating call either succeeds completely or
/// throws `Error` and leaves the state untouched. Fees are not burned, so the
/// sum of balances always equals the genesis funding.
class Ledger {
  public:
    explicit Ledger(LedgerOptions options = {});

    // Setup stage -----------------------------------------------------------
    void fund_genesis(const Address& addr, const Wei& amount);
    /// Places a contract at genesis. It owns itself and is an authorized
    /// deployer of fund-binding contracts.
    void install_contract(const Address& addr, const Bytes32& code_hash);
    void close_setup() noexcept { setup_open_ = false; }
    bool in_setup() const noexcept { return setup_open_; }

    // Simulation ------------------------------------------------------------
    /// Registers an externally owned address (someone holds its key).
    void open_account(const Address& addr);
    Transaction transfer(const Address& from, const Address& to, const Wei& value);
    Address deploy_at(const Address& deployer, const Bytes32& salt32, const Bytes32& bytecode_hash,
                      const Address& owner);
    Transaction contract_withdraw(const Address& contract, const Address& to, const Wei& amount,
                                  const Address& caller);

    void advance_blocks(std::uint64_t n) { advance_blocks(n, options_.block_time); }
    void advance_blocks(std::uint64_t n, std::uint64_t seconds_per_block);
    /// Advances until the clock reads `block` (no-op if already there or past).
    void advance_to(std::uint64_t block);

    // Queries ---------------------------------------------------------------
    /// Transfer-kind transactions with from_block <= block <= to_block.
    std::vector<TraceRecord> export_trace(std::uint64_t from_block, std::uint64_t to_block) const;

    Clock clock() const noexcept { return state_.clock; }
    Wei balance(const Address& addr) const;
    const Account* find(const Address& addr) const;
    bool has_code(const Address& addr) const;
    Wei total_balance() const;
    const Wei& genesis_total() const noexcept { return genesis_total_; }
    const LedgerState& state() const noexcept { return state_; }
    const std::vector<Transaction>& trace() const noexcept { return state_.trace; }
    const LedgerOptions& options() const noexcept { return options_; }

  private:
    Account& touch(const Address& addr);
    Transaction append(const Address& from, const Address& to, const Wei& value, TxKind kind);

    LedgerOptions options_;
    LedgerState state_;
    Wei genesis_total_ = 0;
    std::set<Address> deployers_;
    bool setup_open_ = true;
};

// Trace CSV: header `block,timestamp,from,to,value_wei,kind`.
void write_trace_csv(std::ostream& out, std::span<const TraceRecord> records);
std::string trace_csv_line(const TraceRecord& record);
std::vector<TraceRecord> parse_trace_csv(std::istream& in);

}  // namespace sealbid

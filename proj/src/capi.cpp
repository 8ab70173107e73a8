// Copyright 2026 The sealbid Authors
// SPDX-License-Identifier: Apache-2.0

#include "sealbid/sealbid.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "sealbid/anonymity.hpp"
#include "sealbid/auction.hpp"
#include "sealbid/error.hpp"
#include "sealbid/fee_model.hpp"
#include "sealbid/ledger.hpp"
#include "sealbid/scenario.hpp"

struct sb_ledger {
    sealbid::Ledger ledger;
};

struct sb_report {
    std::string json;
    std::string trace_csv;
};

struct sb_analysis {
    std::string histogram_csv;
    std::string summary_json;
    std::vector<std::string> warnings;
};

namespace {

using sealbid::Error;
using sealbid::ErrorCode;

thread_local std::string g_last_error;
thread_local std::string g_last_code;

sb_status fail(sb_status status, std::string message, std::string code = {}) {
    g_last_error = std::move(message);
    g_last_code = std::move(code);
    return status;
}

sb_status status_for(ErrorCode code, sb_status parse_status) {
    switch (code) {
        case ErrorCode::kConfig:
        case ErrorCode::kUnknownOperation:
        case ErrorCode::kUnknownVariant: return SB_ERR_CONFIG;
        case ErrorCode::kIo: return SB_ERR_IO;
        case ErrorCode::kParse: return parse_status;
        default: return SB_ERR_DOMAIN;
    }
}

/// Runs `fn`, translating exceptions into a status. `parse_status` is what a
/// kParse failure means for this entry point.
template <typename Fn>
sb_status guard(Fn&& fn, sb_status parse_status = SB_ERR_INVALID_ARGUMENT) noexcept {
    try {
        g_last_error.clear();
        g_last_code.clear();
        fn();
        return SB_OK;
    } catch (const Error& e) {
        return fail(status_for(e.code(), parse_status), e.what(), std::string(sealbid::to_string(e.code())));
    } catch (const std::overflow_error& e) {
        return fail(SB_ERR_INVALID_ARGUMENT, std::string("value out of range: ") + e.what());
    } catch (const std::range_error& e) {
        return fail(SB_ERR_INVALID_ARGUMENT, std::string("value out of range: ") + e.what());
    } catch (const std::bad_alloc&) {
        return fail(SB_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(SB_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(SB_ERR_INTERNAL, "unknown failure");
    }
}

template <typename... Ptrs>
bool any_null(Ptrs... ptrs) {
    return ((ptrs == nullptr) || ...);
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

sb_status null_argument() { return fail(SB_ERR_INVALID_ARGUMENT, "null argument"); }

sealbid::BucketSpec bucket_spec(const sb_bucket_options* opts) {
    if (opts == nullptr || opts->geometric == 0) return sealbid::BucketSpec::defaults();
    if (opts->lo_eth == nullptr || opts->hi_eth == nullptr) {
        throw Error(ErrorCode::kInvalidBuckets, "geometric buckets need lo and hi");
    }
    return sealbid::geometric_buckets(sealbid::parse_eth(opts->lo_eth), sealbid::parse_eth(opts->hi_eth), opts->ratio);
}

sb_analysis* make_analysis(const std::vector<sealbid::TraceRecord>& trace, std::uint64_t from, std::uint64_t to,
                           const sb_bucket_options* buckets) {
    sealbid::Window window = sealbid::Window::blocks(from, to);
    const auto spec = bucket_spec(buckets);
    const auto result = sealbid::analyze_trace(trace, window, spec);
    auto* a = new sb_analysis;
    a->histogram_csv = sealbid::histogram_csv(result.spec, result.histogram);
    a->summary_json = sealbid::summary_json(result);
    a->warnings = result.warnings;
    return a;
}

}  // namespace

extern "C" {

const char* sb_last_error(void) { return g_last_error.c_str(); }
const char* sb_last_error_code(void) { return g_last_code.c_str(); }
void sb_string_free(char* s) { std::free(s); }
const char* sb_version(void) { return "0.1.0"; }

// ---- ledger ----------------------------------------------------------------

sb_status sb_ledger_new(sb_ledger** out) {
    if (out == nullptr) return null_argument();
    return guard([&] { *out = new sb_ledger; });
}

void sb_ledger_free(sb_ledger* ledger) { delete ledger; }

sb_status sb_ledger_fund_genesis(sb_ledger* ledger, const char* address, const char* wei) {
    if (any_null(ledger, address, wei)) return null_argument();
    return guard([&] { ledger->ledger.fund_genesis(sealbid::Address::from_hex(address), sealbid::parse_wei(wei)); });
}

sb_status sb_ledger_close_setup(sb_ledger* ledger) {
    if (ledger == nullptr) return null_argument();
    return guard([&] { ledger->ledger.close_setup(); });
}

sb_status sb_ledger_transfer(sb_ledger* ledger, const char* from, const char* to, const char* wei) {
    if (any_null(ledger, from, to, wei)) return null_argument();
    return guard([&] {
        ledger->ledger.transfer(sealbid::Address::from_hex(from), sealbid::Address::from_hex(to),
                                sealbid::parse_wei(wei));
    });
}

sb_status sb_ledger_advance_blocks(sb_ledger* ledger, uint64_t n) {
    if (ledger == nullptr) return null_argument();
    return guard([&] { ledger->ledger.advance_blocks(n); });
}

sb_status sb_ledger_balance(const sb_ledger* ledger, const char* address, char** wei_out) {
    if (any_null(ledger, address, wei_out)) return null_argument();
    return guard([&] { *wei_out = dup(ledger->ledger.balance(sealbid::Address::from_hex(address)).str()); });
}

sb_status sb_ledger_total_balance(const sb_ledger* ledger, char** wei_out) {
    if (any_null(ledger, wei_out)) return null_argument();
    return guard([&] { *wei_out = dup(ledger->ledger.total_balance().str()); });
}

sb_status sb_ledger_trace_csv(const sb_ledger* ledger, char** csv_out) {
    if (any_null(ledger, csv_out)) return null_argument();
    return guard([&] {
        std::ostringstream out;
        sealbid::write_trace_csv(out, ledger->ledger.trace());
        *csv_out = dup(out.str());
    });
}

// ---- scenarios -------------------------------------------------------------

sb_status sb_run_scenario(const char* config_json, const sb_run_options* options, sb_report** out) {
    if (any_null(config_json, out)) return null_argument();
    return guard(
        [&] {
            auto scenario = sealbid::parse_scenario(config_json);
            if (options != nullptr) {
                if (options->has_seed != 0) scenario.seed = options->seed;
                if (options->gas_price_gwei > 0) scenario.market.gas_price_gwei = options->gas_price_gwei;
                if (options->eth_usd > 0) scenario.market.eth_usd = options->eth_usd;
            }
            auto outcome = sealbid::run_scenario(scenario);
            *out = new sb_report{std::move(outcome.report_json), std::move(outcome.trace_csv)};
        },
        SB_ERR_CONFIG);
}

void sb_report_free(sb_report* report) { delete report; }
const char* sb_report_json(const sb_report* report) { return report ? report->json.c_str() : nullptr; }
const char* sb_report_trace_csv(const sb_report* report) { return report ? report->trace_csv.c_str() : nullptr; }

// ---- fees ------------------------------------------------------------------

sb_status sb_fee_tables(double gas_price_gwei, double eth_usd, const char* schedule_json, int as_json, char** out) {
    if (out == nullptr) return null_argument();
    return guard(
        [&] {
            const auto schedule = schedule_json ? sealbid::FeeSchedule::from_json(schedule_json)
                                                : sealbid::FeeSchedule::defaults();
            const sealbid::MarketParams params{gas_price_gwei, eth_usd};
            params.validate();
            *out = dup(as_json ? sealbid::render_fee_tables_json(schedule, params)
                               : sealbid::render_fee_tables(schedule, params));
        },
        SB_ERR_CONFIG);
}

sb_status sb_fee_usd_cents(uint64_t gas, double gas_price_gwei, double eth_usd, int64_t* cents_out) {
    if (cents_out == nullptr) return null_argument();
    return guard([&] { *cents_out = sealbid::fee_usd(gas, sealbid::MarketParams{gas_price_gwei, eth_usd}).cents; });
}

// ---- anonymity -------------------------------------------------------------

sb_status sb_analyze_trace_file(const char* path, uint64_t from_block, uint64_t to_block,
                                const sb_bucket_options* buckets, sb_analysis** out) {
    if (any_null(path, out)) return null_argument();
    return guard(
        [&] { *out = make_analysis(sealbid::read_trace_file(path), from_block, to_block, buckets); }, SB_ERR_DOMAIN);
}

sb_status sb_analyze_trace_csv(const char* csv, uint64_t from_block, uint64_t to_block,
                               const sb_bucket_options* buckets, sb_analysis** out) {
    if (any_null(csv, out)) return null_argument();
    return guard(
        [&] {
            std::istringstream in(csv);
            *out = make_analysis(sealbid::parse_trace_csv(in), from_block, to_block, buckets);
        },
        SB_ERR_DOMAIN);
}

void sb_analysis_free(sb_analysis* analysis) { delete analysis; }
const char* sb_analysis_histogram_csv(const sb_analysis* a) { return a ? a->histogram_csv.c_str() : nullptr; }
const char* sb_analysis_summary_json(const sb_analysis* a) { return a ? a->summary_json.c_str() : nullptr; }
size_t sb_analysis_warning_count(const sb_analysis* a) { return a ? a->warnings.size() : 0; }
const char* sb_analysis_warning(const sb_analysis* a, size_t index) {
    return (a && index < a->warnings.size()) ? a->warnings[index].c_str() : nullptr;
}

// ---- address derivation ----------------------------------------------------

sb_status sb_derive_onetime_address(const char* deployer, uint64_t auction_id, const char* bidder,
                                    const char* random32, const char* code_hash, char** address_out) {
    if (any_null(deployer, bidder, random32, address_out)) return null_argument();
    return guard([&] {
        const sealbid::Salt salt{auction_id, sealbid::Address::from_hex(bidder), sealbid::Bytes32::from_hex(random32)};
        const auto hash = code_hash ? sealbid::Bytes32::from_hex(code_hash) : sealbid::fundbinding_code_hash();
        *address_out = dup(sealbid::derive_onetime_address(sealbid::Address::from_hex(deployer), salt.salt32(), hash).hex());
    });
}

}  // extern "C"

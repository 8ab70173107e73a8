/* Copyright 2026 The sealbid Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the sealbid simulator. Handles are opaque; every call
 * returns an sb_status and leaves a message for sb_last_error() on failure.
 * Strings returned through `char**` are owned by the caller and released
 * with sb_string_free().
 */
#ifndef SEALBID_SEALBID_H_
#define SEALBID_SEALBID_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SB_API __declspec(dllexport)
#else
#define SB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sb_status {
    SB_OK = 0,
    SB_ERR_INVALID_ARGUMENT = 1, /* null pointer, malformed hex or decimal */
    SB_ERR_CONFIG = 2,           /* scenario or schedule rejected; message names the field */
    SB_ERR_DOMAIN = 3,           /* protocol or ledger rule violated */
    SB_ERR_IO = 4,
    SB_ERR_INTERNAL = 5
} sb_status;

/* Thread-local; valid until the next call on the same thread. */
SB_API const char* sb_last_error(void);
/* Domain error name for the last failure ("InsufficientBalance", ...), or "". */
SB_API const char* sb_last_error_code(void);
SB_API void sb_string_free(char* s);
SB_API const char* sb_version(void);

/* ---- ledger ------------------------------------------------------------ */

typedef struct sb_ledger sb_ledger;

SB_API sb_status sb_ledger_new(sb_ledger** out);
SB_API void sb_ledger_free(sb_ledger* ledger);
/* Amounts are decimal wei strings; addresses 0x-prefixed hex. */
SB_API sb_status sb_ledger_fund_genesis(sb_ledger* ledger, const char* address, const char* wei);
SB_API sb_status sb_ledger_close_setup(sb_ledger* ledger);
SB_API sb_status sb_ledger_transfer(sb_ledger* ledger, const char* from, const char* to, const char* wei);
SB_API sb_status sb_ledger_advance_blocks(sb_ledger* ledger, uint64_t n);
SB_API sb_status sb_ledger_balance(const sb_ledger* ledger, const char* address, char** wei_out);
SB_API sb_status sb_ledger_total_balance(const sb_ledger* ledger, char** wei_out);
SB_API sb_status sb_ledger_trace_csv(const sb_ledger* ledger, char** csv_out);

/* ---- scenarios --------------------------------------------------------- */

typedef struct sb_report sb_report;

typedef struct sb_run_options {
    int has_seed;
    uint64_t seed;
    double gas_price_gwei; /* <= 0 keeps the config value */
    double eth_usd;        /* <= 0 keeps the config value */
} sb_run_options;

SB_API sb_status sb_run_scenario(const char* config_json, const sb_run_options* options, sb_report** out);
SB_API void sb_report_free(sb_report* report);
/* Borrowed pointers, valid for the report's lifetime. */
SB_API const char* sb_report_json(const sb_report* report);
SB_API const char* sb_report_trace_csv(const sb_report* report);

/* ---- fees -------------------------------------------------------------- */

/* schedule_json may be NULL for the default schedule. */
SB_API sb_status sb_fee_tables(double gas_price_gwei, double eth_usd, const char* schedule_json, int as_json,
                               char** out);
SB_API sb_status sb_fee_usd_cents(uint64_t gas, double gas_price_gwei, double eth_usd, int64_t* cents_out);

/* ---- anonymity --------------------------------------------------------- */

typedef struct sb_analysis sb_analysis;

typedef struct sb_bucket_options {
    int geometric;       /* 0: default ranges */
    const char* lo_eth;  /* geometric only */
    const char* hi_eth;
    double ratio;
} sb_bucket_options;

/* Plain or gzip CSV trace file. buckets may be NULL. */
SB_API sb_status sb_analyze_trace_file(const char* path, uint64_t from_block, uint64_t to_block,
                                       const sb_bucket_options* buckets, sb_analysis** out);
SB_API sb_status sb_analyze_trace_csv(const char* csv, uint64_t from_block, uint64_t to_block,
                                      const sb_bucket_options* buckets, sb_analysis** out);
SB_API void sb_analysis_free(sb_analysis* analysis);
SB_API const char* sb_analysis_histogram_csv(const sb_analysis* analysis);
SB_API const char* sb_analysis_summary_json(const sb_analysis* analysis);
SB_API size_t sb_analysis_warning_count(const sb_analysis* analysis);
SB_API const char* sb_analysis_warning(const sb_analysis* analysis, size_t index);

/* ---- address derivation ------------------------------------------------ */

/* Fund-binding address for salt auction_id(8 BE) || bidder(20) || random(32)
 * under `deployer` and the given 32-byte code hash (NULL: the simulator's
 * fund-binding code). */
SB_API sb_status sb_derive_onetime_address(const char* deployer, uint64_t auction_id, const char* bidder,
                                           const char* random32, const char* code_hash, char** address_out);

#ifdef __cplusplus
}
#endif

#endif /* SEALBID_SEALBID_H_ */

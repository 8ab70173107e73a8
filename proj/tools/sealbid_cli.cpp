// Copyright 2026 The sealbid Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Talks to the simulator only through the C API.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "sealbid/sealbid.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

int report_failure(sb_status status) {
    const std::string code = sb_last_error_code();
    std::cerr << "error";
    if (!code.empty()) std::cerr << " [" << code << "]";
    std::cerr << ": " << sb_last_error() << '\n';
    return status == SB_ERR_INVALID_ARGUMENT ? kExitUsage : kExitDomain;
}

struct OwnedString {
    char* p = nullptr;
    ~OwnedString() { sb_string_free(p); }
};

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    return static_cast<bool>(out);
}

bool prepare_out_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) std::cerr << "error: cannot create " << dir << ": " << ec.message() << '\n';
    return !ec;
}

struct RunArgs {
    std::string config;
    std::optional<std::uint64_t> seed;
    double gas_price = 0;
    double eth_usd = 0;
    std::string out;
};

int cmd_run(const RunArgs& a) {
    auto text = read_file(a.config);
    if (!text) {
        std::cerr << "error: cannot read " << a.config << '\n';
        return kExitUsage;
    }
    sb_run_options opts{};
    opts.has_seed = a.seed.has_value() ? 1 : 0;
    opts.seed = a.seed.value_or(0);
    opts.gas_price_gwei = a.gas_price;
    opts.eth_usd = a.eth_usd;
    sb_report* raw = nullptr;
    if (auto st = sb_run_scenario(text->c_str(), &opts, &raw); st != SB_OK) return report_failure(st);
    std::unique_ptr<sb_report, decltype(&sb_report_free)> report(raw, sb_report_free);

    if (a.out.empty()) {
        std::cout << sb_report_json(report.get());
        return kExitOk;
    }
    if (!prepare_out_dir(a.out)) return kExitDomain;
    const std::filesystem::path dir(a.out);
    if (!write_file(dir / "report.json", sb_report_json(report.get())) ||
        !write_file(dir / "trace.csv", sb_report_trace_csv(report.get()))) {
        std::cerr << "error: cannot write to " << a.out << '\n';
        return kExitDomain;
    }
    std::cout << "wrote " << (dir / "report.json").string() << " and " << (dir / "trace.csv").string() << '\n';
    return kExitOk;
}

struct FeesArgs {
    double gas_price = 45;
    double eth_usd = 3200;
    std::string schedule;
    bool json = false;
    std::string out;
};

int cmd_fees(const FeesArgs& a) {
    std::optional<std::string> schedule;
    if (!a.schedule.empty()) {
        schedule = read_file(a.schedule);
        if (!schedule) {
            std::cerr << "error: cannot read " << a.schedule << '\n';
            return kExitUsage;
        }
    }
    const char* sched = schedule ? schedule->c_str() : nullptr;
    OwnedString text;
    if (auto st = sb_fee_tables(a.gas_price, a.eth_usd, sched, a.json ? 1 : 0, &text.p); st != SB_OK) {
        return report_failure(st);
    }
    std::cout << text.p;
    if (!a.out.empty()) {
        OwnedString other;
        if (auto st = sb_fee_tables(a.gas_price, a.eth_usd, sched, a.json ? 0 : 1, &other.p); st != SB_OK) {
            return report_failure(st);
        }
        if (!prepare_out_dir(a.out)) return kExitDomain;
        const std::filesystem::path dir(a.out);
        const std::string& json_text = a.json ? text.p : other.p;
        const std::string& plain_text = a.json ? other.p : text.p;
        if (!write_file(dir / "fees.json", json_text) || !write_file(dir / "fees.txt", plain_text)) {
            std::cerr << "error: cannot write to " << a.out << '\n';
            return kExitDomain;
        }
    }
    return kExitOk;
}

struct AnalyzeArgs {
    std::string trace;
    std::uint64_t from = 0;
    std::uint64_t to = 0;
    std::string lo;
    std::string hi;
    double ratio = 0;
    std::string out;
};

int cmd_analyze(const AnalyzeArgs& a) {
    sb_bucket_options buckets{};
    if (a.ratio != 0 || !a.lo.empty() || !a.hi.empty()) {
        if (a.lo.empty() || a.hi.empty() || a.ratio == 0) {
            std::cerr << "error: --ratio, --lo and --hi go together\n";
            return kExitUsage;
        }
        buckets.geometric = 1;
        buckets.lo_eth = a.lo.c_str();
        buckets.hi_eth = a.hi.c_str();
        buckets.ratio = a.ratio;
    }
    sb_analysis* raw = nullptr;
    if (auto st = sb_analyze_trace_file(a.trace.c_str(), a.from, a.to, &buckets, &raw); st != SB_OK) {
        return report_failure(st);
    }
    std::unique_ptr<sb_analysis, decltype(&sb_analysis_free)> analysis(raw, sb_analysis_free);
    for (size_t i = 0; i < sb_analysis_warning_count(analysis.get()); ++i) {
        std::cerr << "warning: " << sb_analysis_warning(analysis.get(), i) << '\n';
    }
    std::cout << sb_analysis_histogram_csv(analysis.get());
    if (!a.out.empty()) {
        if (!prepare_out_dir(a.out)) return kExitDomain;
        const std::filesystem::path dir(a.out);
        if (!write_file(dir / "histogram.csv", sb_analysis_histogram_csv(analysis.get())) ||
            !write_file(dir / "summary.json", sb_analysis_summary_json(analysis.get()))) {
            std::cerr << "error: cannot write to " << a.out << '\n';
            return kExitDomain;
        }
    }
    return kExitOk;
}

struct DeriveArgs {
    std::string deployer;
    std::uint64_t auction_id = 0;
    std::string bidder;
    std::string random;
    std::string code_hash;
};

int cmd_derive(const DeriveArgs& a) {
    OwnedString addr;
    const char* hash = a.code_hash.empty() ? nullptr : a.code_hash.c_str();
    if (auto st = sb_derive_onetime_address(a.deployer.c_str(), a.auction_id, a.bidder.c_str(), a.random.c_str(), hash,
                                            &addr.p);
        st != SB_OK) {
        return report_failure(st);
    }
    std::cout << addr.p << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sealed-bid auction simulator with fund binding"};
    app.require_subcommand(1);
    app.set_version_flag("--version", sb_version());

    RunArgs run;
    auto* run_cmd = app.add_subcommand("run", "Run an auction scenario end to end");
    run_cmd->add_option("--config", run.config, "Scenario JSON file")->required()->check(CLI::ExistingFile);
    run_cmd->add_option("--seed", run.seed, "Override the scenario seed");
    run_cmd->add_option("--gas-price", run.gas_price, "Gas price in gwei")->check(CLI::PositiveNumber);
    run_cmd->add_option("--eth-usd", run.eth_usd, "USD per ETH")->check(CLI::PositiveNumber);
    run_cmd->add_option("--out", run.out, "Directory for report.json and trace.csv (default: report to stdout)");

    FeesArgs fees;
    auto* fees_cmd = app.add_subcommand("fees", "Print the gas and fee tables");
    fees_cmd->add_option("--gas-price", fees.gas_price, "Gas price in gwei")->capture_default_str()->check(CLI::PositiveNumber);
    fees_cmd->add_option("--eth-usd", fees.eth_usd, "USD per ETH")->capture_default_str()->check(CLI::PositiveNumber);
    fees_cmd->add_option("--schedule", fees.schedule, "JSON {operation_tag: gas} overrides")->check(CLI::ExistingFile);
    fees_cmd->add_flag("--json", fees.json, "Emit JSON instead of text");
    fees_cmd->add_option("--out", fees.out, "Directory for fees.txt and fees.json");

    AnalyzeArgs an;
    auto* an_cmd = app.add_subcommand("analyze", "Candidate one-time addresses and balance histogram of a trace");
    an_cmd->add_option("--trace", an.trace, "Trace CSV, optionally gzip-compressed")->required()->check(CLI::ExistingFile);
    an_cmd->add_option("--from", an.from, "First block of the bidding window")->required();
    an_cmd->add_option("--to", an.to, "Last block of the bidding window")->required();
    an_cmd->add_option("--lo", an.lo, "Geometric buckets: lowest edge in ETH");
    an_cmd->add_option("--hi", an.hi, "Geometric buckets: upper limit in ETH");
    an_cmd->add_option("--ratio", an.ratio, "Geometric buckets: edge ratio (> 1)");
    an_cmd->add_option("--out", an.out, "Directory for histogram.csv and summary.json");

    DeriveArgs dv;
    auto* dv_cmd = app.add_subcommand("derive-address", "Derive a fund-binding one-time address");
    dv_cmd->add_option("--deployer", dv.deployer, "Auction contract address")->required();
    dv_cmd->add_option("--auction-id", dv.auction_id, "Auction id")->required();
    dv_cmd->add_option("--bidder", dv.bidder, "Bidder reveal address")->required();
    dv_cmd->add_option("--random", dv.random, "32-byte salt randomness, hex")->required();
    dv_cmd->add_option("--code-hash", dv.code_hash, "Fund-binding bytecode hash (default: built-in)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    if (*run_cmd) return cmd_run(run);
    if (*fees_cmd) return cmd_fees(fees);
    if (*an_cmd) return cmd_analyze(an);
    return cmd_derive(dv);
}

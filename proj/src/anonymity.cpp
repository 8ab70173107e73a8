// Copyright 2026 The sealbid Authors
// SPDX-License-Identifier: Apache-2.0

#include "sealbid/anonymity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <zlib.h>

#include "json.hpp"
#include "sealbid/error.hpp"

namespace sealbid {

namespace {

constexpr std::size_t kMaxGeometricBuckets = 4096;

struct AddressHash {
    std::size_t operator()(const Address& a) const noexcept {
        std::size_t h = 0;
        for (std::size_t i = 0; i < sizeof h; ++i) h = (h << 8) | a.bytes[i];
        return h;
    }
};

void require_sorted(std::span<const TraceRecord> trace) {
    for (std::size_t i = 1; i < trace.size(); ++i) {
        if (trace[i].block < trace[i - 1].block) {
            throw Error(ErrorCode::kUnsortedTrace, "trace record " + std::to_string(i) + " at block " +
                                                       std::to_string(trace[i].block) + " follows block " +
                                                       std::to_string(trace[i - 1].block));
        }
    }
}

}  // namespace

Window Window::blocks(std::uint64_t from, std::uint64_t to) {
    Window w;
    w.start.block = from;
    w.end.block = to;
    w.start.timestamp = 0;
    w.end.timestamp = 0;
    return w;
}

void Window::validate() const {
    if (start.block > end.block) {
        throw Error(ErrorCode::kInvalidWindow,
                    "window " + std::to_string(start.block) + ".." + std::to_string(end.block) + " is inverted");
    }
}

BucketSpec BucketSpec::defaults() {
    const char* edges[] = {"0", "0.1", "0.5", "1", "10", "50", "100", "1000"};
    std::vector<Bucket> b;
    for (std::size_t i = 0; i < std::size(edges); ++i) {
        Bucket bucket{parse_eth(edges[i]), std::nullopt};
        if (i + 1 < std::size(edges)) bucket.hi = parse_eth(edges[i + 1]);
        b.push_back(bucket);
    }
    return BucketSpec(std::move(b));
}

BucketSpec::BucketSpec(std::vector<Bucket> buckets) : buckets_{std::move(buckets)} {
    if (buckets_.empty()) throw Error(ErrorCode::kInvalidBuckets, "bucket list is empty");
    for (std::size_t i = 0; i < buckets_.size(); ++i) {
        const auto& b = buckets_[i];
        if (!b.hi) {
            if (i + 1 != buckets_.size()) throw Error(ErrorCode::kInvalidBuckets, "only the last bucket may be unbounded");
            continue;
        }
        if (*b.hi <= b.lo) throw Error(ErrorCode::kInvalidBuckets, "bucket " + std::to_string(i) + " is empty");
        if (i + 1 < buckets_.size() && buckets_[i + 1].lo != *b.hi) {
            throw Error(ErrorCode::kInvalidBuckets, "buckets " + std::to_string(i) + " and " + std::to_string(i + 1) +
                                                        " are not contiguous");
        }
    }
}

std::optional<std::size_t> BucketSpec::locate(const Wei& v) const {
    // Last bucket whose lower edge is <= v.
    auto it = std::upper_bound(buckets_.begin(), buckets_.end(), v,
                               [](const Wei& value, const Bucket& b) { return value < b.lo; });
    if (it == buckets_.begin()) return std::nullopt;
    const auto idx = static_cast<std::size_t>(std::distance(buckets_.begin(), it)) - 1;
    if (!buckets_[idx].contains(v)) return std::nullopt;
    return idx;
}

BucketSpec geometric_buckets(const Wei& lo, const Wei& hi, double ratio) {
    if (!std::isfinite(ratio) || !(ratio > 1.0)) {
        throw Error(ErrorCode::kInvalidRatio, "bucket ratio must be greater than 1");
    }
    if (lo == 0 || lo >= hi) throw Error(ErrorCode::kInvalidBuckets, "geometric buckets need 0 < lo < hi");
    const auto base = lo.convert_to<long double>();
    const long double r = ratio;
    std::vector<Bucket> out;
    Wei edge = lo;
    for (std::size_t k = 1; edge < hi; ++k) {
        if (out.size() == kMaxGeometricBuckets) {
            throw Error(ErrorCode::kInvalidBuckets, "geometric range needs more than " +
                                                        std::to_string(kMaxGeometricBuckets) + " buckets");
        }
        const long double next_ld = std::nearbyint(base * std::pow(r, static_cast<long double>(k)));
        Wei next{boost::multiprecision::cpp_int(next_ld)};
        if (next <= edge) next = edge + 1;  // ratios barely above 1 at tiny lo
        out.push_back(Bucket{edge, next});
        edge = next;
    }
    return BucketSpec(std::move(out));
}

std::vector<Candidate> candidate_addresses(std::span<const TraceRecord> trace, const Window& window) {
    window.validate();
    require_sorted(trace);

    // One pass: the first receipt of every address, the in-window senders
    // and the in-window credits.
    std::unordered_map<Address, std::uint64_t, AddressHash> first_receipt;
    std::unordered_set<Address, AddressHash> senders;
    std::unordered_map<Address, Wei, AddressHash> credits;
    for (const auto& tx : trace) {
        if (tx.kind != TxKind::kTransfer) continue;
        first_receipt.try_emplace(tx.to, tx.block);
        if (!window.contains(tx.block)) continue;
        senders.insert(tx.from);
        credits[tx.to] += tx.value;
    }

    std::vector<Candidate> out;
    for (const auto& [addr, block] : first_receipt) {
        if (!window.contains(block) || senders.contains(addr)) continue;
        out.push_back(Candidate{addr, credits[addr]});
    }
    std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) { return a.address < b.address; });
    return out;
}

Histogram bucket_by_balance(std::span<const Candidate> candidates, const BucketSpec& spec) {
    Histogram h;
    h.counts.assign(spec.size(), 0);
    for (const auto& c : candidates) {
        if (auto idx = spec.locate(c.end_balance)) {
            ++h.counts[*idx];
        } else {
            ++h.out_of_range;
        }
    }
    return h;
}

Wei max_balance_bound(std::span<const Candidate> candidates) {
    Wei best = 0;
    for (const auto& c : candidates) best = std::max(best, c.end_balance);
    return best;
}

Wei max_balance_bound(std::span<const TraceRecord> trace, const Window& window) {
    return max_balance_bound(candidate_addresses(trace, window));
}

std::vector<TraceRecord> read_trace_file(const std::string& path) {
    gzFile f = gzopen(path.c_str(), "rb");
    if (f == nullptr) throw Error(ErrorCode::kIo, "cannot open trace " + path);
    std::string text;
    char buf[1 << 16];
    int n = 0;
    while ((n = gzread(f, buf, sizeof buf)) > 0) text.append(buf, static_cast<std::size_t>(n));
    const bool failed = n < 0;
    gzclose(f);
    if (failed) throw Error(ErrorCode::kIo, "cannot read trace " + path);
    std::istringstream in(text);
    return parse_trace_csv(in);
}

AnalysisResult analyze_trace(std::span<const TraceRecord> trace, const Window& window, const BucketSpec& spec) {
    AnalysisResult r;
    r.window = window;
    r.trace_records = trace.size();
    r.candidates = candidate_addresses(trace, window);
    r.spec = spec;
    r.histogram = bucket_by_balance(r.candidates, spec);
    r.max_balance_bound = max_balance_bound(r.candidates);
    bool any_before = false;
    for (const auto& tx : trace) {
        if (tx.kind != TxKind::kTransfer) continue;
        if (tx.block < window.start.block) any_before = true;
        if (window.contains(tx.block)) ++r.transfers_in_window;
    }
    if (!any_before) {
        r.warnings.emplace_back("trace has no transfers before the window start; first-receipt filtering "
                                "cannot exclude previously funded addresses");
    }
    if (r.histogram.out_of_range > 0) {
        r.warnings.emplace_back(std::to_string(r.histogram.out_of_range) +
                                " candidates fall outside the bucket ranges");
    }
    return r;
}

void write_histogram_csv(std::ostream& out, const BucketSpec& spec, const Histogram& histogram) {
    out << "range_lo_eth,range_hi_eth,count\n";
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const auto& b = spec.buckets()[i];
        out << format_eth(b.lo) << ',' << (b.hi ? format_eth(*b.hi) : std::string("inf")) << ','
            << histogram.counts.at(i) << '\n';
    }
}

std::string histogram_csv(const BucketSpec& spec, const Histogram& histogram) {
    std::ostringstream out;
    write_histogram_csv(out, spec, histogram);
    return out.str();
}

std::string summary_json(const AnalysisResult& r) {
    nlohmann::json doc;
    doc["window"] = {{"from_block", r.window.start.block}, {"to_block", r.window.end.block}};
    doc["trace_records"] = r.trace_records;
    doc["transfers_in_window"] = r.transfers_in_window;
    doc["candidate_count"] = r.candidates.size();
    doc["max_balance_bound_wei"] = r.max_balance_bound.str();
    doc["max_balance_bound_eth"] = format_eth(r.max_balance_bound);
    auto rows = nlohmann::json::array();
    for (std::size_t i = 0; i < r.spec.size(); ++i) {
        const auto& b = r.spec.buckets()[i];
        rows.push_back({{"range_lo_eth", format_eth(b.lo)},
                        {"range_hi_eth", b.hi ? nlohmann::json(format_eth(*b.hi)) : nlohmann::json(nullptr)},
                        {"count", r.histogram.counts.at(i)}});
    }
    doc["histogram"] = rows;
    doc["out_of_range"] = r.histogram.out_of_range;
    doc["warnings"] = r.warnings;
    return doc.dump(2) + "\n";
}

}  // namespace sealbid

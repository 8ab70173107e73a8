// Copyright 2026 The sealbid Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sealbid/ledger.hpp"

namespace sealbid {

/// Block range with the matching timestamps. Membership is decided on the
/// block number; timestamps are carried for reporting.
struct Window {
    Clock start;
    Clock end;

    static Window blocks(std::uint64_t from, std::uint64_t to);
    void validate() const;  // kInvalidWindow when start > end
    bool contains(std::uint64_t block) const noexcept { return block >= start.block && block <= end.block; }
};

/// Half-open [lo, hi); hi == nullopt means unbounded.
struct Bucket {
    Wei lo = 0;
    std::optional<Wei> hi;

    bool contains(const Wei& v) const { return v >= lo && (!hi || v < *hi); }
};

class BucketSpec {
  public:
    /// [0,0.1) [0.1,0.5) [0.5,1) [1,10) [10,50) [50,100) [100,1000) [1000,inf)
    static BucketSpec defaults();
    /// Contiguous, strictly increasing edges. Only the last bucket may be
    /// unbounded. Throws kInvalidBuckets.
    explicit BucketSpec(std::vector<Bucket> buckets);

    const std::vector<Bucket>& buckets() const noexcept { return buckets_; }
    std::size_t size() const noexcept { return buckets_.size(); }
    /// Index of the bucket holding `v`, or nullopt when outside the spec.
    std::optional<std::size_t> locate(const Wei& v) const;

  private:
    std::vector<Bucket> buckets_;
};

/// Edges lo, lo*r, lo*r^2, ... (each rounded to the nearest wei) until an
/// edge reaches hi. Throws kInvalidRatio for ratio <= 1, kInvalidBuckets for
/// lo == 0 or lo >= hi.
BucketSpec geometric_buckets(const Wei& lo, const Wei& hi, double ratio);

struct Candidate {
    Address address;
    Wei end_balance;

    friend bool operator==(const Candidate&, const Candidate&) = default;
};

/// Addresses that send nothing inside the window and whose first incoming
/// transfer in the trace lies inside it. Only transfer-kind records count.
/// Sorted by address. Throws kUnsortedTrace.
std::vector<Candidate> candidate_addresses(std::span<const TraceRecord> trace, const Window& window);

struct Histogram {
    std::vector<std::uint64_t> counts;  // parallel to BucketSpec::buckets()
    std::uint64_t out_of_range = 0;

    friend bool operator==(const Histogram&, const Histogram&) = default;
};

Histogram bucket_by_balance(std::span<const Candidate> candidates, const BucketSpec& spec);

/// Largest candidate end balance; 0 when there are no candidates.
Wei max_balance_bound(std::span<const TraceRecord> trace, const Window& window);
Wei max_balance_bound(std::span<const Candidate> candidates);

/// Reads a trace CSV, gzip-compressed or plain.
std::vector<TraceRecord> read_trace_file(const std::string& path);

struct AnalysisResult {
    Window window;
    std::size_t trace_records = 0;
    std::size_t transfers_in_window = 0;
    std::vector<Candidate> candidates;
    BucketSpec spec = BucketSpec::defaults();
    Histogram histogram;
    Wei max_balance_bound = 0;
    std::vector<std::string> warnings;
};

AnalysisResult analyze_trace(std::span<const TraceRecord> trace, const Window& window,
                             const BucketSpec& spec = BucketSpec::defaults());

/// `range_lo_eth,range_hi_eth,count`; an unbounded top edge prints as `inf`.
void write_histogram_csv(std::ostream& out, const BucketSpec& spec, const Histogram& histogram);
std::string histogram_csv(const BucketSpec& spec, const Histogram& histogram);
std::string summary_json(const AnalysisResult& result);

}  // namespace sealbid

#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <vector>

namespace pdt {

struct BenchResult {
    double mean_ns = 0;    // per query, averaged over the measured runs
    double stddev_ns = 0;  // across runs
    uint64_t runs = 0;
    uint64_t queries = 0;
    uint64_t checksum = 0; // keeps the queries observable
};

// One warm-up pass, then `runs` timed passes over all queries.
template <typename Query, typename F>
BenchResult bench_queries(const std::vector<Query>& queries, F&& f, uint64_t runs = 10)
{
    BenchResult r;
    r.runs = runs;
    r.queries = queries.size();
    if (queries.empty() || runs == 0) return r;
    for (const auto& q : queries) r.checksum += uint64_t(f(q));
    std::vector<double> per_query;
    for (uint64_t run = 0; run < runs; ++run) {
        const auto start = std::chrono::steady_clock::now();
        for (const auto& q : queries) r.checksum += uint64_t(f(q));
        const std::chrono::duration<double, std::nano> took = std::chrono::steady_clock::now() - start;
        per_query.push_back(took.count() / double(queries.size()));
    }
    for (double x : per_query) r.mean_ns += x;
    r.mean_ns /= double(runs);
    for (double x : per_query) r.stddev_ns += (x - r.mean_ns) * (x - r.mean_ns);
    r.stddev_ns = runs > 1 ? std::sqrt(r.stddev_ns / double(runs - 1)) : 0.0;
    return r;
}

} // namespace pdt

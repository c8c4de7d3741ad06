#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "symve/factor_graph.hpp"
#include "symve/order_search.hpp"

namespace symve {

// Random-model generator settings and the cost experiment they feed.
struct BenchConfig {
    std::vector<int> rv_counts = {50, 55, 60, 65};
    int num_factors = 10;
    int arity_min = 5;
    int arity_max = 10;
    int runs_per_setting = 10;
    int cardinality = 2;
    std::uint64_t seed = 7;
    TotalsConvention totals = TotalsConvention::full;
    int jobs = 0;  // 0: one thread per hardware core

    void validate() const;  // throws InvalidConfigError
};

struct BenchRecord {
    int setting_rvs = 0;
    int run = 0;
    std::uint64_t seed = 0;
    std::vector<VarId> order;
    std::uint64_t dense_total = 0;    // under the configured totals convention
    std::uint64_t compact_total = 0;
    std::uint64_t dense_paper = 0;
    std::uint64_t dense_full = 0;
    std::uint64_t compact_paper = 0;
    std::uint64_t compact_full = 0;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> step_pairs;  // dense:compact per step
};

struct BenchResult {
    BenchConfig config;
    std::vector<BenchRecord> records;  // sorted by (setting, run)
};

// A graph of `num_factors` fully symmetric factors over `n` variables
// of equal cardinality. Arities are drawn uniformly from the range,
// scopes uniformly without replacement, and one potential per
// histogram uniformly from [0.1, 1.0); a draw whose values collide is
// rejected and redrawn so each factor is exactly as symmetric as
// declared. Deterministic for a fixed seed.
FactorGraph generate_random_fg(int n, int num_factors, int arity_min, int arity_max,
                               int cardinality, std::uint64_t seed);

// For every setting and run: generate the graph from a per-run derived
// seed, compute the greedy order once, and accumulate both cost models
// over the full order in cost-only mode. Runs execute in parallel but
// the records land in deterministic positions.
BenchResult run_benchmark(const BenchConfig& cfg);

// CSV schema:
// setting_rvs,run,seed,order_policy,totals_convention,dense_total,compact_total,steps
// with `steps` a semicolon-separated list of dense:compact pairs.
void write_csv(const BenchResult& r, std::ostream& out);
void emit_csv(const BenchResult& r, const std::string& path);

// Line chart of per-run totals: one panel per RV-count setting, a
// solid series for dense totals and a dashed one for compact totals,
// log-scaled.
void write_svg(const BenchResult& r, std::ostream& out);
void emit_svg(const BenchResult& r, const std::string& path);

}  // namespace symve

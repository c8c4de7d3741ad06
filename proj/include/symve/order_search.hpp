#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "symve/factor_graph.hpp"

namespace symve {

enum class CostModel { dense, compact };
enum class TotalsConvention { paper, full };

// One episode state of the elimination-order decision process: the
// structural remains of the graph, the prefix eliminated so far, and
// the costs accumulated under both models.
struct SearchState {
    FactorGraph graph;  // shape-only factors
    std::vector<VarId> eliminated;
    std::uint64_t dense_accum = 0;
    std::uint64_t compact_accum = 0;

    bool terminal() const { return graph.num_variables() == 0; }
    std::vector<VarId> actions() const;  // live variable ids, ascending
};

SearchState make_search_state(const FactorGraph& g);

// Applies one cost-only elimination and returns the successor state
// plus the immediate cost under the chosen model.
std::pair<SearchState, std::uint64_t> env_step(const SearchState& s, VarId id, CostModel model);

enum class PolicyKind {
    greedy_min_size,  // smallest number of distinct variables in the product
    min_degree,       // fewest live neighbors; coincides with greedy_min_size
    random_order,
    anneal,
    exhaustive,
    learned,          // reserved; no learned policy is implemented
};

struct Policy {
    PolicyKind kind = PolicyKind::greedy_min_size;
    std::uint64_t seed = 0;
    std::uint64_t budget = 1000;  // anneal evaluation budget (counting the start)
};

struct OrderResult {
    std::vector<VarId> order;
    CostLedger ledger;
};

std::uint64_t ledger_total(const CostLedger& ledger, CostModel model, TotalsConvention conv);

// Elimination order chosen by repeatedly taking the variable whose
// product touches the fewest distinct variables, ties to the smallest
// id. The ledger reports both cost models regardless of `model`.
OrderResult greedy_order(const FactorGraph& g, CostModel model);

// Exact minimum-cost order over all permutations, found by
// depth-first branch and bound on accumulated cost; ties resolve to
// the lexicographically smallest order. Guarded by `max_variables`.
struct ExhaustiveResult {
    std::vector<VarId> order;
    std::uint64_t total = 0;
};
ExhaustiveResult exhaustive_optimal(const FactorGraph& g, CostModel model,
                                    TotalsConvention conv = TotalsConvention::full,
                                    std::size_t max_variables = 10);

// Simulated annealing over orders with an adjacent-transposition
// neighborhood and geometric cooling, seeded from the greedy order.
// The result is never worse than the greedy starting point; a budget
// of 1 spends the whole budget on evaluating the start.
OrderResult anneal_order(const FactorGraph& g, CostModel model, std::uint64_t seed,
                         std::uint64_t budget,
                         TotalsConvention conv = TotalsConvention::full);

// Uniformly random order from the seed.
OrderResult random_order(const FactorGraph& g, CostModel model, std::uint64_t seed);

// Dispatch on policy kind.
OrderResult run_policy(const FactorGraph& g, const Policy& policy, CostModel model,
                       TotalsConvention conv = TotalsConvention::full);

}  // namespace symve

#include "symve/order_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "symve/rng.hpp"

namespace symve {

std::vector<VarId> SearchState::actions() const {
    std::vector<VarId> out;
    out.reserve(graph.num_variables());
    for (const auto& v : graph.variables()) out.push_back(v.id);
    return out;
}

SearchState make_search_state(const FactorGraph& g) {
    SearchState s;
    s.graph = g.structural_copy();
    return s;
}

std::pair<SearchState, std::uint64_t> env_step(const SearchState& s, VarId id, CostModel model) {
    EliminateOptions opts;
    opts.mode = ElimMode::cost_only;
    auto [next_graph, step] = eliminate(s.graph, id, opts);

    SearchState next;
    next.graph = std::move(next_graph);
    next.eliminated = s.eliminated;
    next.eliminated.push_back(id);
    next.dense_accum = checked_add(s.dense_accum, step.dense_cost);
    next.compact_accum = checked_add(s.compact_accum, step.compact_cost);

    const std::uint64_t cost =
        model == CostModel::dense ? step.dense_cost : step.compact_cost;
    return {std::move(next), cost};
}

std::uint64_t ledger_total(const CostLedger& ledger, CostModel model, TotalsConvention conv) {
    if (model == CostModel::dense)
        return conv == TotalsConvention::full ? ledger.dense_full_total
                                              : ledger.dense_paper_total;
    return conv == TotalsConvention::full ? ledger.compact_full_total
                                          : ledger.compact_paper_total;
}

namespace {

CostLedger ledger_for_order(const FactorGraph& g, const std::vector<VarId>& order) {
    EliminateOptions opts;
    opts.mode = ElimMode::cost_only;
    return run_elimination(g, order, opts).ledger;
}

std::uint64_t order_total(const FactorGraph& g, const std::vector<VarId>& order, CostModel model,
                          TotalsConvention conv) {
    return ledger_total(ledger_for_order(g, order), model, conv);
}

// Number of distinct variables in the product created by eliminating
// X now (X included).
std::size_t product_rv_count(const FactorGraph& g, VarId id) {
    std::set<VarId> united{id};
    for (std::size_t fi : g.factors_containing(id))
        for (const auto& v : g.factors()[fi].shape().scope) united.insert(v.id);
    return united.size();
}

}  // namespace

OrderResult greedy_order(const FactorGraph& g, CostModel model) {
    (void)model;  // the choice rule is size-based; the ledger carries both models
    FactorGraph current = g.structural_copy();
    std::vector<VarId> order;
    order.reserve(current.num_variables());
    while (current.num_variables() > 0) {
        VarId best = -1;
        std::size_t best_count = std::numeric_limits<std::size_t>::max();
        for (const auto& v : current.variables()) {
            const std::size_t count = product_rv_count(current, v.id);
            if (count < best_count) {
                best_count = count;
                best = v.id;
            }
        }
        order.push_back(best);
        EliminateOptions opts;
        opts.mode = ElimMode::cost_only;
        current = eliminate(current, best, opts).first;
    }
    return {order, ledger_for_order(g, order)};
}

ExhaustiveResult exhaustive_optimal(const FactorGraph& g, CostModel model, TotalsConvention conv,
                                    std::size_t max_variables) {
    const std::size_t n = g.num_variables();
    if (n > max_variables)
        throw TooLargeError("exhaustive search over " + std::to_string(n) +
                            " variables exceeds the limit of " + std::to_string(max_variables));

    ExhaustiveResult best;
    best.total = std::numeric_limits<std::uint64_t>::max();
    if (n == 0) {
        best.total = 0;
        return best;
    }

    // Depth-first in ascending-id action order visits orders
    // lexicographically, so the first strict improvement is also the
    // lexicographically smallest optimum; prefixes at or above the
    // incumbent cannot strictly improve and are cut.
    std::vector<VarId> prefix;
    prefix.reserve(n);
    SearchState root = make_search_state(g);
    auto dfs = [&](auto&& self, const SearchState& s, std::uint64_t accum) -> void {
        if (accum >= best.total) return;
        if (s.terminal()) {
            best.total = accum;
            best.order = prefix;
            return;
        }
        const bool last_step = s.graph.num_variables() == 1;
        for (VarId id : s.actions()) {
            auto [next, cost] = env_step(s, id, model);
            std::uint64_t next_accum = accum;
            if (!(conv == TotalsConvention::paper && last_step))
                next_accum = checked_add(next_accum, cost);
            prefix.push_back(id);
            self(self, next, next_accum);
            prefix.pop_back();
        }
    };
    dfs(dfs, root, 0);
    return best;
}

OrderResult anneal_order(const FactorGraph& g, CostModel model, std::uint64_t seed,
                         std::uint64_t budget, TotalsConvention conv) {
    if (budget < 1) throw InvalidConfigError("anneal budget must be >= 1");

    OrderResult start = greedy_order(g, model);
    const std::size_t n = start.order.size();
    std::uint64_t start_total = ledger_total(start.ledger, model, conv);
    if (n < 2 || budget == 1) return start;

    Xoshiro256ss rng(derive_seed(seed, seed_role::anneal));
    std::vector<VarId> current = start.order;
    std::uint64_t current_total = start_total;
    std::vector<VarId> best = current;
    std::uint64_t best_total = current_total;

    // Geometric cooling from a tenth of the starting total down to ~1.
    const std::uint64_t proposals = budget - 1;
    double temperature =
        std::max(1.0, 0.1 * static_cast<double>(start_total));
    const double floor_temp = 1.0;
    const double alpha =
        proposals > 1
            ? std::pow(floor_temp / temperature, 1.0 / static_cast<double>(proposals - 1))
            : 1.0;

    for (std::uint64_t it = 0; it < proposals; ++it) {
        const std::size_t i = static_cast<std::size_t>(rng.next_below(n - 1));
        std::vector<VarId> candidate = current;
        std::swap(candidate[i], candidate[i + 1]);
        const std::uint64_t candidate_total = order_total(g, candidate, model, conv);

        bool accept = candidate_total <= current_total;
        if (!accept) {
            const double delta =
                static_cast<double>(candidate_total) - static_cast<double>(current_total);
            accept = rng.next_double() < std::exp(-delta / temperature);
        }
        if (accept) {
            current = std::move(candidate);
            current_total = candidate_total;
            if (current_total < best_total) {
                best_total = current_total;
                best = current;
            }
        }
        temperature = std::max(floor_temp, temperature * alpha);
    }
    return {best, ledger_for_order(g, best)};
}

OrderResult random_order(const FactorGraph& g, CostModel model, std::uint64_t seed) {
    (void)model;
    std::vector<VarId> order;
    for (const auto& v : g.variables()) order.push_back(v.id);
    Xoshiro256ss rng(derive_seed(seed, seed_role::random_order));
    for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[static_cast<std::size_t>(rng.next_below(i))]);
    return {order, ledger_for_order(g, order)};
}

OrderResult run_policy(const FactorGraph& g, const Policy& policy, CostModel model,
                       TotalsConvention conv) {
    switch (policy.kind) {
        case PolicyKind::greedy_min_size:
        case PolicyKind::min_degree:
            // min-degree ranks by live neighbor count, which is the
            // product RV count minus one: the same argmin.
            return greedy_order(g, model);
        case PolicyKind::random_order:
            return random_order(g, model, policy.seed);
        case PolicyKind::anneal:
            return anneal_order(g, model, policy.seed, policy.budget, conv);
        case PolicyKind::exhaustive: {
            ExhaustiveResult r = exhaustive_optimal(g, model, conv);
            return {r.order, ledger_for_order(g, r.order)};
        }
        case PolicyKind::learned:
            throw InvalidConfigError("the learned policy kind is reserved; no agent is built in");
    }
    throw InvalidConfigError("unknown policy kind");
}

}  // namespace symve

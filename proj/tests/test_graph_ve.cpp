#include <doctest.h>

#include "test_support.hpp"

using namespace symve;
using namespace testsupport;

namespace {

FactorGraph single_factor_graph() {
    FactorGraph g;
    for (int i = 1; i <= 3; ++i) g.add_variable(Variable(i, 2));
    g.add_factor(GraphFactor(ones_count_factor()));
    return g;
}

}  // namespace

TEST_CASE("joint_oracle sums the example factor to 20") {
    CHECK(joint_oracle(single_factor_graph()) == doctest::Approx(20).epsilon(1e-12));
}

TEST_CASE("joint_oracle counts states of an all-ones factor") {
    FactorGraph g;
    std::vector<Variable> scope;
    for (int i = 0; i < 3; ++i) {
        g.add_variable(Variable(i, 2));
        scope.emplace_back(i, 2);
    }
    g.add_factor(GraphFactor(DenseFactor(scope, std::vector<double>(8, 1.0))));
    CHECK(joint_oracle(g) == doctest::Approx(8).epsilon(1e-12));
}

TEST_CASE("joint_oracle of the empty model is 1") {
    CHECK(joint_oracle(FactorGraph{}) == 1.0);
}

TEST_CASE("joint_oracle enforces its enumeration limit") {
    FactorGraph g;
    for (int i = 0; i < 8; ++i) g.add_variable(Variable(i, 2));
    CHECK_THROWS_AS(joint_oracle(g, 100), TooLargeError);
}

TEST_CASE("eliminating a triangle variable touches two factors and costs 8") {
    const FactorGraph g = triangle();
    auto [dense_cost, compact_cost] = step_costs(g, 1);
    CHECK(dense_cost == 8);
    CHECK(compact_cost == 8);

    EliminateOptions opts;
    opts.mode = ElimMode::dense;
    auto [next, step] = eliminate(g, 1, opts);
    CHECK(step.touched == std::vector<std::size_t>{0, 1});
    CHECK(step.product_scope == std::vector<VarId>{1, 2, 3});
    CHECK(step.dense_cost == 8);
    CHECK(next.num_variables() == 2);
    CHECK(next.num_factors() == 2);  // untouched third factor + intermediate
}

TEST_CASE("eliminating the only variable of a unary factor leaves a scalar") {
    FactorGraph g;
    g.add_variable(Variable(0, 3));
    g.add_factor(GraphFactor(DenseFactor({Variable(0, 3)}, {1, 2, 3})));
    EliminateOptions opts;
    opts.mode = ElimMode::dense;
    auto [next, step] = eliminate(g, 0, opts);
    CHECK(step.dense_cost == 3);
    REQUIRE(next.num_factors() == 1);
    CHECK(next.factors()[0].is_scalar());
    CHECK(next.factors()[0].scalar_value() == 6.0);
}

TEST_CASE("an isolated variable contributes its cardinality") {
    FactorGraph g;
    g.add_variable(Variable(0, 2));
    g.add_variable(Variable(5, 4));  // appears in no factor
    g.add_factor(GraphFactor(DenseFactor({Variable(0, 2)}, {1, 3})));

    EliminateOptions opts;
    opts.mode = ElimMode::dense;
    auto [next, step] = eliminate(g, 5, opts);
    CHECK(step.dense_cost == 4);
    CHECK(step.compact_cost == 4);

    const EliminationResult result = run_elimination(g, {0, 5}, opts);
    CHECK(*result.z == doctest::Approx(16.0).epsilon(1e-12));  // (1+3) * 4
    CHECK(*result.z == doctest::Approx(joint_oracle(g)).epsilon(1e-9));
}

TEST_CASE("eliminate reports unknown and repeated variables distinctly") {
    const FactorGraph g = triangle();
    EliminateOptions opts;
    opts.mode = ElimMode::cost_only;
    CHECK_THROWS_AS(eliminate(g, 9, opts), UnknownVariableError);
    auto [next, step] = eliminate(g, 1, opts);
    CHECK_THROWS_AS(eliminate(next, 1, opts), AlreadyEliminatedError);
}

TEST_CASE("run_elimination validates the permutation") {
    const FactorGraph g = triangle();
    EliminateOptions opts;
    opts.mode = ElimMode::cost_only;
    CHECK_THROWS_AS(run_elimination(g, {1, 2}, opts), NotAPermutationError);
    CHECK_THROWS_AS(run_elimination(g, {1, 2, 2}, opts), NotAPermutationError);
    CHECK_THROWS_AS(run_elimination(g, {1, 2, 9}, opts), NotAPermutationError);
}

TEST_CASE("the single-factor graph yields Z = 20 under every order") {
    const FactorGraph g = single_factor_graph();
    std::vector<VarId> order{1, 2, 3};
    EliminateOptions opts;
    opts.mode = ElimMode::dense;
    std::sort(order.begin(), order.end());
    do {
        const EliminationResult result = run_elimination(g, order, opts);
        CHECK(*result.z == doctest::Approx(20).epsilon(1e-9));
    } while (std::next_permutation(order.begin(), order.end()));
}

TEST_CASE("dense elimination matches the joint oracle on random graphs") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const int n = 3 + static_cast<int>(seed % 8);
        const FactorGraph g =
            random_boolean_graph(derive_seed(seed, 0xabc), n, 2 + static_cast<int>(seed % 4), 0.5);
        EliminateOptions opts;
        opts.mode = ElimMode::dense;
        const OrderResult greedy = greedy_order(g, CostModel::dense);
        const EliminationResult result = run_elimination(g, greedy.order, opts);
        CHECK(close_rel(*result.z, joint_oracle(g), 1e-9));
    }
}

TEST_CASE("Z is invariant across random orders") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const FactorGraph g = random_boolean_graph(derive_seed(seed, 0xdef), 6, 4, 0.4);
        EliminateOptions opts;
        opts.mode = ElimMode::dense;
        const double reference = joint_oracle(g);
        for (std::uint64_t k = 0; k < 8; ++k) {
            const OrderResult r = random_order(g, CostModel::dense, seed * 100 + k);
            const EliminationResult result = run_elimination(g, r.order, opts);
            CHECK(close_rel(*result.z, reference, 1e-9));
        }
    }
}

TEST_CASE("compact mode matches dense mode and the cost-only ledger") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const FactorGraph g = random_boolean_graph(derive_seed(seed, 0x777), 7, 4, 0.7);
        const OrderResult greedy = greedy_order(g, CostModel::compact);

        EliminateOptions dense_opts;
        dense_opts.mode = ElimMode::dense;
        EliminateOptions compact_opts;
        compact_opts.mode = ElimMode::compact;
        EliminateOptions cost_opts;
        cost_opts.mode = ElimMode::cost_only;

        const EliminationResult dense_run = run_elimination(g, greedy.order, dense_opts);
        const EliminationResult compact_run = run_elimination(g, greedy.order, compact_opts);
        const EliminationResult cost_run = run_elimination(g, greedy.order, cost_opts);

        CHECK(close_rel(*dense_run.z, *compact_run.z, 1e-9));
        CHECK(!cost_run.z.has_value());

        REQUIRE(dense_run.ledger.steps.size() == compact_run.ledger.steps.size());
        for (std::size_t i = 0; i < dense_run.ledger.steps.size(); ++i) {
            const auto& ds = dense_run.ledger.steps[i];
            const auto& cs = compact_run.ledger.steps[i];
            const auto& os = cost_run.ledger.steps[i];
            CHECK(ds.dense_cost == cs.dense_cost);
            CHECK(ds.compact_cost == cs.compact_cost);
            CHECK(ds.compact_cost == os.compact_cost);
            CHECK(ds.dense_cost == os.dense_cost);
            CHECK(cs.compact_cost <= cs.dense_cost);
        }
    }
}

TEST_CASE("compact and dense intermediates agree under decode step by step") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const FactorGraph g = random_boolean_graph(derive_seed(seed, 0x91), 6, 3, 0.8);
        FactorGraph dense_g = g;
        FactorGraph compact_g = g;
        EliminateOptions dense_opts;
        dense_opts.mode = ElimMode::dense;
        EliminateOptions compact_opts;
        compact_opts.mode = ElimMode::compact;
        const OrderResult greedy = greedy_order(g, CostModel::dense);
        for (VarId id : greedy.order) {
            dense_g = eliminate(dense_g, id, dense_opts).first;
            compact_g = eliminate(compact_g, id, compact_opts).first;
            REQUIRE(dense_g.num_factors() == compact_g.num_factors());
            // The freshly inserted intermediate is the last factor.
            const DenseFactor a = dense_g.factors().back().to_dense();
            const DenseFactor b = compact_g.factors().back().to_dense();
            CHECK(tables_close(a, b, 1e-12));
        }
    }
}

TEST_CASE("mixed-cardinality graphs agree with the oracle") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const FactorGraph g = random_mixed_card_graph(derive_seed(seed, 0x3c), 6, 4);
        EliminateOptions opts;
        opts.mode = ElimMode::dense;
        const OrderResult greedy = greedy_order(g, CostModel::dense);
        const EliminationResult result = run_elimination(g, greedy.order, opts);
        CHECK(close_rel(*result.z, joint_oracle(g), 1e-9));
    }
}

TEST_CASE("eliminating every variable leaves only scalars and consistent totals") {
    const FactorGraph g = random_boolean_graph(42, 6, 4, 0.5);
    EliminateOptions opts;
    opts.mode = ElimMode::dense;
    const OrderResult greedy = greedy_order(g, CostModel::dense);
    FactorGraph current = g;
    CostLedger manual;
    for (VarId id : greedy.order) {
        auto [next, step] = eliminate(current, id, opts);
        current = std::move(next);
        manual.push(step);
    }
    CHECK(current.num_variables() == 0);
    for (const auto& f : current.factors()) CHECK(f.is_scalar());

    const CostLedger ledger = run_elimination(g, greedy.order, opts).ledger;
    std::uint64_t dense_sum = 0, compact_sum = 0;
    for (const auto& s : ledger.steps) {
        dense_sum += s.dense_cost;
        compact_sum += s.compact_cost;
    }
    CHECK(ledger.dense_full_total == dense_sum);
    CHECK(ledger.compact_full_total == compact_sum);
    CHECK(ledger.dense_paper_total == dense_sum - ledger.steps.back().dense_cost);
    CHECK(ledger.compact_paper_total == compact_sum - ledger.steps.back().compact_cost);
}

TEST_CASE("step cost of a fully symmetric factor follows the binomial size") {
    FactorGraph g;
    std::vector<Variable> scope;
    std::vector<VarId> ids;
    for (int i = 0; i < 10; ++i) {
        g.add_variable(Variable(i, 2));
        scope.emplace_back(i, 2);
        ids.push_back(i);
    }
    FactorShape shape(scope, SymmetryPartition({ids}));
    std::vector<double> values(static_cast<std::size_t>(shape.compact_size()));
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = 0.1 + static_cast<double>(i);
    g.add_factor(GraphFactor(CompactFactor(shape, values)));

    auto [dense_cost, compact_cost] = step_costs(g, 4);
    CHECK(dense_cost == 1024);
    CHECK(compact_cost == 11);
}

TEST_CASE("scalars in the graph fold into Z but never join a product") {
    FactorGraph g;
    g.add_variable(Variable(0, 2));
    g.add_factor(GraphFactor(DenseFactor(3.0)));
    g.add_factor(GraphFactor(DenseFactor({Variable(0, 2)}, {1, 2})));
    auto [dense_cost, compact_cost] = step_costs(g, 0);
    CHECK(dense_cost == 2);
    CHECK(compact_cost == 2);
    EliminateOptions opts;
    opts.mode = ElimMode::dense;
    const EliminationResult result = run_elimination(g, {0}, opts);
    CHECK(*result.z == doctest::Approx(9.0).epsilon(1e-12));
}

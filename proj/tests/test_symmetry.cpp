#include <doctest.h>

#include "test_support.hpp"

using namespace symve;
using namespace testsupport;

TEST_CASE("detect_symmetries groups the fully symmetric example factor") {
    const SymmetryPartition p = detect_symmetries(ones_count_factor());
    REQUIRE(p.size() == 1);
    CHECK(p.groups()[0] == std::vector<VarId>{1, 2, 3});
}

TEST_CASE("detect_symmetries finds a pair group from a swap-invariant table") {
    DenseFactor f({Variable(1, 2), Variable(2, 2)}, {1, 2, 2, 1});
    const SymmetryPartition p = detect_symmetries(f);
    REQUIRE(p.size() == 1);
    CHECK(p.groups()[0] == std::vector<VarId>{1, 2});
}

TEST_CASE("distinct potentials leave every variable free") {
    DenseFactor f({Variable(0, 2), Variable(1, 2), Variable(2, 2)},
                  {1, 2, 3, 4, 5, 6, 7, 8});
    CHECK(detect_symmetries(f).empty());
}

TEST_CASE("cardinality-1 variables are trivially interchangeable") {
    DenseFactor f({Variable(0, 1), Variable(1, 1), Variable(2, 2)}, {3, 9});
    const SymmetryPartition p = detect_symmetries(f);
    REQUIRE(p.size() == 1);
    CHECK(p.groups()[0] == std::vector<VarId>{0, 1});
}

TEST_CASE("encode maps histograms of the example factor to its four potentials") {
    const DenseFactor f = ones_count_factor();
    const CompactFactor c = encode(f, SymmetryPartition({{1, 2, 3}}));
    REQUIRE(c.table_size() == 4);
    // One potential per number of ones; the stored order follows the
    // ascending-lex histogram ranks.
    for (std::uint64_t r = 0; r < 4; ++r) {
        const Histogram h = hist_unrank(r, 3, 2);
        CHECK(c.table()[r] == 1.0 + h.counts[1]);
    }
}

TEST_CASE("an all-singleton partition leaves the table unchanged") {
    Xoshiro256ss rng(5);
    const DenseFactor f =
        random_dense_factor(rng, {Variable(0, 2), Variable(1, 3), Variable(2, 2)});
    const CompactFactor c = encode(f, SymmetryPartition{});
    CHECK(c.table() == f.table());
    CHECK(decode(c) == f);
}

TEST_CASE("encode rejects non-symmetric groups with a witness") {
    DenseFactor f({Variable(0, 2), Variable(1, 2)}, {1, 2, 3, 4});
    try {
        encode(f, SymmetryPartition({{0, 1}}));
        FAIL("expected NotSymmetricError");
    } catch (const NotSymmetricError& e) {
        CHECK(f.table()[e.witness_a] != f.table()[e.witness_b]);
        // The witness is a genuine transposition pair.
        const auto va = f.values_of_index(e.witness_a);
        const auto vb = f.values_of_index(e.witness_b);
        CHECK(va[0] == vb[1]);
        CHECK(va[1] == vb[0]);
    }
}

TEST_CASE("encode/decode round-trips random symmetric factors exactly") {
    Xoshiro256ss rng(101);
    std::vector<Variable> pool;
    for (int i = 0; i < 8; ++i) pool.emplace_back(i, i % 2 == 0 ? 2 : 3);
    for (int round = 0; round < 200; ++round) {
        const CompactFactor c = random_compact_factor(rng, pool, 6);
        const DenseFactor dense = decode(c);
        const CompactFactor back = encode(dense, c.partition());
        CHECK(back.table() == c.table());
        CHECK(decode(back) == dense);
        // Compact never exceeds dense, with equality only when no
        // group is present.
        CHECK(c.table_size() <= dense.table_size());
        if (c.partition().empty()) CHECK(c.table_size() == dense.table_size());
        else CHECK(c.table_size() < dense.table_size());
    }
}

TEST_CASE("compact_lookup agrees with decode on the example factor") {
    const CompactFactor c = encode(ones_count_factor(), SymmetryPartition({{1, 2, 3}}));
    CHECK(compact_lookup(c, Assignment{{1, 0}, {2, 1}, {3, 1}}) == 3.0);
    CHECK(compact_lookup(c, Assignment{{1, 0}, {2, 0}, {3, 0}}) == 1.0);
    const DenseFactor dense = decode(c);
    for (std::size_t flat = 0; flat < dense.table_size(); ++flat) {
        const auto values = dense.values_of_index(flat);
        Assignment a;
        for (std::size_t i = 0; i < values.size(); ++i)
            a.set(dense.scope()[i].id, values[i]);
        CHECK(compact_lookup(c, a) == dense.table()[flat]);
    }
    CHECK_THROWS_AS(compact_lookup(c, Assignment{{1, 0}}), MissingVariableError);
}

TEST_CASE("eq-2 style check: sampled permutations within a detected group preserve values") {
    Xoshiro256ss rng(333);
    std::vector<Variable> pool;
    for (int i = 0; i < 6; ++i) pool.emplace_back(i, 2);
    for (int round = 0; round < 50; ++round) {
        const CompactFactor c = random_compact_factor(rng, pool, 5);
        const DenseFactor dense = decode(c);
        const SymmetryPartition detected = detect_symmetries(dense);
        CHECK(c.partition().contained_in(detected));
        for (const auto& group : detected.groups()) {
            for (std::size_t flat = 0; flat < dense.table_size(); ++flat) {
                const auto values = dense.values_of_index(flat);
                Assignment a;
                for (std::size_t i = 0; i < values.size(); ++i)
                    a.set(dense.scope()[i].id, values[i]);
                // One random permutation of the group members.
                std::vector<VarId> perm = group;
                for (std::size_t i = perm.size(); i > 1; --i)
                    std::swap(perm[i - 1],
                              perm[static_cast<std::size_t>(rng.next_below(i))]);
                Assignment b = a;
                for (std::size_t i = 0; i < group.size(); ++i)
                    b.set(perm[i], a.at(group[i]));
                CHECK(dense.value_at(b) == dense.value_at(a));
            }
        }
    }
}

TEST_CASE("compact_sum_out of the example factor matches the dense route") {
    const CompactFactor c = encode(ones_count_factor(), SymmetryPartition({{1, 2, 3}}));
    const CompactFactor reduced = compact_sum_out(c, 3);
    REQUIRE(reduced.partition().size() == 1);
    CHECK(reduced.partition().groups()[0] == std::vector<VarId>{1, 2});
    REQUIRE(reduced.table_size() == 3);
    // Values by number of ones: 0 -> 3, 1 -> 5, 2 -> 7.
    for (std::uint64_t r = 0; r < 3; ++r) {
        const Histogram h = hist_unrank(r, 2, 2);
        CHECK(reduced.table()[r] == 3.0 + 2.0 * h.counts[1]);
    }
    CHECK(decode(reduced) == sum_out(decode(c), {3}));
}

TEST_CASE("summing out a free variable keeps the partition") {
    Xoshiro256ss rng(7);
    std::vector<Variable> scope{Variable(0, 2), Variable(1, 2), Variable(2, 2), Variable(3, 2)};
    FactorShape shape(scope, SymmetryPartition({{1, 2}}));
    std::vector<double> table(static_cast<std::size_t>(shape.compact_size()));
    for (auto& v : table) v = rng.next_double();
    const CompactFactor c(shape, table);
    const CompactFactor reduced = compact_sum_out(c, 3);
    CHECK(reduced.partition() == SymmetryPartition({{1, 2}}));
    CHECK(decode(reduced) == sum_out(decode(c), {3}));
}

TEST_CASE("a group shrinking to one member becomes a free variable") {
    const CompactFactor c = encode(ones_count_factor({0, 1, 2}), SymmetryPartition({{0, 1, 2}}));
    const CompactFactor once = compact_sum_out(c, 2);
    const CompactFactor twice = compact_sum_out(once, 1);
    CHECK(twice.partition().empty());
    CHECK(twice.scope().size() == 1);
    CHECK(decode(twice) == sum_out(decode(c), {1, 2}));
    // Summing out the last variable leaves the scalar total.
    const CompactFactor last = compact_sum_out(twice, 0);
    CHECK(last.is_scalar());
    CHECK(last.table()[0] == 20.0);
}

TEST_CASE("compact_sum_out equals the dense route exactly on random factors") {
    Xoshiro256ss rng(909);
    std::vector<Variable> pool;
    for (int i = 0; i < 8; ++i) pool.emplace_back(i, i % 3 == 0 ? 3 : 2);
    for (int round = 0; round < 200; ++round) {
        const CompactFactor c = random_compact_factor(rng, pool, 6);
        const auto& scope = c.scope();
        const VarId target =
            scope[static_cast<std::size_t>(rng.next_below(scope.size()))].id;
        const CompactFactor reduced = compact_sum_out(c, target);
        const DenseFactor expected = sum_out(decode(c), {target});
        CHECK(decode(reduced) == expected);
        // Theorem-3 soundness: the propagated partition is contained in
        // whatever detection finds on the dense result.
        CHECK(reduced.partition().contained_in(detect_symmetries(expected)));
    }
    CHECK_THROWS_AS(
        compact_sum_out(encode(ones_count_factor(), SymmetryPartition({{1, 2, 3}})), 99),
        UnknownVariableError);
}

TEST_CASE("compact_multiply derives the documented group structure") {
    Xoshiro256ss rng(55);

    // Symmetric over {1,2,3,4} times symmetric over {3,4}:
    // groups {1,2} and {3,4} survive.
    {
        std::vector<Variable> s1{Variable(1, 2), Variable(2, 2), Variable(3, 2), Variable(4, 2)};
        FactorShape shape1(s1, SymmetryPartition({{1, 2, 3, 4}}));
        std::vector<double> t1(static_cast<std::size_t>(shape1.compact_size()));
        for (auto& v : t1) v = 0.1 + 0.9 * rng.next_double();
        const CompactFactor c1(shape1, t1);

        std::vector<Variable> s2{Variable(3, 2), Variable(4, 2)};
        FactorShape shape2(s2, SymmetryPartition({{3, 4}}));
        const CompactFactor c2(shape2, {0.3, 0.5, 0.9});

        const CompactFactor prod = compact_multiply(c1, c2);
        CHECK(prod.partition() == SymmetryPartition({{1, 2}, {3, 4}}));
        CHECK(tables_close(decode(prod), multiply(decode(c1), decode(c2)), 1e-12));
        CHECK(prod.partition().contained_in(detect_symmetries(decode(prod))));
    }

    // Symmetric over {1,2} times symmetric over {2,3}: the overlap
    // reduces every group below size two, so everything is free.
    {
        std::vector<Variable> s1{Variable(1, 2), Variable(2, 2)};
        const CompactFactor c1(FactorShape(s1, SymmetryPartition({{1, 2}})), {0.2, 0.7, 0.4});
        std::vector<Variable> s2{Variable(2, 2), Variable(3, 2)};
        const CompactFactor c2(FactorShape(s2, SymmetryPartition({{2, 3}})), {0.9, 0.1, 0.6});
        const CompactFactor prod = compact_multiply(c1, c2);
        CHECK(prod.partition().empty());
        CHECK(tables_close(decode(prod), multiply(decode(c1), decode(c2)), 1e-12));
    }
}

TEST_CASE("multiplying by a scalar keeps groups and scales values") {
    const CompactFactor c = encode(ones_count_factor(), SymmetryPartition({{1, 2, 3}}));
    const CompactFactor prod = compact_multiply(c, CompactFactor(2.0));
    CHECK(prod.partition() == c.partition());
    for (std::size_t i = 0; i < c.table_size(); ++i)
        CHECK(prod.table()[i] == 2.0 * c.table()[i]);
}

TEST_CASE("compact_multiply matches the dense route on random pairs") {
    Xoshiro256ss rng(777);
    std::vector<Variable> pool;
    for (int i = 0; i < 7; ++i) pool.emplace_back(i, i % 2 == 0 ? 2 : 3);
    for (int round = 0; round < 200; ++round) {
        const CompactFactor a = random_compact_factor(rng, pool, 4);
        const CompactFactor b = random_compact_factor(rng, pool, 4);
        const CompactFactor prod = compact_multiply(a, b);
        const DenseFactor expected = multiply(decode(a), decode(b));
        CHECK(tables_close(decode(prod), expected, 1e-12));
        // Theorem-4 soundness plus conservativeness.
        CHECK_NOTHROW(verify_symmetry(expected, prod.partition()));
        CHECK(prod.partition().contained_in(detect_symmetries(expected)));
    }
}

TEST_CASE("schematic propagation matches the materialized operations") {
    Xoshiro256ss rng(321);
    std::vector<Variable> pool;
    for (int i = 0; i < 6; ++i) pool.emplace_back(i, 2);
    for (int round = 0; round < 100; ++round) {
        const CompactFactor a = random_compact_factor(rng, pool, 4);
        const CompactFactor b = random_compact_factor(rng, pool, 4);
        CHECK(propagate_symmetries_schematic(a.shape(), b.shape(), ShapeOp::multiply) ==
              compact_multiply(a, b).partition());
        const VarId target =
            a.scope()[static_cast<std::size_t>(rng.next_below(a.scope().size()))].id;
        CHECK(propagate_symmetries_schematic(a.shape(), FactorShape{}, ShapeOp::sum_out,
                                             target) == compact_sum_out(a, target).partition());
    }
    // Empty partitions in, empty partition out.
    FactorShape plain({Variable(0, 2), Variable(1, 2)}, SymmetryPartition{});
    CHECK(propagate_symmetries_schematic(plain, plain, ShapeOp::multiply).empty());
}

TEST_CASE("compact size formula holds per shape") {
    std::vector<Variable> scope{Variable(0, 2), Variable(1, 2), Variable(2, 2),
                                Variable(3, 3), Variable(4, 3)};
    FactorShape shape(scope, SymmetryPartition({{0, 1, 2}, {3, 4}}));
    CHECK(shape.dense_size() == 8 * 9);
    CHECK(shape.compact_size() == compact_domain_size(3, 2) * compact_domain_size(2, 3));
    CHECK(shape.compact_size() <= shape.dense_size());
}

TEST_CASE("partitions reject overlapping groups and validate cardinalities") {
    CHECK_THROWS_AS(SymmetryPartition({{1, 2}, {2, 3}}), ValidationError);
    std::vector<Variable> scope{Variable(0, 2), Variable(1, 3)};
    CHECK_THROWS_AS(FactorShape(scope, SymmetryPartition({{0, 1}})), ValidationError);
}

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "symve/compact_factor.hpp"
#include "symve/dense_factor.hpp"
#include "symve/shape.hpp"

namespace symve {

// One factor slot of a graph: a structural shape that is always
// present, plus an optional table representation. Cost-only
// elimination produces shape-only slots; dense and compact modes carry
// real tables.
class GraphFactor {
public:
    // Dense table with an optional known symmetry partition. With
    // `validate`, every declared group is transposition-tested.
    explicit GraphFactor(DenseFactor f, SymmetryPartition sym = SymmetryPartition{},
                         bool validate = true);
    explicit GraphFactor(CompactFactor f);
    explicit GraphFactor(FactorShape s);

    const FactorShape& shape() const { return shape_; }
    bool shape_only() const { return std::holds_alternative<std::monostate>(values_); }
    bool is_dense() const { return std::holds_alternative<DenseFactor>(values_); }
    bool is_compact() const { return std::holds_alternative<CompactFactor>(values_); }
    bool is_scalar() const { return shape_.scope.empty(); }

    const DenseFactor& dense() const { return std::get<DenseFactor>(values_); }
    const CompactFactor& compact() const { return std::get<CompactFactor>(values_); }

    double scalar_value() const;
    double value_at(const Assignment& a) const;

    // Dense view (decodes a compact table); requires values.
    DenseFactor to_dense() const;
    // Compact view (encodes a dense table under its known partition,
    // trusting prior validation); requires values.
    CompactFactor to_compact() const;

    friend bool operator==(const GraphFactor& a, const GraphFactor& b) {
        return a.shape_ == b.shape_ && a.values_ == b.values_;
    }
    friend bool operator!=(const GraphFactor& a, const GraphFactor& b) { return !(a == b); }

private:
    FactorShape shape_;
    std::variant<std::monostate, DenseFactor, CompactFactor> values_;
};

enum class ElimMode { dense, compact, cost_only };

// Record of one elimination: the variable, which factor slots were
// multiplied, the scope of the intermediate product (including the
// eliminated variable), and its size under both cost models.
struct EliminationStep {
    VarId variable = -1;
    std::vector<std::size_t> touched;   // factor indices before the step
    std::vector<VarId> product_scope;   // union scope, X included
    std::uint64_t dense_cost = 0;       // product of the union-scope cardinalities
    std::uint64_t compact_cost = 0;     // compact size under propagated symmetries
};

// Per-order cost bookkeeping. Two totals are reported per model: the
// full total over all n steps, and the "paper" total that drops the
// final step.
struct CostLedger {
    std::vector<VarId> order;
    std::vector<EliminationStep> steps;

    std::uint64_t dense_full_total = 0;
    std::uint64_t dense_paper_total = 0;
    std::uint64_t compact_full_total = 0;
    std::uint64_t compact_paper_total = 0;

    void push(EliminationStep step);
};

// Bipartite model: variables plus factors whose scopes reference them.
// Values are immutable once added; elimination returns new graphs.
class FactorGraph {
public:
    FactorGraph() = default;

    void add_variable(Variable v);
    // Scope variables must exist with matching cardinalities.
    std::size_t add_factor(GraphFactor f);

    const std::vector<Variable>& variables() const { return variables_; }
    const std::vector<GraphFactor>& factors() const { return factors_; }
    std::size_t num_variables() const { return variables_.size(); }
    std::size_t num_factors() const { return factors_.size(); }

    bool has_variable(VarId id) const;
    bool was_eliminated(VarId id) const;
    const Variable& variable(VarId id) const;

    // Copy with every factor reduced to its shape; used by order
    // search so no tables are ever allocated while exploring.
    FactorGraph structural_copy() const;

    // Indices of non-scalar factors whose scope contains id.
    std::vector<std::size_t> factors_containing(VarId id) const;

    friend bool operator==(const FactorGraph& a, const FactorGraph& b);

private:
    friend struct EliminationImpl;

    std::vector<Variable> variables_;   // sorted by id
    std::vector<VarId> eliminated_;     // ids summed out so far
    std::vector<GraphFactor> factors_;
};

struct EliminateOptions {
    ElimMode mode = ElimMode::dense;
    // Re-run symmetry detection on each materialized intermediate
    // instead of keeping the propagated partition. Ignored in
    // cost-only mode.
    bool redetect = false;
    // Guard for materialized intermediates, in table entries.
    std::uint64_t max_table_entries = std::uint64_t{1} << 26;
};

// Sums out X: multiplies exactly the factors containing X, marginalizes
// X away, removes those factors and the variable, and inserts the
// intermediate. A variable in no factor contributes a scalar equal to
// its cardinality. Both cost columns are recorded in every mode.
std::pair<FactorGraph, EliminationStep> eliminate(const FactorGraph& g, VarId id,
                                                  const EliminateOptions& opts);

// Costs of eliminating X now, without doing it.
std::pair<std::uint64_t, std::uint64_t> step_costs(const FactorGraph& g, VarId id);

struct EliminationResult {
    std::optional<double> z;  // product of remaining scalars; absent in cost-only mode
    CostLedger ledger;
};

// Applies eliminate() along `order`, which must be a permutation of
// the live variable ids.
EliminationResult run_elimination(const FactorGraph& g, const std::vector<VarId>& order,
                                  const EliminateOptions& opts);

// Brute-force partition function by full enumeration of the joint
// domain; the independent oracle the elimination path is checked
// against. Enumerates at most `limit` joint states.
double joint_oracle(const FactorGraph& g, std::uint64_t limit = std::uint64_t{1} << 20);

}  // namespace symve

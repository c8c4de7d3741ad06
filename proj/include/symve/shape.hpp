#pragma once

#include <cstdint>
#include <vector>

#include "symve/partition.hpp"
#include "symve/variable.hpp"

namespace symve {

// Structural view of a factor: its scope and the symmetry partition it
// is known to satisfy, with no potential table attached. Everything
// the cost models need is derivable from this, which is what makes
// cost-only elimination and order search cheap.
struct FactorShape {
    std::vector<Variable> scope;  // sorted ascending by id
    SymmetryPartition partition;  // groups over scope ids

    FactorShape() = default;
    FactorShape(std::vector<Variable> scope_vars, SymmetryPartition groups);

    bool in_scope(VarId id) const;
    const Variable& variable(VarId id) const;

    // Scope variables not in any group, sorted.
    std::vector<Variable> free_variables() const;

    // Table size of a dense realization: product of all cardinalities.
    std::uint64_t dense_size() const;

    // Table size of the compact realization: product of the free
    // cardinalities times, per group, the number of histograms
    // C(n + d - 1, d - 1).
    std::uint64_t compact_size() const;

    friend bool operator==(const FactorShape& a, const FactorShape& b) {
        return a.scope == b.scope && a.partition == b.partition;
    }
    friend bool operator!=(const FactorShape& a, const FactorShape& b) { return !(a == b); }
};

// Structural product: union scope; the surviving symmetry groups
// follow the multiplication rule for symmetric factors. For each
// group of one operand, its intersection with a group of the other
// operand survives, and so does its part disjoint from the other
// operand's scope; members shared with the other scope but not
// covered by one of its groups become free. Shared variables must
// agree on cardinality.
FactorShape shape_multiply(const FactorShape& a, const FactorShape& b);

// Structural sum-out of one variable: X leaves the scope; if X was in
// a group the group shrinks by one member (symmetry is preserved),
// otherwise the partition is unchanged. Groups shrinking to a single
// member are normalized to free.
FactorShape shape_sum_out(const FactorShape& s, VarId id);

enum class ShapeOp { multiply, sum_out };

// The partition guaranteed for the result of a factor operation,
// computed from operand structure only. For sum_out, `sum_target`
// names the eliminated variable and `b` is ignored.
SymmetryPartition propagate_symmetries_schematic(const FactorShape& a, const FactorShape& b,
                                                 ShapeOp op, VarId sum_target = -1);

}  // namespace symve

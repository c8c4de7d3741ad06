#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "symve/assignment.hpp"
#include "symve/variable.hpp"

namespace symve {

// A potential table over an ordered scope of variables. The scope is
// always sorted ascending by id and the table is row-major with the
// last scope variable varying fastest; this canonical form makes
// factors directly comparable. An empty scope is a scalar factor with
// a single table entry.
class DenseFactor {
public:
    // Scalar factor.
    explicit DenseFactor(double value = 1.0);

    // Scope must already be sorted ascending by id; table length must
    // equal the product of the scope cardinalities.
    DenseFactor(std::vector<Variable> scope, std::vector<double> table);

    // Accepts a scope in arbitrary order together with a table laid
    // out row-major in that order, and permutes both into canonical
    // form.
    static DenseFactor from_unsorted(const std::vector<Variable>& scope,
                                     const std::vector<double>& table);

    const std::vector<Variable>& scope() const { return scope_; }
    const std::vector<double>& table() const { return table_; }
    std::size_t table_size() const { return table_.size(); }
    bool is_scalar() const { return scope_.empty(); }

    bool in_scope(VarId id) const;
    const Variable& variable(VarId id) const;
    std::set<VarId> scope_ids() const;

    // Flat index of an assignment binding at least the full scope.
    std::size_t flat_index(const Assignment& a) const;
    double value_at(const Assignment& a) const { return table_[flat_index(a)]; }

    // Per-position values of a flat index, in scope order.
    std::vector<int> values_of_index(std::size_t flat) const;

    // Stride of scope position `pos` in the flat table.
    std::size_t stride(std::size_t pos) const { return strides_[pos]; }

    friend bool operator==(const DenseFactor& a, const DenseFactor& b) {
        return a.scope_ == b.scope_ && a.table_ == b.table_;
    }
    friend bool operator!=(const DenseFactor& a, const DenseFactor& b) { return !(a == b); }

private:
    void init_strides();

    std::vector<Variable> scope_;
    std::vector<double> table_;
    std::vector<std::size_t> strides_;
};

// Product factor over the union scope; shared variables must agree on
// cardinality.
DenseFactor multiply(const DenseFactor& f, const DenseFactor& g);

// Marginalizes the target variables away. Summing out the entire scope
// yields a scalar factor.
DenseFactor sum_out(const DenseFactor& f, const std::set<VarId>& targets);

}  // namespace symve

#include "symve/shape.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "symve/histogram.hpp"

namespace symve {

FactorShape::FactorShape(std::vector<Variable> scope_vars, SymmetryPartition groups)
    : scope(std::move(scope_vars)), partition(std::move(groups)) {
    std::sort(scope.begin(), scope.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < scope.size(); ++i)
        if (scope[i].id == scope[i - 1].id)
            throw ValidationError("duplicate variable id " + std::to_string(scope[i].id) +
                                  " in shape scope");
    for (const auto& g : partition.groups()) {
        int card = -1;
        for (VarId id : g) {
            if (!in_scope(id))
                throw ValidationError("symmetry group member " + std::to_string(id) +
                                      " is not in the factor scope");
            const int c = variable(id).cardinality;
            if (card == -1) card = c;
            if (c != card)
                throw ValidationError("symmetry group mixes cardinalities (variable " +
                                      std::to_string(id) + ")");
        }
    }
}

bool FactorShape::in_scope(VarId id) const {
    auto it = std::lower_bound(scope.begin(), scope.end(), id,
                               [](const Variable& v, VarId key) { return v.id < key; });
    return it != scope.end() && it->id == id;
}

const Variable& FactorShape::variable(VarId id) const {
    auto it = std::lower_bound(scope.begin(), scope.end(), id,
                               [](const Variable& v, VarId key) { return v.id < key; });
    if (it == scope.end() || it->id != id)
        throw UnknownVariableError("variable " + std::to_string(id) + " not in shape scope");
    return *it;
}

std::vector<Variable> FactorShape::free_variables() const {
    std::vector<Variable> free_vars;
    for (const auto& v : scope)
        if (!partition.contains(v.id)) free_vars.push_back(v);
    return free_vars;
}

std::uint64_t FactorShape::dense_size() const { return checked_domain_size(scope); }

std::uint64_t FactorShape::compact_size() const {
    std::uint64_t size = checked_domain_size(free_variables());
    for (const auto& g : partition.groups()) {
        const int card = variable(g.front()).cardinality;
        size = checked_mul(size, compact_domain_size(static_cast<int>(g.size()), card));
    }
    return size;
}

FactorShape shape_multiply(const FactorShape& a, const FactorShape& b) {
    // Union scope with cardinality agreement on shared variables.
    std::map<VarId, int> cards;
    for (const auto& v : a.scope) cards[v.id] = v.cardinality;
    for (const auto& v : b.scope) {
        auto [it, inserted] = cards.emplace(v.id, v.cardinality);
        if (!inserted && it->second != v.cardinality)
            throw CardinalityMismatchError("variable " + std::to_string(v.id) +
                                           " has cardinality " + std::to_string(it->second) +
                                           " vs " + std::to_string(v.cardinality));
    }
    std::vector<Variable> scope;
    scope.reserve(cards.size());
    for (const auto& [id, card] : cards) scope.emplace_back(id, card);

    std::vector<std::vector<VarId>> raw_groups;
    // Intersections of a group from each operand survive; claim them
    // first so the remainder rule below cannot double-claim a member.
    std::set<VarId> claimed;
    for (const auto& ga : a.partition.groups()) {
        for (const auto& gb : b.partition.groups()) {
            std::vector<VarId> inter;
            std::set_intersection(ga.begin(), ga.end(), gb.begin(), gb.end(),
                                  std::back_inserter(inter));
            if (inter.empty()) continue;
            for (VarId id : inter) claimed.insert(id);
            raw_groups.push_back(std::move(inter));
        }
    }
    // A group's members that the other operand does not see at all keep
    // their interchangeability; members shared with the other scope but
    // unclaimed above become free.
    auto remainders = [&](const FactorShape& self, const FactorShape& other) {
        for (const auto& g : self.partition.groups()) {
            std::vector<VarId> rest;
            for (VarId id : g)
                if (!other.in_scope(id) && !claimed.count(id)) rest.push_back(id);
            if (!rest.empty()) {
                for (VarId id : rest) claimed.insert(id);
                raw_groups.push_back(std::move(rest));
            }
        }
    };
    remainders(a, b);
    remainders(b, a);

    return FactorShape(std::move(scope), SymmetryPartition(std::move(raw_groups)));
}

FactorShape shape_sum_out(const FactorShape& s, VarId id) {
    if (!s.in_scope(id))
        throw UnknownVariableError("cannot sum out variable " + std::to_string(id) +
                                   ": not in scope");
    std::vector<Variable> scope;
    for (const auto& v : s.scope)
        if (v.id != id) scope.push_back(v);
    SymmetryPartition partition = s.partition.filtered([&](VarId m) { return m != id; });
    return FactorShape(std::move(scope), std::move(partition));
}

SymmetryPartition propagate_symmetries_schematic(const FactorShape& a, const FactorShape& b,
                                                 ShapeOp op, VarId sum_target) {
    if (op == ShapeOp::multiply) return shape_multiply(a, b).partition;
    return shape_sum_out(a, sum_target).partition;
}

}  // namespace symve

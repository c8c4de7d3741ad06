#pragma once

#include <optional>
#include <vector>

#include "symve/variable.hpp"

namespace symve {

// Disjoint groups of interchangeable variables within one factor's
// scope. Canonical form: each group sorted ascending by id, groups
// ordered by their first member, and no groups of size < 2 (a
// singleton carries no symmetry and is represented as a free
// variable).
class SymmetryPartition {
public:
    SymmetryPartition() = default;

    // Normalizes: sorts members and groups, drops groups of size < 2.
    // Overlapping groups are rejected.
    explicit SymmetryPartition(std::vector<std::vector<VarId>> groups);

    const std::vector<std::vector<VarId>>& groups() const { return groups_; }
    bool empty() const { return groups_.empty(); }
    std::size_t size() const { return groups_.size(); }

    // Index of the group containing id, if any.
    std::optional<std::size_t> group_of(VarId id) const;
    bool contains(VarId id) const { return group_of(id).has_value(); }

    // True when every group of this partition is a subset of some
    // group of `other`. Propagated symmetries are sound but possibly
    // coarser than detected ones, so this is the relation tests check.
    bool contained_in(const SymmetryPartition& other) const;

    // Partition restricted to ids for which `keep` returns true,
    // re-normalized.
    template <typename Pred>
    SymmetryPartition filtered(Pred keep) const {
        std::vector<std::vector<VarId>> out;
        for (const auto& g : groups_) {
            std::vector<VarId> kept;
            for (VarId id : g)
                if (keep(id)) kept.push_back(id);
            if (!kept.empty()) out.push_back(std::move(kept));
        }
        return SymmetryPartition(std::move(out));
    }

    friend bool operator==(const SymmetryPartition& a, const SymmetryPartition& b) {
        return a.groups_ == b.groups_;
    }
    friend bool operator!=(const SymmetryPartition& a, const SymmetryPartition& b) {
        return !(a == b);
    }

private:
    std::vector<std::vector<VarId>> groups_;
};

}  // namespace symve

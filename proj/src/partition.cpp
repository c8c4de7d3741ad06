#include "symve/partition.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "symve/errors.hpp"

namespace symve {

SymmetryPartition::SymmetryPartition(std::vector<std::vector<VarId>> groups) {
    std::set<VarId> seen;
    for (auto& g : groups) {
        std::sort(g.begin(), g.end());
        for (VarId id : g) {
            if (!seen.insert(id).second)
                throw ValidationError("variable " + std::to_string(id) +
                                      " appears in two symmetry groups");
        }
        if (g.size() >= 2) groups_.push_back(std::move(g));
    }
    std::sort(groups_.begin(), groups_.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

std::optional<std::size_t> SymmetryPartition::group_of(VarId id) const {
    for (std::size_t i = 0; i < groups_.size(); ++i)
        if (std::binary_search(groups_[i].begin(), groups_[i].end(), id)) return i;
    return std::nullopt;
}

bool SymmetryPartition::contained_in(const SymmetryPartition& other) const {
    for (const auto& g : groups_) {
        bool covered = false;
        for (const auto& h : other.groups()) {
            if (std::includes(h.begin(), h.end(), g.begin(), g.end())) {
                covered = true;
                break;
            }
        }
        if (!covered) return false;
    }
    return true;
}

}  // namespace symve

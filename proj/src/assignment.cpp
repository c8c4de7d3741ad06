#include "symve/assignment.hpp"

#include <algorithm>
#include <string>

namespace symve {

namespace {

void sort_and_check(std::vector<Assignment::Binding>& bindings) {
    std::sort(bindings.begin(), bindings.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < bindings.size(); ++i) {
        if (bindings[i].first == bindings[i - 1].first)
            throw ValidationError("duplicate variable id " + std::to_string(bindings[i].first) +
                                  " in assignment");
    }
    for (const auto& [id, value] : bindings) {
        if (id < 0) throw ValidationError("negative variable id in assignment");
        if (value < 0) throw OutOfRangeError("negative value in assignment");
    }
}

}  // namespace

Assignment::Assignment(std::initializer_list<Binding> bindings) : bindings_(bindings) {
    sort_and_check(bindings_);
}

Assignment::Assignment(std::vector<Binding> bindings) : bindings_(std::move(bindings)) {
    sort_and_check(bindings_);
}

std::optional<int> Assignment::value_of(VarId id) const {
    auto it = std::lower_bound(bindings_.begin(), bindings_.end(), id,
                               [](const Binding& b, VarId key) { return b.first < key; });
    if (it == bindings_.end() || it->first != id) return std::nullopt;
    return it->second;
}

int Assignment::at(VarId id) const {
    auto v = value_of(id);
    if (!v) throw MissingVariableError("variable " + std::to_string(id) + " is unbound");
    return *v;
}

void Assignment::set(VarId id, int value) {
    if (id < 0) throw ValidationError("negative variable id in assignment");
    if (value < 0) throw OutOfRangeError("negative value in assignment");
    auto it = std::lower_bound(bindings_.begin(), bindings_.end(), id,
                               [](const Binding& b, VarId key) { return b.first < key; });
    if (it != bindings_.end() && it->first == id)
        it->second = value;
    else
        bindings_.insert(it, {id, value});
}

Assignment project(const Assignment& a, const std::set<VarId>& targets) {
    std::vector<Assignment::Binding> out;
    out.reserve(targets.size());
    for (VarId id : targets) out.emplace_back(id, a.at(id));
    return Assignment(std::move(out));
}

}  // namespace symve

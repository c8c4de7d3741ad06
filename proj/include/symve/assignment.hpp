#pragma once

#include <initializer_list>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "symve/errors.hpp"
#include "symve/variable.hpp"

namespace symve {

// A joint assignment of values to variables. Bindings are kept sorted
// by ascending variable id; duplicate ids are rejected.
class Assignment {
public:
    using Binding = std::pair<VarId, int>;

    Assignment() = default;
    Assignment(std::initializer_list<Binding> bindings);
    explicit Assignment(std::vector<Binding> bindings);

    // Value bound to id, or nullopt.
    std::optional<int> value_of(VarId id) const;

    // Value bound to id; throws MissingVariableError when unbound.
    int at(VarId id) const;

    bool binds(VarId id) const { return value_of(id).has_value(); }
    void set(VarId id, int value);

    std::size_t size() const { return bindings_.size(); }
    bool empty() const { return bindings_.empty(); }
    const std::vector<Binding>& bindings() const { return bindings_; }

    friend bool operator==(const Assignment& a, const Assignment& b) {
        return a.bindings_ == b.bindings_;
    }
    friend bool operator!=(const Assignment& a, const Assignment& b) { return !(a == b); }

private:
    std::vector<Binding> bindings_;  // sorted by id
};

// Restriction of `a` to `targets`, ascending by id. Every target must
// be bound in `a`.
Assignment project(const Assignment& a, const std::set<VarId>& targets);

}  // namespace symve

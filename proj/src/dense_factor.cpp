#include "symve/dense_factor.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace symve {

namespace {

void check_scope(const std::vector<Variable>& scope) {
    for (std::size_t i = 1; i < scope.size(); ++i) {
        if (scope[i].id == scope[i - 1].id)
            throw ValidationError("duplicate variable id " + std::to_string(scope[i].id) +
                                  " in factor scope");
        if (scope[i].id < scope[i - 1].id)
            throw ValidationError("factor scope must be sorted ascending by id");
    }
}

}  // namespace

DenseFactor::DenseFactor(double value) : table_{value} { init_strides(); }

DenseFactor::DenseFactor(std::vector<Variable> scope, std::vector<double> table)
    : scope_(std::move(scope)), table_(std::move(table)) {
    check_scope(scope_);
    const std::uint64_t expected = checked_domain_size(scope_);
    if (table_.size() != expected)
        throw ValidationError("factor table has " + std::to_string(table_.size()) +
                              " entries, expected " + std::to_string(expected));
    for (double v : table_)
        if (v < 0.0) throw ValidationError("factor potentials must be non-negative");
    init_strides();
}

DenseFactor DenseFactor::from_unsorted(const std::vector<Variable>& scope,
                                       const std::vector<double>& table) {
    std::vector<std::size_t> perm(scope.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::sort(perm.begin(), perm.end(),
              [&](std::size_t a, std::size_t b) { return scope[a].id < scope[b].id; });

    std::vector<Variable> sorted_scope(scope.size());
    for (std::size_t i = 0; i < perm.size(); ++i) sorted_scope[i] = scope[perm[i]];

    bool already_sorted = true;
    for (std::size_t i = 0; i < perm.size(); ++i)
        if (perm[i] != i) already_sorted = false;
    if (already_sorted) return DenseFactor(std::move(sorted_scope), table);

    // Strides in the given (unsorted) layout.
    std::vector<std::size_t> given_strides(scope.size(), 1);
    for (std::size_t i = scope.size(); i-- > 1;)
        given_strides[i - 1] = given_strides[i] * static_cast<std::size_t>(scope[i].cardinality);

    DenseFactor out(std::move(sorted_scope), std::vector<double>(table.size(), 0.0));
    std::vector<int> values(out.scope_.size(), 0);
    for (std::size_t flat = 0; flat < table.size(); ++flat) {
        // `values` enumerates the sorted layout; map back to the given one.
        std::size_t src = 0;
        for (std::size_t i = 0; i < perm.size(); ++i)
            src += static_cast<std::size_t>(values[i]) * given_strides[perm[i]];
        out.table_[flat] = table[src];
        for (std::size_t i = values.size(); i-- > 0;) {
            if (++values[i] < out.scope_[i].cardinality) break;
            values[i] = 0;
        }
    }
    return out;
}

void DenseFactor::init_strides() {
    strides_.assign(scope_.size(), 1);
    for (std::size_t i = scope_.size(); i-- > 1;)
        strides_[i - 1] = strides_[i] * static_cast<std::size_t>(scope_[i].cardinality);
}

bool DenseFactor::in_scope(VarId id) const {
    return std::binary_search(scope_.begin(), scope_.end(), id,
                              [](const auto& a, const auto& b) {
                                  if constexpr (std::is_same_v<std::decay_t<decltype(a)>, Variable>)
                                      return a.id < b;
                                  else
                                      return a < b.id;
                              });
}

const Variable& DenseFactor::variable(VarId id) const {
    auto it = std::lower_bound(scope_.begin(), scope_.end(), id,
                               [](const Variable& v, VarId key) { return v.id < key; });
    if (it == scope_.end() || it->id != id)
        throw UnknownVariableError("variable " + std::to_string(id) + " not in factor scope");
    return *it;
}

std::set<VarId> DenseFactor::scope_ids() const {
    std::set<VarId> ids;
    for (const auto& v : scope_) ids.insert(v.id);
    return ids;
}

std::size_t DenseFactor::flat_index(const Assignment& a) const {
    std::size_t flat = 0;
    for (std::size_t i = 0; i < scope_.size(); ++i) {
        const int value = a.at(scope_[i].id);
        if (value >= scope_[i].cardinality)
            throw OutOfRangeError("value " + std::to_string(value) + " out of range for variable " +
                                  std::to_string(scope_[i].id));
        flat += static_cast<std::size_t>(value) * strides_[i];
    }
    return flat;
}

std::vector<int> DenseFactor::values_of_index(std::size_t flat) const {
    std::vector<int> values(scope_.size());
    for (std::size_t i = 0; i < scope_.size(); ++i) {
        values[i] = static_cast<int>(flat / strides_[i]) % scope_[i].cardinality;
    }
    return values;
}

DenseFactor multiply(const DenseFactor& f, const DenseFactor& g) {
    // Union scope, checking shared cardinalities.
    std::vector<Variable> scope;
    scope.reserve(f.scope().size() + g.scope().size());
    {
        auto fi = f.scope().begin();
        auto gi = g.scope().begin();
        while (fi != f.scope().end() || gi != g.scope().end()) {
            if (gi == g.scope().end() || (fi != f.scope().end() && fi->id < gi->id)) {
                scope.push_back(*fi++);
            } else if (fi == f.scope().end() || gi->id < fi->id) {
                scope.push_back(*gi++);
            } else {
                if (fi->cardinality != gi->cardinality)
                    throw CardinalityMismatchError(
                        "variable " + std::to_string(fi->id) + " has cardinality " +
                        std::to_string(fi->cardinality) + " vs " + std::to_string(gi->cardinality));
                scope.push_back(*fi);
                ++fi;
                ++gi;
            }
        }
    }

    // Operand strides per result position (0 where absent).
    std::vector<std::size_t> f_stride(scope.size(), 0), g_stride(scope.size(), 0);
    {
        std::size_t fi = 0, gi = 0;
        for (std::size_t i = 0; i < scope.size(); ++i) {
            if (fi < f.scope().size() && f.scope()[fi].id == scope[i].id)
                f_stride[i] = f.stride(fi++);
            if (gi < g.scope().size() && g.scope()[gi].id == scope[i].id)
                g_stride[i] = g.stride(gi++);
        }
    }

    const std::uint64_t size64 = checked_domain_size(scope);
    std::vector<double> table(static_cast<std::size_t>(size64));
    std::vector<int> values(scope.size(), 0);
    std::size_t f_idx = 0, g_idx = 0;
    for (std::size_t flat = 0; flat < table.size(); ++flat) {
        table[flat] = f.table()[f_idx] * g.table()[g_idx];
        for (std::size_t i = values.size(); i-- > 0;) {
            if (++values[i] < scope[i].cardinality) {
                f_idx += f_stride[i];
                g_idx += g_stride[i];
                break;
            }
            values[i] = 0;
            f_idx -= f_stride[i] * static_cast<std::size_t>(scope[i].cardinality - 1);
            g_idx -= g_stride[i] * static_cast<std::size_t>(scope[i].cardinality - 1);
        }
    }
    return DenseFactor(std::move(scope), std::move(table));
}

DenseFactor sum_out(const DenseFactor& f, const std::set<VarId>& targets) {
    for (VarId id : targets)
        if (!f.in_scope(id))
            throw UnknownVariableError("cannot sum out variable " + std::to_string(id) +
                                       ": not in factor scope");
    if (targets.empty()) return f;

    std::vector<Variable> kept;
    for (const auto& v : f.scope())
        if (!targets.count(v.id)) kept.push_back(v);

    // Stride of each kept variable in the output table.
    std::vector<std::size_t> out_strides(kept.size(), 1);
    for (std::size_t i = kept.size(); i-- > 1;)
        out_strides[i - 1] = out_strides[i] * static_cast<std::size_t>(kept[i].cardinality);

    // Map each input position to its output stride (0 if summed out).
    std::vector<std::size_t> pos_out_stride(f.scope().size(), 0);
    {
        std::size_t k = 0;
        for (std::size_t i = 0; i < f.scope().size(); ++i)
            if (!targets.count(f.scope()[i].id)) pos_out_stride[i] = out_strides[k++];
    }

    std::vector<double> table(kept.empty() ? 1 : out_strides[0] * kept[0].cardinality, 0.0);
    std::vector<int> values(f.scope().size(), 0);
    std::size_t out_idx = 0;
    for (std::size_t flat = 0; flat < f.table_size(); ++flat) {
        table[out_idx] += f.table()[flat];
        for (std::size_t i = values.size(); i-- > 0;) {
            if (++values[i] < f.scope()[i].cardinality) {
                out_idx += pos_out_stride[i];
                break;
            }
            values[i] = 0;
            out_idx -= pos_out_stride[i] * static_cast<std::size_t>(f.scope()[i].cardinality - 1);
        }
    }
    return DenseFactor(std::move(kept), std::move(table));
}

}  // namespace symve

#include "symve/compact_factor.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>

namespace symve {

namespace {

// Representative assignment of a compact cell, independent of any
// materialized factor.
Assignment shape_representative(const FactorShape& shape, std::uint64_t flat) {
    const auto free_vars = shape.free_variables();
    const auto& groups = shape.partition.groups();

    std::vector<std::uint64_t> group_ranks(groups.size(), 0);
    for (std::size_t k = groups.size(); k-- > 0;) {
        const int card = shape.variable(groups[k].front()).cardinality;
        const std::uint64_t extent = compact_domain_size(static_cast<int>(groups[k].size()), card);
        group_ranks[k] = flat % extent;
        flat /= extent;
    }

    std::vector<Assignment::Binding> bindings;
    bindings.reserve(shape.scope.size());
    // Remaining `flat` is the free index, row-major, last free var fastest.
    for (std::size_t i = free_vars.size(); i-- > 0;) {
        bindings.emplace_back(free_vars[i].id,
                              static_cast<int>(flat % static_cast<std::uint64_t>(
                                                          free_vars[i].cardinality)));
        flat /= static_cast<std::uint64_t>(free_vars[i].cardinality);
    }
    for (std::size_t k = 0; k < groups.size(); ++k) {
        const int card = shape.variable(groups[k].front()).cardinality;
        const Histogram h =
            hist_unrank(group_ranks[k], static_cast<int>(groups[k].size()), card);
        // counts[0] members take value 0 first, in ascending id order.
        std::size_t member = 0;
        for (int value = 0; value < card; ++value)
            for (int c = 0; c < h.counts[static_cast<std::size_t>(value)]; ++c)
                bindings.emplace_back(groups[k][member++], value);
    }
    return Assignment(std::move(bindings));
}

std::string render_assignment(const DenseFactor& f, std::size_t flat) {
    std::ostringstream out;
    const auto values = f.values_of_index(flat);
    out << "(";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out << ", ";
        out << "X" << f.scope()[i].id << "=" << values[i];
    }
    out << ")";
    return out.str();
}

// First table cell whose value changes when the two positions swap
// values, or nullopt when the transposition is an exact symmetry.
std::optional<std::pair<std::size_t, std::size_t>> find_transposition_violation(
    const DenseFactor& f, std::size_t pos_a, std::size_t pos_b) {
    const int card = f.scope()[pos_a].cardinality;
    if (card != f.scope()[pos_b].cardinality) return std::make_pair(std::size_t{0}, std::size_t{0});
    const std::size_t sa = f.stride(pos_a);
    const std::size_t sb = f.stride(pos_b);
    for (std::size_t flat = 0; flat < f.table_size(); ++flat) {
        const int va = static_cast<int>(flat / sa) % card;
        const int vb = static_cast<int>(flat / sb) % card;
        if (va >= vb) continue;
        const std::size_t swapped = flat + static_cast<std::size_t>(vb - va) * (sa - sb);
        if (f.table()[flat] != f.table()[swapped]) return std::make_pair(flat, swapped);
    }
    return std::nullopt;
}

}  // namespace

CompactFactor::CompactFactor(double value) : table_{value} {}

CompactFactor::CompactFactor(FactorShape shape, std::vector<double> table)
    : shape_(std::move(shape)), table_(std::move(table)) {
    const std::uint64_t expected = shape_.compact_size();
    if (table_.size() != expected)
        throw ValidationError("compact table has " + std::to_string(table_.size()) +
                              " entries, expected " + std::to_string(expected));
    for (double v : table_)
        if (v < 0.0) throw ValidationError("factor potentials must be non-negative");
    for (const auto& g : shape_.partition.groups()) {
        const int card = shape_.variable(g.front()).cardinality;
        group_extents_.push_back(compact_domain_size(static_cast<int>(g.size()), card));
    }
}

Assignment CompactFactor::representative(std::size_t flat) const {
    return shape_representative(shape_, flat);
}

bool transposition_invariant(const DenseFactor& f, std::size_t pos_a, std::size_t pos_b) {
    if (f.scope()[pos_a].cardinality != f.scope()[pos_b].cardinality) return false;
    return !find_transposition_violation(f, pos_a, pos_b).has_value();
}

SymmetryPartition detect_symmetries(const DenseFactor& f) {
    const std::size_t n = f.scope().size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };

    // Transposition invariance is closed under composition, so pairwise
    // tests plus union-find recover the maximal groups.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (find(i) == find(j)) continue;
            if (f.scope()[i].cardinality != f.scope()[j].cardinality) continue;
            if (transposition_invariant(f, i, j)) parent[find(j)] = find(i);
        }
    }

    std::vector<std::vector<VarId>> raw(n);
    for (std::size_t i = 0; i < n; ++i) raw[find(i)].push_back(f.scope()[i].id);
    raw.erase(std::remove_if(raw.begin(), raw.end(), [](const auto& g) { return g.empty(); }),
              raw.end());
    return SymmetryPartition(std::move(raw));
}

void verify_symmetry(const DenseFactor& f, const SymmetryPartition& p) {
    FactorShape shape(f.scope(), p);  // validates membership and cardinalities
    for (const auto& group : p.groups()) {
        // Adjacent transpositions generate all permutations of the group.
        for (std::size_t m = 0; m + 1 < group.size(); ++m) {
            std::size_t pos_a = 0, pos_b = 0;
            for (std::size_t i = 0; i < f.scope().size(); ++i) {
                if (f.scope()[i].id == group[m]) pos_a = i;
                if (f.scope()[i].id == group[m + 1]) pos_b = i;
            }
            if (auto witness = find_transposition_violation(f, pos_a, pos_b)) {
                std::ostringstream msg;
                msg << "group {";
                for (std::size_t i = 0; i < group.size(); ++i) msg << (i ? " " : "") << group[i];
                msg << "} is not a symmetry: " << render_assignment(f, witness->first) << " -> "
                    << f.table()[witness->first] << " but "
                    << render_assignment(f, witness->second) << " -> "
                    << f.table()[witness->second];
                throw NotSymmetricError(msg.str(), witness->first, witness->second);
            }
        }
    }
}

CompactFactor encode(const DenseFactor& f, const SymmetryPartition& p, bool verify) {
    FactorShape shape(f.scope(), p);
    if (verify) verify_symmetry(f, p);

    const std::uint64_t cells = shape.compact_size();
    std::vector<double> table(static_cast<std::size_t>(cells));
    for (std::uint64_t flat = 0; flat < cells; ++flat)
        table[static_cast<std::size_t>(flat)] =
            f.value_at(shape_representative(shape, flat));
    return CompactFactor(std::move(shape), std::move(table));
}

DenseFactor decode(const CompactFactor& c) {
    const FactorShape& shape = c.shape();

    // Per scope position: free slot stride or owning group.
    const auto free_vars = shape.free_variables();
    std::vector<std::uint64_t> free_strides(free_vars.size(), 1);
    for (std::size_t i = free_vars.size(); i-- > 1;)
        free_strides[i - 1] =
            free_strides[i] * static_cast<std::uint64_t>(free_vars[i].cardinality);

    struct Slot {
        bool is_free;
        std::uint64_t free_stride;  // when free
        std::size_t group;          // when grouped
    };
    std::vector<Slot> slots(shape.scope.size());
    {
        std::size_t fi = 0;
        for (std::size_t i = 0; i < shape.scope.size(); ++i) {
            if (auto g = shape.partition.group_of(shape.scope[i].id)) {
                slots[i] = {false, 0, *g};
            } else {
                slots[i] = {true, free_strides[fi], 0};
                ++fi;
            }
        }
    }
    const auto& groups = shape.partition.groups();
    std::vector<std::uint64_t> group_extents(groups.size());
    std::vector<int> group_cards(groups.size());
    for (std::size_t k = 0; k < groups.size(); ++k) {
        group_cards[k] = shape.variable(groups[k].front()).cardinality;
        group_extents[k] = compact_domain_size(static_cast<int>(groups[k].size()), group_cards[k]);
    }

    std::vector<int> values(shape.scope.size(), 0);
    std::vector<double> table(static_cast<std::size_t>(shape.dense_size()), 0.0);
    for (std::size_t flat = 0; flat < table.size(); ++flat) {
        std::uint64_t free_flat = 0;
        std::vector<Histogram> hists(groups.size());
        for (std::size_t k = 0; k < groups.size(); ++k)
            hists[k].counts.assign(static_cast<std::size_t>(group_cards[k]), 0);
        for (std::size_t i = 0; i < slots.size(); ++i) {
            if (slots[i].is_free)
                free_flat += slots[i].free_stride * static_cast<std::uint64_t>(values[i]);
            else
                ++hists[slots[i].group].counts[static_cast<std::size_t>(values[i])];
        }
        std::uint64_t cell = free_flat;
        for (std::size_t k = 0; k < groups.size(); ++k)
            cell = cell * group_extents[k] + hist_rank(hists[k]);
        table[flat] = c.table()[static_cast<std::size_t>(cell)];

        for (std::size_t i = values.size(); i-- > 0;) {
            if (++values[i] < shape.scope[i].cardinality) break;
            values[i] = 0;
        }
    }
    return DenseFactor(shape.scope, std::move(table));
}

double compact_lookup(const CompactFactor& c, const Assignment& a) {
    const FactorShape& shape = c.shape();
    std::uint64_t free_flat = 0;
    for (const auto& v : shape.free_variables()) {
        const int value = a.at(v.id);
        if (value >= v.cardinality)
            throw OutOfRangeError("value " + std::to_string(value) +
                                  " out of range for variable " + std::to_string(v.id));
        free_flat = free_flat * static_cast<std::uint64_t>(v.cardinality) +
                    static_cast<std::uint64_t>(value);
    }
    std::uint64_t cell = free_flat;
    const auto& groups = shape.partition.groups();
    for (std::size_t k = 0; k < groups.size(); ++k) {
        const int card = shape.variable(groups[k].front()).cardinality;
        Histogram h;
        h.counts.assign(static_cast<std::size_t>(card), 0);
        for (VarId id : groups[k]) {
            const int value = a.at(id);
            if (value >= card)
                throw OutOfRangeError("value " + std::to_string(value) +
                                      " out of range for variable " + std::to_string(id));
            ++h.counts[static_cast<std::size_t>(value)];
        }
        cell = cell * c.group_extents_[k] + hist_rank(h);
    }
    return c.table()[static_cast<std::size_t>(cell)];
}

CompactFactor compact_sum_out(const CompactFactor& c, VarId id) {
    const int card = c.shape().variable(id).cardinality;  // throws UnknownVariableError
    FactorShape out_shape = shape_sum_out(c.shape(), id);

    const std::uint64_t cells = out_shape.compact_size();
    std::vector<double> table(static_cast<std::size_t>(cells), 0.0);
    for (std::uint64_t flat = 0; flat < cells; ++flat) {
        Assignment rep = shape_representative(out_shape, flat);
        double sum = 0.0;
        for (int v = 0; v < card; ++v) {
            rep.set(id, v);
            sum += compact_lookup(c, rep);
        }
        table[static_cast<std::size_t>(flat)] = sum;
    }
    return CompactFactor(std::move(out_shape), std::move(table));
}

CompactFactor compact_multiply(const CompactFactor& a, const CompactFactor& b) {
    FactorShape out_shape = shape_multiply(a.shape(), b.shape());

    const std::uint64_t cells = out_shape.compact_size();
    std::vector<double> table(static_cast<std::size_t>(cells));
    for (std::uint64_t flat = 0; flat < cells; ++flat) {
        const Assignment rep = shape_representative(out_shape, flat);
        table[static_cast<std::size_t>(flat)] = compact_lookup(a, rep) * compact_lookup(b, rep);
    }
    return CompactFactor(std::move(out_shape), std::move(table));
}

}  // namespace symve

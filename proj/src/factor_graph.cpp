#include "symve/factor_graph.hpp"

#include <algorithm>
#include <string>

namespace symve {

GraphFactor::GraphFactor(DenseFactor f, SymmetryPartition sym, bool validate)
    : shape_(f.scope(), sym) {
    if (validate && !sym.empty()) verify_symmetry(f, sym);
    values_ = std::move(f);
}

GraphFactor::GraphFactor(CompactFactor f) : shape_(f.shape()), values_(std::move(f)) {}

GraphFactor::GraphFactor(FactorShape s) : shape_(std::move(s)) {}

double GraphFactor::scalar_value() const {
    if (!is_scalar()) throw Error("factor is not a scalar");
    if (is_dense()) return dense().table()[0];
    if (is_compact()) return compact().table()[0];
    throw Error("shape-only factor has no value");
}

double GraphFactor::value_at(const Assignment& a) const {
    if (is_dense()) return dense().value_at(a);
    if (is_compact()) return compact_lookup(compact(), a);
    throw Error("shape-only factor has no values");
}

DenseFactor GraphFactor::to_dense() const {
    if (is_dense()) return dense();
    if (is_compact()) return decode(compact());
    throw Error("shape-only factor cannot be materialized");
}

CompactFactor GraphFactor::to_compact() const {
    if (is_compact()) return compact();
    if (is_dense()) return encode(dense(), shape_.partition, /*verify=*/false);
    throw Error("shape-only factor cannot be materialized");
}

void CostLedger::push(EliminationStep step) { steps.push_back(std::move(step)); }

namespace {

void finalize_totals(CostLedger& ledger) {
    ledger.dense_full_total = 0;
    ledger.compact_full_total = 0;
    for (const auto& s : ledger.steps) {
        ledger.dense_full_total = checked_add(ledger.dense_full_total, s.dense_cost);
        ledger.compact_full_total = checked_add(ledger.compact_full_total, s.compact_cost);
    }
    ledger.dense_paper_total = ledger.dense_full_total;
    ledger.compact_paper_total = ledger.compact_full_total;
    if (!ledger.steps.empty()) {
        ledger.dense_paper_total -= ledger.steps.back().dense_cost;
        ledger.compact_paper_total -= ledger.steps.back().compact_cost;
    }
}

}  // namespace

void FactorGraph::add_variable(Variable v) {
    if (has_variable(v.id) || was_eliminated(v.id))
        throw ValidationError("variable id " + std::to_string(v.id) + " already exists");
    auto it = std::lower_bound(variables_.begin(), variables_.end(), v.id,
                               [](const Variable& a, VarId key) { return a.id < key; });
    variables_.insert(it, v);
}

std::size_t FactorGraph::add_factor(GraphFactor f) {
    for (const auto& v : f.shape().scope) {
        if (!has_variable(v.id))
            throw UnknownVariableError("factor scope references unknown variable " +
                                       std::to_string(v.id));
        if (variable(v.id).cardinality != v.cardinality)
            throw CardinalityMismatchError("factor disagrees on cardinality of variable " +
                                           std::to_string(v.id));
    }
    factors_.push_back(std::move(f));
    return factors_.size() - 1;
}

bool FactorGraph::has_variable(VarId id) const {
    auto it = std::lower_bound(variables_.begin(), variables_.end(), id,
                               [](const Variable& v, VarId key) { return v.id < key; });
    return it != variables_.end() && it->id == id;
}

bool FactorGraph::was_eliminated(VarId id) const {
    return std::find(eliminated_.begin(), eliminated_.end(), id) != eliminated_.end();
}

const Variable& FactorGraph::variable(VarId id) const {
    auto it = std::lower_bound(variables_.begin(), variables_.end(), id,
                               [](const Variable& v, VarId key) { return v.id < key; });
    if (it == variables_.end() || it->id != id)
        throw UnknownVariableError("variable " + std::to_string(id) + " not in graph");
    return *it;
}

FactorGraph FactorGraph::structural_copy() const {
    FactorGraph out;
    out.variables_ = variables_;
    out.eliminated_ = eliminated_;
    for (const auto& f : factors_) out.factors_.emplace_back(f.shape());
    return out;
}

std::vector<std::size_t> FactorGraph::factors_containing(VarId id) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < factors_.size(); ++i)
        if (factors_[i].shape().in_scope(id)) out.push_back(i);
    return out;
}

bool operator==(const FactorGraph& a, const FactorGraph& b) {
    return a.variables_ == b.variables_ && a.eliminated_ == b.eliminated_ &&
           a.factors_ == b.factors_;
}

namespace {

// Shape of the product of the factors that contain X; a variable in no
// factor behaves like an all-ones factor over just itself.
FactorShape product_shape(const FactorGraph& g, VarId id,
                          const std::vector<std::size_t>& touched) {
    if (touched.empty()) return FactorShape({g.variable(id)}, SymmetryPartition{});
    FactorShape shape = g.factors()[touched.front()].shape();
    for (std::size_t i = 1; i < touched.size(); ++i)
        shape = shape_multiply(shape, g.factors()[touched[i]].shape());
    return shape;
}

void check_live(const FactorGraph& g, VarId id) {
    if (!g.has_variable(id)) {
        if (g.was_eliminated(id))
            throw AlreadyEliminatedError("variable " + std::to_string(id) +
                                         " was already eliminated");
        throw UnknownVariableError("variable " + std::to_string(id) + " not in graph");
    }
}

}  // namespace

struct EliminationImpl {
    static std::pair<FactorGraph, EliminationStep> run(const FactorGraph& g, VarId id,
                                                       const EliminateOptions& opts) {
        check_live(g, id);
        const std::vector<std::size_t> touched = g.factors_containing(id);
        const FactorShape prod = product_shape(g, id, touched);

        EliminationStep step;
        step.variable = id;
        step.touched = touched;
        for (const auto& v : prod.scope) step.product_scope.push_back(v.id);
        step.dense_cost = prod.dense_size();
        step.compact_cost = prod.compact_size();

        FactorGraph out;
        out.variables_.reserve(g.variables_.size() - 1);
        for (const auto& v : g.variables_)
            if (v.id != id) out.variables_.push_back(v);
        out.eliminated_ = g.eliminated_;
        out.eliminated_.push_back(id);

        for (std::size_t i = 0; i < g.factors_.size(); ++i)
            if (std::find(touched.begin(), touched.end(), i) == touched.end())
                out.factors_.push_back(g.factors_[i]);

        const FactorShape result_shape = shape_sum_out(prod, id);
        switch (opts.mode) {
            case ElimMode::cost_only:
                out.factors_.emplace_back(result_shape);
                break;
            case ElimMode::dense: {
                if (step.dense_cost > opts.max_table_entries)
                    throw TooLargeError("dense intermediate of " +
                                        std::to_string(step.dense_cost) +
                                        " entries exceeds the table limit");
                DenseFactor product = touched.empty()
                                          ? DenseFactor({g.variable(id)},
                                                        std::vector<double>(
                                                            static_cast<std::size_t>(
                                                                g.variable(id).cardinality),
                                                            1.0))
                                          : g.factors_[touched.front()].to_dense();
                for (std::size_t i = 1; i < touched.size(); ++i)
                    product = multiply(product, g.factors_[touched[i]].to_dense());
                DenseFactor reduced = sum_out(product, {id});
                SymmetryPartition sym = result_shape.partition;
                if (opts.redetect) sym = detect_symmetries(reduced);
                out.factors_.emplace_back(std::move(reduced), std::move(sym),
                                          /*validate=*/false);
                break;
            }
            case ElimMode::compact: {
                if (step.compact_cost > opts.max_table_entries)
                    throw TooLargeError("compact intermediate of " +
                                        std::to_string(step.compact_cost) +
                                        " entries exceeds the table limit");
                CompactFactor product =
                    touched.empty()
                        ? CompactFactor(FactorShape({g.variable(id)}, SymmetryPartition{}),
                                        std::vector<double>(
                                            static_cast<std::size_t>(
                                                g.variable(id).cardinality),
                                            1.0))
                        : g.factors_[touched.front()].to_compact();
                for (std::size_t i = 1; i < touched.size(); ++i)
                    product = compact_multiply(product, g.factors_[touched[i]].to_compact());
                CompactFactor reduced = compact_sum_out(product, id);
                if (opts.redetect) {
                    const DenseFactor dense_view = decode(reduced);
                    reduced = encode(dense_view, detect_symmetries(dense_view),
                                     /*verify=*/false);
                }
                out.factors_.emplace_back(std::move(reduced));
                break;
            }
        }
        return {std::move(out), std::move(step)};
    }
};

std::pair<FactorGraph, EliminationStep> eliminate(const FactorGraph& g, VarId id,
                                                  const EliminateOptions& opts) {
    return EliminationImpl::run(g, id, opts);
}

std::pair<std::uint64_t, std::uint64_t> step_costs(const FactorGraph& g, VarId id) {
    check_live(g, id);
    const FactorShape prod = product_shape(g, id, g.factors_containing(id));
    return {prod.dense_size(), prod.compact_size()};
}

EliminationResult run_elimination(const FactorGraph& g, const std::vector<VarId>& order,
                                  const EliminateOptions& opts) {
    {
        std::vector<VarId> want;
        for (const auto& v : g.variables()) want.push_back(v.id);
        std::vector<VarId> got = order;
        std::sort(got.begin(), got.end());
        if (got != want)
            throw NotAPermutationError(
                "elimination order must be a permutation of the live variable ids");
    }

    EliminationResult result;
    result.ledger.order = order;
    FactorGraph current = g;
    for (VarId id : order) {
        auto [next, step] = eliminate(current, id, opts);
        current = std::move(next);
        result.ledger.push(std::move(step));
    }
    finalize_totals(result.ledger);

    if (opts.mode != ElimMode::cost_only) {
        double z = 1.0;
        for (const auto& f : current.factors()) z *= f.scalar_value();
        result.z = z;
    }
    return result;
}

double joint_oracle(const FactorGraph& g, std::uint64_t limit) {
    std::uint64_t states = 1;
    for (const auto& v : g.variables())
        states = checked_mul(states, static_cast<std::uint64_t>(v.cardinality));
    if (states > limit)
        throw TooLargeError("joint space of " + std::to_string(states) +
                            " states exceeds the enumeration limit of " + std::to_string(limit));

    const auto& vars = g.variables();
    std::vector<std::size_t> pos_of_id;  // variable id -> position in vars
    {
        VarId max_id = -1;
        for (const auto& v : vars) max_id = std::max(max_id, v.id);
        pos_of_id.assign(static_cast<std::size_t>(max_id + 1), 0);
        for (std::size_t i = 0; i < vars.size(); ++i)
            pos_of_id[static_cast<std::size_t>(vars[i].id)] = i;
    }

    // Direct per-factor evaluators over the shared value vector; no
    // factor algebra is involved anywhere in this path.
    std::vector<int> values(vars.size(), 0);
    struct DenseEval {
        const DenseFactor* factor;
        std::vector<std::size_t> value_pos;  // per scope position
    };
    struct CompactEval {
        const CompactFactor* factor;
        std::vector<std::size_t> free_pos;
        std::vector<std::vector<std::size_t>> group_pos;
        std::vector<std::uint64_t> group_extents;
        std::vector<int> group_cards;
    };
    std::vector<DenseEval> dense_evals;
    std::vector<CompactEval> compact_evals;
    for (const auto& f : g.factors()) {
        if (f.is_dense()) {
            DenseEval e{&f.dense(), {}};
            for (const auto& v : f.dense().scope())
                e.value_pos.push_back(pos_of_id[static_cast<std::size_t>(v.id)]);
            dense_evals.push_back(std::move(e));
        } else if (f.is_compact()) {
            const CompactFactor& c = f.compact();
            CompactEval e{&c, {}, {}, {}, {}};
            for (const auto& v : c.free_scope())
                e.free_pos.push_back(pos_of_id[static_cast<std::size_t>(v.id)]);
            for (const auto& grp : c.partition().groups()) {
                std::vector<std::size_t> members;
                for (VarId id : grp) members.push_back(pos_of_id[static_cast<std::size_t>(id)]);
                const int card = c.shape().variable(grp.front()).cardinality;
                e.group_cards.push_back(card);
                e.group_extents.push_back(
                    compact_domain_size(static_cast<int>(grp.size()), card));
                e.group_pos.push_back(std::move(members));
            }
            compact_evals.push_back(std::move(e));
        } else {
            throw Error("joint_oracle requires factors with values");
        }
    }

    double total = 0.0;
    for (std::uint64_t state = 0; state < states; ++state) {
        double product = 1.0;
        for (const auto& e : dense_evals) {
            std::size_t flat = 0;
            for (std::size_t j = 0; j < e.value_pos.size(); ++j)
                flat += static_cast<std::size_t>(values[e.value_pos[j]]) * e.factor->stride(j);
            product *= e.factor->table()[flat];
        }
        for (const auto& e : compact_evals) {
            const auto free_vars = e.factor->free_scope();
            std::uint64_t cell = 0;
            for (std::size_t j = 0; j < e.free_pos.size(); ++j)
                cell = cell * static_cast<std::uint64_t>(free_vars[j].cardinality) +
                       static_cast<std::uint64_t>(values[e.free_pos[j]]);
            for (std::size_t k = 0; k < e.group_pos.size(); ++k) {
                Histogram h;
                h.counts.assign(static_cast<std::size_t>(e.group_cards[k]), 0);
                for (std::size_t m : e.group_pos[k])
                    ++h.counts[static_cast<std::size_t>(values[m])];
                cell = cell * e.group_extents[k] + hist_rank(h);
            }
            product *= e.factor->table()[static_cast<std::size_t>(cell)];
        }
        total += product;

        for (std::size_t i = values.size(); i-- > 0;) {
            if (++values[i] < vars[i].cardinality) break;
            values[i] = 0;
        }
    }
    return total;
}

}  // namespace symve

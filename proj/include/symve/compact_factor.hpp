#pragma once

#include <cstdint>
#include <vector>

#include "symve/assignment.hpp"
#include "symve/dense_factor.hpp"
#include "symve/histogram.hpp"
#include "symve/shape.hpp"

namespace symve {

// A potential table indexed by free-variable assignments and one
// histogram rank per symmetry group, instead of raw assignments.
// Layout: the free assignment is the outer index (row-major, last
// free variable fastest, matching DenseFactor) and the group histogram
// ranks follow in group order, each dimension enumerated in ascending
// lexicographic histogram order.
class CompactFactor {
public:
    // Scalar.
    explicit CompactFactor(double value = 1.0);

    // Table length must equal shape.compact_size().
    CompactFactor(FactorShape shape, std::vector<double> table);

    const FactorShape& shape() const { return shape_; }
    const std::vector<Variable>& scope() const { return shape_.scope; }
    const SymmetryPartition& partition() const { return shape_.partition; }
    std::vector<Variable> free_scope() const { return shape_.free_variables(); }
    const std::vector<double>& table() const { return table_; }
    std::size_t table_size() const { return table_.size(); }
    bool is_scalar() const { return shape_.scope.empty(); }

    // Canonical representative assignment of the cell at `flat`: free
    // variables take their cell values; within each group, members in
    // ascending id order receive values in nondecreasing order
    // (counts[0] zeros first).
    Assignment representative(std::size_t flat) const;

    friend bool operator==(const CompactFactor& a, const CompactFactor& b) {
        return a.shape_ == b.shape_ && a.table_ == b.table_;
    }
    friend bool operator!=(const CompactFactor& a, const CompactFactor& b) { return !(a == b); }

private:
    friend double compact_lookup(const CompactFactor& c, const Assignment& a);

    FactorShape shape_;
    std::vector<double> table_;
    // Cached per-dimension extents/strides: free block first, then one
    // entry per group.
    std::vector<std::uint64_t> group_extents_;
};

// Partition of the scope into maximal groups such that every
// transposition of two same-group variables leaves the table invariant
// (exact value equality). Since adjacent transpositions generate the
// full symmetric group, membership implies invariance under all
// within-group permutations. Singleton groups are normalized away.
SymmetryPartition detect_symmetries(const DenseFactor& f);

// True when swapping values of the two scope positions leaves every
// table entry unchanged.
bool transposition_invariant(const DenseFactor& f, std::size_t pos_a, std::size_t pos_b);

// Throws NotSymmetricError (with a counterexample pair) unless every
// group of `p` passes the transposition test on `f`.
void verify_symmetry(const DenseFactor& f, const SymmetryPartition& p);

// Compact encoding of `f` under partition `p`. When `verify` is set,
// every group is transposition-tested first and a failure throws
// NotSymmetricError with a concrete counterexample pair.
CompactFactor encode(const DenseFactor& f, const SymmetryPartition& p, bool verify = true);

// Dense table reproducing the compact factor exactly.
DenseFactor decode(const CompactFactor& c);

// Value of the assignment without materializing the dense table: reads
// the cell of the free projection and the per-group histograms of `a`.
double compact_lookup(const CompactFactor& c, const Assignment& a);

// Sum-out of one variable on the compact encoding. Symmetry is
// preserved: a free variable leaves the partition untouched; a group
// member shrinks its group, and the output cell for histogram h' sums
// the input cells at h' + e_v over all values v.
CompactFactor compact_sum_out(const CompactFactor& c, VarId id);

// Product on compact encodings. The output partition follows the
// structural multiplication rule; each output cell is the product of
// both operands at the cell's canonical representative.
CompactFactor compact_multiply(const CompactFactor& a, const CompactFactor& b);

}  // namespace symve

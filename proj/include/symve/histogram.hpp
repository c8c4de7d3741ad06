#pragma once

#include <cstdint>
#include <vector>

namespace symve {

// Value-count vector for a group of interchangeable variables:
// counts[v] = number of group members assigned value v. The counts sum
// to the group size and have one entry per domain value, so the
// all-zeros assignment of a group of n maps to [n, 0, ...].
struct Histogram {
    std::vector<int> counts;

    int group_size() const;
    int domain_size() const { return static_cast<int>(counts.size()); }

    friend bool operator==(const Histogram& a, const Histogram& b) {
        return a.counts == b.counts;
    }
    friend bool operator!=(const Histogram& a, const Histogram& b) { return !(a == b); }
};

// C(n, k) in exact integer arithmetic; throws OverflowError instead of
// wrapping.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

// Number of histograms for a group of n variables with domain size d:
// C(n + d - 1, d - 1). Requires n >= 1, d >= 1.
std::uint64_t compact_domain_size(int group_size, int domain_size);

// Position of `h` in ascending lexicographic order over all count
// vectors with the same sum and length.
std::uint64_t hist_rank(const Histogram& h);

// Inverse of hist_rank for the (group_size, domain_size) family.
Histogram hist_unrank(std::uint64_t rank, int group_size, int domain_size);

}  // namespace symve

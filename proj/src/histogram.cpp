#include "symve/histogram.hpp"

#include <string>

#include "symve/errors.hpp"
#include "symve/variable.hpp"

namespace symve {

int Histogram::group_size() const {
    int total = 0;
    for (int c : counts) {
        if (c < 0) throw ValidationError("histogram counts must be non-negative");
        total += c;
    }
    return total;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        // result * (n - k + i) / i is exact at every step; do the
        // multiply in 128 bits and report overflow of the quotient.
        unsigned __int128 wide = static_cast<unsigned __int128>(result) * (n - k + i);
        wide /= i;
        if (wide > static_cast<unsigned __int128>(~std::uint64_t{0}))
            throw OverflowError("binomial(" + std::to_string(n) + ", " + std::to_string(k) +
                                ") exceeds 64 bits");
        result = static_cast<std::uint64_t>(wide);
    }
    return result;
}

std::uint64_t compact_domain_size(int group_size, int domain_size) {
    if (group_size < 1 || domain_size < 1)
        throw ValidationError("compact_domain_size requires group size >= 1 and domain >= 1");
    return binomial(static_cast<std::uint64_t>(group_size) + domain_size - 1,
                    static_cast<std::uint64_t>(domain_size) - 1);
}

namespace {

// Number of count vectors of length `bins` summing to `total`.
std::uint64_t compositions(int total, int bins) {
    if (bins == 0) return total == 0 ? 1 : 0;
    return binomial(static_cast<std::uint64_t>(total) + bins - 1,
                    static_cast<std::uint64_t>(bins) - 1);
}

}  // namespace

std::uint64_t hist_rank(const Histogram& h) {
    const int d = h.domain_size();
    if (d < 1) throw ValidationError("histogram needs at least one bin");
    int remaining = h.group_size();
    std::uint64_t rank = 0;
    for (int i = 0; i < d - 1; ++i) {
        const int count = h.counts[i];
        for (int v = 0; v < count; ++v)
            rank = checked_add(rank, compositions(remaining - v, d - i - 1));
        remaining -= count;
    }
    return rank;
}

Histogram hist_unrank(std::uint64_t rank, int group_size, int domain_size) {
    if (group_size < 0 || domain_size < 1)
        throw ValidationError("hist_unrank requires group size >= 0 and domain >= 1");
    const std::uint64_t total = compositions(group_size, domain_size);
    if (rank >= total)
        throw OutOfRangeError("histogram rank " + std::to_string(rank) + " out of range [0, " +
                              std::to_string(total) + ")");
    Histogram h;
    h.counts.assign(static_cast<std::size_t>(domain_size), 0);
    int remaining = group_size;
    for (int i = 0; i < domain_size - 1; ++i) {
        int v = 0;
        for (;; ++v) {
            const std::uint64_t block = compositions(remaining - v, domain_size - i - 1);
            if (rank < block) break;
            rank -= block;
        }
        h.counts[static_cast<std::size_t>(i)] = v;
        remaining -= v;
    }
    h.counts[static_cast<std::size_t>(domain_size) - 1] = remaining;
    return h;
}

}  // namespace symve

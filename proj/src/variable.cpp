#include "symve/variable.hpp"

namespace symve {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out))
        throw OverflowError("integer overflow in size computation");
    return out;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t out = 0;
    if (__builtin_add_overflow(a, b, &out))
        throw OverflowError("integer overflow in cost accumulation");
    return out;
}

std::uint64_t checked_domain_size(const std::vector<Variable>& scope) {
    std::uint64_t size = 1;
    for (const auto& v : scope) size = checked_mul(size, static_cast<std::uint64_t>(v.cardinality));
    return size;
}

}  // namespace symve

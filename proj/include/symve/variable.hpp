#pragma once

#include <cstdint>
#include <vector>

#include "symve/errors.hpp"

namespace symve {

using VarId = std::int32_t;

// A discrete random variable: an id plus the size of its value domain.
// Values are implicitly 0..cardinality-1.
struct Variable {
    VarId id = 0;
    int cardinality = 1;

    Variable() = default;
    Variable(VarId id_, int cardinality_) : id(id_), cardinality(cardinality_) {
        if (id < 0) throw ValidationError("variable id must be non-negative");
        if (cardinality < 1) throw ValidationError("variable cardinality must be >= 1");
    }

    friend bool operator==(const Variable& a, const Variable& b) {
        return a.id == b.id && a.cardinality == b.cardinality;
    }
    friend bool operator!=(const Variable& a, const Variable& b) { return !(a == b); }
};

// Product of the cardinalities of a scope, with overflow reported
// rather than wrapped.
std::uint64_t checked_domain_size(const std::vector<Variable>& scope);

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_add(std::uint64_t a, std::uint64_t b);

}  // namespace symve

#pragma once

#include "trop1/ratlin.hpp"

#include <optional>
#include <vector>

/// Dense two-phase simplex over the rationals with Bland's rule. Sized for the
/// handful of variables a moduli cone carries; no attempt at sparsity.
namespace trop1::lp {

enum class Relation { LessEqual, Equal, GreaterEqual };

struct Constraint {
    RatVec coeffs;
    Relation relation;
    Rational rhs;
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
    Status status = Status::Infeasible;
    RatVec x;
    Rational value;
};

/// Maximizes objective . x subject to the constraints. Variables are free unless
/// flagged in `nonnegative` (empty means all free).
Result maximize(const RatVec& objective, const std::vector<Constraint>& constraints,
                const std::vector<bool>& nonnegative = {});

/// A feasible point if one exists.
std::optional<RatVec> find_feasible(std::size_t num_vars, const std::vector<Constraint>& constraints,
                                    const std::vector<bool>& nonnegative = {});

}  // namespace trop1::lp

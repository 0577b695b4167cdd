#pragma once

#include "trop1/rational.hpp"

#include <optional>
#include <vector>

namespace trop1 {

/// Branches of a genus-1 Gorenstein point with a function on its normalization:
/// per branch, integer orders a_i at points x_i, and a residue constant c_j.
struct DescentInstance {
    std::vector<std::vector<int>> slopes;
    std::vector<std::vector<Rational>> points;
    std::vector<Rational> constants;

    std::size_t num_branches() const { return slopes.size(); }
    std::size_t num_points() const;
    /// Throws InvalidInput on a violated invariant.
    void validate() const;
};

/// b_j = -sum over the branch of a_i / x_i.
std::vector<Rational> linear_parts(const DescentInstance& instance);

/// sum_j c_j b_j == 0.
bool descends(const DescentInstance& instance);

struct ConfigurationSearch {
    bool exists = false;
    std::optional<DescentInstance> witness;
    int attempts = 0;
};

/// Looks for distinct nonzero points making the function descend. Two points
/// never work; otherwise one point is solved for after fixing the rest.
ConfigurationSearch configuration_exists(const std::vector<std::vector<int>>& slopes,
                                         const std::vector<Rational>& constants);

}  // namespace trop1

#include "trop1/descent.hpp"

#include <algorithm>
#include <numeric>

namespace trop1 {
namespace {

constexpr int kMaxAttempts = 1000;

void validate_slopes(const std::vector<std::vector<int>>& slopes, const std::vector<Rational>& constants) {
    if (slopes.empty()) throw InvalidInput("descent: at least one branch is required");
    if (constants.size() != slopes.size()) throw InvalidInput("descent: one constant per branch required");
    for (std::size_t j = 0; j < slopes.size(); ++j) {
        if (slopes[j].empty()) throw InvalidInput("descent: branch " + std::to_string(j + 1) + " is empty");
        if (std::any_of(slopes[j].begin(), slopes[j].end(), [](int a) { return a == 0; })) {
            throw InvalidInput("descent: slopes must be nonzero");
        }
        if (std::accumulate(slopes[j].begin(), slopes[j].end(), 0) != 0) {
            throw InvalidInput("descent: slopes on branch " + std::to_string(j + 1) + " do not sum to zero");
        }
        if (constants[j] == 0) throw InvalidInput("descent: constants must be nonzero");
    }
}

}  // namespace

std::size_t DescentInstance::num_points() const {
    std::size_t n = 0;
    for (const auto& branch : slopes) n += branch.size();
    return n;
}

void DescentInstance::validate() const {
    validate_slopes(slopes, constants);
    if (points.size() != slopes.size()) throw InvalidInput("descent: one point list per branch required");
    for (std::size_t j = 0; j < slopes.size(); ++j) {
        if (points[j].size() != slopes[j].size()) {
            throw InvalidInput("descent: branch " + std::to_string(j + 1) + " needs one point per slope");
        }
        for (std::size_t i = 0; i < points[j].size(); ++i) {
            if (points[j][i] == 0) throw InvalidInput("descent: points must be nonzero");
            for (std::size_t k = 0; k < i; ++k) {
                if (points[j][k] == points[j][i]) {
                    throw InvalidInput("descent: points on branch " + std::to_string(j + 1) + " must be distinct");
                }
            }
        }
    }
}

std::vector<Rational> linear_parts(const DescentInstance& instance) {
    instance.validate();
    std::vector<Rational> b;
    for (std::size_t j = 0; j < instance.num_branches(); ++j) {
        Rational sum = 0;
        for (std::size_t i = 0; i < instance.slopes[j].size(); ++i) sum += instance.slopes[j][i] / instance.points[j][i];
        b.push_back(-sum);
    }
    return b;
}

bool descends(const DescentInstance& instance) {
    const auto b = linear_parts(instance);
    Rational total = 0;
    for (std::size_t j = 0; j < b.size(); ++j) total += instance.constants[j] * b[j];
    return total == 0;
}

ConfigurationSearch configuration_exists(const std::vector<std::vector<int>>& slopes,
                                         const std::vector<Rational>& constants) {
    validate_slopes(slopes, constants);
    ConfigurationSearch search;
    DescentInstance inst{slopes, {}, constants};
    const std::size_t n = inst.num_points();
    // A single branch with two points has b = -a (1/x1 - 1/x2), never zero.
    if (n == 2) return search;

    const std::size_t pivot_branch = slopes.size() - 1;
    const std::size_t pivot = slopes[pivot_branch].size() - 1;
    const int pivot_slope = slopes[pivot_branch][pivot];
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        search.attempts = attempt + 1;
        inst.points.assign(slopes.size(), {});
        Rational rest = 0;
        long index = 0;
        for (std::size_t j = 0; j < slopes.size(); ++j) {
            for (std::size_t i = 0; i < slopes[j].size(); ++i, ++index) {
                const Rational x = 2 * index + 1 + static_cast<long>(attempt) * static_cast<long>(2 * n + 1);
                inst.points[j].push_back(x);
                if (j != pivot_branch || i != pivot) rest -= constants[j] * slopes[j][i] / x;
            }
        }
        // Solve rest - c * a / x = 0 for the pivot point.
        if (rest == 0) continue;
        const Rational x = constants[pivot_branch] * pivot_slope / rest;
        auto& branch = inst.points[pivot_branch];
        branch[pivot] = x;
        if (std::count(branch.begin(), branch.end(), x) != 1) continue;
        if (!descends(inst)) throw InconsistencyError("descent witness failed verification");
        search.exists = true;
        search.witness = inst;
        return search;
    }
    return search;
}

}  // namespace trop1

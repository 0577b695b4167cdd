#include "trop1/lp.hpp"

#include <limits>

namespace trop1::lp {
namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct Tableau {
    std::vector<std::vector<Rational>> rows;  // each row: columns..., rhs
    std::vector<std::size_t> basis;
    std::size_t cols = 0;

    void pivot(std::size_t pr, std::size_t pc) {
        auto& prow = rows[pr];
        const Rational inv = 1 / prow[pc];
        for (auto& x : prow) {
            if (x != 0) x *= inv;
        }
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == pr || rows[r][pc] == 0) continue;
            const Rational factor = rows[r][pc];
            for (std::size_t c = 0; c <= cols; ++c) {
                if (prow[c] != 0) rows[r][c] -= factor * prow[c];
            }
        }
        basis[pr] = pc;
    }

    // Maximizes cost . z over the current basic feasible solution. Columns with
    // `blocked[c]` never enter. Returns false when unbounded.
    bool optimize(const std::vector<Rational>& cost, const std::vector<bool>& blocked) {
        for (;;) {
            std::size_t enter = kNone;
            for (std::size_t c = 0; c < cols && enter == kNone; ++c) {
                if (blocked[c]) continue;
                Rational reduced = -cost[c];
                for (std::size_t r = 0; r < rows.size(); ++r) {
                    if (rows[r][c] != 0 && cost[basis[r]] != 0) reduced += cost[basis[r]] * rows[r][c];
                }
                if (reduced < 0) enter = c;
            }
            if (enter == kNone) return true;
            std::size_t leave = kNone;
            Rational best;
            for (std::size_t r = 0; r < rows.size(); ++r) {
                if (rows[r][enter] <= 0) continue;
                Rational ratio = rows[r][cols] / rows[r][enter];
                if (leave == kNone || ratio < best || (ratio == best && basis[r] < basis[leave])) {
                    leave = r;
                    best = ratio;
                }
            }
            if (leave == kNone) return false;
            pivot(leave, enter);
        }
    }
};

}  // namespace

Result maximize(const RatVec& objective, const std::vector<Constraint>& constraints,
                const std::vector<bool>& nonnegative) {
    const std::size_t n = objective.dim();
    for (const auto& c : constraints) {
        if (c.coeffs.dim() != n) throw InvalidInput("lp: constraint dimension mismatch");
    }
    auto is_nonneg = [&](std::size_t j) { return !nonnegative.empty() && nonnegative[j]; };

    // Structural columns: x_j (or x_j^+ and x_j^- when free).
    std::vector<std::size_t> plus_col(n), minus_col(n, kNone);
    std::size_t cols = 0;
    for (std::size_t j = 0; j < n; ++j) {
        plus_col[j] = cols++;
        if (!is_nonneg(j)) minus_col[j] = cols++;
    }

    const std::size_t m = constraints.size();
    std::vector<Relation> rel(m);
    std::vector<std::size_t> slack_col(m, kNone), art_col(m, kNone);
    std::vector<bool> flip(m, false);
    for (std::size_t i = 0; i < m; ++i) {
        rel[i] = constraints[i].relation;
        if (constraints[i].rhs < 0) {
            flip[i] = true;
            if (rel[i] == Relation::LessEqual) rel[i] = Relation::GreaterEqual;
            else if (rel[i] == Relation::GreaterEqual) rel[i] = Relation::LessEqual;
        }
        if (rel[i] != Relation::Equal) slack_col[i] = cols++;
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (rel[i] != Relation::LessEqual) art_col[i] = cols++;
    }

    Tableau t;
    t.cols = cols;
    t.rows.assign(m, std::vector<Rational>(cols + 1));
    t.basis.assign(m, kNone);
    for (std::size_t i = 0; i < m; ++i) {
        const Rational s = flip[i] ? Rational(-1) : Rational(1);
        auto& row = t.rows[i];
        for (std::size_t j = 0; j < n; ++j) {
            const auto& a = constraints[i].coeffs[j];
            if (a == 0) continue;
            row[plus_col[j]] = s * a;
            if (minus_col[j] != kNone) row[minus_col[j]] = -s * a;
        }
        row[cols] = s * constraints[i].rhs;
        if (rel[i] == Relation::LessEqual) {
            row[slack_col[i]] = 1;
            t.basis[i] = slack_col[i];
        } else {
            if (rel[i] == Relation::GreaterEqual) row[slack_col[i]] = -1;
            row[art_col[i]] = 1;
            t.basis[i] = art_col[i];
        }
    }

    std::vector<bool> is_art(cols, false);
    for (auto c : art_col) {
        if (c != kNone) is_art[c] = true;
    }

    // Phase 1: drive the artificials to zero.
    std::vector<Rational> phase1(cols);
    for (std::size_t c = 0; c < cols; ++c) {
        if (is_art[c]) phase1[c] = -1;
    }
    t.optimize(phase1, std::vector<bool>(cols, false));
    for (std::size_t r = 0; r < m; ++r) {
        if (is_art[t.basis[r]] && t.rows[r][cols] != 0) return Result{Status::Infeasible, {}, {}};
    }
    // Pivot degenerate artificials out of the basis; rows where that fails are redundant.
    for (std::size_t r = 0; r < t.rows.size();) {
        if (!is_art[t.basis[r]]) {
            ++r;
            continue;
        }
        std::size_t pc = kNone;
        for (std::size_t c = 0; c < cols && pc == kNone; ++c) {
            if (!is_art[c] && t.rows[r][c] != 0) pc = c;
        }
        if (pc == kNone) {
            t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(r));
            t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(r));
            continue;
        }
        t.pivot(r, pc);
        ++r;
    }

    std::vector<Rational> cost(cols);
    for (std::size_t j = 0; j < n; ++j) {
        cost[plus_col[j]] = objective[j];
        if (minus_col[j] != kNone) cost[minus_col[j]] = -objective[j];
    }
    if (!t.optimize(cost, is_art)) return Result{Status::Unbounded, {}, {}};

    std::vector<Rational> z(cols);
    for (std::size_t r = 0; r < t.rows.size(); ++r) z[t.basis[r]] = t.rows[r][cols];
    RatVec x(n);
    for (std::size_t j = 0; j < n; ++j) {
        x[j] = z[plus_col[j]];
        if (minus_col[j] != kNone) x[j] -= z[minus_col[j]];
    }
    Rational value = dot(objective, x);
    return Result{Status::Optimal, std::move(x), std::move(value)};
}

std::optional<RatVec> find_feasible(std::size_t num_vars, const std::vector<Constraint>& constraints,
                                    const std::vector<bool>& nonnegative) {
    auto result = maximize(RatVec(num_vars), constraints, nonnegative);
    if (result.status != Status::Optimal) return std::nullopt;
    return std::move(result.x);
}

}  // namespace trop1::lp

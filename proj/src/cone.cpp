#include "trop1/cone.hpp"

#include "trop1/lp.hpp"

#include <algorithm>

namespace trop1 {
namespace {

struct Slack {
    std::vector<std::size_t> implicit;
    RatVec point;
};

// max sum t_i  s.t.  E x = 0, g_i . x >= t_i, 0 <= t_i <= cap_i.
// Non-implicit inequalities reach their cap, implicit ones stay at zero.
Slack maximize_slack(std::size_t n, const std::vector<RatVec>& eqs, const std::vector<RatVec>& ineqs,
                     const std::vector<Rational>& caps) {
    const std::size_t m = ineqs.size();
    const std::size_t total = n + m;
    std::vector<lp::Constraint> cons;
    auto widen = [&](const RatVec& g) {
        RatVec row(total);
        for (std::size_t j = 0; j < n; ++j) row[j] = g[j];
        return row;
    };
    for (const auto& e : eqs) cons.push_back({widen(e), lp::Relation::Equal, 0});
    for (std::size_t i = 0; i < m; ++i) {
        RatVec row = widen(ineqs[i]);
        row[n + i] = -1;
        cons.push_back({std::move(row), lp::Relation::GreaterEqual, 0});
        cons.push_back({RatVec::unit(total, n + i), lp::Relation::LessEqual, caps[i]});
    }
    RatVec objective(total);
    std::vector<bool> nonneg(total, false);
    for (std::size_t i = 0; i < m; ++i) {
        objective[n + i] = 1;
        nonneg[n + i] = true;
    }
    auto result = lp::maximize(objective, cons, nonneg);
    if (result.status != lp::Status::Optimal) throw InconsistencyError("cone slack LP did not reach an optimum");
    Slack out;
    out.point = RatVec(n);
    for (std::size_t j = 0; j < n; ++j) out.point[j] = result.x[j];
    for (std::size_t i = 0; i < m; ++i) {
        if (result.x[n + i] == 0) out.implicit.push_back(i);
    }
    return out;
}

}  // namespace

Cone::Cone(std::vector<std::string> labels, std::vector<RatVec> equalities, std::vector<RatVec> inequalities)
    : labels_(std::move(labels)), equalities_(std::move(equalities)), inequalities_(std::move(inequalities)) {
    require_dim(equalities_, labels_.size(), "cone equality");
    require_dim(inequalities_, labels_.size(), "cone inequality");
    auto slack = maximize_slack(num_vars(), equalities_, inequalities_, std::vector<Rational>(inequalities_.size(), 1));
    implicit_ = std::move(slack.implicit);
    interior_ = std::move(slack.point);
    dim_ = linear_span().dim();
}

RatVec Cone::second_interior_point() const {
    std::vector<Rational> caps;
    for (std::size_t i = 0; i < inequalities_.size(); ++i) caps.emplace_back(i + 2);
    return interior_ + maximize_slack(num_vars(), equalities_, inequalities_, caps).point;
}

Subspace Cone::linear_span() const {
    std::vector<RatVec> rows = equalities_;
    for (auto i : implicit_) rows.push_back(inequalities_[i]);
    return kernel_of_inclusion(rows, num_vars());
}

bool Cone::contains(const RatVec& x) const {
    if (x.dim() != num_vars()) throw InvalidInput("cone membership: dimension mismatch");
    for (const auto& e : equalities_) {
        if (dot(e, x) != 0) return false;
    }
    return std::all_of(inequalities_.begin(), inequalities_.end(), [&](const RatVec& g) { return dot(g, x) >= 0; });
}

bool Cone::contains_relative_interior(const RatVec& x) const {
    if (!contains(x)) return false;
    for (std::size_t i = 0; i < inequalities_.size(); ++i) {
        const bool is_implicit = std::find(implicit_.begin(), implicit_.end(), i) != implicit_.end();
        if (!is_implicit && dot(inequalities_[i], x) == 0) return false;
    }
    return true;
}

Cone Cone::with_equalities(const std::vector<RatVec>& extra) const {
    auto eqs = equalities_;
    eqs.insert(eqs.end(), extra.begin(), extra.end());
    return Cone(labels_, std::move(eqs), inequalities_);
}

Cone Cone::with_inequalities(const std::vector<RatVec>& extra) const {
    auto ineqs = inequalities_;
    ineqs.insert(ineqs.end(), extra.begin(), extra.end());
    return Cone(labels_, equalities_, std::move(ineqs));
}

Cone Cone::intersect(const Cone& other) const {
    if (other.num_vars() != num_vars()) throw InvalidInput("cone intersection: variable count mismatch");
    return with_equalities(other.equalities_).with_inequalities(other.inequalities_);
}

bool Cone::is_subset_of(const Cone& other) const {
    if (other.num_vars() != num_vars()) throw InvalidInput("cone containment: variable count mismatch");
    const auto span = linear_span();
    auto vanishes = [&](const RatVec& g) {
        return std::all_of(span.basis().begin(), span.basis().end(), [&](const RatVec& b) { return dot(g, b) == 0; });
    };
    if (!std::all_of(other.equalities_.begin(), other.equalities_.end(), vanishes)) return false;
    std::vector<lp::Constraint> base;
    for (const auto& e : equalities_) base.push_back({e, lp::Relation::Equal, 0});
    for (const auto& g : inequalities_) base.push_back({g, lp::Relation::GreaterEqual, 0});
    // g >= 0 on this cone iff min g.x over {g.x >= -1} is 0.
    auto nonnegative_on_this = [&](const RatVec& g) {
        if (vanishes(g)) return true;
        if (dot(g, interior_) < 0) return false;
        auto cons = base;
        cons.push_back({g, lp::Relation::GreaterEqual, -1});
        auto result = lp::maximize(-g, cons);
        return result.status == lp::Status::Optimal && result.value == 0;
    };
    return std::all_of(other.inequalities_.begin(), other.inequalities_.end(), nonnegative_on_this);
}

bool Cone::is_face_of(const Cone& other) const {
    if (!is_subset_of(other)) return false;
    std::vector<RatVec> tight;
    for (const auto& g : other.inequalities_) {
        if (dot(g, interior_) == 0) tight.push_back(g);
    }
    return other.with_equalities(tight).is_subset_of(*this);
}

Cone Cone::minimal_face_containing(const RatVec& x) const {
    if (!contains(x)) throw InvalidInput("minimal face: point is not in the cone");
    std::vector<RatVec> tight;
    for (const auto& g : inequalities_) {
        if (dot(g, x) == 0) tight.push_back(g);
    }
    return with_equalities(tight);
}

std::string Cone::to_string() const {
    auto form = [&](const RatVec& f) {
        std::string out;
        for (std::size_t j = 0; j < f.dim(); ++j) {
            if (f[j] == 0) continue;
            const bool negative = f[j] < 0;
            const Rational mag = negative ? Rational(-f[j]) : f[j];
            out += out.empty() ? (negative ? "-" : "") : (negative ? " - " : " + ");
            if (mag != 1) out += format_rational(mag) + "*";
            out += labels_[j];
        }
        return out.empty() ? std::string("0") : out;
    };
    std::string out = "dim " + std::to_string(dim_);
    for (const auto& e : equalities_) out += "; " + form(e) + " = 0";
    for (const auto& g : inequalities_) out += "; " + form(g) + " >= 0";
    return out;
}

}  // namespace trop1

#include "trop1/fan.hpp"

#include <algorithm>
#include <set>

namespace trop1 {
namespace {

// Calls f on every k-subset of {0..n-1}.
template <typename F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    if (k > n) return;
    for (;;) {
        f(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

std::vector<RatVec> canonical_rays(const std::vector<RatVec>& rays) {
    std::set<RatVec> out;
    for (const auto& r : rays) {
        if (!r.is_zero()) out.insert(primitive(r).direction);
    }
    return {out.begin(), out.end()};
}

}  // namespace

RayCone::RayCone(std::size_t ambient_dim, std::vector<RatVec> rays) : ambient_dim_(ambient_dim) {
    require_dim(rays, ambient_dim, "cone rays");
    rays_ = canonical_rays(rays);
    span_ = span(rays_, ambient_dim);
    equalities_ = span_.annihilator().basis();
    const std::size_t d = span_.dim();
    if (d == 0) return;

    std::set<RatVec> normals;
    for_each_subset(rays_.size(), d - 1, [&](const std::vector<std::size_t>& pick) {
        std::vector<RatVec> rows = equalities_;
        for (auto i : pick) rows.push_back(rays_[i]);
        const auto kernel = nullspace(rows, ambient_dim_);
        if (kernel.size() != 1) return;
        RatVec g = primitive(kernel[0]).direction;
        bool nonneg = true, nonpos = true;
        for (const auto& ray : rays_) {
            const auto s = dot(g, ray).sign();
            if (s < 0) nonneg = false;
            if (s > 0) nonpos = false;
        }
        if (nonneg && !nonpos) normals.insert(g);
        else if (nonpos && !nonneg) normals.insert(-g);
    });
    facets_.assign(normals.begin(), normals.end());
}

bool RayCone::contains(const RatVec& x) const {
    for (const auto& e : equalities_) {
        if (dot(e, x) != 0) return false;
    }
    return std::all_of(facets_.begin(), facets_.end(), [&](const RatVec& g) { return dot(g, x) >= 0; });
}

bool RayCone::contains_relative_interior(const RatVec& x) const {
    for (const auto& e : equalities_) {
        if (dot(e, x) != 0) return false;
    }
    return std::all_of(facets_.begin(), facets_.end(), [&](const RatVec& g) { return dot(g, x) > 0; });
}

bool RayCone::is_face_of(const RayCone& other) const {
    if (ambient_dim_ != other.ambient_dim_) return false;
    for (const auto& ray : rays_) {
        if (!other.contains(ray)) return false;
    }
    // The smallest face of `other` containing this cone is cut out by the facets
    // that vanish on every ray here; this cone is a face iff it is that face.
    std::vector<RatVec> tight;
    for (const auto& g : other.facets_) {
        if (std::all_of(rays_.begin(), rays_.end(), [&](const RatVec& r) { return dot(g, r) == 0; })) {
            tight.push_back(g);
        }
    }
    for (const auto& ray : other.rays_) {
        const bool on_face =
            std::all_of(tight.begin(), tight.end(), [&](const RatVec& g) { return dot(g, ray) == 0; });
        if (on_face && !contains(ray)) return false;
    }
    return true;
}

bool RayCone::same_cone(const RayCone& other) const {
    return is_face_of(other) && other.is_face_of(*this);
}

Fan::Fan(std::size_t ambient_dim, std::vector<RayCone> cones, bool complete)
    : ambient_dim_(ambient_dim), cones_(std::move(cones)), complete_(complete) {
    for (const auto& c : cones_) {
        if (c.ambient_dim() != ambient_dim_) throw InvalidInput("fan cone has the wrong ambient dimension");
    }
}

Fan Fan::trivial(std::size_t ambient_dim) {
    std::vector<RatVec> rays;
    for (std::size_t i = 0; i < ambient_dim; ++i) {
        rays.push_back(RatVec::unit(ambient_dim, i));
        rays.push_back(-RatVec::unit(ambient_dim, i));
    }
    return Fan(ambient_dim, {RayCone(ambient_dim, rays)}, true);
}

std::vector<std::size_t> Fan::faces_of(std::size_t i) const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < cones_.size(); ++j) {
        if (cones_[j].is_face_of(cones_.at(i))) out.push_back(j);
    }
    return out;
}

Fan Fan::close_under_faces() const {
    std::vector<RayCone> all = cones_;
    auto known = [&](const RayCone& c) {
        return std::any_of(all.begin(), all.end(), [&](const RayCone& d) { return d.same_cone(c); });
    };
    for (std::size_t i = 0; i < all.size(); ++i) {
        const RayCone cone = all[i];
        for (const auto& g : cone.facets()) {
            std::vector<RatVec> rays;
            for (const auto& ray : cone.rays()) {
                if (dot(g, ray) == 0) rays.push_back(ray);
            }
            RayCone facet(ambient_dim_, rays);
            if (!known(facet)) all.push_back(std::move(facet));
        }
    }
    return Fan(ambient_dim_, std::move(all), complete_);
}

std::optional<std::size_t> Fan::carrier(const RatVec& x) const {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < cones_.size(); ++i) {
        if (!cones_[i].contains_relative_interior(x)) continue;
        if (!best || cones_[i].dim() < cones_[*best].dim()) best = i;
    }
    return best;
}

}  // namespace trop1

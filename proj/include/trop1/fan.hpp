#pragma once

#include "trop1/ratlin.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace trop1 {

/// A rational polyhedral cone given by generating rays, with its H-representation
/// derived on construction.
class RayCone {
public:
    RayCone() = default;
    RayCone(std::size_t ambient_dim, std::vector<RatVec> rays);

    std::size_t ambient_dim() const { return ambient_dim_; }
    const std::vector<RatVec>& rays() const { return rays_; }
    const Subspace& linear_span() const { return span_; }
    std::size_t dim() const { return span_.dim(); }
    /// Linear forms vanishing on the cone (a basis of the annihilator of its span).
    const std::vector<RatVec>& equalities() const { return equalities_; }
    /// Inner facet normals g, primitive and lying in the span: the cone is {g.x >= 0}.
    const std::vector<RatVec>& facets() const { return facets_; }

    bool contains(const RatVec& x) const;
    bool contains_relative_interior(const RatVec& x) const;
    bool is_face_of(const RayCone& other) const;
    bool same_cone(const RayCone& other) const;

private:
    std::size_t ambient_dim_ = 0;
    std::vector<RatVec> rays_;
    Subspace span_;
    std::vector<RatVec> equalities_;
    std::vector<RatVec> facets_;
};

/// A finite collection of cones in Q^r.
class Fan {
public:
    Fan() = default;
    Fan(std::size_t ambient_dim, std::vector<RayCone> cones, bool complete = false);

    static Fan trivial(std::size_t ambient_dim);

    std::size_t ambient_dim() const { return ambient_dim_; }
    const std::vector<RayCone>& cones() const { return cones_; }
    const RayCone& cone(std::size_t i) const { return cones_.at(i); }
    std::size_t size() const { return cones_.size(); }

    /// As declared by the input; not verified.
    bool is_complete() const { return complete_; }
    /// Indices of listed cones that are faces of cone i (cone i included).
    std::vector<std::size_t> faces_of(std::size_t i) const;
    /// Adds every face of every listed cone that is not already listed.
    Fan close_under_faces() const;
    /// The smallest listed cone containing x in its relative interior, if any.
    std::optional<std::size_t> carrier(const RatVec& x) const;

private:
    std::size_t ambient_dim_ = 0;
    std::vector<RayCone> cones_;
    bool complete_ = false;
};

}  // namespace trop1

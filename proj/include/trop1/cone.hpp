#pragma once

#include "trop1/ratlin.hpp"

#include <string>
#include <vector>

namespace trop1 {

/// A rational polyhedral cone {x : E x = 0, G x >= 0} over named variables. Every
/// inequality is strict in the open cone, so the open cone is nonempty iff no
/// inequality is forced to vanish. Dimension and an interior point are computed
/// once on construction.
class Cone {
public:
    Cone() = default;
    Cone(std::vector<std::string> labels, std::vector<RatVec> equalities, std::vector<RatVec> inequalities);

    const std::vector<std::string>& labels() const { return labels_; }
    std::size_t num_vars() const { return labels_.size(); }
    const std::vector<RatVec>& equalities() const { return equalities_; }
    const std::vector<RatVec>& inequalities() const { return inequalities_; }

    std::size_t dim() const { return dim_; }
    /// Indices of inequalities that vanish on the whole cone.
    const std::vector<std::size_t>& implicit_equalities() const { return implicit_; }
    /// True iff every inequality can be made strict simultaneously.
    bool has_open_interior() const { return implicit_.empty(); }
    /// A point strict on every non-implicit inequality.
    const RatVec& relative_interior_point() const { return interior_; }
    /// Another relative-interior point, generally not on the ray of the first.
    RatVec second_interior_point() const;
    /// The linear span of the cone, as a subspace of Q^num_vars.
    Subspace linear_span() const;

    bool contains(const RatVec& x) const;
    bool contains_relative_interior(const RatVec& x) const;

    Cone with_equalities(const std::vector<RatVec>& extra) const;
    Cone with_inequalities(const std::vector<RatVec>& extra) const;
    /// Both constraint systems over the same variables.
    Cone intersect(const Cone& other) const;
    bool is_subset_of(const Cone& other) const;
    /// True iff this cone is a face of `other` (both over the same variables).
    bool is_face_of(const Cone& other) const;
    /// The face cut out by the inequalities vanishing at x (x must lie in the cone).
    Cone minimal_face_containing(const RatVec& x) const;

    std::string to_string() const;

private:
    std::vector<std::string> labels_;
    std::vector<RatVec> equalities_;
    std::vector<RatVec> inequalities_;
    std::size_t dim_ = 0;
    std::vector<std::size_t> implicit_;
    RatVec interior_;
};

}  // namespace trop1

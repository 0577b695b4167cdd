#pragma once

#include "trop1/tropmap.hpp"

#include <memory>
#include <string>
#include <vector>

namespace trop1 {

/// A string equal for two types iff they are isomorphic by a graph isomorphism
/// preserving genera, cone labels, contact data, and leg markings.
std::string canonical_form(const CombinatorialType& type);
/// The same, with an extra integer label per vertex that isomorphisms must keep.
std::string canonical_form(const CombinatorialType& type, const std::vector<int>& vertex_labels);

/// All balanced, stable genus-1 types with at most `max_vertices` vertices,
/// recession type `recession`, and a nonempty open moduli cone, one per
/// isomorphism class, sorted by canonical form. Edge expansion factors are
/// bounded by the total weight of the recession type.
std::vector<CombinatorialType> enumerate_types(const RecessionType& recession, std::size_t max_vertices,
                                               std::shared_ptr<const Fan> fan = nullptr);

/// The stable types with a nonempty open moduli cone obtained from `type` by
/// contracting one bounded edge, one per isomorphism class.
std::vector<CombinatorialType> face_types(const CombinatorialType& type);

}  // namespace trop1

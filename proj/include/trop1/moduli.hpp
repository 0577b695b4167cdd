#pragma once

#include "trop1/cone.hpp"
#include "trop1/curve.hpp"
#include "trop1/tropmap.hpp"

#include <optional>
#include <vector>

namespace trop1 {

/// The constraints of a moduli cone admit no point with positive lengths and
/// vertices in the relative interiors of their cones.
class InfeasibleCone : public Error {
public:
    explicit InfeasibleCone(const std::string& what) : Error(what) {}
};

/// Sum of (valence - 3) over vertices of valence at least 4.
int overvalence(const CombinatorialType& type);

/// (r - 3)(1 - b1) + n - overvalence.
int expected_dim(const CombinatorialType& type, int r, int n);
inline int expected_dim(const CombinatorialType& type) {
    return expected_dim(type, static_cast<int>(type.dim()), static_cast<int>(type.graph().num_legs()));
}

/// The cone of (base position, edge lengths) realizing a type. Variables are
/// p0..p{r-1} (position of `base_vertex`) followed by one length per edge.
struct ModuliCone {
    Cone cone;
    std::size_t target_dim = 0;
    std::size_t base_vertex = 0;
    /// Per vertex, r linear forms giving its position.
    std::vector<std::vector<RatVec>> position_forms;
    /// Per vertex, the linear form lambda(v); empty unless the genus is 1.
    std::vector<RatVec> lambda_forms;

    std::size_t length_var(std::size_t e) const { return target_dim + e; }
};

/// Throws InfeasibleCone when the open cone is empty. With `use_fan` false the
/// cone labels are ignored and the target is all of Q^r.
ModuliCone moduli_cone(const CombinatorialType& type, bool use_fan = true);

/// The map at a point of the open moduli cone.
TropicalMap map_at(const CombinatorialType& type, const ModuliCone& moduli, const RatVec& point);

/// The two superabundance tests side by side.
struct SuperabundanceReport {
    Subspace circuit_span;
    bool span_test = false;                 ///< circuit directions span a proper subspace
    std::size_t dim = 0;                    ///< of the fan-free moduli cone
    int expected = 0;
    std::optional<bool> dimension_test;     ///< dim > expected; only for cycle circuits
                                            ///< whose genus-0 vertices are all at least trivalent
    bool superabundant() const { return span_test; }
};

SuperabundanceReport superabundance(const CombinatorialType& type);

/// Span test, cross-checked against the dimension test where the latter applies.
/// Throws InconsistencyError if they disagree.
bool is_superabundant(const CombinatorialType& type);

/// A combinatorial type together with a radial alignment of its graph.
struct RadialType {
    CombinatorialType type;
    RadialAlignment alignment;
};

/// The moduli cone cut by the alignment's order on lambda. Throws InfeasibleCone
/// when the open cell is empty.
ModuliCone radial_cone(const RadialType& radial);

struct RadialCell {
    RadialAlignment alignment;
    Cone cone;
};

/// One cell per alignment whose open cell is nonempty.
std::vector<RadialCell> radial_subdivision(const CombinatorialType& type);

/// Every radial type of `type` with a nonempty open cell.
std::vector<RadialType> radial_types(const CombinatorialType& type);

/// Edge contraction taking a finer radial type onto a coarser one.
struct ContractionMap {
    std::vector<std::size_t> contracted_edges;       ///< edges of the finer graph
    std::vector<std::size_t> vertex_map;             ///< finer vertex -> coarser vertex
    std::vector<std::optional<std::size_t>> edge_map;  ///< finer edge -> coarser edge
    std::vector<bool> edge_reversed;                 ///< orientation flips along edge_map
    std::vector<std::size_t> leg_map;                ///< finer leg -> coarser leg
};

/// An edge contraction from `finer` onto `coarser` that is order preserving and
/// moves every vertex to a face of its cone, if one exists.
std::optional<ContractionMap> face_arrow(const RadialType& coarser, const RadialType& finer);

/// The image of the coarser cell inside the finer cell's variables.
Cone arrow_image(const ContractionMap& arrow, const RadialType& coarser, const RadialType& finer);
/// The same, with both radial cones already computed.
Cone arrow_image(const ContractionMap& arrow, const ModuliCone& coarse, const RadialType& finer, const ModuliCone& fine);

}  // namespace trop1

#pragma once

#include "trop1/moduli.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace trop1 {

struct ComplexCell {
    RadialType type;
    ModuliCone moduli;
    std::string key;  ///< canonical form of the type plus the alignment
    bool well_spaced = false;

    const Cone& cone() const { return moduli.cone; }
};

/// `face` is a proper face of `cell` through `map`.
struct ComplexArrow {
    std::size_t face = 0;
    std::size_t cell = 0;
    ContractionMap map;
};

struct ComplexStats {
    std::size_t num_cells = 0;
    std::size_t num_arrows = 0;
    std::size_t max_dim = 0;
    bool pure = true;
    std::vector<std::size_t> maximal_cells;
    std::map<std::size_t, std::size_t> cells_by_dim;
};

/// Cones of radial types glued along face arrows, in canonical order.
struct ConeComplex {
    RecessionType recession;
    std::vector<ComplexCell> cells;
    std::vector<ComplexArrow> arrows;
    ComplexStats stats;

    std::vector<std::size_t> faces_of(std::size_t cell) const;
};

/// Computes every face arrow among `types`. Throws InvalidInput when the types
/// do not share a recession type and InfeasibleCone when a cell is empty.
ConeComplex assemble_complex(std::vector<RadialType> types);

/// The radial types of `type` and of every type reachable from it by edge
/// contractions, assembled.
ConeComplex complex_of(const CombinatorialType& type);

/// The cells whose relative interiors are well-spaced. The verdict is taken at
/// two interior points per cell and InconsistencyError is thrown if they differ
/// or if the result is not closed under faces.
ConeComplex well_spaced_subcomplex(const ConeComplex& complex);

nlohmann::json to_json(const ConeComplex& complex);
std::string to_dot(const ConeComplex& complex);

}  // namespace trop1

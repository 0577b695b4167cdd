#include "trop1/complex.hpp"

#include "trop1/enumerate.hpp"
#include "trop1/instance.hpp"
#include "trop1/wellspaced.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace trop1 {
namespace {

ComplexStats compute_stats(const ConeComplex& complex) {
    ComplexStats stats;
    stats.num_cells = complex.cells.size();
    stats.num_arrows = complex.arrows.size();
    std::vector<bool> is_face(complex.cells.size(), false);
    for (const auto& a : complex.arrows) is_face[a.face] = true;
    std::optional<std::size_t> maximal_dim;
    for (std::size_t i = 0; i < complex.cells.size(); ++i) {
        const auto d = complex.cells[i].cone().dim();
        stats.max_dim = std::max(stats.max_dim, d);
        ++stats.cells_by_dim[d];
        if (is_face[i]) continue;
        stats.maximal_cells.push_back(i);
        if (maximal_dim && *maximal_dim != d) stats.pure = false;
        maximal_dim = d;
    }
    return stats;
}

bool verdict_at(const ComplexCell& cell, const RatVec& point) {
    return is_well_spaced(map_at(cell.type.type, cell.moduli, point));
}

nlohmann::json forms_json(const std::vector<RatVec>& forms) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& f : forms) out.push_back(to_json(f));
    return out;
}

}  // namespace

std::vector<std::size_t> ConeComplex::faces_of(std::size_t cell) const {
    std::vector<std::size_t> out;
    for (const auto& a : arrows) {
        if (a.cell == cell) out.push_back(a.face);
    }
    return out;
}

ConeComplex assemble_complex(std::vector<RadialType> types) {
    ConeComplex complex;
    if (types.empty()) return complex;
    complex.recession = recession_type(types.front().type);
    std::set<std::string> keys;
    for (auto& t : types) {
        if (!(recession_type(t.type) == complex.recession)) {
            throw InvalidInput("assemble_complex: mixed recession types " + complex.recession.to_string() + " and " +
                               recession_type(t.type).to_string());
        }
        auto key = canonical_form(t.type, t.alignment.ranks());
        if (!keys.insert(key).second) continue;
        auto moduli = radial_cone(t);
        complex.cells.push_back({std::move(t), std::move(moduli), std::move(key), false});
        auto& cell = complex.cells.back();
        cell.well_spaced = verdict_at(cell, cell.cone().relative_interior_point());
    }
    std::sort(complex.cells.begin(), complex.cells.end(), [](const ComplexCell& a, const ComplexCell& b) {
        if (a.cone().dim() != b.cone().dim()) return a.cone().dim() > b.cone().dim();
        return a.key < b.key;
    });
    for (std::size_t j = 0; j < complex.cells.size(); ++j) {
        for (std::size_t i = 0; i < complex.cells.size(); ++i) {
            const auto& face = complex.cells[i];
            const auto& cell = complex.cells[j];
            if (face.cone().dim() >= cell.cone().dim()) continue;
            auto arrow = face_arrow(face.type, cell.type);
            if (!arrow) continue;
            const auto image = arrow_image(*arrow, face.moduli, cell.type, cell.moduli);
            if (image.dim() != face.cone().dim() || !image.is_face_of(cell.cone())) continue;
            complex.arrows.push_back({i, j, std::move(*arrow)});
        }
    }
    std::sort(complex.arrows.begin(), complex.arrows.end(),
              [](const ComplexArrow& a, const ComplexArrow& b) { return std::pair{a.face, a.cell} < std::pair{b.face, b.cell}; });
    complex.stats = compute_stats(complex);
    return complex;
}

ConeComplex complex_of(const CombinatorialType& type) {
    std::vector<CombinatorialType> all{type};
    std::set<std::string> seen{canonical_form(type)};
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (auto& face : face_types(all[i])) {
            if (seen.insert(canonical_form(face)).second) all.push_back(std::move(face));
        }
    }
    std::vector<RadialType> radial;
    for (const auto& t : all) {
        for (auto& r : radial_types(t)) radial.push_back(std::move(r));
    }
    return assemble_complex(std::move(radial));
}

ConeComplex well_spaced_subcomplex(const ConeComplex& complex) {
    ConeComplex out;
    out.recession = complex.recession;
    std::vector<std::optional<std::size_t>> index(complex.cells.size());
    for (std::size_t i = 0; i < complex.cells.size(); ++i) {
        const auto& cell = complex.cells[i];
        const bool first = verdict_at(cell, cell.cone().relative_interior_point());
        const bool second = verdict_at(cell, cell.cone().second_interior_point());
        if (first != second) {
            throw InconsistencyError("well-spacedness is not constant on cell " + std::to_string(i) + " (" +
                                     cell.type.alignment.to_string(cell.type.type.graph()) + ")");
        }
        if (!first) continue;
        index[i] = out.cells.size();
        out.cells.push_back(cell);
    }
    for (const auto& a : complex.arrows) {
        if (!index[a.cell]) continue;
        if (!index[a.face]) {
            throw InconsistencyError("well-spaced locus is not closed under faces: cell " + std::to_string(a.cell) +
                                     " has the non-well-spaced face " + std::to_string(a.face));
        }
        out.arrows.push_back({*index[a.face], *index[a.cell], a.map});
    }
    out.stats = compute_stats(out);
    return out;
}

nlohmann::json to_json(const ConeComplex& complex) {
    using nlohmann::json;
    json legs = json::array();
    for (const auto& l : complex.recession.legs()) {
        legs.push_back({{"marking", l.marking}, {"u", to_json(l.contact.u)}, {"w", l.contact.w}});
    }
    json cells = json::array();
    for (std::size_t i = 0; i < complex.cells.size(); ++i) {
        const auto& c = complex.cells[i];
        const auto& g = c.type.type.graph();
        json classes = json::array();
        for (const auto& cls : c.type.alignment.classes()) {
            json ids = json::array();
            for (auto v : cls) ids.push_back(g.vertices()[v].id);
            classes.push_back(ids);
        }
        cells.push_back({{"index", i},
                         {"key", c.key},
                         {"dim", c.cone().dim()},
                         {"type", to_json(c.type.type)},
                         {"alignment", classes},
                         {"cone",
                          {{"variables", c.cone().labels()},
                           {"equalities", forms_json(c.cone().equalities())},
                           {"inequalities", forms_json(c.cone().inequalities())},
                           {"span", to_json(c.cone().linear_span())}}},
                         {"well_spaced", c.well_spaced}});
    }
    json arrows = json::array();
    for (const auto& a : complex.arrows) {
        const auto& fine = complex.cells[a.cell].type.type.graph();
        const auto& coarse = complex.cells[a.face].type.type.graph();
        json contracted = json::array();
        for (auto e : a.map.contracted_edges) contracted.push_back(fine.edges()[e].id);
        json vertex_map = json::object();
        for (std::size_t v = 0; v < a.map.vertex_map.size(); ++v) {
            vertex_map[fine.vertices()[v].id] = coarse.vertices()[a.map.vertex_map[v]].id;
        }
        arrows.push_back({{"face", a.face}, {"cell", a.cell}, {"contracted_edges", contracted}, {"vertex_map", vertex_map}});
    }
    json by_dim = json::object();
    for (const auto& [d, n] : complex.stats.cells_by_dim) by_dim[std::to_string(d)] = n;
    json stats = {{"cells", complex.stats.num_cells},
                  {"arrows", complex.stats.num_arrows},
                  {"max_dim", complex.stats.max_dim},
                  {"pure", complex.stats.pure},
                  {"maximal_cells", complex.stats.maximal_cells},
                  {"cells_by_dim", by_dim}};
    return {{"recession", {{"dim", complex.recession.dim()}, {"legs", legs}}},
            {"cells", cells},
            {"arrows", arrows},
            {"stats", stats}};
}

std::string to_dot(const ConeComplex& complex) {
    std::ostringstream out;
    out << "digraph complex {\n  rankdir=BT;\n";
    for (std::size_t i = 0; i < complex.cells.size(); ++i) {
        const auto& c = complex.cells[i];
        out << "  c" << i << " [label=\"c" << i << " dim " << c.cone().dim() << "\\n"
            << c.type.alignment.to_string(c.type.type.graph()) << "\"";
        if (c.well_spaced) out << ", style=filled, fillcolor=lightgrey";
        out << "];\n";
    }
    // Only covering relations are drawn.
    for (const auto& a : complex.arrows) {
        bool covered = false;
        for (const auto& b : complex.arrows) {
            if (b.face != a.face || b.cell == a.cell) continue;
            for (const auto& c : complex.arrows) {
                if (c.face == b.cell && c.cell == a.cell) covered = true;
            }
        }
        if (!covered) out << "  c" << a.face << " -> c" << a.cell << ";\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace trop1

#include "trop1/moduli.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>

namespace trop1 {

int overvalence(const CombinatorialType& type) {
    int total = 0;
    for (std::size_t v = 0; v < type.graph().num_vertices(); ++v) {
        const int val = static_cast<int>(type.graph().valence(v));
        if (val >= 4) total += val - 3;
    }
    return total;
}

int expected_dim(const CombinatorialType& type, int r, int n) {
    return (r - 3) * (1 - type.graph().first_betti()) + n - overvalence(type);
}

namespace {

std::size_t base_vertex_of(const CurveGraph& g) {
    if (genus(g) != 1) return 0;
    const auto c = circuit(g);
    return *std::min_element(c.vertices.begin(), c.vertices.end());
}

// With an alignment, lambda is constrained to follow its order.
ModuliCone build_moduli(const CombinatorialType& type, bool use_fan, const RadialAlignment* alignment) {
    const auto& g = type.graph();
    const std::size_t r = type.dim();
    const std::size_t n = r + g.num_edges();

    ModuliCone mc;
    mc.target_dim = r;
    mc.base_vertex = base_vertex_of(g);

    std::vector<std::string> labels;
    for (std::size_t i = 0; i < r; ++i) labels.push_back("p" + std::to_string(i));
    for (const auto& e : g.edges()) labels.push_back("l:" + e.id);

    std::vector<RatVec> eqs, ineqs;
    for (std::size_t e = 0; e < g.num_edges(); ++e) ineqs.push_back(RatVec::unit(n, r + e));

    // Positions along a BFS tree; every other edge closes a cycle.
    std::vector<std::optional<std::vector<RatVec>>> pos(g.num_vertices());
    std::vector<bool> tree_edge(g.num_edges(), false);
    {
        std::vector<RatVec> base;
        for (std::size_t i = 0; i < r; ++i) base.push_back(RatVec::unit(n, i));
        pos[mc.base_vertex] = std::move(base);
        std::queue<std::size_t> frontier;
        frontier.push(mc.base_vertex);
        while (!frontier.empty()) {
            const auto v = frontier.front();
            frontier.pop();
            for (std::size_t e = 0; e < g.num_edges(); ++e) {
                const auto& edge = g.edges()[e];
                std::size_t other;
                Rational sign;
                if (edge.tail == v && !pos[edge.head]) {
                    other = edge.head;
                    sign = 1;
                } else if (edge.head == v && !pos[edge.tail]) {
                    other = edge.tail;
                    sign = -1;
                } else {
                    continue;
                }
                tree_edge[e] = true;
                auto forms = *pos[v];
                const auto d = type.edge_vector(e);
                for (std::size_t i = 0; i < r; ++i) forms[i][r + e] += sign * d[i];
                pos[other] = std::move(forms);
                frontier.push(other);
            }
        }
    }
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
        if (!pos[v]) throw InvalidInput("curve graph is disconnected");
        mc.position_forms.push_back(*pos[v]);
    }
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        if (tree_edge[e]) continue;
        const auto& edge = g.edges()[e];
        const auto d = type.edge_vector(e);
        for (std::size_t i = 0; i < r; ++i) {
            RatVec closure = mc.position_forms[edge.head][i] - mc.position_forms[edge.tail][i];
            closure[r + e] -= d[i];
            if (!closure.is_zero()) eqs.push_back(std::move(closure));
        }
    }

    std::size_t fan_facets_begin = 0, fan_facets_end = 0;
    if (use_fan && type.has_fan()) {
        auto pull_back = [&](const RatVec& form, std::size_t v) {
            RatVec out(n);
            for (std::size_t i = 0; i < r; ++i) {
                if (form[i] != 0) out += mc.position_forms[v][i] * form[i];
            }
            return out;
        };
        for (std::size_t v = 0; v < g.num_vertices(); ++v) {
            const auto& cone = type.cone_of(v);
            for (const auto& e : cone.equalities()) {
                auto f = pull_back(e, v);
                if (!f.is_zero()) eqs.push_back(std::move(f));
            }
        }
        fan_facets_begin = ineqs.size();
        for (std::size_t v = 0; v < g.num_vertices(); ++v) {
            for (const auto& facet : type.cone_of(v).facets()) ineqs.push_back(pull_back(facet, v));
        }
        fan_facets_end = ineqs.size();
    }

    if (genus(g) == 1) {
        const auto radial = radial_structure(g);
        for (std::size_t v = 0; v < g.num_vertices(); ++v) {
            RatVec form(n);
            for (auto e : radial.path_edges(v)) form[r + e] += 1;
            mc.lambda_forms.push_back(std::move(form));
        }
    }

    if (alignment) {
        if (mc.lambda_forms.empty()) throw InvalidInput("radial alignments require a genus-1 type");
        if (!is_compatible(*alignment, radial_structure(g))) throw InvalidInput("alignment is not compatible with the graph");
        const auto classes = alignment->classes();
        for (std::size_t k = 0; k < classes.size(); ++k) {
            const auto rep = classes[k].front();
            for (std::size_t i = 1; i < classes[k].size(); ++i) {
                eqs.push_back(mc.lambda_forms[classes[k][i]] - mc.lambda_forms[rep]);
            }
            if (k + 1 < classes.size()) ineqs.push_back(mc.lambda_forms[classes[k + 1].front()] - mc.lambda_forms[rep]);
        }
    }

    mc.cone = Cone(labels, eqs, ineqs);
    if (!mc.cone.has_open_interior()) {
        std::string note;
        if (fan_facets_end > fan_facets_begin) {
            // Cone labels read as span constraints only.
            std::vector<RatVec> relaxed(ineqs.begin(), ineqs.begin() + static_cast<std::ptrdiff_t>(fan_facets_begin));
            relaxed.insert(relaxed.end(), ineqs.begin() + static_cast<std::ptrdiff_t>(fan_facets_end), ineqs.end());
            if (Cone(labels, eqs, relaxed).has_open_interior()) note = "; nonempty if cone labels constrain only spans";
        }
        throw InfeasibleCone("moduli cone has empty relative interior (" + mc.cone.to_string() + ")" + note);
    }
    return mc;
}

}  // namespace

ModuliCone moduli_cone(const CombinatorialType& type, bool use_fan) {
    return build_moduli(type, use_fan, nullptr);
}

ModuliCone radial_cone(const RadialType& radial) {
    return build_moduli(radial.type, true, &radial.alignment);
}

TropicalMap map_at(const CombinatorialType& type, const ModuliCone& moduli, const RatVec& point) {
    if (point.dim() != moduli.cone.num_vars()) throw InvalidInput("moduli point has the wrong dimension");
    std::vector<Rational> lengths;
    for (std::size_t e = 0; e < type.graph().num_edges(); ++e) lengths.push_back(point[moduli.length_var(e)]);
    std::vector<RatVec> positions;
    for (const auto& forms : moduli.position_forms) {
        RatVec p(type.dim());
        for (std::size_t i = 0; i < type.dim(); ++i) p[i] = dot(forms[i], point);
        positions.push_back(std::move(p));
    }
    return TropicalMap(type, std::move(lengths), std::move(positions));
}

SuperabundanceReport superabundance(const CombinatorialType& type) {
    const auto& g = type.graph();
    if (genus(g) != 1) throw InvalidInput("superabundance is defined here for genus-1 types");
    const auto c = circuit(g);
    std::vector<RatVec> directions;
    for (auto e : c.edges) directions.push_back(type.edge_vector(e));
    SuperabundanceReport report;
    report.circuit_span = span(directions, type.dim());
    report.span_test = !report.circuit_span.is_full();
    report.dim = moduli_cone(type, false).cone.dim();
    report.expected = expected_dim(type);
    bool formula_applies = !c.is_genus_one_vertex();
    for (std::size_t v = 0; v < g.num_vertices() && formula_applies; ++v) {
        if (g.vertices()[v].genus == 0 && g.valence(v) < 3) formula_applies = false;
    }
    if (formula_applies) report.dimension_test = static_cast<int>(report.dim) > report.expected;
    return report;
}

bool is_superabundant(const CombinatorialType& type) {
    const auto report = superabundance(type);
    if (report.dimension_test && *report.dimension_test != report.span_test) {
        throw InconsistencyError("superabundance tests disagree: span test " + std::string(report.span_test ? "true" : "false") +
                                 ", dim " + std::to_string(report.dim) + " vs expected " + std::to_string(report.expected));
    }
    return report.span_test;
}

std::vector<RadialCell> radial_subdivision(const CombinatorialType& type) {
    std::vector<RadialCell> cells;
    for (auto& alignment : enumerate_alignments(type.graph())) {
        try {
            auto mc = radial_cone({type, alignment});
            cells.push_back({std::move(alignment), std::move(mc.cone)});
        } catch (const InfeasibleCone&) {
        }
    }
    return cells;
}

std::vector<RadialType> radial_types(const CombinatorialType& type) {
    std::vector<RadialType> out;
    for (auto& cell : radial_subdivision(type)) out.push_back({type, std::move(cell.alignment)});
    return out;
}

namespace {

struct EdgeKey {
    std::size_t a, b;
    Contact contact;

    friend bool operator==(const EdgeKey&, const EdgeKey&) = default;
    friend auto operator<=>(const EdgeKey& x, const EdgeKey& y) {
        if (auto c = x.a <=> y.a; c != 0) return c;
        if (auto c = x.b <=> y.b; c != 0) return c;
        return x.contact <=> y.contact;
    }
};

// Orientation-free key for an edge between images a and b.
EdgeKey normalize(std::size_t a, std::size_t b, const Contact& c, bool* reversed = nullptr) {
    bool flip = a > b || (a == b && c.reversed() < c);
    if (reversed) *reversed = flip;
    return flip ? EdgeKey{b, a, c.reversed()} : EdgeKey{a, b, c};
}

struct LegKey {
    std::size_t vertex;
    int marking;
    Contact contact;

    friend bool operator==(const LegKey&, const LegKey&) = default;
    friend auto operator<=>(const LegKey& x, const LegKey& y) {
        if (auto c = x.vertex <=> y.vertex; c != 0) return c;
        if (auto c = x.marking <=> y.marking; c != 0) return c;
        return x.contact <=> y.contact;
    }
};

struct Contracted {
    std::vector<std::size_t> cls;       // finer vertex -> class
    std::vector<int> genus;             // per class
    std::size_t count = 0;
};

Contracted contract(const CurveGraph& g, const std::vector<std::size_t>& edges) {
    std::vector<std::size_t> root(g.num_vertices());
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](std::size_t x) {
        while (root[x] != x) x = root[x] = root[root[x]];
        return x;
    };
    std::vector<int> extra_genus(g.num_vertices(), 0);
    for (auto e : edges) {
        auto a = find(g.edges()[e].tail), b = find(g.edges()[e].head);
        if (a == b) {
            ++extra_genus[a];
        } else {
            root[a] = b;
            extra_genus[b] += extra_genus[a];
        }
    }
    Contracted out;
    out.cls.assign(g.num_vertices(), 0);
    std::map<std::size_t, std::size_t> index;
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
        auto rt = find(v);
        auto [it, inserted] = index.emplace(rt, index.size());
        if (inserted) out.genus.push_back(extra_genus[rt]);
        out.cls[v] = it->second;
    }
    for (std::size_t v = 0; v < g.num_vertices(); ++v) out.genus[out.cls[v]] += g.vertices()[v].genus;
    out.count = index.size();
    return out;
}

template <typename F>
bool for_each_combination(std::size_t n, std::size_t k, F&& f) {
    if (k > n) return false;
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
        if (f(idx)) return true;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return false;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

class ArrowSearch {
public:
    ArrowSearch(const RadialType& coarser, const RadialType& finer) : coarse_(coarser), fine_(finer) {}

    std::optional<ContractionMap> run() {
        const auto& fg = fine_.type.graph();
        const auto& cg = coarse_.type.graph();
        if (fg.num_edges() < cg.num_edges() || fg.num_legs() != cg.num_legs()) return std::nullopt;
        if (fine_.type.dim() != coarse_.type.dim() || fine_.type.has_fan() != coarse_.type.has_fan()) return std::nullopt;
        const std::size_t s = fg.num_edges() - cg.num_edges();
        std::optional<ContractionMap> found;
        for_each_combination(fg.num_edges(), s, [&](const std::vector<std::size_t>& pick) {
            found = try_contraction(pick);
            return found.has_value();
        });
        return found;
    }

private:
    std::optional<ContractionMap> try_contraction(const std::vector<std::size_t>& pick) {
        const auto& fg = fine_.type.graph();
        const auto& cg = coarse_.type.graph();
        cur_ = contract(fg, pick);
        if (cur_.count != cg.num_vertices()) return std::nullopt;
        picked_ = pick;
        std::vector<bool> in_pick(fg.num_edges(), false);
        for (auto e : pick) in_pick[e] = true;
        remaining_.clear();
        for (std::size_t e = 0; e < fg.num_edges(); ++e) {
            if (!in_pick[e]) remaining_.push_back(e);
        }
        // Per-class and per-vertex signatures for pruning.
        class_sig_.assign(cur_.count, {});
        for (std::size_t l = 0; l < fg.num_legs(); ++l) {
            class_sig_[cur_.cls[fg.legs()[l].base]].push_back({0, fg.legs()[l].marking, fine_.type.leg(l)});
        }
        for (auto& s : class_sig_) std::sort(s.begin(), s.end());
        vertex_sig_.assign(cg.num_vertices(), {});
        for (std::size_t l = 0; l < cg.num_legs(); ++l) {
            vertex_sig_[cg.legs()[l].base].push_back({0, cg.legs()[l].marking, coarse_.type.leg(l)});
        }
        for (auto& s : vertex_sig_) std::sort(s.begin(), s.end());
        class_degree_.assign(cur_.count, 0);
        for (auto e : remaining_) {
            ++class_degree_[cur_.cls[fg.edges()[e].tail]];
            ++class_degree_[cur_.cls[fg.edges()[e].head]];
        }
        vertex_degree_.assign(cg.num_vertices(), 0);
        for (const auto& e : cg.edges()) {
            ++vertex_degree_[e.tail];
            ++vertex_degree_[e.head];
        }
        alpha_.assign(cur_.count, kUnset);
        used_.assign(cg.num_vertices(), false);
        return assign(0);
    }

    std::optional<ContractionMap> assign(std::size_t k) {
        const auto& cg = coarse_.type.graph();
        if (k == cur_.count) return finish();
        for (std::size_t v = 0; v < cg.num_vertices(); ++v) {
            if (used_[v] || cg.vertices()[v].genus != cur_.genus[k]) continue;
            if (class_sig_[k] != vertex_sig_[v] || class_degree_[k] != vertex_degree_[v]) continue;
            alpha_[k] = v;
            used_[v] = true;
            auto result = assign(k + 1);
            used_[v] = false;
            alpha_[k] = kUnset;
            if (result) return result;
        }
        return std::nullopt;
    }

    std::optional<ContractionMap> finish() {
        const auto& fg = fine_.type.graph();
        const auto& cg = coarse_.type.graph();
        ContractionMap map;
        map.contracted_edges = picked_;
        for (std::size_t v = 0; v < fg.num_vertices(); ++v) map.vertex_map.push_back(alpha_[cur_.cls[v]]);

        // Order preservation and cone faces.
        for (std::size_t v = 0; v < fg.num_vertices(); ++v) {
            for (std::size_t w = 0; w < fg.num_vertices(); ++w) {
                if (fine_.alignment.precedes(v, w) && !coarse_.alignment.precedes(map.vertex_map[v], map.vertex_map[w])) {
                    return std::nullopt;
                }
            }
            if (fine_.type.has_fan() &&
                !coarse_.type.cone_of(map.vertex_map[v]).is_face_of(fine_.type.cone_of(v))) {
                return std::nullopt;
            }
        }

        // Match edges as multisets of orientation-free keys.
        std::multimap<EdgeKey, std::pair<std::size_t, bool>> targets;
        for (std::size_t e = 0; e < cg.num_edges(); ++e) {
            bool flip = false;
            auto key = normalize(cg.edges()[e].tail, cg.edges()[e].head, coarse_.type.edge(e), &flip);
            targets.emplace(key, std::pair{e, flip});
        }
        map.edge_map.assign(fg.num_edges(), std::nullopt);
        map.edge_reversed.assign(fg.num_edges(), false);
        for (auto e : remaining_) {
            bool flip = false;
            const auto& edge = fg.edges()[e];
            auto key = normalize(map.vertex_map[edge.tail], map.vertex_map[edge.head], fine_.type.edge(e), &flip);
            auto it = targets.find(key);
            if (it == targets.end()) return std::nullopt;
            map.edge_map[e] = it->second.first;
            map.edge_reversed[e] = flip != it->second.second;
            targets.erase(it);
        }

        std::multimap<LegKey, std::size_t> leg_targets;
        for (std::size_t l = 0; l < cg.num_legs(); ++l) {
            leg_targets.emplace(LegKey{cg.legs()[l].base, cg.legs()[l].marking, coarse_.type.leg(l)}, l);
        }
        for (std::size_t l = 0; l < fg.num_legs(); ++l) {
            auto it = leg_targets.find({map.vertex_map[fg.legs()[l].base], fg.legs()[l].marking, fine_.type.leg(l)});
            if (it == leg_targets.end()) return std::nullopt;
            map.leg_map.push_back(it->second);
            leg_targets.erase(it);
        }
        return map;
    }

    static constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

    const RadialType& coarse_;
    const RadialType& fine_;
    Contracted cur_;
    std::vector<std::size_t> picked_, remaining_;
    std::vector<std::vector<LegKey>> class_sig_, vertex_sig_;
    std::vector<std::size_t> class_degree_, vertex_degree_;
    std::vector<std::size_t> alpha_;
    std::vector<bool> used_;
};

// A left inverse of a full-column-rank matrix given by rows.
std::vector<RatVec> left_inverse(const std::vector<RatVec>& rows, std::size_t cols) {
    // Solve L M = I through the normal equations (M^T M) invertible.
    std::vector<RatVec> gram(cols, RatVec(cols));
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < cols; ++i) {
            if (row[i] == 0) continue;
            for (std::size_t j = 0; j < cols; ++j) gram[i][j] += row[i] * row[j];
        }
    }
    // Invert gram by Gauss-Jordan on [gram | I].
    std::vector<RatVec> aug;
    for (std::size_t i = 0; i < cols; ++i) {
        RatVec a(2 * cols);
        for (std::size_t j = 0; j < cols; ++j) a[j] = gram[i][j];
        a[cols + i] = 1;
        aug.push_back(std::move(a));
    }
    const auto pivots = rref(aug, 2 * cols);
    if (pivots.size() < cols || (cols > 0 && pivots[cols - 1] != cols - 1)) throw InconsistencyError("arrow embedding is not injective");
    // inverse(gram) * M^T, as rows over the original row count.
    std::vector<RatVec> out(cols, RatVec(rows.size()));
    for (std::size_t i = 0; i < cols; ++i) {
        for (std::size_t k = 0; k < rows.size(); ++k) {
            Rational sum = 0;
            for (std::size_t j = 0; j < cols; ++j) sum += aug[i][cols + j] * rows[k][j];
            out[i][k] = sum;
        }
    }
    return out;
}

}  // namespace

std::optional<ContractionMap> face_arrow(const RadialType& coarser, const RadialType& finer) {
    return ArrowSearch(coarser, finer).run();
}

Cone arrow_image(const ContractionMap& arrow, const RadialType& coarser, const RadialType& finer) {
    return arrow_image(arrow, radial_cone(coarser), finer, radial_cone(finer));
}

Cone arrow_image(const ContractionMap& arrow, const ModuliCone& coarse, const RadialType& finer, const ModuliCone& fine) {
    const std::size_t r = finer.type.dim();
    const std::size_t ny = coarse.cone.num_vars();
    const std::size_t nx = fine.cone.num_vars();
    // Finer variables as linear forms in the coarser ones.
    std::vector<RatVec> m(nx, RatVec(ny));
    const auto base_image = arrow.vertex_map[fine.base_vertex];
    for (std::size_t i = 0; i < r; ++i) m[i] = coarse.position_forms[base_image][i];
    for (std::size_t e = 0; e < finer.type.graph().num_edges(); ++e) {
        if (arrow.edge_map[e]) m[fine.length_var(e)] = RatVec::unit(ny, coarse.length_var(*arrow.edge_map[e]));
    }
    // Image cone: x in the column space of m, with a preimage in the coarser cone.
    std::vector<RatVec> columns(ny, RatVec(nx));
    for (std::size_t k = 0; k < nx; ++k) {
        for (std::size_t j = 0; j < ny; ++j) columns[j][k] = m[k][j];
    }
    const auto left = left_inverse(m, ny);
    auto pull = [&](const RatVec& form) {
        RatVec out(nx);
        for (std::size_t j = 0; j < ny; ++j) {
            if (form[j] != 0) out += left[j] * form[j];
        }
        return out;
    };
    std::vector<RatVec> eqs = kernel_of_inclusion(columns, nx).basis();
    for (const auto& e : coarse.cone.equalities()) eqs.push_back(pull(e));
    std::vector<RatVec> ineqs;
    for (const auto& g : coarse.cone.inequalities()) ineqs.push_back(pull(g));
    return Cone(fine.cone.labels(), std::move(eqs), std::move(ineqs));
}

}  // namespace trop1

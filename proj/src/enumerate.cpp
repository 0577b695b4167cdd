#include "trop1/enumerate.hpp"

#include "trop1/moduli.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace trop1 {
namespace {

std::string contact_key(const Contact& c) {
    return std::to_string(c.w) + ":" + c.u.to_string();
}

// Vertex invariants used to restrict the permutations tried by canonical_form.
std::string vertex_invariant(const CombinatorialType& type, const std::vector<int>& extra, std::size_t v) {
    const auto& g = type.graph();
    std::vector<std::string> legs, edges;
    for (std::size_t l = 0; l < g.num_legs(); ++l) {
        if (g.legs()[l].base == v) legs.push_back(std::to_string(g.legs()[l].marking) + contact_key(type.leg(l)));
    }
    for (const auto& f : g.flags_at(v)) {
        if (f.kind == Flag::Kind::Edge) edges.push_back(contact_key(Contact::from_vector(type.flag_vector(f))));
    }
    std::sort(legs.begin(), legs.end());
    std::sort(edges.begin(), edges.end());
    std::string out = std::to_string(g.vertices()[v].genus) + "|";
    out += type.has_fan() ? std::to_string(type.cones()[v]) : "-";
    if (!extra.empty()) out += "|x" + std::to_string(extra[v]);
    for (const auto& s : legs) out += "|L" + s;
    for (const auto& s : edges) out += "|E" + s;
    return out;
}

std::string encode(const CombinatorialType& type, const std::vector<int>& extra, const std::vector<std::size_t>& pos) {
    const auto& g = type.graph();
    std::vector<std::size_t> order(g.num_vertices());
    for (std::size_t v = 0; v < pos.size(); ++v) order[pos[v]] = v;
    std::string out = "r" + std::to_string(type.dim()) + "|V";
    for (auto v : order) {
        out += std::to_string(g.vertices()[v].genus);
        if (type.has_fan()) out += "c" + std::to_string(type.cones()[v]);
        if (!extra.empty()) out += "x" + std::to_string(extra[v]);
        out += ",";
    }
    std::vector<std::string> edges;
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        auto a = pos[g.edges()[e].tail], b = pos[g.edges()[e].head];
        auto c = type.edge(e);
        if (a > b) {
            std::swap(a, b);
            c = c.reversed();
        } else if (a == b) {
            c = std::min(c, c.reversed());
        }
        edges.push_back(std::to_string(a) + "-" + std::to_string(b) + ":" + contact_key(c));
    }
    std::sort(edges.begin(), edges.end());
    std::vector<std::string> legs;
    for (std::size_t l = 0; l < g.num_legs(); ++l) {
        legs.push_back(std::to_string(g.legs()[l].marking) + "@" + std::to_string(pos[g.legs()[l].base]) + ":" +
                       contact_key(type.leg(l)));
    }
    std::sort(legs.begin(), legs.end());
    out += "|E";
    for (const auto& s : edges) out += s + ";";
    out += "|L";
    for (const auto& s : legs) out += s + ";";
    return out;
}

struct Shape {
    std::size_t num_vertices = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::optional<std::size_t> cycle_edge;  // an edge whose removal leaves a tree
    std::optional<std::size_t> genus_vertex;
    std::vector<std::size_t> leg_base;
};

std::vector<std::vector<std::pair<std::size_t, std::size_t>>> labeled_trees(std::size_t n) {
    if (n == 1) return {{}};
    if (n == 2) return {{{0, 1}}};
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> out;
    std::vector<std::size_t> seq(n - 2, 0);
    while (true) {
        std::vector<std::size_t> degree(n, 1);
        for (auto x : seq) ++degree[x];
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        for (auto x : seq) {
            std::size_t leaf = 0;
            while (degree[leaf] != 1) ++leaf;
            edges.emplace_back(std::min(leaf, x), std::max(leaf, x));
            --degree[leaf];
            --degree[x];
        }
        std::size_t u = n, w = n;
        for (std::size_t v = 0; v < n; ++v) {
            if (degree[v] == 1) (u == n ? u : w) = v;
        }
        edges.emplace_back(u, w);
        out.push_back(std::move(edges));
        std::size_t k = 0;
        while (k < seq.size() && ++seq[k] == n) seq[k++] = 0;
        if (k == seq.size()) break;
    }
    return out;
}

CurveGraph make_graph(const Shape& s, const RecessionType& recession) {
    std::vector<CurveVertex> vertices;
    for (std::size_t v = 0; v < s.num_vertices; ++v) {
        vertices.push_back({"v" + std::to_string(v), s.genus_vertex == v ? 1 : 0});
    }
    std::vector<CurveEdge> edges;
    for (std::size_t e = 0; e < s.edges.size(); ++e) {
        edges.push_back({"e" + std::to_string(e), s.edges[e].first, s.edges[e].second});
    }
    std::vector<CurveLeg> legs;
    for (std::size_t l = 0; l < s.leg_base.size(); ++l) {
        legs.push_back({"x" + std::to_string(l + 1), s.leg_base[l], recession.legs()[l].marking});
    }
    return CurveGraph(std::move(vertices), std::move(edges), std::move(legs));
}

// Edge vectors forced by balancing once the circulation on the cycle is zero.
std::vector<RatVec> particular_vectors(const Shape& s, const RecessionType& recession, std::vector<int>& cycle_sign) {
    const std::size_t r = recession.dim();
    const std::size_t n = s.num_vertices;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(n);  // (neighbor, edge)
    for (std::size_t e = 0; e < s.edges.size(); ++e) {
        if (s.cycle_edge == e) continue;
        adj[s.edges[e].first].emplace_back(s.edges[e].second, e);
        adj[s.edges[e].second].emplace_back(s.edges[e].first, e);
    }
    std::vector<std::optional<std::size_t>> parent(n), parent_edge(n);
    std::vector<std::size_t> order{0};
    std::vector<bool> seen(n, false);
    seen[0] = true;
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (auto [w, e] : adj[order[i]]) {
            if (seen[w]) continue;
            seen[w] = true;
            parent[w] = order[i];
            parent_edge[w] = e;
            order.push_back(w);
        }
    }
    std::vector<RatVec> sub(n, RatVec(r));
    for (std::size_t l = 0; l < s.leg_base.size(); ++l) sub[s.leg_base[l]] += recession.legs()[l].contact.vector();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (parent[*it]) sub[*parent[*it]] += sub[*it];
    }
    std::vector<RatVec> vectors(s.edges.size(), RatVec(r));
    for (std::size_t v = 1; v < n; ++v) {
        const auto e = *parent_edge[v];
        vectors[e] = s.edges[e].second == v ? sub[v] : -sub[v];
    }
    cycle_sign.assign(s.edges.size(), 0);
    if (s.cycle_edge) {
        const auto e0 = *s.cycle_edge;
        const auto [a, b] = s.edges[e0];
        cycle_sign[e0] = 1;
        // Walk b -> a through the tree: up from both ends to the common ancestor.
        auto ancestors = [&](std::size_t v) {
            std::vector<std::size_t> path{v};
            while (parent[path.back()]) path.push_back(*parent[path.back()]);
            return path;
        };
        auto pb = ancestors(b), pa = ancestors(a);
        while (pa.size() > 1 && pb.size() > 1 && pa[pa.size() - 2] == pb[pb.size() - 2]) {
            pa.pop_back();
            pb.pop_back();
        }
        // b climbs to the ancestor: traversal child -> parent.
        for (std::size_t i = 0; i + 1 < pb.size(); ++i) {
            const auto e = *parent_edge[pb[i]];
            cycle_sign[e] = s.edges[e].first == pb[i] ? 1 : -1;
        }
        // Then descends to a: traversal parent -> child.
        for (std::size_t i = 0; i + 1 < pa.size(); ++i) {
            const auto e = *parent_edge[pa[i]];
            cycle_sign[e] = s.edges[e].second == pa[i] ? 1 : -1;
        }
    }
    return vectors;
}

bool feasible(const CombinatorialType& type) {
    try {
        (void)moduli_cone(type);
        return true;
    } catch (const InfeasibleCone&) {
        return false;
    }
}

void for_each_label(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
    std::vector<std::size_t> labels(n, 0);
    while (true) {
        f(labels);
        std::size_t i = 0;
        while (i < n && ++labels[i] == k) labels[i++] = 0;
        if (i == n) return;
    }
}

}  // namespace

std::string canonical_form(const CombinatorialType& type) {
    return canonical_form(type, {});
}

std::string canonical_form(const CombinatorialType& type, const std::vector<int>& vertex_labels) {
    const std::size_t n = type.graph().num_vertices();
    if (!vertex_labels.empty() && vertex_labels.size() != n) throw InvalidInput("canonical_form: one label per vertex");
    std::vector<std::pair<std::string, std::size_t>> keyed;
    for (std::size_t v = 0; v < n; ++v) keyed.emplace_back(vertex_invariant(type, vertex_labels, v), v);
    std::sort(keyed.begin(), keyed.end());
    std::vector<std::size_t> order;
    std::vector<std::pair<std::size_t, std::size_t>> blocks;
    for (std::size_t i = 0; i < n; ++i) {
        order.push_back(keyed[i].second);
        if (i == 0 || keyed[i].first != keyed[i - 1].first) blocks.emplace_back(i, i + 1);
        else blocks.back().second = i + 1;
    }
    std::string best;
    bool first = true;
    std::vector<std::size_t> pos(n);
    std::function<void(std::size_t)> recurse = [&](std::size_t b) {
        if (b == blocks.size()) {
            for (std::size_t k = 0; k < n; ++k) pos[order[k]] = k;
            auto s = encode(type, vertex_labels, pos);
            if (first || s < best) best = std::move(s);
            first = false;
            return;
        }
        auto begin = order.begin() + static_cast<long>(blocks[b].first);
        auto end = order.begin() + static_cast<long>(blocks[b].second);
        std::sort(begin, end);
        do {
            recurse(b + 1);
        } while (std::next_permutation(begin, end));
    };
    recurse(0);
    return best;
}

std::vector<CombinatorialType> enumerate_types(const RecessionType& recession, std::size_t max_vertices,
                                               std::shared_ptr<const Fan> fan) {
    const std::size_t r = recession.dim();
    const std::size_t num_legs = recession.legs().size();
    const int max_weight = std::max(recession.total_weight(), 1);
    std::vector<Contact> leg_contacts;
    for (const auto& l : recession.legs()) leg_contacts.push_back(l.contact);
    const std::size_t min_valence = fan ? 2 : 3;

    std::map<std::string, CombinatorialType> found;
    for (std::size_t nv = 1; nv <= max_vertices; ++nv) {
        std::vector<Shape> shapes;
        for (const auto& tree : labeled_trees(nv)) {
            std::vector<Shape> genus_options;
            for (std::size_t a = 0; a < nv; ++a) {
                for (std::size_t b = a; b < nv; ++b) {
                    Shape s{nv, tree, tree.size(), std::nullopt, {}};
                    s.edges.emplace_back(a, b);
                    genus_options.push_back(std::move(s));
                }
                genus_options.push_back(Shape{nv, tree, std::nullopt, a, {}});
            }
            for (auto& base : genus_options) {
                std::vector<std::size_t> degree(nv, 0);
                for (auto [a, b] : base.edges) {
                    ++degree[a];
                    ++degree[b];
                }
                std::vector<std::size_t> legs(num_legs, 0);
                while (true) {
                    std::vector<std::size_t> valence = degree;
                    for (auto v : legs) ++valence[v];
                    bool ok = true;
                    for (std::size_t v = 0; v < nv && ok; ++v) {
                        if (base.genus_vertex != v && valence[v] < min_valence) ok = false;
                    }
                    if (ok) {
                        auto s = base;
                        s.leg_base = legs;
                        shapes.push_back(std::move(s));
                    }
                    std::size_t i = 0;
                    while (i < num_legs && ++legs[i] == nv) legs[i++] = 0;
                    if (i == num_legs) break;
                }
            }
        }

        std::set<std::string> seen_shapes;
        for (const auto& s : shapes) {
            const auto graph = make_graph(s, recession);
            {
                CombinatorialType bare(graph, r, std::vector<Contact>(s.edges.size(), Contact::contracted(r)),
                                       leg_contacts);
                if (!seen_shapes.insert(canonical_form(bare)).second) continue;
            }
            std::vector<int> sign;
            const auto base_vectors = particular_vectors(s, recession, sign);
            const bool loop = s.cycle_edge && s.edges[*s.cycle_edge].first == s.edges[*s.cycle_edge].second;
            const bool free_circulation = s.cycle_edge && !loop;
            std::vector<int> c(r, -max_weight);
            if (!free_circulation) std::fill(c.begin(), c.end(), 0);
            while (true) {
                std::vector<Contact> contacts;
                bool ok = true;
                for (std::size_t e = 0; e < s.edges.size() && ok; ++e) {
                    RatVec v = base_vectors[e];
                    if (sign[e] != 0) {
                        for (std::size_t i = 0; i < r; ++i) v[i] += sign[e] * c[i];
                    }
                    auto contact = Contact::from_vector(v);
                    if (contact.w > max_weight) ok = false;
                    contacts.push_back(std::move(contact));
                }
                if (ok) {
                    auto emit = [&](std::shared_ptr<const Fan> f, std::vector<std::size_t> labels) {
                        CombinatorialType type(graph, r, contacts, leg_contacts, std::move(f), std::move(labels));
                        if (!is_stable(type)) return;
                        auto key = canonical_form(type);
                        if (found.count(key) || !feasible(type)) return;
                        found.emplace(std::move(key), std::move(type));
                    };
                    if (fan) {
                        for_each_label(nv, fan->size(), [&](const std::vector<std::size_t>& labels) { emit(fan, labels); });
                    } else {
                        emit(nullptr, {});
                    }
                }
                if (!free_circulation) break;
                std::size_t i = 0;
                while (i < r && ++c[i] > max_weight) c[i++] = -max_weight;
                if (i == r) break;
            }
        }
    }
    std::vector<CombinatorialType> out;
    for (auto& [key, type] : found) out.push_back(std::move(type));
    return out;
}

std::vector<CombinatorialType> face_types(const CombinatorialType& type) {
    const auto& g = type.graph();
    std::map<std::string, CombinatorialType> found;
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        const auto a = g.edges()[e].tail, b = g.edges()[e].head;
        std::vector<std::size_t> remap(g.num_vertices());
        std::vector<CurveVertex> vertices;
        for (std::size_t v = 0; v < g.num_vertices(); ++v) {
            if (v == b && b != a) continue;
            remap[v] = vertices.size();
            vertices.push_back(g.vertices()[v]);
        }
        remap[b] = remap[a];
        vertices[remap[a]].genus = a == b ? g.vertices()[a].genus + 1 : g.vertices()[a].genus + g.vertices()[b].genus;
        std::vector<std::size_t> labels;
        if (type.has_fan()) {
            const auto la = type.cones()[a], lb = type.cones()[b];
            std::size_t merged;
            if (type.fan()->cone(la).is_face_of(type.fan()->cone(lb))) merged = la;
            else if (type.fan()->cone(lb).is_face_of(type.fan()->cone(la))) merged = lb;
            else continue;
            for (std::size_t v = 0; v < g.num_vertices(); ++v) {
                if (v == b && b != a) continue;
                labels.push_back(v == a ? merged : type.cones()[v]);
            }
        }
        std::vector<CurveEdge> edges;
        std::vector<Contact> contacts;
        for (std::size_t f = 0; f < g.num_edges(); ++f) {
            if (f == e) continue;
            edges.push_back({g.edges()[f].id, remap[g.edges()[f].tail], remap[g.edges()[f].head]});
            contacts.push_back(type.edge(f));
        }
        std::vector<CurveLeg> legs;
        for (const auto& l : g.legs()) legs.push_back({l.id, remap[l.base], l.marking});
        CombinatorialType face(CurveGraph(std::move(vertices), std::move(edges), std::move(legs)), type.dim(),
                               std::move(contacts), type.leg_contacts(), type.fan(), std::move(labels));
        if (!is_stable(face)) continue;
        auto key = canonical_form(face);
        if (found.count(key) || !feasible(face)) continue;
        found.emplace(std::move(key), std::move(face));
    }
    std::vector<CombinatorialType> out;
    for (auto& [key, t] : found) out.push_back(std::move(t));
    return out;
}

}  // namespace trop1

#include "trop1/curve.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>

namespace trop1 {

CurveGraph::CurveGraph(std::vector<CurveVertex> vertices, std::vector<CurveEdge> edges, std::vector<CurveLeg> legs)
    : vertices_(std::move(vertices)), edges_(std::move(edges)), legs_(std::move(legs)) {
    std::set<std::string> seen;
    for (const auto& v : vertices_) {
        if (v.genus < 0) throw InvalidInput("vertex '" + v.id + "' has negative genus");
        if (!seen.insert("v:" + v.id).second) throw InvalidInput("duplicate vertex id '" + v.id + "'");
    }
    for (const auto& e : edges_) {
        if (e.tail >= vertices_.size() || e.head >= vertices_.size()) {
            throw InvalidInput("edge '" + e.id + "' references a missing vertex");
        }
        if (!seen.insert("e:" + e.id).second) throw InvalidInput("duplicate edge id '" + e.id + "'");
    }
    for (const auto& l : legs_) {
        if (l.base >= vertices_.size()) throw InvalidInput("leg '" + l.id + "' references a missing vertex");
        if (!seen.insert("l:" + l.id).second) throw InvalidInput("duplicate leg id '" + l.id + "'");
        if (l.marking < 1) throw InvalidInput("leg '" + l.id + "' needs a positive marking");
        if (!seen.insert("m:" + std::to_string(l.marking)).second) {
            throw InvalidInput("marking " + std::to_string(l.marking) + " is used twice");
        }
    }
}

std::optional<std::size_t> CurveGraph::find_vertex(std::string_view id) const {
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (vertices_[i].id == id) return i;
    }
    return std::nullopt;
}

std::optional<std::size_t> CurveGraph::find_edge(std::string_view id) const {
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        if (edges_[i].id == id) return i;
    }
    return std::nullopt;
}

std::size_t CurveGraph::vertex_index(std::string_view id) const {
    if (auto v = find_vertex(id)) return *v;
    throw InvalidInput("unknown vertex '" + std::string(id) + "'");
}

std::size_t CurveGraph::valence(std::size_t v) const {
    std::size_t count = 0;
    for (const auto& e : edges_) {
        if (e.tail == v) ++count;
        if (e.head == v) ++count;
    }
    for (const auto& l : legs_) {
        if (l.base == v) ++count;
    }
    return count;
}

std::vector<Flag> CurveGraph::flags_at(std::size_t v) const {
    std::vector<Flag> flags;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        if (edges_[e].tail == v) flags.push_back({Flag::Kind::Edge, e, true});
        if (edges_[e].head == v) flags.push_back({Flag::Kind::Edge, e, false});
    }
    for (std::size_t l = 0; l < legs_.size(); ++l) {
        if (legs_[l].base == v) flags.push_back({Flag::Kind::Leg, l, true});
    }
    return flags;
}

std::size_t CurveGraph::flag_base(const Flag& flag) const {
    if (flag.kind == Flag::Kind::Leg) return legs_[flag.index].base;
    const auto& e = edges_[flag.index];
    return flag.along_orientation ? e.tail : e.head;
}

std::string CurveGraph::flag_name(const Flag& flag) const {
    if (flag.kind == Flag::Kind::Leg) return "leg:" + legs_[flag.index].id;
    return "edge:" + edges_[flag.index].id + (flag.along_orientation ? "+" : "-");
}

bool CurveGraph::is_connected() const {
    if (vertices_.empty()) return false;
    std::vector<std::size_t> root(vertices_.size());
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](std::size_t x) {
        while (root[x] != x) x = root[x] = root[root[x]];
        return x;
    };
    std::size_t components = vertices_.size();
    for (const auto& e : edges_) {
        auto a = find(e.tail), b = find(e.head);
        if (a != b) {
            root[a] = b;
            --components;
        }
    }
    return components == 1;
}

int CurveGraph::first_betti() const {
    return static_cast<int>(edges_.size()) - static_cast<int>(vertices_.size()) + 1;
}

int CurveGraph::total_vertex_genus() const {
    int total = 0;
    for (const auto& v : vertices_) total += v.genus;
    return total;
}

int genus(const CurveGraph& graph) {
    if (!graph.is_connected()) throw InvalidInput("curve graph is disconnected");
    return graph.first_betti() + graph.total_vertex_genus();
}

bool Circuit::contains_vertex(std::size_t v) const {
    return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
}

bool Circuit::contains_edge(std::size_t e) const {
    return std::find(edges.begin(), edges.end(), e) != edges.end();
}

Circuit circuit(const CurveGraph& graph) {
    if (genus(graph) != 1) throw InvalidInput("circuit requires a genus-1 curve");
    Circuit result;
    for (std::size_t v = 0; v < graph.num_vertices(); ++v) {
        if (graph.vertices()[v].genus == 1) {
            result.vertices.push_back(v);
            return result;
        }
    }
    // Unicyclic: peel off degree-1 vertices until only the cycle remains.
    const auto n = graph.num_vertices();
    std::vector<std::size_t> degree(n, 0);
    for (const auto& e : graph.edges()) {
        ++degree[e.tail];
        ++degree[e.head];
    }
    std::vector<bool> removed(n, false);
    std::vector<bool> edge_removed(graph.num_edges(), false);
    std::queue<std::size_t> leaves;
    for (std::size_t v = 0; v < n; ++v) {
        if (degree[v] <= 1) leaves.push(v);
    }
    while (!leaves.empty()) {
        auto v = leaves.front();
        leaves.pop();
        if (removed[v]) continue;
        removed[v] = true;
        for (std::size_t e = 0; e < graph.num_edges(); ++e) {
            if (edge_removed[e]) continue;
            const auto& edge = graph.edges()[e];
            if (edge.tail != v && edge.head != v) continue;
            edge_removed[e] = true;
            auto other = edge.tail == v ? edge.head : edge.tail;
            if (--degree[other] == 1) leaves.push(other);
        }
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (!removed[v]) result.vertices.push_back(v);
    }
    for (std::size_t e = 0; e < graph.num_edges(); ++e) {
        if (!edge_removed[e]) result.edges.push_back(e);
    }
    return result;
}

std::vector<std::size_t> RadialStructure::path_edges(std::size_t v) const {
    std::vector<std::size_t> path;
    while (parent[v]) {
        path.push_back(*parent_edge[v]);
        v = *parent[v];
    }
    std::reverse(path.begin(), path.end());
    return path;
}

bool RadialStructure::on_path_to(std::size_t ancestor, std::size_t v) const {
    for (;;) {
        if (v == ancestor) return true;
        if (!parent[v]) return on_circuit(ancestor);
        v = *parent[v];
    }
}

std::size_t RadialStructure::child_of_edge(const CurveGraph& graph, std::size_t e) const {
    const auto& edge = graph.edges()[e];
    if (parent_edge[edge.head] == e) return edge.head;
    if (parent_edge[edge.tail] == e) return edge.tail;
    throw InvalidInput("edge '" + edge.id + "' lies on the circuit");
}

RadialStructure radial_structure(const CurveGraph& graph) {
    RadialStructure radial;
    radial.circuit = circuit(graph);
    const auto n = graph.num_vertices();
    radial.parent.assign(n, std::nullopt);
    radial.parent_edge.assign(n, std::nullopt);
    std::vector<bool> seen(n, false);
    std::queue<std::size_t> frontier;
    for (auto v : radial.circuit.vertices) {
        seen[v] = true;
        frontier.push(v);
    }
    while (!frontier.empty()) {
        auto v = frontier.front();
        frontier.pop();
        for (std::size_t e = 0; e < graph.num_edges(); ++e) {
            if (radial.circuit.contains_edge(e)) continue;
            const auto& edge = graph.edges()[e];
            std::size_t other;
            if (edge.tail == v) other = edge.head;
            else if (edge.head == v) other = edge.tail;
            else continue;
            if (seen[other]) continue;
            seen[other] = true;
            radial.parent[other] = v;
            radial.parent_edge[other] = e;
            frontier.push(other);
        }
    }
    return radial;
}

RadialAlignment::RadialAlignment(std::vector<int> ranks) : ranks_(std::move(ranks)) {}

int RadialAlignment::num_classes() const {
    return ranks_.empty() ? 0 : *std::max_element(ranks_.begin(), ranks_.end()) + 1;
}

std::vector<std::vector<std::size_t>> RadialAlignment::classes() const {
    std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(num_classes()));
    for (std::size_t v = 0; v < ranks_.size(); ++v) out[static_cast<std::size_t>(ranks_[v])].push_back(v);
    return out;
}

std::string RadialAlignment::to_string(const CurveGraph& graph) const {
    std::string out;
    const auto groups = classes();
    for (std::size_t k = 0; k < groups.size(); ++k) {
        if (k) out += " < ";
        out += "{";
        for (std::size_t i = 0; i < groups[k].size(); ++i) {
            if (i) out += ",";
            out += graph.vertices()[groups[k][i]].id;
        }
        out += "}";
    }
    return out;
}

namespace {

void extend_alignments(const RadialStructure& radial, std::vector<int>& ranks, int next_rank, std::size_t remaining,
                       std::vector<RadialAlignment>& out) {
    if (remaining == 0) {
        out.emplace_back(ranks);
        return;
    }
    std::vector<std::size_t> available;
    for (std::size_t v = 0; v < ranks.size(); ++v) {
        if (ranks[v] >= 0 || !radial.parent[v]) continue;
        const int parent_rank = ranks[*radial.parent[v]];
        if (parent_rank >= 0 && parent_rank < next_rank) available.push_back(v);
    }
    const std::size_t k = available.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
        std::size_t placed = 0;
        for (std::size_t i = 0; i < k; ++i) {
            if (mask >> i & 1) {
                ranks[available[i]] = next_rank;
                ++placed;
            }
        }
        extend_alignments(radial, ranks, next_rank + 1, remaining - placed, out);
        for (std::size_t i = 0; i < k; ++i) {
            if (mask >> i & 1) ranks[available[i]] = -1;
        }
    }
}

}  // namespace

std::vector<RadialAlignment> enumerate_alignments(const CurveGraph& graph) {
    const auto radial = radial_structure(graph);
    std::vector<int> ranks(graph.num_vertices(), -1);
    std::size_t remaining = 0;
    for (std::size_t v = 0; v < graph.num_vertices(); ++v) {
        if (radial.on_circuit(v)) ranks[v] = 0;
        else ++remaining;
    }
    std::vector<RadialAlignment> out;
    extend_alignments(radial, ranks, 1, remaining, out);
    return out;
}

bool is_compatible(const RadialAlignment& alignment, const RadialStructure& radial) {
    const auto n = radial.parent.size();
    if (alignment.ranks().size() != n) return false;
    for (std::size_t v = 0; v < n; ++v) {
        if (radial.on_circuit(v)) {
            if (alignment.rank(v) != 0) return false;
        } else if (alignment.rank(v) <= alignment.rank(*radial.parent[v])) {
            return false;
        }
    }
    return true;
}

TropicalCurve::TropicalCurve(CurveGraph graph, std::vector<Rational> lengths)
    : graph_(std::move(graph)), lengths_(std::move(lengths)) {
    if (lengths_.size() != graph_.num_edges()) throw InvalidInput("one length per edge required");
    for (std::size_t e = 0; e < lengths_.size(); ++e) {
        if (lengths_[e] <= 0) throw InvalidInput("edge length must be positive (edge '" + graph_.edges()[e].id + "')");
    }
    if (!graph_.is_connected()) throw InvalidInput("curve graph is disconnected");
}

std::vector<Rational> lambdas(const TropicalCurve& curve, const RadialStructure& radial) {
    std::vector<Rational> out(curve.graph().num_vertices());
    for (std::size_t v = 0; v < out.size(); ++v) {
        for (auto e : radial.path_edges(v)) out[v] += curve.length(e);
    }
    return out;
}

std::vector<Rational> lambdas(const TropicalCurve& curve) {
    return lambdas(curve, radial_structure(curve.graph()));
}

Rational lambda(const TropicalCurve& curve, std::size_t v) {
    if (v >= curve.graph().num_vertices()) throw InvalidInput("lambda: vertex out of range");
    const auto radial = radial_structure(curve.graph());
    Rational total = 0;
    for (auto e : radial.path_edges(v)) total += curve.length(e);
    return total;
}

}  // namespace trop1

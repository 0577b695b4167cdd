#pragma once

#include "trop1/rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace trop1 {

struct CurveVertex {
    std::string id;
    int genus = 0;
};

/// A bounded edge with a fixed orientation tail -> head; tail == head for loops.
struct CurveEdge {
    std::string id;
    std::size_t tail = 0;
    std::size_t head = 0;

    bool is_loop() const { return tail == head; }
};

/// An unbounded marked half-edge.
struct CurveLeg {
    std::string id;
    std::size_t base = 0;
    int marking = 0;
};

/// A tangent direction at a vertex: along an edge (pointing with or against the
/// edge orientation) or along a leg.
struct Flag {
    enum class Kind { Edge, Leg };
    Kind kind;
    std::size_t index;
    bool along_orientation = true;  ///< edges only: the flag sits at the tail

    friend bool operator==(const Flag&, const Flag&) = default;
};

/// The finite graph model of a tropical curve, without metric data.
class CurveGraph {
public:
    CurveGraph() = default;
    CurveGraph(std::vector<CurveVertex> vertices, std::vector<CurveEdge> edges, std::vector<CurveLeg> legs);

    const std::vector<CurveVertex>& vertices() const { return vertices_; }
    const std::vector<CurveEdge>& edges() const { return edges_; }
    const std::vector<CurveLeg>& legs() const { return legs_; }
    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t num_edges() const { return edges_.size(); }
    std::size_t num_legs() const { return legs_.size(); }

    std::optional<std::size_t> find_vertex(std::string_view id) const;
    std::optional<std::size_t> find_edge(std::string_view id) const;
    std::size_t vertex_index(std::string_view id) const;

    /// Edge incidences (loops counted twice) plus legs.
    std::size_t valence(std::size_t v) const;
    std::vector<Flag> flags_at(std::size_t v) const;
    std::size_t flag_base(const Flag& flag) const;
    std::string flag_name(const Flag& flag) const;

    bool is_connected() const;
    /// |E| - |V| + 1; requires a connected graph.
    int first_betti() const;
    int total_vertex_genus() const;

private:
    std::vector<CurveVertex> vertices_;
    std::vector<CurveEdge> edges_;
    std::vector<CurveLeg> legs_;
};

/// h1(G) + sum of vertex genera. Throws InvalidInput for a disconnected graph.
int genus(const CurveGraph& graph);

/// The smallest genus-1 subgraph: a genus-1 vertex, or the unique cycle.
struct Circuit {
    std::vector<std::size_t> vertices;
    std::vector<std::size_t> edges;

    bool is_genus_one_vertex() const { return edges.empty(); }
    bool contains_vertex(std::size_t v) const;
    bool contains_edge(std::size_t e) const;
};

/// Requires genus exactly 1.
Circuit circuit(const CurveGraph& graph);

/// The forest hanging off the circuit: every non-circuit vertex has a unique
/// parent edge on its path back to the circuit.
struct RadialStructure {
    Circuit circuit;
    std::vector<std::optional<std::size_t>> parent;       ///< nullopt on the circuit
    std::vector<std::optional<std::size_t>> parent_edge;  ///< nullopt on the circuit

    bool on_circuit(std::size_t v) const { return !parent[v].has_value(); }
    /// Edges of the unique path from the circuit to v, circuit end first.
    std::vector<std::size_t> path_edges(std::size_t v) const;
    /// True iff `ancestor` lies on the path from the circuit to v (v included).
    bool on_path_to(std::size_t ancestor, std::size_t v) const;
    /// Which endpoint of a non-circuit edge is farther from the circuit.
    std::size_t child_of_edge(const CurveGraph& graph, std::size_t e) const;
};

RadialStructure radial_structure(const CurveGraph& graph);

/// A total preorder on vertices refining the path order from the circuit. Stored
/// as ranks: circuit vertices have rank 0, and v precedes w iff rank(v) <= rank(w).
class RadialAlignment {
public:
    RadialAlignment() = default;
    explicit RadialAlignment(std::vector<int> ranks);

    bool precedes(std::size_t v, std::size_t w) const { return ranks_[v] <= ranks_[w]; }
    int rank(std::size_t v) const { return ranks_[v]; }
    const std::vector<int>& ranks() const { return ranks_; }
    int num_classes() const;
    /// Vertices grouped by rank, lowest first.
    std::vector<std::vector<std::size_t>> classes() const;

    friend bool operator==(const RadialAlignment&, const RadialAlignment&) = default;
    friend auto operator<=>(const RadialAlignment&, const RadialAlignment&) = default;

    std::string to_string(const CurveGraph& graph) const;

private:
    std::vector<int> ranks_;
};

/// Every total preorder in which circuit vertices form the bottom class and each
/// vertex is strictly above its parent. Requires genus 1.
std::vector<RadialAlignment> enumerate_alignments(const CurveGraph& graph);

/// Checks the path-compatibility condition of an alignment.
bool is_compatible(const RadialAlignment& alignment, const RadialStructure& radial);

/// A graph with positive rational edge lengths.
class TropicalCurve {
public:
    TropicalCurve() = default;
    TropicalCurve(CurveGraph graph, std::vector<Rational> lengths);

    const CurveGraph& graph() const { return graph_; }
    const std::vector<Rational>& lengths() const { return lengths_; }
    const Rational& length(std::size_t e) const { return lengths_[e]; }

private:
    CurveGraph graph_;
    std::vector<Rational> lengths_;
};

inline int genus(const TropicalCurve& curve) { return genus(curve.graph()); }
inline Circuit circuit(const TropicalCurve& curve) { return circuit(curve.graph()); }
inline std::vector<RadialAlignment> enumerate_alignments(const TropicalCurve& curve) {
    return enumerate_alignments(curve.graph());
}

/// Distance from the circuit to v along the unique path. Requires genus 1.
Rational lambda(const TropicalCurve& curve, std::size_t v);
/// lambda for every vertex at once.
std::vector<Rational> lambdas(const TropicalCurve& curve);
std::vector<Rational> lambdas(const TropicalCurve& curve, const RadialStructure& radial);

}  // namespace trop1

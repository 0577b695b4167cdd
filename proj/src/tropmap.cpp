#include "trop1/tropmap.hpp"

#include <algorithm>
#include <queue>

namespace trop1 {

Contact Contact::from_vector(const RatVec& v) {
    if (v.is_zero()) return contracted(v.dim());
    auto p = primitive(v);
    if (!is_integer(p.scalar)) throw InvalidInput("vector " + v.to_string() + " is not a lattice multiple of a primitive direction");
    return {std::move(p.direction), static_cast<int>(numerator_of(p.scalar))};
}

CombinatorialType::CombinatorialType(CurveGraph graph, std::size_t dim, std::vector<Contact> edges,
                                     std::vector<Contact> legs, std::shared_ptr<const Fan> fan,
                                     std::vector<std::size_t> cones)
    : graph_(std::move(graph)),
      dim_(dim),
      edges_(std::move(edges)),
      legs_(std::move(legs)),
      fan_(std::move(fan)),
      cones_(std::move(cones)) {
    if (edges_.size() != graph_.num_edges()) throw InvalidInput("one contact per edge required");
    if (legs_.size() != graph_.num_legs()) throw InvalidInput("one contact per leg required");
    auto check = [&](const Contact& c, const std::string& what) {
        if (c.u.dim() != dim_) throw InvalidInput(what + ": direction has the wrong dimension");
        if (c.w < 0) throw InvalidInput(what + ": negative expansion factor");
        if (c.w == 0) {
            if (!c.u.is_zero()) throw InvalidInput(what + ": contracted contact must carry no direction");
            return;
        }
        if (c.u.is_zero() || !c.u.is_integral() || primitive(c.u).scalar != 1) {
            throw InvalidInput(what + ": direction " + c.u.to_string() + " is not primitive");
        }
    };
    for (std::size_t e = 0; e < edges_.size(); ++e) check(edges_[e], "edge '" + graph_.edges()[e].id + "'");
    for (std::size_t l = 0; l < legs_.size(); ++l) check(legs_[l], "leg '" + graph_.legs()[l].id + "'");
    if (fan_) {
        if (fan_->ambient_dim() != dim_) throw InvalidInput("fan dimension does not match the target");
        if (cones_.size() != graph_.num_vertices()) throw InvalidInput("a cone label is required for every vertex");
        for (auto c : cones_) {
            if (c >= fan_->size()) throw InvalidInput("cone label out of range");
        }
    } else if (!cones_.empty()) {
        throw InvalidInput("cone labels given without a fan");
    }
}

Subspace CombinatorialType::cone_span(std::size_t v) const {
    if (!fan_) return Subspace::full(dim_);
    return cone_of(v).linear_span();
}

RatVec CombinatorialType::flag_vector(const Flag& flag) const {
    if (flag.kind == Flag::Kind::Leg) return legs_[flag.index].vector();
    RatVec d = edges_[flag.index].vector();
    return flag.along_orientation ? d : -d;
}

BalanceReport balance(const CombinatorialType& type) {
    BalanceReport report;
    const auto& g = type.graph();
    report.defects.assign(g.num_vertices(), RatVec(type.dim()));
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        const auto d = type.edge_vector(e);
        report.defects[g.edges()[e].tail] += d;
        report.defects[g.edges()[e].head] -= d;
    }
    for (std::size_t l = 0; l < g.num_legs(); ++l) report.defects[g.legs()[l].base] += type.leg(l).vector();
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
        if (!report.defects[v].is_zero()) report.unbalanced_vertices.push_back(v);
    }
    report.balanced = report.unbalanced_vertices.empty();
    return report;
}

bool is_stable(const CombinatorialType& type) {
    const auto& g = type.graph();
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
        if (g.vertices()[v].genus > 0) continue;
        const auto valence = g.valence(v);
        if (valence < 2) return false;
        if (valence > 2) continue;
        const auto star = type.cone_span(v);
        const auto flags = g.flags_at(v);
        if (std::all_of(flags.begin(), flags.end(), [&](const Flag& f) { return star.contains(type.flag_vector(f)); })) {
            return false;
        }
    }
    return true;
}

RecessionType::RecessionType(std::size_t dim, std::vector<Leg> legs) : dim_(dim), legs_(std::move(legs)) {
    RatVec sum(dim_);
    for (const auto& leg : legs_) {
        if (leg.contact.u.dim() != dim_) throw InvalidInput("recession leg has the wrong dimension");
        sum += leg.contact.vector();
    }
    if (!sum.is_zero()) throw InvalidInput("recession type is unbalanced: legs sum to " + sum.to_string());
    std::sort(legs_.begin(), legs_.end());
}

int RecessionType::total_weight() const {
    int total = 0;
    for (const auto& leg : legs_) total += leg.contact.w;
    return total;
}

CombinatorialType RecessionType::as_type(int vertex_genus) const {
    std::vector<CurveLeg> legs;
    std::vector<Contact> contacts;
    for (std::size_t i = 0; i < legs_.size(); ++i) {
        legs.push_back({"l" + std::to_string(i + 1), 0, legs_[i].marking});
        contacts.push_back(legs_[i].contact);
    }
    CurveGraph graph({{"v", vertex_genus}}, {}, std::move(legs));
    return CombinatorialType(std::move(graph), dim_, {}, std::move(contacts));
}

std::string RecessionType::to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < legs_.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(legs_[i].marking) + ":" + std::to_string(legs_[i].contact.w) + "*" +
               legs_[i].contact.u.to_string();
    }
    return out + "]";
}

RecessionType recession_type(const CombinatorialType& type) {
    const auto report = balance(type);
    if (!report.balanced) {
        const auto v = report.unbalanced_vertices.front();
        throw InvalidInput("type is unbalanced at vertex '" + type.graph().vertices()[v].id + "' (defect " +
                           report.defects[v].to_string() + ")");
    }
    std::vector<RecessionType::Leg> legs;
    for (std::size_t l = 0; l < type.graph().num_legs(); ++l) {
        legs.push_back({type.graph().legs()[l].marking, type.leg(l)});
    }
    return RecessionType(type.dim(), std::move(legs));
}

TropicalMap::TropicalMap(CombinatorialType type, std::vector<Rational> lengths, std::vector<RatVec> positions)
    : type_(std::move(type)), lengths_(std::move(lengths)), positions_(std::move(positions)) {
    const auto& g = type_.graph();
    (void)TropicalCurve(g, lengths_);
    if (positions_.size() != g.num_vertices()) throw InvalidInput("one position per vertex required");
    require_dim(positions_, type_.dim(), "vertex position");
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        const auto& edge = g.edges()[e];
        if (positions_[edge.head] - positions_[edge.tail] != type_.edge_vector(e) * lengths_[e]) {
            throw InvalidInput("edge '" + edge.id + "' is incompatible with the vertex positions");
        }
    }
    const auto report = balance(type_);
    if (!report.balanced) {
        const auto v = report.unbalanced_vertices.front();
        throw InvalidInput("map is unbalanced at vertex '" + g.vertices()[v].id + "' (defect " +
                           report.defects[v].to_string() + ")");
    }
    if (type_.has_fan()) {
        for (std::size_t v = 0; v < g.num_vertices(); ++v) {
            if (!type_.cone_of(v).contains_relative_interior(positions_[v])) {
                throw InvalidInput("vertex '" + g.vertices()[v].id + "' does not lie in the relative interior of its cone");
            }
        }
    }
}

TropicalMap TropicalMap::from_base(CombinatorialType type, std::vector<Rational> lengths, std::size_t base,
                                   RatVec point) {
    const auto& g = type.graph();
    if (base >= g.num_vertices()) throw InvalidInput("base vertex out of range");
    if (lengths.size() != g.num_edges()) throw InvalidInput("one length per edge required");
    std::vector<std::optional<RatVec>> pos(g.num_vertices());
    pos[base] = std::move(point);
    std::queue<std::size_t> frontier;
    frontier.push(base);
    while (!frontier.empty()) {
        const auto v = frontier.front();
        frontier.pop();
        for (std::size_t e = 0; e < g.num_edges(); ++e) {
            const auto& edge = g.edges()[e];
            const RatVec step = type.edge_vector(e) * lengths[e];
            if (edge.tail == v && !pos[edge.head]) {
                pos[edge.head] = *pos[v] + step;
                frontier.push(edge.head);
            } else if (edge.head == v && !pos[edge.tail]) {
                pos[edge.tail] = *pos[v] - step;
                frontier.push(edge.tail);
            }
        }
    }
    std::vector<RatVec> positions;
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
        if (!pos[v]) throw InvalidInput("curve graph is disconnected");
        positions.push_back(std::move(*pos[v]));
    }
    return TropicalMap(std::move(type), std::move(lengths), std::move(positions));
}

std::optional<Rational> contraction_radius(const TropicalMap& map, const std::optional<RatVec>& chi) {
    const auto& type = map.type();
    const auto& g = type.graph();
    auto moves = [&](const RatVec& v) { return chi ? dot(*chi, v) != 0 : !v.is_zero(); };
    const auto radial = radial_structure(g);
    for (auto e : radial.circuit.edges) {
        if (moves(type.edge_vector(e))) return Rational(0);
    }
    // Contracted component of the circuit, then the nearest vertex with a moving flag.
    std::vector<bool> in_k(g.num_vertices(), false);
    std::queue<std::size_t> frontier;
    for (auto v : radial.circuit.vertices) {
        in_k[v] = true;
        frontier.push(v);
    }
    while (!frontier.empty()) {
        const auto v = frontier.front();
        frontier.pop();
        for (std::size_t e = 0; e < g.num_edges(); ++e) {
            const auto& edge = g.edges()[e];
            if (moves(type.edge_vector(e))) continue;
            for (auto [a, b] : {std::pair{edge.tail, edge.head}, std::pair{edge.head, edge.tail}}) {
                if (a == v && !in_k[b]) {
                    in_k[b] = true;
                    frontier.push(b);
                }
            }
        }
    }
    const auto lam = lambdas(map.curve(), radial);
    std::optional<Rational> best;
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
        if (!in_k[v]) continue;
        const auto flags = g.flags_at(v);
        const bool active = std::any_of(flags.begin(), flags.end(), [&](const Flag& f) { return moves(type.flag_vector(f)); });
        if (active && (!best || lam[v] < *best)) best = lam[v];
    }
    return best;
}

TropicalMap transform(const TropicalMap& map, const std::vector<RatVec>& matrix) {
    const auto& type = map.type();
    const auto r = type.dim();
    if (matrix.size() != r) throw InvalidInput("transform: matrix must be square of the target dimension");
    for (const auto& row : matrix) {
        if (row.dim() != r || !row.is_integral()) throw InvalidInput("transform: matrix must be integral");
    }
    const auto det = determinant(matrix);
    if (det != 1 && det != -1) throw InvalidInput("transform: matrix is not unimodular");
    auto image = [&](const Contact& c) { return Contact{apply(matrix, c.u), c.w}; };
    std::vector<Contact> edges, legs;
    for (const auto& c : type.edge_contacts()) edges.push_back(image(c));
    for (const auto& c : type.leg_contacts()) legs.push_back(image(c));
    std::shared_ptr<const Fan> fan;
    if (type.has_fan()) {
        std::vector<RayCone> cones;
        for (const auto& cone : type.fan()->cones()) {
            std::vector<RatVec> rays;
            for (const auto& ray : cone.rays()) rays.push_back(apply(matrix, ray));
            cones.emplace_back(r, std::move(rays));
        }
        fan = std::make_shared<Fan>(r, std::move(cones), type.fan()->is_complete());
    }
    std::vector<RatVec> positions;
    for (const auto& p : map.positions()) positions.push_back(apply(matrix, p));
    CombinatorialType moved(type.graph(), r, std::move(edges), std::move(legs), std::move(fan), type.cones());
    return TropicalMap(std::move(moved), map.lengths(), std::move(positions));
}

TropicalMap rescale(const TropicalMap& map, const Rational& factor) {
    if (factor <= 0) throw InvalidInput("rescale: factor must be positive");
    std::vector<Rational> lengths;
    for (const auto& l : map.lengths()) lengths.push_back(l * factor);
    std::vector<RatVec> positions;
    for (const auto& p : map.positions()) positions.push_back(p * factor);
    return TropicalMap(map.type(), std::move(lengths), std::move(positions));
}

}  // namespace trop1

#pragma once

#include "trop1/curve.hpp"
#include "trop1/fan.hpp"
#include "trop1/ratlin.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace trop1 {

/// Primitive integer direction u and expansion factor w >= 0. Contracted (w = 0)
/// contacts carry the zero vector as u.
struct Contact {
    RatVec u;
    int w = 0;

    static Contact contracted(std::size_t dim) { return {RatVec(dim), 0}; }
    /// Builds the contact whose vector is v (w = lattice length of v).
    static Contact from_vector(const RatVec& v);

    bool is_contracted() const { return w == 0; }
    RatVec vector() const { return w == 0 ? RatVec(u.dim()) : u * Rational(w); }
    Contact reversed() const { return {-u, w}; }

    friend bool operator==(const Contact&, const Contact&) = default;
    friend auto operator<=>(const Contact& a, const Contact& b) {
        if (auto c = a.w <=> b.w; c != 0) return c;
        return a.u <=> b.u;
    }
};

/// Graph, edge and leg contact data, and optional cone labels in a fan. Without a
/// fan the target is Q^r with its single full cone.
class CombinatorialType {
public:
    CombinatorialType() = default;
    CombinatorialType(CurveGraph graph, std::size_t dim, std::vector<Contact> edges, std::vector<Contact> legs,
                      std::shared_ptr<const Fan> fan = nullptr, std::vector<std::size_t> cones = {});

    const CurveGraph& graph() const { return graph_; }
    std::size_t dim() const { return dim_; }
    const std::vector<Contact>& edge_contacts() const { return edges_; }
    const std::vector<Contact>& leg_contacts() const { return legs_; }
    const Contact& edge(std::size_t e) const { return edges_[e]; }
    const Contact& leg(std::size_t l) const { return legs_[l]; }

    bool has_fan() const { return fan_ != nullptr; }
    const std::shared_ptr<const Fan>& fan() const { return fan_; }
    const std::vector<std::size_t>& cones() const { return cones_; }
    /// Requires has_fan().
    const RayCone& cone_of(std::size_t v) const { return fan_->cone(cones_[v]); }
    /// span(sigma_v), or all of Q^r without a fan.
    Subspace cone_span(std::size_t v) const;

    /// w_e u_e in the tail -> head direction.
    RatVec edge_vector(std::size_t e) const { return edges_[e].vector(); }
    /// The outgoing vector of a flag at its base.
    RatVec flag_vector(const Flag& flag) const;

private:
    CurveGraph graph_;
    std::size_t dim_ = 0;
    std::vector<Contact> edges_;
    std::vector<Contact> legs_;
    std::shared_ptr<const Fan> fan_;
    std::vector<std::size_t> cones_;
};

struct BalanceReport {
    bool balanced = true;
    std::vector<RatVec> defects;  ///< per vertex: sum of outgoing flag vectors
    std::vector<std::size_t> unbalanced_vertices;
};

BalanceReport balance(const CombinatorialType& type);

/// No genus-0 vertex of valence <= 2 whose star sits in the relative interior of
/// its cone. Genus-1 vertices are never unstable.
bool is_stable(const CombinatorialType& type);

/// Multiset of marked leg contacts, sorted.
class RecessionType {
public:
    struct Leg {
        int marking;
        Contact contact;

        friend bool operator==(const Leg&, const Leg&) = default;
        friend auto operator<=>(const Leg& a, const Leg& b) {
            if (auto c = a.marking <=> b.marking; c != 0) return c;
            return a.contact <=> b.contact;
        }
    };

    RecessionType() = default;
    /// Throws InvalidInput unless the weighted leg vectors sum to zero.
    RecessionType(std::size_t dim, std::vector<Leg> legs);

    std::size_t dim() const { return dim_; }
    const std::vector<Leg>& legs() const { return legs_; }
    int total_weight() const;

    /// The single-vertex type carrying these legs.
    CombinatorialType as_type(int vertex_genus = 0) const;

    friend bool operator==(const RecessionType&, const RecessionType&) = default;

    std::string to_string() const;

private:
    std::size_t dim_ = 0;
    std::vector<Leg> legs_;
};

/// Throws InvalidInput on an unbalanced type.
RecessionType recession_type(const CombinatorialType& type);

/// A type with edge lengths and vertex positions.
class TropicalMap {
public:
    TropicalMap() = default;
    /// Validates edge compatibility, balancing, and positions against cone labels.
    TropicalMap(CombinatorialType type, std::vector<Rational> lengths, std::vector<RatVec> positions);

    /// Propagates positions from one vertex along the graph; the cycle must close.
    static TropicalMap from_base(CombinatorialType type, std::vector<Rational> lengths, std::size_t base,
                                 RatVec point);

    const CombinatorialType& type() const { return type_; }
    const CurveGraph& graph() const { return type_.graph(); }
    std::size_t dim() const { return type_.dim(); }
    const std::vector<Rational>& lengths() const { return lengths_; }
    const std::vector<RatVec>& positions() const { return positions_; }
    const RatVec& position(std::size_t v) const { return positions_[v]; }
    TropicalCurve curve() const { return TropicalCurve(type_.graph(), lengths_); }

private:
    CombinatorialType type_;
    std::vector<Rational> lengths_;
    std::vector<RatVec> positions_;
};

/// Zero if the circuit is not contracted (by chi, or by the map itself without
/// chi); otherwise the least lambda over vertices of the contracted component of
/// the circuit that carry a non-contracted flag. nullopt when no such vertex
/// exists, i.e. the projection is constant.
std::optional<Rational> contraction_radius(const TropicalMap& map, const std::optional<RatVec>& chi = std::nullopt);

/// Applies a linear map to every direction and position (rows of `matrix` are
/// the images of coordinate functionals). Must be unimodular to keep directions
/// primitive; throws InvalidInput otherwise.
TropicalMap transform(const TropicalMap& map, const std::vector<RatVec>& matrix);

/// Multiplies every edge length (and displacement) by a positive scalar.
TropicalMap rescale(const TropicalMap& map, const Rational& factor);

}  // namespace trop1

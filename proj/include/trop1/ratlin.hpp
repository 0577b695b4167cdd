#pragma once

#include "trop1/rational.hpp"

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace trop1 {

/// A point of Q^r (or a linear form on Q^r; the library does not distinguish).
class RatVec {
public:
    RatVec() = default;
    explicit RatVec(std::size_t dim) : entries_(dim) {}
    explicit RatVec(std::vector<Rational> entries) : entries_(std::move(entries)) {}
    RatVec(std::initializer_list<Rational> entries) : entries_(entries) {}

    static RatVec from_ints(std::initializer_list<long> values);
    static RatVec unit(std::size_t dim, std::size_t index);

    std::size_t dim() const { return entries_.size(); }
    const Rational& operator[](std::size_t i) const { return entries_[i]; }
    Rational& operator[](std::size_t i) { return entries_[i]; }
    const std::vector<Rational>& entries() const { return entries_; }
    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    bool is_zero() const;
    bool is_integral() const;

    RatVec& operator+=(const RatVec& other);
    RatVec& operator-=(const RatVec& other);
    RatVec& operator*=(const Rational& scalar);

    friend RatVec operator+(RatVec a, const RatVec& b) { return a += b; }
    friend RatVec operator-(RatVec a, const RatVec& b) { return a -= b; }
    friend RatVec operator*(RatVec a, const Rational& s) { return a *= s; }
    friend RatVec operator*(const Rational& s, RatVec a) { return a *= s; }
    friend RatVec operator-(RatVec a) { return a *= Rational(-1); }

    friend bool operator==(const RatVec& a, const RatVec& b) { return a.entries_ == b.entries_; }
    friend std::strong_ordering operator<=>(const RatVec& a, const RatVec& b);

    std::string to_string() const;

private:
    std::vector<Rational> entries_;
};

Rational dot(const RatVec& a, const RatVec& b);

/// Throws InvalidInput unless every vector has dimension `dim`.
void require_dim(std::span<const RatVec> vectors, std::size_t dim, const char* what);

/// In-place reduced row echelon form; returns pivot columns. Zero rows are dropped.
std::vector<std::size_t> rref(std::vector<RatVec>& rows, std::size_t cols);

std::size_t rank_of(std::vector<RatVec> rows, std::size_t cols);

/// Basis of {x : row . x = 0 for every row}.
std::vector<RatVec> nullspace(std::vector<RatVec> rows, std::size_t cols);

/// Determinant of a square matrix given by rows.
Rational determinant(std::vector<RatVec> rows);

/// The matrix-vector product with `rows` as the matrix.
RatVec apply(const std::vector<RatVec>& rows, const RatVec& v);

/// A linear subspace of Q^r held in canonical form: the rows of its basis are in
/// reduced row echelon form with leading coefficient 1, so equal subspaces have
/// identical representations.
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(std::size_t ambient_dim) : ambient_dim_(ambient_dim) {}

    static Subspace full(std::size_t ambient_dim);

    std::size_t ambient_dim() const { return ambient_dim_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<RatVec>& basis() const { return basis_; }

    bool contains(const RatVec& v) const;
    bool contains(const Subspace& other) const;
    bool is_full() const { return dim() == ambient_dim_; }

    Subspace join(const Subspace& other) const;
    Subspace with(const RatVec& v) const;
    /// The annihilator {chi : chi . w = 0 for all w in this}.
    Subspace annihilator() const;

    friend bool operator==(const Subspace&, const Subspace&) = default;
    friend std::strong_ordering operator<=>(const Subspace& a, const Subspace& b);

    std::string to_string() const;

private:
    friend Subspace span(std::span<const RatVec> vectors, std::size_t ambient_dim);

    std::size_t ambient_dim_ = 0;
    std::vector<RatVec> basis_;
};

Subspace span(std::span<const RatVec> vectors, std::size_t ambient_dim);
inline Subspace span(const std::vector<RatVec>& vectors, std::size_t ambient_dim) {
    return span(std::span<const RatVec>(vectors), ambient_dim);
}

/// The subspace of characters vanishing on every given vector.
Subspace kernel_of_inclusion(std::span<const RatVec> vectors, std::size_t ambient_dim);
inline Subspace kernel_of_inclusion(const std::vector<RatVec>& vectors, std::size_t ambient_dim) {
    return kernel_of_inclusion(std::span<const RatVec>(vectors), ambient_dim);
}

struct PrimitiveVector {
    RatVec direction;  ///< integral with coprime entries
    Rational scalar;   ///< positive; scalar * direction recovers the input
};

/// The primitive integer vector on the ray through a nonzero rational vector.
PrimitiveVector primitive(const RatVec& v);

}  // namespace trop1

#include "trop1/ratlin.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace trop1 {

Rational parse_rational(std::string_view text) {
    auto digits = [](std::string_view s) {
        return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    };
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && body.front() == '-') {
        negative = true;
        body.remove_prefix(1);
    }
    const auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!digits(num) || !digits(den)) {
        throw InvalidInput("malformed rational '" + std::string(text) + "' (expected \"n\" or \"p/q\")");
    }
    Integer n{std::string(num)};
    Integer d{std::string(den)};
    if (d == 0) throw InvalidInput("zero denominator in rational '" + std::string(text) + "'");
    Rational value(n, d);
    return negative ? Rational(-value) : value;
}

std::string format_rational(const Rational& value) {
    if (is_integer(value)) return numerator_of(value).str();
    return numerator_of(value).str() + "/" + denominator_of(value).str();
}

RatVec RatVec::from_ints(std::initializer_list<long> values) {
    RatVec v;
    v.entries_.reserve(values.size());
    for (long x : values) v.entries_.emplace_back(x);
    return v;
}

RatVec RatVec::unit(std::size_t dim, std::size_t index) {
    RatVec v(dim);
    v[index] = 1;
    return v;
}

bool RatVec::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Rational& x) { return x == 0; });
}

bool RatVec::is_integral() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Rational& x) { return is_integer(x); });
}

RatVec& RatVec::operator+=(const RatVec& other) {
    if (other.dim() != dim()) throw InvalidInput("vector dimension mismatch");
    for (std::size_t i = 0; i < dim(); ++i) entries_[i] += other.entries_[i];
    return *this;
}

RatVec& RatVec::operator-=(const RatVec& other) {
    if (other.dim() != dim()) throw InvalidInput("vector dimension mismatch");
    for (std::size_t i = 0; i < dim(); ++i) entries_[i] -= other.entries_[i];
    return *this;
}

RatVec& RatVec::operator*=(const Rational& scalar) {
    for (auto& x : entries_) x *= scalar;
    return *this;
}

std::strong_ordering operator<=>(const RatVec& a, const RatVec& b) {
    if (a.dim() != b.dim()) return a.dim() <=> b.dim();
    for (std::size_t i = 0; i < a.dim(); ++i) {
        if (a[i] < b[i]) return std::strong_ordering::less;
        if (b[i] < a[i]) return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

std::string RatVec::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < dim(); ++i) {
        if (i) out += ",";
        out += format_rational(entries_[i]);
    }
    return out + ")";
}

Rational dot(const RatVec& a, const RatVec& b) {
    if (a.dim() != b.dim()) throw InvalidInput("dot product dimension mismatch");
    Rational sum = 0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        if (a[i] != 0 && b[i] != 0) sum += a[i] * b[i];
    }
    return sum;
}

void require_dim(std::span<const RatVec> vectors, std::size_t dim, const char* what) {
    for (const auto& v : vectors) {
        if (v.dim() != dim) {
            std::ostringstream msg;
            msg << what << ": expected dimension " << dim << ", got " << v.dim();
            throw InvalidInput(msg.str());
        }
    }
}

std::vector<std::size_t> rref(std::vector<RatVec>& rows, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t lead = 0;
    for (std::size_t col = 0; col < cols && lead < rows.size(); ++col) {
        std::size_t pick = lead;
        while (pick < rows.size() && rows[pick][col] == 0) ++pick;
        if (pick == rows.size()) continue;
        std::swap(rows[lead], rows[pick]);
        const Rational inv = 1 / rows[lead][col];
        rows[lead] *= inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == lead || rows[r][col] == 0) continue;
            const Rational factor = rows[r][col];
            for (std::size_t c = col; c < cols; ++c) {
                if (rows[lead][c] != 0) rows[r][c] -= factor * rows[lead][c];
            }
        }
        pivots.push_back(col);
        ++lead;
    }
    rows.resize(lead);
    return pivots;
}

std::size_t rank_of(std::vector<RatVec> rows, std::size_t cols) {
    return rref(rows, cols).size();
}

std::vector<RatVec> nullspace(std::vector<RatVec> rows, std::size_t cols) {
    const auto pivots = rref(rows, cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<RatVec> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        RatVec v(cols);
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rows[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

Rational determinant(std::vector<RatVec> rows) {
    const std::size_t n = rows.size();
    require_dim(rows, n, "determinant");
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pick = col;
        while (pick < n && rows[pick][col] == 0) ++pick;
        if (pick == n) return 0;
        if (pick != col) {
            std::swap(rows[pick], rows[col]);
            det = -det;
        }
        det *= rows[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (rows[r][col] == 0) continue;
            rows[r] -= rows[col] * (rows[r][col] / rows[col][col]);
        }
    }
    return det;
}

RatVec apply(const std::vector<RatVec>& rows, const RatVec& v) {
    RatVec out(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) out[i] = dot(rows[i], v);
    return out;
}

Subspace Subspace::full(std::size_t ambient_dim) {
    std::vector<RatVec> basis;
    for (std::size_t i = 0; i < ambient_dim; ++i) basis.push_back(RatVec::unit(ambient_dim, i));
    return span(basis, ambient_dim);
}

bool Subspace::contains(const RatVec& v) const {
    if (v.dim() != ambient_dim_) throw InvalidInput("subspace membership: dimension mismatch");
    // Reduce against the echelon basis; the residual vanishes iff v is in the span.
    RatVec residual = v;
    for (const auto& row : basis_) {
        std::size_t lead = 0;
        while (row[lead] == 0) ++lead;
        if (residual[lead] != 0) residual -= row * residual[lead];
    }
    return residual.is_zero();
}

bool Subspace::contains(const Subspace& other) const {
    return std::all_of(other.basis_.begin(), other.basis_.end(), [&](const RatVec& v) { return contains(v); });
}

Subspace Subspace::join(const Subspace& other) const {
    std::vector<RatVec> all = basis_;
    all.insert(all.end(), other.basis_.begin(), other.basis_.end());
    return span(all, ambient_dim_);
}

Subspace Subspace::with(const RatVec& v) const {
    std::vector<RatVec> all = basis_;
    all.push_back(v);
    return span(all, ambient_dim_);
}

Subspace Subspace::annihilator() const {
    return kernel_of_inclusion(basis_, ambient_dim_);
}

std::strong_ordering operator<=>(const Subspace& a, const Subspace& b) {
    if (auto c = a.ambient_dim_ <=> b.ambient_dim_; c != 0) return c;
    if (auto c = a.basis_.size() <=> b.basis_.size(); c != 0) return c;
    for (std::size_t i = 0; i < a.basis_.size(); ++i) {
        if (auto c = a.basis_[i] <=> b.basis_[i]; c != 0) return c;
    }
    return std::strong_ordering::equal;
}

std::string Subspace::to_string() const {
    std::string out = "<";
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (i) out += ", ";
        out += basis_[i].to_string();
    }
    return out + ">";
}

Subspace span(std::span<const RatVec> vectors, std::size_t ambient_dim) {
    require_dim(vectors, ambient_dim, "span");
    Subspace s(ambient_dim);
    s.basis_.assign(vectors.begin(), vectors.end());
    rref(s.basis_, ambient_dim);
    return s;
}

Subspace kernel_of_inclusion(std::span<const RatVec> vectors, std::size_t ambient_dim) {
    require_dim(vectors, ambient_dim, "kernel_of_inclusion");
    std::vector<RatVec> rows(vectors.begin(), vectors.end());
    return span(nullspace(std::move(rows), ambient_dim), ambient_dim);
}

PrimitiveVector primitive(const RatVec& v) {
    if (v.is_zero()) throw InvalidInput("primitive vector of the zero vector is undefined");
    Integer den_lcm = 1;
    for (const auto& x : v) den_lcm = boost::multiprecision::lcm(den_lcm, denominator_of(x));
    Integer num_gcd = 0;
    std::vector<Integer> scaled;
    scaled.reserve(v.dim());
    for (const auto& x : v) {
        Integer n = numerator_of(x) * (den_lcm / denominator_of(x));
        num_gcd = boost::multiprecision::gcd(num_gcd, n);
        scaled.push_back(std::move(n));
    }
    num_gcd = abs(num_gcd);
    RatVec direction(v.dim());
    for (std::size_t i = 0; i < v.dim(); ++i) direction[i] = Rational(scaled[i] / num_gcd);
    return {std::move(direction), Rational(num_gcd, den_lcm)};
}

}  // namespace trop1

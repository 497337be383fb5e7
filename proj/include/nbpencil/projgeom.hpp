#pragma once

// Canonical points and lines of P^n(F_q): normalization, exhaustive
// enumeration, and point-on-line parametrization.

#include <array>
#include <stdexcept>
#include <vector>

#include "nbpencil/gf.hpp"

namespace nbp {

/// Point of P^n(F_q), scaled so the leftmost nonzero coordinate is 1.
class ProjPoint {
public:
    explicit ProjPoint(std::vector<FieldElement> coords) : coords_(std::move(coords)) {
        if (coords_.size() < 2) throw std::invalid_argument("point needs at least 2 coordinates");
        std::size_t lead = coords_.size();
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            if (!coords_[i].is_zero()) {
                lead = i;
                break;
            }
        }
        if (lead == coords_.size()) throw std::invalid_argument("all-zero projective point");
        FieldElement scale = coords_[lead].inv();
        for (auto& c : coords_) c = c * scale;
    }

    const std::vector<FieldElement>& coords() const { return coords_; }
    const FieldElement& operator[](std::size_t i) const { return coords_[i]; }
    int dim() const { return static_cast<int>(coords_.size()) - 1; }
    const FiniteField& field() const { return coords_[0].field(); }

    bool operator==(const ProjPoint& o) const { return coords_ == o.coords_; }
    bool operator!=(const ProjPoint& o) const { return !(*this == o); }
    bool operator<(const ProjPoint& o) const {
        for (std::size_t i = 0; i < coords_.size() && i < o.coords_.size(); ++i) {
            long a = coords_[i].index(), b = o.coords_[i].index();
            if (a != b) return a < b;
        }
        return coords_.size() < o.coords_.size();
    }

    std::string str() const {
        std::string s = "[";
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            if (i) s += ":";
            s += coords_[i].str();
        }
        return s + "]";
    }

private:
    std::vector<FieldElement> coords_;
};

inline ProjPoint canonical_point(std::vector<FieldElement> coords) { return ProjPoint(std::move(coords)); }

namespace detail {

// In-place reduced row echelon form; returns rank.
inline int rref(std::vector<std::vector<FieldElement>>& m) {
    if (m.empty()) return 0;
    const std::size_t cols = m[0].size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t pivot = m.size();
        for (std::size_t r = row; r < m.size(); ++r) {
            if (!m[r][col].is_zero()) {
                pivot = r;
                break;
            }
        }
        if (pivot == m.size()) continue;
        std::swap(m[row], m[pivot]);
        FieldElement s = m[row][col].inv();
        for (auto& e : m[row]) e = e * s;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col].is_zero()) continue;
            FieldElement f = m[r][col];
            for (std::size_t c = 0; c < cols; ++c) m[r][c] = m[r][c] - f * m[row][c];
        }
        ++row;
    }
    return static_cast<int>(row);
}

}  // namespace detail

/// F_q-line in P^n, held as the unique 2-row reduced-echelon spanning matrix.
class ProjLine {
public:
    ProjLine(std::vector<FieldElement> r1, std::vector<FieldElement> r2) {
        if (r1.size() != r2.size() || r1.size() < 3)
            throw std::invalid_argument("line rows must match and have >= 3 entries");
        std::vector<std::vector<FieldElement>> m{std::move(r1), std::move(r2)};
        if (detail::rref(m) != 2) throw std::invalid_argument("spanning rows are dependent");
        span_ = std::move(m);
    }

    const std::vector<FieldElement>& row(int i) const { return span_[i]; }
    int n() const { return static_cast<int>(span_[0].size()) - 1; }
    const FiniteField& field() const { return span_[0][0].field(); }

    bool operator==(const ProjLine& o) const { return span_ == o.span_; }
    bool operator!=(const ProjLine& o) const { return !(*this == o); }
    bool operator<(const ProjLine& o) const {
        for (int r = 0; r < 2; ++r)
            for (std::size_t c = 0; c < span_[r].size(); ++c) {
                long a = span_[r][c].index(), b = o.span_[r][c].index();
                if (a != b) return a < b;
            }
        return false;
    }

    /// Dual triple [a:b:c] with line = {ax+by+cz = 0}; plane lines only.
    std::vector<FieldElement> dual() const {
        if (n() != 2) throw std::logic_error("dual coordinates only defined in P^2");
        const auto& u = span_[0];
        const auto& v = span_[1];
        std::vector<FieldElement> d{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
                                    u[0] * v[1] - u[1] * v[0]};
        return ProjPoint(std::move(d)).coords();
    }

    bool contains(const ProjPoint& P) const {
        if (n() == 2) {
            auto d = dual();
            FieldElement s = d[0] * P[0] + d[1] * P[1] + d[2] * P[2];
            return s.is_zero();
        }
        std::vector<std::vector<FieldElement>> m{span_[0], span_[1], P.coords()};
        return detail::rref(m) == 2;
    }

    std::string str() const {
        std::string s = "{";
        for (int r = 0; r < 2; ++r) {
            if (r) s += "; ";
            for (std::size_t c = 0; c < span_[r].size(); ++c) {
                if (c) s += " ";
                s += span_[r][c].str();
            }
        }
        return s + "}";
    }

private:
    std::vector<std::vector<FieldElement>> span_;
};

/// Canonical points of P^n(F_q), (q^(n+1)-1)/(q-1) of them, in a fixed order:
/// position of the leading 1 ascending, trailing free coordinates counting in
/// element order with the last coordinate varying fastest.
inline std::vector<ProjPoint> enumerate_points(int n, const FiniteField& F) {
    if (n < 1) throw std::invalid_argument("dimension must be >= 1");
    std::vector<ProjPoint> out;
    const long q = F.q();
    for (int lead = 0; lead <= n; ++lead) {
        const int free = n - lead;
        long total = 1;
        for (int i = 0; i < free; ++i) total *= q;
        for (long idx = 0; idx < total; ++idx) {
            std::vector<FieldElement> coords;
            coords.reserve(n + 1);
            for (int i = 0; i < lead; ++i) coords.push_back(F.zero());
            coords.push_back(F.one());
            long rem = idx;
            std::vector<FieldElement> tail;
            for (int i = 0; i < free; ++i) {
                tail.push_back(F.from_index(rem % q));
                rem /= q;
            }
            for (int i = free - 1; i >= 0; --i) coords.push_back(tail[i]);
            out.push_back(ProjPoint(std::move(coords)));
        }
    }
    return out;
}

/// All F_q-lines of P^n as canonical echelon matrices; no duplicates by
/// construction. Order: pivot pair (j1, j2) ascending, then free entries
/// counting with the last slot varying fastest.
inline std::vector<ProjLine> enumerate_lines(int n, const FiniteField& F) {
    if (n < 2) throw std::invalid_argument("lines need ambient dimension >= 2");
    std::vector<ProjLine> out;
    const long q = F.q();
    for (int j1 = 0; j1 < n; ++j1) {
        for (int j2 = j1 + 1; j2 <= n; ++j2) {
            // Free slots: row 1 at columns c in (j1, n], c != j2; row 2 at columns c > j2.
            std::vector<std::pair<int, int>> slots;  // (row, col)
            for (int c = j1 + 1; c <= n; ++c)
                if (c != j2) slots.emplace_back(0, c);
            for (int c = j2 + 1; c <= n; ++c) slots.emplace_back(1, c);
            long total = 1;
            for (std::size_t i = 0; i < slots.size(); ++i) total *= q;
            for (long idx = 0; idx < total; ++idx) {
                std::vector<FieldElement> r1(n + 1, F.zero()), r2(n + 1, F.zero());
                r1[j1] = F.one();
                r2[j2] = F.one();
                long rem = idx;
                for (int i = static_cast<int>(slots.size()) - 1; i >= 0; --i) {
                    auto [row, col] = slots[i];
                    FieldElement v = F.from_index(rem % q);
                    rem /= q;
                    (row == 0 ? r1 : r2)[col] = v;
                }
                out.push_back(ProjLine(std::move(r1), std::move(r2)));
            }
        }
    }
    return out;
}

/// The q+1 points [u*row1 + v*row2], [u:v] running over P^1(F_q).
inline std::vector<ProjPoint> points_on_line(const ProjLine& L) {
    const FiniteField& F = L.field();
    std::vector<ProjPoint> out;
    out.reserve(F.q() + 1);
    for (const FieldElement& t : F.elements()) {
        std::vector<FieldElement> coords;
        coords.reserve(L.n() + 1);
        for (int c = 0; c <= L.n(); ++c) coords.push_back(L.row(0)[c] + t * L.row(1)[c]);
        out.push_back(ProjPoint(std::move(coords)));
    }
    out.push_back(ProjPoint(L.row(1)));
    return out;
}

inline ProjLine line_through(const ProjPoint& P, const ProjPoint& Q) {
    if (P == Q) throw std::invalid_argument("line_through needs distinct points");
    return ProjLine(P.coords(), Q.coords());
}

/// The fixed coordinate line L = {x_0 = ... = x_{n-2} = 0}.
inline ProjLine coordinate_line(int n, const FiniteField& F) {
    std::vector<FieldElement> r1(n + 1, F.zero()), r2(n + 1, F.zero());
    r1[n - 1] = F.one();
    r2[n] = F.one();
    return ProjLine(std::move(r1), std::move(r2));
}

/// Gaussian binomial [m choose 2]_q; counts the lines of P^{m-1}.
inline long line_count(int n, long q) {
    long a = 1, b = 1;
    for (int i = 0; i < n + 1; ++i) a *= q;
    for (int i = 0; i < n; ++i) b *= q;
    return (a - 1) * (b - 1) / ((q * q - 1) * (q - 1));
}

inline long point_count(int n, long q) {
    long a = 1;
    for (int i = 0; i < n + 1; ++i) a *= q;
    return (a - 1) / (q - 1);
}

}  // namespace nbp

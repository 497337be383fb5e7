#pragma once

// Rational-point extraction, blocking-set decision with skew-line witnesses,
// and trivial/nontrivial classification.

#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "nbpencil/forms.hpp"
#include "nbpencil/projgeom.hpp"

namespace nbp {

struct PointSet {
    FiniteField field;
    int n;
    std::set<ProjPoint> members;

    bool contains(const ProjPoint& P) const { return members.count(P) != 0; }
    std::size_t size() const { return members.size(); }
};

/// All F_q-points of {f = 0}, by exhaustive scan of P^n(F_q).
inline PointSet rational_points(const HomogeneousForm& f) {
    if (f.is_zero()) throw std::invalid_argument("rational points of the zero form");
    const int n = f.nvars() - 1;
    PointSet S{f.field(), n, {}};
    for (const ProjPoint& P : enumerate_points(n, f.field()))
        if (f.evaluate(P).is_zero()) S.members.insert(P);
    return S;
}

struct BlockingScan {
    bool blocking;
    std::optional<ProjLine> skew_witness;  // first skew line in enumeration order
};

/// True iff every F_q-line meets S; otherwise reports the first skew line.
inline BlockingScan is_blocking(const PointSet& S) {
    for (const ProjLine& L : enumerate_lines(S.n, S.field)) {
        bool met = false;
        for (const ProjPoint& P : points_on_line(L)) {
            if (S.contains(P)) {
                met = true;
                break;
            }
        }
        if (!met) return {false, L};
    }
    return {true, std::nullopt};
}

enum class BlockingStatus { nonblocking, trivial_blocking, nontrivial_blocking };

inline const char* to_string(BlockingStatus s) {
    switch (s) {
        case BlockingStatus::nonblocking: return "nonblocking";
        case BlockingStatus::trivial_blocking: return "trivial_blocking";
        case BlockingStatus::nontrivial_blocking: return "nontrivial_blocking";
    }
    return "?";
}

struct BlockingVerdict {
    BlockingStatus status;
    // Skew line (nonblocking) or fully contained line (trivial blocking).
    std::optional<ProjLine> witness;
};

/// Nonblocking / trivial / nontrivial classification. A nontrivial blocking
/// set must have at least q + sqrt(q) + 1 points; a smaller one is an
/// internal inconsistency and raises.
inline BlockingVerdict classify(const PointSet& S) {
    BlockingScan scan = is_blocking(S);
    if (!scan.blocking) return {BlockingStatus::nonblocking, scan.skew_witness};
    for (const ProjLine& L : enumerate_lines(S.n, S.field)) {
        bool contained = true;
        for (const ProjPoint& P : points_on_line(L)) {
            if (!S.contains(P)) {
                contained = false;
                break;
            }
        }
        if (contained) return {BlockingStatus::trivial_blocking, L};
    }
    const double q = static_cast<double>(S.field.q());
    if (static_cast<double>(S.size()) + 1e-9 < q + std::sqrt(q) + 1)
        throw std::logic_error("nontrivial blocking set below the q+sqrt(q)+1 bound");
    return {BlockingStatus::nontrivial_blocking, std::nullopt};
}

/// All lines meeting {f = 0} in no F_q-points. A line on which f restricts to
/// the zero form lies inside the hypersurface and is never skew.
inline std::vector<ProjLine> skew_lines(const HomogeneousForm& f) {
    if (f.is_zero()) throw std::invalid_argument("skew lines of the zero form");
    std::vector<ProjLine> out;
    for (const ProjLine& L : enumerate_lines(f.nvars() - 1, f.field())) {
        BinaryForm r = restrict_to_line(f, L);
        if (r.is_zero()) continue;
        if (binary_rational_roots(r).empty()) out.push_back(L);
    }
    return out;
}

}  // namespace nbp

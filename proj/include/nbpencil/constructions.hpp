#pragma once

// Builders for the explicit pencils: the high-dimensional pencil through a
// nonblocking hypersurface containing a line, the plane pencil driven by the
// image gap of x^{2d-1}-x^{d-1}, the Fermat pencil witnessed by the three
// coordinate lines, and the near-miss pencil with a single blocking member.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nbpencil/blocking.hpp"
#include "nbpencil/forms.hpp"
#include "nbpencil/gf.hpp"
#include "nbpencil/projgeom.hpp"

namespace nbp {

/// A construction's stated hypotheses do not hold for the given parameters.
class hypothesis_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ExpectedProfile { all_nonblocking, one_trivial_blocking };

struct ConstructionOutput {
    Pencil pencil;
    /// Member representatives [1:t] for t in element order, then [0:1].
    std::vector<std::pair<FieldElement, FieldElement>> members;
    /// Proof-designated skew line per member index, when the construction has one.
    std::map<std::size_t, ProjLine> designated_witnesses;
    ExpectedProfile expected = ExpectedProfile::all_nonblocking;
    std::optional<std::size_t> expected_blocking_member;
    std::map<std::string, std::string> metadata;
};

namespace detail {

inline std::vector<std::pair<FieldElement, FieldElement>> member_representatives(const FiniteField& F) {
    std::vector<std::pair<FieldElement, FieldElement>> out;
    for (const FieldElement& t : F.elements()) out.emplace_back(F.one(), t);
    out.emplace_back(F.zero(), F.one());
    return out;
}

inline ProjLine plane_coordinate_line(int var, const FiniteField& F) {
    // Line {x_var = 0} in P^2.
    std::vector<int> others;
    for (int i = 0; i < 3; ++i)
        if (i != var) others.push_back(i);
    std::vector<FieldElement> r1(3, F.zero()), r2(3, F.zero());
    r1[others[0]] = F.one();
    r2[others[1]] = F.one();
    return ProjLine(std::move(r1), std::move(r2));
}

}  // namespace detail

/// Degree-d hypersurface x_0^d + x_1 h(x_2, x_n) containing the coordinate
/// line L = {x_0 = ... = x_{n-2} = 0} and skew to the line
/// L_1 = {x_2 = ... = x_{n-1} = x_0, x_n = x_1}, where h regroups the first
/// irreducible binary form of degree d.
inline HomogeneousForm lemma_hypersurface(int n, int d, const FiniteField& F) {
    if (n < 3) throw std::invalid_argument("construction needs ambient dimension >= 3");
    if (d < 2) throw std::invalid_argument("degree must be >= 2");
    detail::UniPoly p = detail::first_monic_irreducible(d, F);
    // Monic form x_0^d + a_1 x_0^{d-1} x_1 + ... + a_d x_1^d has a_i = p[d-i];
    // h(x_2, x_n) = a_1 x_2^{d-1} + a_2 x_2^{d-2} x_n + ... + a_d x_n^{d-1}.
    HomogeneousForm f(F, n + 1, d);
    std::vector<int> exps(n + 1, 0);
    exps[0] = d;
    f.add_term(exps, F.one());
    for (int i = 1; i <= d; ++i) {
        std::vector<int> e(n + 1, 0);
        e[1] = 1;
        e[2] += d - i;
        e[n] += i - 1;
        f.add_term(e, p[d - i]);
    }
    return f;
}

/// The line {x_2 = ... = x_{n-1} = x_0, x_n = x_1}, the designated skew line
/// of the hypersurface above.
inline ProjLine lemma_witness_line(int n, const FiniteField& F) {
    std::vector<FieldElement> r1(n + 1, F.zero()), r2(n + 1, F.zero());
    r1[0] = F.one();
    for (int c = 2; c <= n - 1; ++c) r1[c] = F.one();
    r2[1] = F.one();
    r2[n] = F.one();
    return ProjLine(std::move(r1), std::move(r2));
}

/// Pencil <X, Y> with X the hypersurface above and Y the irreducible binary
/// form placed on (x_{n-1}, x_n). Member [1:0] contains L and is witnessed by
/// L_1; every other member restricts on L to a rootless multiple of Y.
inline ConstructionOutput highdim_pencil(int n, int d, const FiniteField& F) {
    HomogeneousForm X = lemma_hypersurface(n, d, F);
    BinaryForm b = find_irreducible_binary(d, F);
    HomogeneousForm Y(F, n + 1, d);
    for (int i = 0; i <= d; ++i) {
        std::vector<int> e(n + 1, 0);
        e[n - 1] = d - i;
        e[n] = i;
        Y.add_term(e, b.coeff(i));
    }
    ConstructionOutput out{Pencil(std::move(X), std::move(Y), "highdim"),
                           detail::member_representatives(F),
                           {},
                           ExpectedProfile::all_nonblocking,
                           std::nullopt,
                           {}};
    const ProjLine L = coordinate_line(n, F);
    const ProjLine L1 = lemma_witness_line(n, F);
    for (std::size_t i = 0; i < out.members.size(); ++i)
        out.designated_witnesses.emplace(i, i == 0 ? L1 : L);
    out.metadata["irreducible_binary"] = b.str();
    return out;
}

/// Plane pencil <F_d, G_d> with F_d = y^d - z^d + z^{d-1} x and
/// G_d = z^d + g y^{d-1} x, where 1/g is the first element missing from the
/// image of x^{2d-1} - x^{d-1}.
inline ConstructionOutput plane_pencil(int d, const FiniteField& F) {
    if (d < 2) throw std::invalid_argument("degree must be >= 2");
    ImageGap ig = fd_image_and_beta(d, F);
    HomogeneousForm Fd(F, 3, d), Gd(F, 3, d);
    Fd.add_term({0, d, 0}, F.one());
    Fd.add_term({0, 0, d}, -F.one());
    Fd.add_term({1, 0, d - 1}, F.one());
    Gd.add_term({0, 0, d}, F.one());
    Gd.add_term({1, d - 1, 0}, ig.g);
    ConstructionOutput out{Pencil(std::move(Fd), std::move(Gd), "plane"),
                           detail::member_representatives(F),
                           {},
                           ExpectedProfile::all_nonblocking,
                           std::nullopt,
                           {}};
    out.metadata["beta"] = ig.beta.str();
    out.metadata["g"] = ig.g.str();
    const long q = F.q();
    const int d_eff = d > q ? static_cast<int>((d - 1) % (q - 1)) + 1 : d;
    out.metadata["effective_degree"] = std::to_string(d_eff);
    return out;
}

namespace detail {

// Residue tests of the Fermat skew-line criterion: for ax^d+by^d+cz^d with
// a,b,c nonzero, x=0 is skew unless -b/c is a d'-th power, and so on.
inline ProjLine fermat_coordinate_witness(const FieldElement& a, const FieldElement& b, const FieldElement& c,
                                          long dprime, const FiniteField& F) {
    if (!is_power_residue(-(b / c), dprime)) return plane_coordinate_line(0, F);
    if (!is_power_residue(-(c / a), dprime)) return plane_coordinate_line(1, F);
    if (!is_power_residue(-(a / b), dprime)) return plane_coordinate_line(2, F);
    // The product of the three tested elements is -1, a non-residue here.
    throw std::logic_error("all three coordinate-line residue tests passed");
}

}  // namespace detail

/// Pencil <x^d + y^d, y^d + r z^d> with r chosen so that r and -r are both
/// non-d'-th powers; every member is witnessed by a coordinate line.
inline ConstructionOutput fermat_pencil(int d, const FiniteField& F) {
    const long q = F.q();
    if (F.p() == 2) throw hypothesis_error("char(F_q) != 2 violated");
    const long dprime = std::gcd(q - 1, static_cast<long>(d));
    if (dprime < 3) throw hypothesis_error("gcd(q-1,d) >= 3 violated");
    if ((q - 1) / dprime % 2 == 0) throw hypothesis_error("(q-1)/gcd(q-1,d) odd violated");
    std::optional<FieldElement> r;
    for (const FieldElement& x : F.elements()) {
        if (x.is_zero()) continue;
        if (!is_power_residue(x, dprime) && !is_power_residue(-x, dprime)) {
            r = x;
            break;
        }
    }
    if (!r) throw std::logic_error("no admissible r exists");  // excluded by the hypotheses
    HomogeneousForm Ff(F, 3, d), Gf(F, 3, d);
    Ff.add_term({d, 0, 0}, F.one());
    Ff.add_term({0, d, 0}, F.one());
    Gf.add_term({0, d, 0}, F.one());
    Gf.add_term({0, 0, d}, *r);
    ConstructionOutput out{Pencil(std::move(Ff), std::move(Gf), "fermat"),
                           detail::member_representatives(F),
                           {},
                           ExpectedProfile::all_nonblocking,
                           std::nullopt,
                           {}};
    for (std::size_t i = 0; i < out.members.size(); ++i) {
        const auto& [s, t] = out.members[i];
        // Member sF - tG = s x^d + (s-t) y^d - t r z^d.
        FieldElement a = s, b = s - t, c = -(t * *r);
        if (t.is_zero()) {
            out.designated_witnesses.emplace(i, detail::plane_coordinate_line(2, F));  // z=0 skew to F
        } else if (s.is_zero()) {
            out.designated_witnesses.emplace(i, detail::plane_coordinate_line(0, F));  // x=0 skew to G
        } else if (b.is_zero()) {
            out.designated_witnesses.emplace(i, detail::plane_coordinate_line(1, F));  // y=0 skew to x^d - r z^d
        } else {
            out.designated_witnesses.emplace(i, detail::fermat_coordinate_witness(a, b, c, dprime, F));
        }
    }
    out.metadata["r"] = r->str();
    out.metadata["dprime"] = std::to_string(dprime);
    return out;
}

/// Pencil <x^d, z^d h(y/z)> with h the first monic irreducible of degree d:
/// the member x^d = 0 is trivially blocking, every other member is skew to
/// the line x = 0.
inline ConstructionOutput near_miss_pencil(int d, const FiniteField& F) {
    if (d < 2) throw std::invalid_argument("degree must be >= 2");
    detail::UniPoly h = detail::first_monic_irreducible(d, F);
    HomogeneousForm Fn(F, 3, d), Gn(F, 3, d);
    Fn.add_term({d, 0, 0}, F.one());
    for (int i = 0; i <= d; ++i) Gn.add_term({0, i, d - i}, h[i]);
    ConstructionOutput out{Pencil(std::move(Fn), std::move(Gn), "nearmiss"),
                           detail::member_representatives(F),
                           {},
                           ExpectedProfile::one_trivial_blocking,
                           std::size_t{0},
                           {}};
    for (std::size_t i = 1; i < out.members.size(); ++i)
        out.designated_witnesses.emplace(i, detail::plane_coordinate_line(0, F));
    return out;
}

/// Skew coordinate line to ax^d + by^d + cz^d = 0, by the residue tests.
inline ProjLine fermat_curve_check(const FieldElement& a, const FieldElement& b, const FieldElement& c, int d,
                                   const FiniteField& F) {
    if (F.p() == 2) throw hypothesis_error("char(F_q) != 2 violated");
    if (a.is_zero() || b.is_zero() || c.is_zero()) throw hypothesis_error("coefficients must be nonzero");
    const long q = F.q();
    const long dprime = std::gcd(q - 1, static_cast<long>(d));
    if ((q - 1) / dprime % 2 == 0) throw hypothesis_error("(q-1)/gcd(q-1,d) odd violated");
    return detail::fermat_coordinate_witness(a, b, c, dprime, F);
}

}  // namespace nbp

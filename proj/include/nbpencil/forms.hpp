#pragma once

// Homogeneous multivariate forms over GF(q): evaluation, restriction to lines,
// pencil members, binary-form root/gcd/irreducibility utilities, the
// image-gap search behind the plane pencil, degree reduction, and
// interpolation-codimension rank checks.

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "nbpencil/gf.hpp"
#include "nbpencil/projgeom.hpp"

namespace nbp {

/// Degree-d form in nvars variables, sparse exponent-vector -> coefficient map.
/// Zero coefficients are never stored; the zero form is an empty map with a
/// degree tag. degree_reduce() may produce terms of smaller degree (the result
/// is only used for point-set comparison); is_homogeneous() reports that.
class HomogeneousForm {
public:
    HomogeneousForm(FiniteField field, int nvars, int degree)
        : field_(std::move(field)), nvars_(nvars), degree_(degree) {
        if (nvars < 2 || degree < 0) throw std::invalid_argument("bad form shape");
    }

    static HomogeneousForm monomial(const FiniteField& F, std::vector<int> exps, const FieldElement& c) {
        int d = 0;
        for (int e : exps) d += e;
        HomogeneousForm f(F, static_cast<int>(exps.size()), d);
        f.add_term(exps, c);
        return f;
    }

    void add_term(const std::vector<int>& exps, const FieldElement& c) {
        if (static_cast<int>(exps.size()) != nvars_) throw std::invalid_argument("exponent vector length mismatch");
        int sum = 0;
        for (int e : exps) {
            if (e < 0) throw std::invalid_argument("negative exponent");
            sum += e;
        }
        if (sum != degree_) throw std::invalid_argument("term degree mismatch");
        accumulate(exps, c);
    }

    const FiniteField& field() const { return field_; }
    int nvars() const { return nvars_; }
    int degree() const { return degree_; }
    const std::map<std::vector<int>, FieldElement>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_homogeneous() const {
        for (const auto& [e, c] : terms_) {
            int sum = 0;
            for (int x : e) sum += x;
            if (sum != degree_) return false;
        }
        return true;
    }

    FieldElement evaluate(const std::vector<FieldElement>& coords) const {
        if (static_cast<int>(coords.size()) != nvars_) throw std::invalid_argument("evaluation arity mismatch");
        FieldElement acc = field_.zero();
        for (const auto& [exps, c] : terms_) {
            FieldElement t = c;
            for (int i = 0; i < nvars_; ++i)
                if (exps[i] > 0) t = t * coords[i].pow(exps[i]);
            acc = acc + t;
        }
        return acc;
    }
    /// Evaluated at the canonical representative; the zero/nonzero verdict is
    /// representative-independent for homogeneous forms.
    FieldElement evaluate(const ProjPoint& P) const { return evaluate(P.coords()); }

    HomogeneousForm operator+(const HomogeneousForm& o) const {
        check_compatible(o);
        HomogeneousForm r = *this;
        for (const auto& [e, c] : o.terms_) r.accumulate(e, c);
        return r;
    }
    HomogeneousForm operator-(const HomogeneousForm& o) const {
        check_compatible(o);
        HomogeneousForm r = *this;
        for (const auto& [e, c] : o.terms_) r.accumulate(e, -c);
        return r;
    }
    HomogeneousForm scaled(const FieldElement& s) const {
        HomogeneousForm r(field_, nvars_, degree_);
        if (s.is_zero()) return r;
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, s * c);
        return r;
    }

    bool proportional_to(const HomogeneousForm& o) const {
        if (is_zero() || o.is_zero()) return is_zero() && o.is_zero();
        if (terms_.size() != o.terms_.size()) return false;
        auto it = terms_.begin();
        auto jt = o.terms_.find(it->first);
        if (jt == o.terms_.end()) return false;
        FieldElement ratio = jt->second / it->second;
        for (const auto& [e, c] : terms_) {
            auto ot = o.terms_.find(e);
            if (ot == o.terms_.end() || ot->second != ratio * c) return false;
        }
        return true;
    }

    bool operator==(const HomogeneousForm& o) const {
        return nvars_ == o.nvars_ && degree_ == o.degree_ && terms_ == o.terms_ && field_ == o.field_;
    }
    bool operator!=(const HomogeneousForm& o) const { return !(*this == o); }

    std::string str(const std::vector<std::string>& names = {}) const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [e, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += "(" + c.str() + ")";
            for (int i = 0; i < nvars_; ++i) {
                if (e[i] == 0) continue;
                std::string v = i < static_cast<int>(names.size()) ? names[i] : "x" + std::to_string(i);
                s += "*" + v;
                if (e[i] > 1) s += "^" + std::to_string(e[i]);
            }
        }
        return s;
    }

    /// Bypasses the per-term degree check; used by degree_reduce.
    static HomogeneousForm unchecked(FiniteField field, int nvars, int degree,
                                     std::map<std::vector<int>, FieldElement> terms) {
        HomogeneousForm f(std::move(field), nvars, degree);
        f.terms_ = std::move(terms);
        return f;
    }

private:
    void accumulate(const std::vector<int>& exps, const FieldElement& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(exps);
        if (it == terms_.end()) {
            terms_.emplace(exps, c);
        } else {
            FieldElement s = it->second + c;
            if (s.is_zero())
                terms_.erase(it);
            else
                it->second = s;
        }
    }
    void check_compatible(const HomogeneousForm& o) const {
        if (field_ != o.field_ || nvars_ != o.nvars_ || degree_ != o.degree_)
            throw std::invalid_argument("incompatible forms");
    }

    FiniteField field_;
    int nvars_;
    int degree_;
    std::map<std::vector<int>, FieldElement> terms_;
};

/// Binary form of degree d in (u, v), dense: coeff(i) multiplies u^{d-i} v^i.
class BinaryForm {
public:
    BinaryForm(FiniteField field, std::vector<FieldElement> coeffs)
        : field_(std::move(field)), coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) throw std::invalid_argument("binary form needs degree >= 0");
    }
    static BinaryForm zero(const FiniteField& F, int degree) {
        return BinaryForm(F, std::vector<FieldElement>(degree + 1, F.zero()));
    }

    const FiniteField& field() const { return field_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const FieldElement& coeff(int i) const { return coeffs_[i]; }
    const std::vector<FieldElement>& coeffs() const { return coeffs_; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (!c.is_zero()) return false;
        return true;
    }

    FieldElement evaluate(const FieldElement& u, const FieldElement& v) const {
        const int d = degree();
        FieldElement acc = field_.zero();
        for (int i = 0; i <= d; ++i) {
            if (coeffs_[i].is_zero()) continue;
            acc = acc + coeffs_[i] * u.pow(d - i) * v.pow(i);
        }
        return acc;
    }

    HomogeneousForm to_form() const {
        HomogeneousForm f(field_, 2, degree());
        const int d = degree();
        for (int i = 0; i <= d; ++i) f.add_term({d - i, i}, coeffs_[i]);
        return f;
    }

    bool operator==(const BinaryForm& o) const { return coeffs_ == o.coeffs_ && field_ == o.field_; }
    bool operator!=(const BinaryForm& o) const { return !(*this == o); }

    std::string str() const {
        std::string s;
        const int d = degree();
        for (int i = 0; i <= d; ++i) {
            if (coeffs_[i].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += "(" + coeffs_[i].str() + ")";
            if (d - i > 0) s += "*u" + (d - i > 1 ? "^" + std::to_string(d - i) : std::string());
            if (i > 0) s += "*v" + (i > 1 ? "^" + std::to_string(i) : std::string());
        }
        return s.empty() ? "0" : s;
    }

private:
    FiniteField field_;
    std::vector<FieldElement> coeffs_;
};

/// Ordered pair of equal-degree, non-proportional forms; members are sF - tG
/// for [s:t] in P^1(F_q).
struct Pencil {
    HomogeneousForm F;
    HomogeneousForm G;
    std::string label;

    Pencil(HomogeneousForm f, HomogeneousForm g, std::string lbl)
        : F(std::move(f)), G(std::move(g)), label(std::move(lbl)) {
        if (F.field() != G.field() || F.nvars() != G.nvars() || F.degree() != G.degree())
            throw std::invalid_argument("pencil spanning forms are incompatible");
        if (F.proportional_to(G)) throw std::invalid_argument("pencil spanning forms are proportional");
    }
};

inline HomogeneousForm pencil_member(const Pencil& L, const FieldElement& s, const FieldElement& t) {
    if (s.is_zero() && t.is_zero()) throw std::invalid_argument("pencil member needs (s,t) != (0,0)");
    return L.F.scaled(s) - L.G.scaled(t);
}

/// Substitutes u*row1 + v*row2 into f. A zero result means L is contained in
/// the hypersurface f = 0.
inline BinaryForm restrict_to_line(const HomogeneousForm& f, const ProjLine& L) {
    if (f.nvars() != L.n() + 1 || f.field() != L.field())
        throw std::invalid_argument("form/line dimension or field mismatch");
    const FiniteField& F = f.field();
    const int d = f.degree();
    std::vector<FieldElement> out(d + 1, F.zero());
    for (const auto& [exps, c] : f.terms()) {
        // Product over variables of (a_i u + b_i v)^{e_i}, dense in u-descending order.
        std::vector<FieldElement> prod{c};
        for (int i = 0; i < f.nvars(); ++i) {
            const FieldElement& a = L.row(0)[i];
            const FieldElement& b = L.row(1)[i];
            for (int rep = 0; rep < exps[i]; ++rep) {
                std::vector<FieldElement> next(prod.size() + 1, F.zero());
                for (std::size_t j = 0; j < prod.size(); ++j) {
                    next[j] = next[j] + prod[j] * a;
                    next[j + 1] = next[j + 1] + prod[j] * b;
                }
                prod = std::move(next);
            }
        }
        for (std::size_t j = 0; j < prod.size(); ++j) out[j] = out[j] + prod[j];
    }
    return BinaryForm(F, std::move(out));
}

/// All [u:v] in P^1(F_q) with b(u,v) = 0, by exhaustive evaluation.
inline std::vector<ProjPoint> binary_rational_roots(const BinaryForm& b) {
    if (b.is_zero()) throw std::invalid_argument("rational roots of the zero form");
    const FiniteField& F = b.field();
    std::vector<ProjPoint> out;
    for (const FieldElement& t : F.elements())
        if (b.evaluate(F.one(), t).is_zero()) out.push_back(ProjPoint({F.one(), t}));
    if (b.evaluate(F.zero(), F.one()).is_zero()) out.push_back(ProjPoint({F.zero(), F.one()}));
    return out;
}

namespace detail {

// Univariate polynomials over GF(q), coeff[i] multiplies v^i.
using UniPoly = std::vector<FieldElement>;

inline int uni_deg(const UniPoly& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
        if (!f[i].is_zero()) return i;
    return -1;
}

inline UniPoly uni_mul(const UniPoly& a, const UniPoly& b, const FiniteField& F) {
    if (uni_deg(a) < 0 || uni_deg(b) < 0) return {};
    UniPoly r(a.size() + b.size() - 1, F.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    }
    return r;
}

inline UniPoly uni_mod(UniPoly a, const UniPoly& b, const FiniteField& F) {
    const int db = uni_deg(b);
    if (db < 0) throw std::domain_error("polynomial division by zero");
    FieldElement lead_inv = b[db].inv();
    int da = uni_deg(a);
    while (da >= db) {
        FieldElement f = a[da] * lead_inv;
        for (int i = 0; i <= db; ++i) a[da - db + i] = a[da - db + i] - f * b[i];
        da = uni_deg(a);
    }
    a.resize(da + 1);
    return a;
}

inline UniPoly uni_monic(UniPoly a) {
    const int d = uni_deg(a);
    if (d < 0) return a;
    FieldElement s = a[d].inv();
    for (auto& c : a) c = c * s;
    return a;
}

inline UniPoly uni_gcd(UniPoly a, UniPoly b, const FiniteField& F) {
    while (uni_deg(b) >= 0) {
        UniPoly r = uni_mod(a, b, F);
        a = std::move(b);
        b = std::move(r);
    }
    return uni_monic(std::move(a));
}

// Monic degree-d polynomial from enumeration index, constant term fastest.
inline UniPoly uni_from_index(long idx, int d, const FiniteField& F) {
    UniPoly f(d + 1, F.zero());
    const long q = F.q();
    for (int i = 0; i < d; ++i) {
        f[i] = F.from_index(idx % q);
        idx /= q;
    }
    f[d] = F.one();
    return f;
}

inline bool uni_is_irreducible(const UniPoly& f, const FiniteField& F) {
    const int d = uni_deg(f);
    if (d <= 0) return false;
    if (d == 1) return true;
    for (int e = 1; e <= d / 2; ++e) {
        long count = 1;
        for (int i = 0; i < e; ++i) count *= F.q();
        for (long idx = 0; idx < count; ++idx) {
            UniPoly g = uni_from_index(idx, e, F);
            if (uni_deg(uni_mod(f, g, F)) < 0) return false;
        }
    }
    return true;
}

inline UniPoly first_monic_irreducible(int d, const FiniteField& F) {
    long count = 1;
    for (int i = 0; i < d; ++i) count *= F.q();
    for (long idx = 0; idx < count; ++idx) {
        UniPoly f = uni_from_index(idx, d, F);
        if (uni_is_irreducible(f, F)) return f;
    }
    throw std::logic_error("no irreducible polynomial found");  // unreachable
}

}  // namespace detail

/// Homogenization of the first monic irreducible degree-d polynomial:
/// sum c_i t^i maps to sum c_i x^i y^{d-i}. Rootless over GF(q^e) for e < d.
inline BinaryForm find_irreducible_binary(int d, const FiniteField& F) {
    if (d < 1) throw std::invalid_argument("degree must be >= 1");
    detail::UniPoly p = detail::first_monic_irreducible(d, F);
    // coeff of u^{d-i} v^i in the binary form (u ~ t, v ~ homogenizer): p[d-i].
    std::vector<FieldElement> coeffs(d + 1, F.zero());
    for (int i = 0; i <= d; ++i) coeffs[i] = p[d - i];
    return BinaryForm(F, std::move(coeffs));
}

/// Monic gcd over the algebraic closure, with explicit bookkeeping of the
/// root at [1:0] (common u-power). A degree-0 result certifies that the two
/// forms share no projective root over any extension.
inline BinaryForm binary_gcd(const BinaryForm& b1, const BinaryForm& b2) {
    if (b1.is_zero() || b2.is_zero()) throw std::invalid_argument("gcd with the zero form");
    if (b1.field() != b2.field()) throw std::invalid_argument("gcd across different fields");
    const FiniteField& F = b1.field();
    auto dehom = [&](const BinaryForm& b) {
        // b = u^{d - deg p} * homog(p) with p(v) = sum coeff(i) v^i.
        detail::UniPoly p(b.coeffs());
        int m = detail::uni_deg(p);
        p.resize(m + 1);
        return std::pair<detail::UniPoly, int>(std::move(p), b.degree() - m);
    };
    auto [p1, a1] = dehom(b1);
    auto [p2, a2] = dehom(b2);
    detail::UniPoly g = detail::uni_gcd(p1, p2, F);
    const int upow = std::min(a1, a2);
    const int dg = detail::uni_deg(g);
    std::vector<FieldElement> coeffs(upow + dg + 1, F.zero());
    for (int j = 0; j <= dg; ++j) coeffs[j] = g[j];
    // Normalize: first nonzero coefficient (u-descending order) is 1.
    for (const auto& c : coeffs) {
        if (!c.is_zero()) {
            FieldElement s = c.inv();
            for (auto& x : coeffs) x = x * s;
            break;
        }
    }
    return BinaryForm(F, std::move(coeffs));
}

/// Image of x -> x^{2d-1} - x^{d-1} over F_q, the first element outside it
/// (always exists and is nonzero), and its inverse.
struct ImageGap {
    std::set<FieldElement> image;
    FieldElement beta;
    FieldElement g;
};

inline ImageGap fd_image_and_beta(int d, const FiniteField& F) {
    if (d < 2) throw std::invalid_argument("degree must be >= 2");
    ImageGap out;
    for (const FieldElement& x : F.elements()) out.image.insert(x.pow(2 * d - 1) - x.pow(d - 1));
    for (const FieldElement& b : F.elements()) {
        if (!out.image.count(b)) {
            out.beta = b;
            out.g = b.inv();
            return out;
        }
    }
    throw std::logic_error("x^{2d-1}-x^{d-1} cannot be surjective");  // unreachable
}

/// Exponent map e >= 1 -> ((e-1) mod (q-1)) + 1 per variable; the result
/// agrees with f at every point of P^n(F_q) but need not stay homogeneous.
inline HomogeneousForm degree_reduce(const HomogeneousForm& f) {
    const long q = f.field().q();
    std::map<std::vector<int>, FieldElement> terms;
    for (const auto& [exps, c] : f.terms()) {
        std::vector<int> e = exps;
        for (int& x : e)
            if (x >= 1) x = static_cast<int>((x - 1) % (q - 1)) + 1;
        auto it = terms.find(e);
        if (it == terms.end()) {
            if (!c.is_zero()) terms.emplace(std::move(e), c);
        } else {
            FieldElement s = it->second + c;
            if (s.is_zero())
                terms.erase(it);
            else
                it->second = s;
        }
    }
    return HomogeneousForm::unchecked(f.field(), f.nvars(), f.degree(), std::move(terms));
}

namespace detail {

inline void monomials_rec(int vars_left, int deg_left, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (vars_left == 1) {
        cur.push_back(deg_left);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int e = deg_left; e >= 0; --e) {
        cur.push_back(e);
        monomials_rec(vars_left - 1, deg_left - e, cur, out);
        cur.pop_back();
    }
}

}  // namespace detail

/// All exponent vectors of degree d in nvars variables, deterministic order.
inline std::vector<std::vector<int>> monomials(int nvars, int d) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    detail::monomials_rec(nvars, d, cur, out);
    return out;
}

namespace detail {

inline int matrix_rank(std::vector<std::vector<FieldElement>> m) { return m.empty() ? 0 : rref(m); }

}  // namespace detail

/// Rank of the evaluation matrix (one vanishing condition per point) against
/// the monomial basis of degree-d forms. Point coordinates may live in an
/// extension of the base field; the rank is computed there.
inline int interpolation_codimension(const std::vector<ProjPoint>& points, int d, const FiniteField& base) {
    if (points.empty()) return 0;
    const FiniteField& ext = points[0].field();
    if (ext.p() != base.p()) throw std::invalid_argument("points not over an extension of the base field");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].field() != ext || points[i].dim() != points[0].dim())
            throw std::invalid_argument("points from mixed spaces");
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (points[i] == points[j]) throw std::invalid_argument("duplicate interpolation points");
    }
    const int nvars = points[0].dim() + 1;
    auto mons = monomials(nvars, d);
    std::vector<std::vector<FieldElement>> m;
    for (const auto& P : points) {
        std::vector<FieldElement> row;
        row.reserve(mons.size());
        for (const auto& exps : mons) {
            FieldElement v = ext.one();
            for (int i = 0; i < nvars; ++i)
                if (exps[i] > 0) v = v * P[i].pow(exps[i]);
            row.push_back(v);
        }
        m.push_back(std::move(row));
    }
    return detail::matrix_rank(std::move(m));
}

/// Codimension of {f in V_d : f vanishes on the coordinate line L} inside V_d,
/// cross-checked against the rank of the restriction map to L. Always d+1.
inline int vanishing_subspace_codim_on_line(int d, int n, const FiniteField& F) {
    if (n < 2) throw std::invalid_argument("need ambient dimension >= 2");
    const ProjLine L = coordinate_line(n, F);
    auto mons = monomials(n + 1, d);
    std::vector<std::vector<FieldElement>> m;
    int direct_count = 0;
    for (const auto& exps : mons) {
        bool on_line_monomial = true;
        for (int i = 0; i <= n - 2; ++i)
            if (exps[i] > 0) on_line_monomial = false;
        if (on_line_monomial) ++direct_count;
        HomogeneousForm mono = HomogeneousForm::monomial(F, exps, F.one());
        m.push_back(restrict_to_line(mono, L).coeffs());
    }
    const int rank = detail::matrix_rank(std::move(m));
    if (rank != direct_count || rank != d + 1)
        throw std::logic_error("restriction-rank cross-check failed");
    return rank;
}

}  // namespace nbp

#pragma once

// Exact arithmetic in GF(p^k): field construction with a deterministic
// irreducible modulus, element enumeration, Frobenius, power-residue tests,
// and pairwise subfield embeddings.

#include <cstdint>
#include <memory>
#include <optional>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace nbp {

namespace detail {

// Polynomials over F_p as coefficient vectors, coeff[i] multiplies t^i.
using PolyFp = std::vector<int>;

inline int poly_deg(const PolyFp& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
        if (f[i] != 0) return i;
    return -1;
}

inline PolyFp poly_mul(const PolyFp& a, const PolyFp& b, long p) {
    if (a.empty() || b.empty()) return {};
    PolyFp r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<int>((r[i + j] + static_cast<long>(a[i]) * b[j]) % p);
    }
    return r;
}

// Remainder of a modulo monic m.
inline PolyFp poly_mod(PolyFp a, const PolyFp& m, long p) {
    const int dm = poly_deg(m);
    int da = poly_deg(a);
    while (da >= dm && dm >= 0) {
        const int lead = a[da];
        if (lead != 0) {
            for (int i = 0; i <= dm; ++i) {
                long v = a[da - dm + i] - static_cast<long>(lead) * m[i];
                a[da - dm + i] = static_cast<int>(((v % p) + p) % p);
            }
        }
        --da;
        while (da >= 0 && a[da] == 0) --da;
    }
    a.resize(da + 1);
    return a;
}

// Monic polynomial of degree deg encoded by index: constant term varies fastest.
inline PolyFp poly_from_index(long idx, int deg, long p) {
    PolyFp f(deg + 1, 0);
    for (int i = 0; i < deg; ++i) {
        f[i] = static_cast<int>(idx % p);
        idx /= p;
    }
    f[deg] = 1;
    return f;
}

// Exhaustive trial division; adequate at desk scale (q <= 2^16).
inline bool poly_is_irreducible(const PolyFp& f, long p) {
    const int d = poly_deg(f);
    if (d <= 0) return false;
    if (d == 1) return true;
    for (int e = 1; e <= d / 2; ++e) {
        long count = 1;
        for (int i = 0; i < e; ++i) count *= p;
        for (long idx = 0; idx < count; ++idx) {
            PolyFp g = poly_from_index(idx, e, p);
            if (poly_deg(poly_mod(f, g, p)) < 0) return false;
        }
    }
    return true;
}

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace detail

class FieldElement;

/// GF(p^k) with the first monic irreducible modulus of degree k in the fixed
/// enumeration order (constant term varies fastest). Immutable; cheap to copy.
class FiniteField {
public:
    static constexpr long kDefaultMaxQ = 1L << 16;

    FiniteField(long p, int k, long max_q = kDefaultMaxQ) {
        if (!detail::is_prime(p)) throw std::invalid_argument("characteristic must be prime");
        if (k < 1) throw std::invalid_argument("extension degree must be >= 1");
        long q = 1;
        for (int i = 0; i < k; ++i) {
            q *= p;
            if (q > max_q) throw std::invalid_argument("field size bound exceeded");
        }
        detail::PolyFp modulus;
        long count = 1;
        for (int i = 0; i < k; ++i) count *= p;
        for (long idx = 0; idx < count; ++idx) {
            detail::PolyFp f = detail::poly_from_index(idx, k, p);
            if (detail::poly_is_irreducible(f, p)) {
                modulus = f;
                break;
            }
        }
        impl_ = std::make_shared<const Impl>(Impl{p, k, q, std::move(modulus)});
    }

    /// Accepts "p^k" or a plain prime power "q".
    static FiniteField parse(const std::string& spec, long max_q = kDefaultMaxQ) {
        auto caret = spec.find('^');
        try {
            if (caret != std::string::npos) {
                long p = std::stol(spec.substr(0, caret));
                int k = std::stoi(spec.substr(caret + 1));
                return FiniteField(p, k, max_q);
            }
            long q = std::stol(spec);
            if (q < 2) throw std::invalid_argument("bad field spec");
            long p = 2;
            while (q % p != 0) {
                ++p;
            }
            int k = 0;
            long m = q;
            while (m > 1) {
                if (m % p != 0) throw std::invalid_argument("'" + spec + "' is not a prime power");
                m /= p;
                ++k;
            }
            return FiniteField(p, k, max_q);
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed field spec '" + spec + "'");
        }
    }

    long p() const { return impl_->p; }
    int k() const { return impl_->k; }
    long q() const { return impl_->q; }
    const std::vector<int>& modulus() const { return impl_->modulus; }

    bool operator==(const FiniteField& o) const {
        return impl_ == o.impl_ ||
               (impl_->p == o.impl_->p && impl_->k == o.impl_->k && impl_->modulus == o.impl_->modulus);
    }
    bool operator!=(const FiniteField& o) const { return !(*this == o); }

    inline FieldElement zero() const;
    inline FieldElement one() const;
    inline FieldElement element(std::vector<int> rep) const;
    /// Scalar from the prime subfield: c mod p.
    inline FieldElement from_int(long c) const;
    /// Element whose rep digits are i written in base p, least significant first.
    inline FieldElement from_index(long i) const;
    /// All q elements, zero first, in index order (least-significant coefficient fastest).
    inline std::vector<FieldElement> elements() const;

private:
    struct Impl {
        long p;
        int k;
        long q;
        detail::PolyFp modulus;
    };
    std::shared_ptr<const Impl> impl_;
};

/// Canonical residue-class representative: coefficient vector of length k over F_p.
/// Equality is structural.
class FieldElement {
public:
    FieldElement() = default;
    FieldElement(FiniteField field, std::vector<int> rep) : field_(std::move(field)), rep_(std::move(rep)) {
        if (static_cast<int>(rep_.size()) != field_->k())
            throw std::invalid_argument("element rep has wrong length");
        for (int& c : rep_) c = static_cast<int>(((c % field_->p()) + field_->p()) % field_->p());
    }

    const FiniteField& field() const { return *field_; }
    const std::vector<int>& rep() const { return rep_; }

    bool is_zero() const {
        for (int c : rep_)
            if (c != 0) return false;
        return true;
    }

    /// Position in the element enumeration order.
    long index() const {
        long v = 0;
        for (int i = static_cast<int>(rep_.size()) - 1; i >= 0; --i) v = v * field_->p() + rep_[i];
        return v;
    }

    bool operator==(const FieldElement& o) const { return rep_ == o.rep_ && *field_ == *o.field_; }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }
    bool operator<(const FieldElement& o) const { return index() < o.index(); }

    FieldElement operator+(const FieldElement& o) const {
        check_same(o);
        std::vector<int> r(rep_.size());
        for (std::size_t i = 0; i < rep_.size(); ++i) r[i] = static_cast<int>((rep_[i] + o.rep_[i]) % field_->p());
        return FieldElement(*field_, std::move(r));
    }
    FieldElement operator-() const {
        std::vector<int> r(rep_.size());
        for (std::size_t i = 0; i < rep_.size(); ++i) r[i] = static_cast<int>((field_->p() - rep_[i]) % field_->p());
        return FieldElement(*field_, std::move(r));
    }
    FieldElement operator-(const FieldElement& o) const { return *this + (-o); }
    FieldElement operator*(const FieldElement& o) const {
        check_same(o);
        detail::PolyFp prod = detail::poly_mul(rep_, o.rep_, field_->p());
        prod = detail::poly_mod(std::move(prod), field_->modulus(), field_->p());
        prod.resize(field_->k(), 0);
        return FieldElement(*field_, std::move(prod));
    }

    FieldElement pow(long e) const {
        if (e < 0) throw std::invalid_argument("pow exponent must be >= 0");
        FieldElement acc = field_->one();
        FieldElement base = *this;
        while (e > 0) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    FieldElement inv() const {
        if (is_zero()) throw std::domain_error("inverse of zero");
        return pow(field_->q() - 2);
    }
    FieldElement operator/(const FieldElement& o) const { return *this * o.inv(); }

    std::string str() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < rep_.size(); ++i) {
            if (i) os << ',';
            os << rep_[i];
        }
        return os.str();
    }

private:
    void check_same(const FieldElement& o) const {
        if (*field_ != *o.field_) throw std::invalid_argument("elements from different fields");
    }

    std::optional<FiniteField> field_;
    std::vector<int> rep_;
};

inline FieldElement FiniteField::zero() const { return FieldElement(*this, std::vector<int>(k(), 0)); }
inline FieldElement FiniteField::one() const { return from_int(1); }
inline FieldElement FiniteField::element(std::vector<int> rep) const { return FieldElement(*this, std::move(rep)); }
inline FieldElement FiniteField::from_int(long c) const {
    std::vector<int> rep(k(), 0);
    rep[0] = static_cast<int>(((c % p()) + p()) % p());
    return FieldElement(*this, std::move(rep));
}
inline FieldElement FiniteField::from_index(long i) const {
    if (i < 0 || i >= q()) throw std::invalid_argument("element index out of range");
    std::vector<int> rep(k(), 0);
    for (int j = 0; j < k(); ++j) {
        rep[j] = static_cast<int>(i % p());
        i /= p();
    }
    return FieldElement(*this, std::move(rep));
}
inline std::vector<FieldElement> FiniteField::elements() const {
    std::vector<FieldElement> out;
    out.reserve(q());
    for (long i = 0; i < q(); ++i) out.push_back(from_index(i));
    return out;
}

inline FieldElement frobenius(const FieldElement& a) { return a.pow(a.field().p()); }

/// True iff a = x^m for some x in F_q^*; decided by a^((q-1)/gcd(m,q-1)) = 1.
inline bool is_power_residue(const FieldElement& a, long m) {
    if (a.is_zero()) throw std::invalid_argument("power-residue test on zero");
    if (m < 1) throw std::invalid_argument("power-residue exponent must be >= 1");
    const long q = a.field().q();
    const long e = (q - 1) / std::gcd(m, q - 1);
    return a.pow(e) == a.field().one();
}

/// Injective ring homomorphism GF(p^k) -> GF(p^K), k | K, mapping the small
/// field's generator to the first root of its modulus found in enumeration order.
class SubfieldEmbedding {
public:
    SubfieldEmbedding(FiniteField from, FiniteField to) : from_(std::move(from)), to_(std::move(to)) {
        if (from_.p() != to_.p()) throw std::invalid_argument("embedding: characteristic mismatch");
        if (to_.k() % from_.k() != 0) throw std::invalid_argument("embedding: degree does not divide");
        const auto& mod = from_.modulus();
        for (long i = 0; i < to_.q(); ++i) {
            FieldElement cand = to_.from_index(i);
            FieldElement val = to_.zero();
            FieldElement pw = to_.one();
            for (std::size_t j = 0; j < mod.size(); ++j) {
                val = val + to_.from_int(mod[j]) * pw;
                pw = pw * cand;
            }
            if (val.is_zero()) {
                root_ = cand;
                return;
            }
        }
        throw std::logic_error("embedding: no root of modulus found");  // unreachable
    }

    FieldElement operator()(const FieldElement& a) const {
        if (a.field() != from_) throw std::invalid_argument("embedding: element not in source field");
        FieldElement val = to_.zero();
        FieldElement pw = to_.one();
        for (int c : a.rep()) {
            val = val + to_.from_int(c) * pw;
            pw = pw * root_;
        }
        return val;
    }

    const FieldElement& generator_image() const { return root_; }
    const FiniteField& from() const { return from_; }
    const FiniteField& to() const { return to_; }

private:
    FiniteField from_, to_;
    FieldElement root_;
};

}  // namespace nbp

#pragma once

// p-typical Witt vectors of finite length: universal structure polynomials
// from ghost components, and arithmetic over two coefficient rings
// (Z/p^N and Laurent polynomials over F_p).

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "drwlab/padic.hpp"

namespace drwlab {

/// Integer polynomial in a fixed number of variables.
class Poly {
public:
    using Monomial = std::vector<unsigned>;

    Poly() = default;
    explicit Poly(std::size_t nvars) : nvars_(nvars) {}
    static Poly constant(std::size_t nvars, const Int& c);
    static Poly variable(std::size_t nvars, std::size_t i);

    std::size_t nvars() const { return nvars_; }
    const std::map<Monomial, Int>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    unsigned degree() const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly operator-() const;
    Poly scaled(const Int& c) const;
    Poly pow(unsigned e) const;
    /// Exact division of every coefficient; nullopt-like failure via AxiomViolation.
    Poly divided_exactly(const Int& c) const;
    bool operator==(const Poly& o) const { return terms_ == o.terms_; }

    /// Renders with variable names x0..x{r-1}, y0..y{r-1} when nvars == 2r.
    std::string to_string(const std::vector<std::string>& names) const;

private:
    void add_term(const Monomial& m, const Int& c);

    std::size_t nvars_ = 0;
    std::map<Monomial, Int> terms_;
};

enum class WittOp { Sum, Product, Frobenius, Neg };
const char* to_string(WittOp op);
WittOp witt_op_from_string(const std::string& s);

/// Structure polynomials in x_0..x_{r-1}, y_0..y_{r-1} (variable i is x_i,
/// variable r + i is y_i). Frobenius has r - 1 output components.
struct WittPolySet {
    long p = 2;
    int r = 1;
    WittOp op = WittOp::Sum;
    std::vector<Poly> polys;

    std::vector<std::string> variable_names() const;
};

/// Ghost polynomial w_n = sum_{j<=n} p^j v_{offset+j}^(p^(n-j)).
Poly ghost_poly(long p, int n, std::size_t nvars, std::size_t offset);

/// Memoized. CostGuard when r > 4 or p > 13.
const WittPolySet& structure_polys(long p, int r, WittOp op);

/// Substitutes ghost components back and checks the target identity exactly.
bool verify_ghost_identity(const WittPolySet& s);

// ---------------------------------------------------------------- rings

/// Z/p^N with canonical representatives in [0, p^N).
struct ZmodRing {
    using Elem = Int;
    long p = 2;
    int n = 1;
    Int modulus = 2;

    ZmodRing() = default;
    ZmodRing(long p_, int n_);
    Elem zero() const { return 0; }
    Elem one() const { return modulus == 1 ? Int(0) : Int(1); }
    Elem from_int(const Int& z) const;
    Elem add(const Elem& a, const Elem& b) const { return from_int(a + b); }
    Elem mul(const Elem& a, const Elem& b) const { return from_int(a * b); }
    Elem neg(const Elem& a) const { return from_int(-a); }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    bool char_p() const { return n == 1; }
    std::string str(const Elem& a) const { return a.get_str(); }
};

/// F_p[x_1^{+-1}, ..., x_k^{+-1}].
struct LaurentPoly {
    std::map<std::vector<long>, long> terms;  // exponent vector -> nonzero coefficient in [1, p)
    bool operator==(const LaurentPoly&) const = default;
};

struct FpLaurentRing {
    using Elem = LaurentPoly;
    long p = 2;
    std::size_t nvars = 1;

    FpLaurentRing() = default;
    FpLaurentRing(long p_, std::size_t nvars_) : p(p_), nvars(nvars_) { require_prime(p_); }
    Elem zero() const { return {}; }
    Elem one() const { return monomial(1, std::vector<long>(nvars, 0)); }
    Elem monomial(long c, const std::vector<long>& exps) const;
    Elem from_int(const Int& z) const;
    Elem add(const Elem& a, const Elem& b) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    bool char_p() const { return true; }
    /// Componentwise p-th power (additive in characteristic p).
    Elem frobenius(const Elem& a) const;
    std::string str(const Elem& a) const;
};

template <class R>
typename R::Elem ring_pow(const R& ring, typename R::Elem base, unsigned e) {
    typename R::Elem acc = ring.one();
    while (e) {
        if (e & 1) acc = ring.mul(acc, base);
        e >>= 1;
        if (e) base = ring.mul(base, base);
    }
    return acc;
}

template <class R>
typename R::Elem evaluate(const R& ring, const Poly& f, const std::vector<typename R::Elem>& vars) {
    if (vars.size() != f.nvars()) fail(ErrorKind::ShapeMismatch, "evaluate: variable count mismatch");
    std::map<std::pair<std::size_t, unsigned>, typename R::Elem> cache;
    auto power = [&](std::size_t i, unsigned e) -> const typename R::Elem& {
        auto key = std::make_pair(i, e);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, ring_pow(ring, vars[i], e)).first;
        return it->second;
    };
    typename R::Elem acc = ring.zero();
    for (const auto& [mono, coeff] : f.terms()) {
        typename R::Elem t = ring.from_int(coeff);
        for (std::size_t i = 0; i < mono.size(); ++i)
            if (mono[i]) t = ring.mul(t, power(i, mono[i]));
        acc = ring.add(acc, t);
    }
    return acc;
}

template <class R>
struct WittVector {
    R ring;
    long p = 2;
    std::vector<typename R::Elem> c;

    std::size_t length() const { return c.size(); }
    bool operator==(const WittVector& o) const {
        if (p != o.p || c.size() != o.c.size()) return false;
        for (std::size_t i = 0; i < c.size(); ++i)
            if (!ring.eq(c[i], o.c[i])) return false;
        return true;
    }
    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < c.size(); ++i) s += (i ? ", " : "") + ring.str(c[i]);
        return s + ")";
    }
};

namespace detail {

template <class R>
WittVector<R> apply_polys(const WittPolySet& s, const WittVector<R>& a, const WittVector<R>* b) {
    std::vector<typename R::Elem> vars(a.c);
    for (std::size_t i = 0; i < a.c.size(); ++i) vars.push_back(b ? b->c[i] : a.ring.zero());
    WittVector<R> out{a.ring, a.p, {}};
    for (const auto& f : s.polys) out.c.push_back(evaluate(a.ring, f, vars));
    return out;
}

template <class R>
void require_compatible(const WittVector<R>& a, const WittVector<R>& b) {
    if (a.p != b.p || a.length() != b.length()) fail(ErrorKind::ShapeMismatch, "Witt vectors of different shape");
}

}  // namespace detail

template <class R>
WittVector<R> witt_zero(const R& ring, long p, int r) {
    return WittVector<R>{ring, p, std::vector<typename R::Elem>(static_cast<std::size_t>(r), ring.zero())};
}

template <class R>
WittVector<R> teichmuller(const R& ring, long p, int r, const typename R::Elem& x) {
    WittVector<R> w = witt_zero(ring, p, r);
    if (r > 0) w.c[0] = x;
    return w;
}

template <class R>
WittVector<R> witt_add(const WittVector<R>& a, const WittVector<R>& b) {
    detail::require_compatible(a, b);
    return detail::apply_polys(structure_polys(a.p, static_cast<int>(a.length()), WittOp::Sum), a, &b);
}

template <class R>
WittVector<R> witt_mul(const WittVector<R>& a, const WittVector<R>& b) {
    detail::require_compatible(a, b);
    return detail::apply_polys(structure_polys(a.p, static_cast<int>(a.length()), WittOp::Product), a, &b);
}

template <class R>
WittVector<R> witt_neg(const WittVector<R>& a) {
    return detail::apply_polys(structure_polys(a.p, static_cast<int>(a.length()), WittOp::Neg), a,
                               static_cast<const WittVector<R>*>(nullptr));
}

template <class R>
WittVector<R> witt_sub(const WittVector<R>& a, const WittVector<R>& b) {
    return witt_add(a, witt_neg(b));
}

/// n * 1 by repeated doubling of the unit.
template <class R>
WittVector<R> witt_times(const WittVector<R>& a, unsigned n) {
    WittVector<R> acc = witt_zero(a.ring, a.p, static_cast<int>(a.length()));
    WittVector<R> base = a;
    while (n) {
        if (n & 1) acc = witt_add(acc, base);
        n >>= 1;
        if (n) base = witt_add(base, base);
    }
    return acc;
}

/// Length r - 1, via the universal Frobenius polynomials.
template <class R>
WittVector<R> frobenius_w(const WittVector<R>& a) {
    if (a.length() < 2) fail(ErrorKind::ShapeMismatch, "frobenius_w needs length >= 2");
    return detail::apply_polys(structure_polys(a.p, static_cast<int>(a.length()), WittOp::Frobenius), a,
                               static_cast<const WittVector<R>*>(nullptr));
}

/// Over an F_p-algebra: componentwise p-th power, then restriction.
template <class R>
WittVector<R> frobenius_char_p(const WittVector<R>& a) {
    if (!a.ring.char_p()) fail(ErrorKind::InvalidArgument, "frobenius_char_p needs an F_p-algebra");
    if (a.length() < 2) fail(ErrorKind::ShapeMismatch, "frobenius_char_p needs length >= 2");
    WittVector<R> out{a.ring, a.p, {}};
    for (std::size_t i = 0; i + 1 < a.length(); ++i) out.c.push_back(ring_pow(a.ring, a.c[i], static_cast<unsigned>(a.p)));
    return out;
}

template <class R>
WittVector<R> verschiebung_w(const WittVector<R>& a) {
    WittVector<R> out{a.ring, a.p, {a.ring.zero()}};
    out.c.insert(out.c.end(), a.c.begin(), a.c.end());
    return out;
}

template <class R>
WittVector<R> restrict_w(const WittVector<R>& a) {
    if (a.length() < 2) fail(ErrorKind::ShapeMismatch, "restrict_w needs length >= 2");
    WittVector<R> out = a;
    out.c.pop_back();
    return out;
}

/// W_r(F_p) -> Z/p^r, (a_0, ..., a_{r-1}) -> w_{r-1}(lifts) mod p^r.
Int witt_fp_to_int(long p, const std::vector<Int>& components);

}  // namespace drwlab

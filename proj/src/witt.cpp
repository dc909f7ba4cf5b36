#include "drwlab/witt.hpp"

#include <algorithm>
#include <mutex>
#include <tuple>

namespace drwlab {

// ---------------------------------------------------------------- Poly

Poly Poly::constant(std::size_t nvars, const Int& c) {
    Poly f(nvars);
    f.add_term(Monomial(nvars, 0), c);
    return f;
}

Poly Poly::variable(std::size_t nvars, std::size_t i) {
    Poly f(nvars);
    Monomial m(nvars, 0);
    m[i] = 1;
    f.add_term(m, 1);
    return f;
}

void Poly::add_term(const Monomial& m, const Int& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

unsigned Poly::degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) {
        unsigned s = 0;
        for (unsigned e : m) s += e;
        d = std::max(d, s);
    }
    return d;
}

Poly operator+(const Poly& a, const Poly& b) {
    Poly r = a;
    r.nvars_ = std::max(a.nvars_, b.nvars_);
    for (const auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.nvars_ != b.nvars_) fail(ErrorKind::ShapeMismatch, "polynomials in different variable sets");
    Poly r(a.nvars_);
    Poly::Monomial m(a.nvars_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
            r.add_term(m, ca * cb);
        }
    return r;
}

Poly Poly::scaled(const Int& c) const {
    Poly r(nvars_);
    if (c == 0) return r;
    r = *this;
    for (auto& [m, x] : r.terms_) x *= c;
    return r;
}

Poly Poly::pow(unsigned e) const {
    Poly acc = constant(nvars_, 1), base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return acc;
}

Poly Poly::divided_exactly(const Int& c) const {
    Poly r = *this;
    for (auto& [m, x] : r.terms_) {
        if (x % c != 0) fail(ErrorKind::AxiomViolation, "inexact division in Witt back-substitution");
        x /= c;
    }
    return r;
}

std::string Poly::to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string s;
    // Graded lexicographic order, highest degree first.
    std::vector<std::pair<Monomial, Int>> ts(terms_.begin(), terms_.end());
    std::sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
        unsigned da = 0, db = 0;
        for (unsigned e : a.first) da += e;
        for (unsigned e : b.first) db += e;
        return da != db ? da > db : a.first > b.first;
    });
    for (const auto& [m, c] : ts) {
        Int mag = abs(c);
        if (s.empty())
            s += c < 0 ? "-" : "";
        else
            s += c < 0 ? " - " : " + ";
        bool constant_term = true;
        std::string mono;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (!m[i]) continue;
            constant_term = false;
            if (!mono.empty()) mono += "*";
            mono += names.at(i);
            if (m[i] > 1) mono += "^" + std::to_string(m[i]);
        }
        if (constant_term)
            s += mag.get_str();
        else if (mag == 1)
            s += mono;
        else
            s += mag.get_str() + "*" + mono;
    }
    return s;
}

// ---------------------------------------------------------------- structure polynomials

const char* to_string(WittOp op) {
    switch (op) {
        case WittOp::Sum: return "sum";
        case WittOp::Product: return "product";
        case WittOp::Frobenius: return "frobenius";
        case WittOp::Neg: return "neg";
    }
    return "?";
}

WittOp witt_op_from_string(const std::string& s) {
    if (s == "sum") return WittOp::Sum;
    if (s == "product") return WittOp::Product;
    if (s == "frobenius") return WittOp::Frobenius;
    if (s == "neg") return WittOp::Neg;
    fail(ErrorKind::InvalidArgument, "unknown Witt operation '" + s + "'");
}

std::vector<std::string> WittPolySet::variable_names() const {
    std::vector<std::string> n;
    for (int i = 0; i < r; ++i) n.push_back("x" + std::to_string(i));
    for (int i = 0; i < r; ++i) n.push_back("y" + std::to_string(i));
    return n;
}

Poly ghost_poly(long p, int n, std::size_t nvars, std::size_t offset) {
    Poly w(nvars);
    for (int j = 0; j <= n; ++j) {
        const auto e = static_cast<unsigned>(ipow(p, static_cast<unsigned>(n - j)).get_ui());
        w = w + Poly::variable(nvars, offset + static_cast<std::size_t>(j)).pow(e).scaled(ipow(p, static_cast<unsigned>(j)));
    }
    return w;
}

namespace {

// Target ghost component n of the operation, in terms of the inputs.
Poly ghost_target(long p, int r, WittOp op, int n) {
    const auto nv = static_cast<std::size_t>(2 * r), off = static_cast<std::size_t>(r);
    switch (op) {
        case WittOp::Sum: return ghost_poly(p, n, nv, 0) + ghost_poly(p, n, nv, off);
        case WittOp::Product: return ghost_poly(p, n, nv, 0) * ghost_poly(p, n, nv, off);
        case WittOp::Neg: return -ghost_poly(p, n, nv, 0);
        case WittOp::Frobenius: return ghost_poly(p, n + 1, nv, 0);
    }
    return Poly(nv);
}

// sum_{j<n} p^j P_j^(p^(n-j)).
Poly lower_ghost(long p, const std::vector<Poly>& polys, int n, std::size_t nv) {
    Poly acc(nv);
    for (int j = 0; j < n; ++j) {
        const auto e = static_cast<unsigned>(ipow(p, static_cast<unsigned>(n - j)).get_ui());
        acc = acc + polys[static_cast<std::size_t>(j)].pow(e).scaled(ipow(p, static_cast<unsigned>(j)));
    }
    return acc;
}

WittPolySet build(long p, int r, WittOp op) {
    WittPolySet s;
    s.p = p;
    s.r = r;
    s.op = op;
    const auto nv = static_cast<std::size_t>(2 * r);
    const int count = op == WittOp::Frobenius ? r - 1 : r;
    for (int n = 0; n < count; ++n) {
        Poly rest = ghost_target(p, r, op, n) - lower_ghost(p, s.polys, n, nv);
        s.polys.push_back(rest.divided_exactly(ipow(p, static_cast<unsigned>(n))));
    }
    return s;
}

}  // namespace

const WittPolySet& structure_polys(long p, int r, WittOp op) {
    require_prime(p);
    if (r < 1) fail(ErrorKind::InvalidArgument, "Witt length must be >= 1");
    if (r > 4 || p > 13)
        fail(ErrorKind::CostGuard, "structure polynomials limited to r <= 4 and p <= 13 (got p=" + std::to_string(p) +
                                       ", r=" + std::to_string(r) + ")");
    static std::mutex mu;
    static std::map<std::tuple<long, int, int>, std::unique_ptr<WittPolySet>> memo;
    const auto key = std::make_tuple(p, r, static_cast<int>(op));
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find(key);
        if (it != memo.end()) return *it->second;
    }
    auto built = std::make_unique<WittPolySet>(build(p, r, op));
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = memo.try_emplace(key, std::move(built));
    return *it->second;
}

bool verify_ghost_identity(const WittPolySet& s) {
    const auto nv = static_cast<std::size_t>(2 * s.r);
    for (int n = 0; n < static_cast<int>(s.polys.size()); ++n) {
        Poly lhs = lower_ghost(s.p, s.polys, n, nv) + s.polys[static_cast<std::size_t>(n)].scaled(ipow(s.p, static_cast<unsigned>(n)));
        if (!(lhs == ghost_target(s.p, s.r, s.op, n))) return false;
    }
    return true;
}

// ---------------------------------------------------------------- rings

ZmodRing::ZmodRing(long p_, int n_) : p(p_), n(n_), modulus(ipow(p_, static_cast<unsigned>(n_))) {
    require_prime(p_);
    if (n_ < 1) fail(ErrorKind::InvalidArgument, "Z/p^N needs N >= 1");
}

ZmodRing::Elem ZmodRing::from_int(const Int& z) const {
    Int r = z % modulus;
    if (r < 0) r += modulus;
    return r;
}

LaurentPoly FpLaurentRing::monomial(long c, const std::vector<long>& exps) const {
    LaurentPoly f;
    long r = c % p;
    if (r < 0) r += p;
    if (r) f.terms[exps] = r;
    return f;
}

LaurentPoly FpLaurentRing::from_int(const Int& z) const {
    Int r = z % p;
    if (r < 0) r += p;
    return monomial(r.get_si(), std::vector<long>(nvars, 0));
}

LaurentPoly FpLaurentRing::add(const LaurentPoly& a, const LaurentPoly& b) const {
    LaurentPoly r = a;
    for (const auto& [m, c] : b.terms) {
        long& x = r.terms[m];
        x = (x + c) % p;
        if (x == 0) r.terms.erase(m);
    }
    return r;
}

LaurentPoly FpLaurentRing::mul(const LaurentPoly& a, const LaurentPoly& b) const {
    LaurentPoly r;
    std::vector<long> m(nvars);
    for (const auto& [ma, ca] : a.terms)
        for (const auto& [mb, cb] : b.terms) {
            for (std::size_t i = 0; i < nvars; ++i) m[i] = ma[i] + mb[i];
            long& x = r.terms[m];
            x = (x + ca * cb) % p;
            if (x == 0) r.terms.erase(m);
        }
    return r;
}

LaurentPoly FpLaurentRing::neg(const LaurentPoly& a) const {
    LaurentPoly r = a;
    for (auto& [m, c] : r.terms) c = p - c;
    return r;
}

LaurentPoly FpLaurentRing::frobenius(const LaurentPoly& a) const {
    // (sum c_m x^m)^p = sum c_m x^(pm) since c_m^p = c_m in F_p.
    LaurentPoly r;
    for (const auto& [m, c] : a.terms) {
        std::vector<long> e = m;
        for (auto& x : e) x *= p;
        r.terms[e] = c;
    }
    return r;
}

std::string FpLaurentRing::str(const LaurentPoly& a) const {
    if (a.terms.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : a.terms) {
        if (!s.empty()) s += " + ";
        s += std::to_string(c);
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i]) s += "*t" + std::to_string(i + 1) + "^" + std::to_string(m[i]);
    }
    return s;
}

Int witt_fp_to_int(long p, const std::vector<Int>& components) {
    const int r = static_cast<int>(components.size());
    if (r == 0) return 0;
    const Int mod = ipow(p, static_cast<unsigned>(r));
    Int acc = 0;
    for (int j = 0; j < r; ++j) {
        Int a = components[static_cast<std::size_t>(j)] % p;
        if (a < 0) a += p;
        Int t;
        mpz_powm(t.get_mpz_t(), a.get_mpz_t(), ipow(p, static_cast<unsigned>(r - 1 - j)).get_mpz_t(), mod.get_mpz_t());
        acc += ipow(p, static_cast<unsigned>(j)) * t;
    }
    acc %= mod;
    return acc;
}

}  // namespace drwlab

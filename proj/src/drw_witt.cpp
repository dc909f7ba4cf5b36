#include <random>

#include "drwlab/drw.hpp"
#include "drwlab/witt.hpp"

namespace drwlab {

namespace {

int depth_of(const Rat& a, long p) { return Weight(std::vector<Rat>{a}).depth(p); }

Int mod_pos(const Int& c, const Int& m) {
    Int r = c % m;
    if (r < 0) r += m;
    return r;
}

FracLaurent power(FracLaurent base, Int e) {
    FracLaurent acc;
    acc.terms[Rat(0)] = 1;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) acc = acc * base;
        e /= 2;
        if (e > 0) base = base * base;
    }
    return acc;
}

using WittL = WittVector<FpLaurentRing>;

// Teichmuller lift of f: (sum c_i x^{k_i / p^m})^{p^m}, exact modulo p^{m+1}.
FracLaurent teich(long p, int m, const LaurentPoly& f) {
    FracLaurent root;
    const Int P = ipow(p, static_cast<unsigned>(m));
    for (const auto& [e, c] : f.terms) {
        Rat a(Int(e[0]), P);
        a.canonicalize();
        root.terms[a] = c;
    }
    return power(root, P);
}

// W_r(F_p[x^{+-1}]) -> degree 0 of the model modulo V^r.
FracLaurent embed(const WittL& a) {
    const long p = a.p;
    const int r = static_cast<int>(a.length());
    FracLaurent out;
    for (int j = 0; j < r; ++j) {
        FracLaurent t = teich(p, r - 1, a.c[static_cast<std::size_t>(j)]);
        for (int k = 0; k < j; ++k) t = t.verschiebung(p);
        out = out + t;
    }
    return out.reduced(p, r);
}

WittL random_witt(const FpLaurentRing& ring, int r, std::mt19937_64& rng) {
    WittL w = witt_zero(ring, ring.p, r);
    for (auto& c : w.c) {
        const long terms = draw_in(rng, 0, 2);
        for (long t = 0; t < terms; ++t)
            c = ring.add(c, ring.monomial(draw_in(rng, 1, ring.p - 1), {draw_in(rng, -2, 2)}));
    }
    return w;
}

}  // namespace

FracLaurent FracLaurent::operator+(const FracLaurent& o) const {
    FracLaurent out = *this;
    for (const auto& [a, c] : o.terms) {
        Int& v = out.terms[a];
        v += c;
        if (v == 0) out.terms.erase(a);
    }
    return out;
}

FracLaurent FracLaurent::operator*(const FracLaurent& o) const {
    FracLaurent out;
    for (const auto& [a, c] : terms)
        for (const auto& [b, e] : o.terms) {
            const Rat s = a + b;
            Int& v = out.terms[s];
            v += c * e;
            if (v == 0) out.terms.erase(s);
        }
    return out;
}

FracLaurent FracLaurent::frobenius(long p) const {
    FracLaurent out;
    for (const auto& [a, c] : terms) out.terms[a * p] = c;
    return out;
}

FracLaurent FracLaurent::verschiebung(long p) const {
    FracLaurent out;
    for (const auto& [a, c] : terms) out.terms[a / p] = c * p;
    return out;
}

FracLaurent FracLaurent::reduced(long p, int r) const {
    // V^r of the model is p^{max(r, depth a)} Z at exponent a.
    FracLaurent out;
    for (const auto& [a, c] : terms) {
        Int v = mod_pos(c, ipow(p, static_cast<unsigned>(std::max(r, depth_of(a, p)))));
        if (v != 0) out.terms[a] = v;
    }
    return out;
}

bool FracLaurent::in_model(long p) const {
    for (const auto& [a, c] : terms) {
        Int den = a.get_den();
        while (den % p == 0) den /= p;
        if (den != 1 || valuation(Rat(c), p) < depth_of(a, p)) return false;
    }
    return true;
}

std::string FracLaurent::to_string() const {
    if (terms.empty()) return "0";
    std::string s;
    for (const auto& [a, c] : terms) {
        if (!s.empty()) s += " + ";
        s += c.get_str() + "*x^(" + a.get_str() + ")";
    }
    return s;
}

WittCrosscheckReport witt_crosscheck(const StrictTower& t, int r, std::size_t samples, std::uint64_t seed) {
    const auto& c = t.base.c;
    const long p = c.p();
    if (r < 2) fail(ErrorKind::InvalidArgument, "witt cross-check needs r >= 2");
    if (static_cast<std::size_t>(r) >= t.levels.size()) fail(ErrorKind::InvalidArgument, "tower has no level r");
    if (c.d_min() != 0 || c.window.lo.size() != 1) fail(ErrorKind::InvalidArgument, "witt cross-check needs a one-variable model");
    WittCrosscheckReport rep;
    auto check = [&](bool ok, const std::string& what) {
        ++rep.checks;
        if (!ok) rep.failures.push_back(what);
    };
    const FpLaurentRing ring(p, 1);
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < samples; ++i) {
        const WittL a = random_witt(ring, r, rng), b = random_witt(ring, r, rng);
        const FracLaurent ua = embed(a), ub = embed(b);
        const std::string tag = " on " + a.to_string() + ", " + b.to_string();
        check(ua.in_model(p), "image outside the model" + tag);
        check(embed(witt_add(a, b)) == (ua + ub).reduced(p, r), "sum" + tag);
        check(embed(witt_mul(a, b)) == (ua * ub).reduced(p, r), "product" + tag);
        check(embed(verschiebung_w(a)) == ua.verschiebung(p).reduced(p, r + 1), "V" + tag);
        check(embed(frobenius_char_p(a)) == ua.frobenius(p).reduced(p, r - 1), "F" + tag);
    }
    for (long k = -3; k <= 3; ++k) {
        FracLaurent xk;
        xk.terms[Rat(k)] = 1;
        check(embed(teichmuller(ring, p, r, ring.monomial(1, {k}))) == xk, "Teichmuller x^" + std::to_string(k));
    }
    for (std::size_t i = 0; i < samples; ++i) {
        WittL a = witt_zero(ring, p, r);
        std::vector<Int> comps;
        for (auto& x : a.c) {
            const long v = draw_in(rng, 0, p - 1);
            comps.emplace_back(v);
            x = ring.from_int(v);
        }
        const FracLaurent u = embed(a);
        const Int z = witt_fp_to_int(p, comps);
        FracLaurent expect;
        if (z != 0) expect.terms[Rat(0)] = z;
        check(u == expect, "weight 0 against Z/p^r at " + a.to_string());
    }
    // |W_r Omega^0_a| = p^{max(r - depth a, 0)}.
    for (const auto& [w, qb] : t.levels[static_cast<std::size_t>(r)].blocks) {
        const auto& inv = qb.invariants[0];
        int total = 0;
        for (int e : inv.torsion) total += e;
        const int expect = std::max(r - w.depth(p), 0);
        check(inv.free_rank == 0 && inv.unresolved == 0 && total == expect,
              "piece size at " + w.to_string() + ": p^" + std::to_string(total) + " vs p^" + std::to_string(expect));
    }
    return rep;
}

}  // namespace drwlab

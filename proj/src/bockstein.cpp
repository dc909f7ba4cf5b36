#include <algorithm>

#include "drwlab/complexes.hpp"

namespace drwlab {

namespace {

FpMatrix fp_zero(long p, std::size_t r, std::size_t c) { return FpMatrix(p, r, c); }

// d^n of an FpComplex, zero-sized outside the range.
FpMatrix fp_diff(const FpComplex& c, int n) {
    const int k = n - c.d_min;
    const int len = static_cast<int>(c.dim.size());
    auto dim = [&](int j) -> std::size_t { return (j >= 0 && j < len) ? c.dim[static_cast<std::size_t>(j)] : 0; };
    if (k >= 0 && k + 1 < len) return c.d[static_cast<std::size_t>(k)];
    return fp_zero(c.p, dim(k + 1), dim(k));
}

std::size_t fp_dim(const FpComplex& c, int n) {
    const int k = n - c.d_min;
    return (k >= 0 && k < static_cast<int>(c.dim.size())) ? c.dim[static_cast<std::size_t>(k)] : 0;
}

std::vector<Rat> lift(const std::vector<long>& v) {
    std::vector<Rat> out;
    for (long x : v) out.emplace_back(x);
    return out;
}

std::vector<long> reduce_vec(const std::vector<Rat>& v, long p) {
    std::vector<long> out;
    for (const auto& x : v) out.push_back(reduce_rat_mod_p(x, p));
    return out;
}

}  // namespace

long draw_in(std::mt19937_64& rng, long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(rng() % span);
}

FpMatrix FpComplex::diff(int n) const { return fp_diff(*this, n); }

FpHomology FpComplex::homology(int n) const { return fp_homology(p, fp_dim(*this, n), fp_diff(*this, n - 1), fp_diff(*this, n)); }

std::vector<std::size_t> FpComplex::betti() const {
    std::vector<std::size_t> b;
    for (std::size_t k = 0; k < dim.size(); ++k) {
        const int n = d_min + static_cast<int>(k);
        std::size_t out_rank = fp_diff(*this, n).rank();
        std::size_t in_rank = fp_diff(*this, n - 1).rank();
        b.push_back(dim[k] - out_rank - in_rank);
    }
    return b;
}

bool FpComplex::is_complex() const {
    for (std::size_t k = 0; k + 1 < d.size(); ++k)
        if (!(d[k + 1] * d[k]).is_zero()) return false;
    return true;
}

bool FpComplex::is_acyclic() const {
    auto b = betti();
    return std::all_of(b.begin(), b.end(), [](std::size_t x) { return x == 0; });
}

FpComplex reduce_mod_p(const BasedComplex& c, const Weight& w) {
    FpComplex f;
    f.p = c.p();
    f.d_min = c.d_min();
    for (int n = c.d_min(); n <= c.d_max(); ++n) f.dim.push_back(c.rank(n, w));
    for (int n = c.d_min(); n < c.d_max(); ++n) f.d.push_back(FpMatrix::reduce(c.diff(n, w)));
    return f;
}

bool is_chain_map(const FpComplex& a, const FpComplex& b, const FpChainMap& f) {
    if (a.dim.size() != b.dim.size() || a.d_min != b.d_min || f.f.size() != a.dim.size()) return false;
    for (std::size_t k = 0; k < a.dim.size(); ++k)
        if (f.f[k].rows() != b.dim[k] || f.f[k].cols() != a.dim[k]) return false;
    for (std::size_t k = 0; k + 1 < a.dim.size(); ++k)
        if (!(f.f[k + 1] * a.d[k] - b.d[k] * f.f[k]).is_zero()) return false;
    return true;
}

FpComplex mapping_cone(const FpComplex& a, const FpComplex& b, const FpChainMap& f) {
    if (!is_chain_map(a, b, f)) fail(ErrorKind::ShapeMismatch, "mapping_cone: not a chain map");
    const long p = a.p;
    const int lo = a.d_min - 1, hi = a.d_min + static_cast<int>(a.dim.size()) - 1;
    auto fmap = [&](int n) -> FpMatrix {
        const int k = n - a.d_min;
        if (k >= 0 && k < static_cast<int>(f.f.size())) return f.f[static_cast<std::size_t>(k)];
        return fp_zero(p, fp_dim(b, n), fp_dim(a, n));
    };
    FpComplex cone;
    cone.p = p;
    cone.d_min = lo;
    for (int n = lo; n <= hi; ++n) cone.dim.push_back(fp_dim(a, n + 1) + fp_dim(b, n));
    for (int n = lo; n < hi; ++n) {
        // (a, b) -> (-d_A a, f(a) + d_B b)
        const std::size_t a1 = fp_dim(a, n + 1), b0 = fp_dim(b, n), a2 = fp_dim(a, n + 2), b1 = fp_dim(b, n + 1);
        FpMatrix m(p, a2 + b1, a1 + b0);
        FpMatrix da = fp_diff(a, n + 1), db = fp_diff(b, n), fa = fmap(n + 1);
        for (std::size_t i = 0; i < a2; ++i)
            for (std::size_t j = 0; j < a1; ++j) m(i, j) = mod_p(-da(i, j), p);
        for (std::size_t i = 0; i < b1; ++i) {
            for (std::size_t j = 0; j < a1; ++j) m(a2 + i, j) = fa(i, j);
            for (std::size_t j = 0; j < b0; ++j) m(a2 + i, a1 + j) = db(i, j);
        }
        cone.d.push_back(m);
    }
    return cone;
}

bool is_quasi_isomorphism(const FpComplex& a, const FpComplex& b, const FpChainMap& f) {
    return mapping_cone(a, b, f).is_acyclic();
}

BocksteinComplex bockstein(const BasedComplex& c) {
    if (c.prec() < 2) fail(ErrorKind::PrecisionExhausted, "bockstein needs prec >= 2");
    const long p = c.p();
    BocksteinComplex out;
    out.p = p;
    out.d_min = c.d_min();
    for (const auto& [w, blk] : c.blocks()) {
        BocksteinBlock bb;
        FpComplex red = reduce_mod_p(c, w);
        for (int n = c.d_min(); n <= c.d_max(); ++n)
            bb.h.push_back(fp_homology(p, c.rank(n, w), fp_diff(red, n - 1), fp_diff(red, n)));
        bb.complex.p = p;
        bb.complex.d_min = c.d_min();
        for (const auto& h : bb.h) bb.complex.dim.push_back(h.dim());
        for (int n = c.d_min(); n < c.d_max(); ++n) {
            const auto k = static_cast<std::size_t>(n - c.d_min());
            const FpHomology& src = bb.h[k];
            const FpHomology& dst = bb.h[k + 1];
            const PMatrix d = c.diff(n, w);
            FpMatrix beta(p, dst.dim(), src.dim());
            for (std::size_t j = 0; j < src.dim(); ++j) {
                std::vector<Rat> dx = d.apply(lift(src.representatives.column(j)));
                for (auto& x : dx) x /= p;
                auto cls = dst.classify(reduce_vec(dx, p));
                for (std::size_t i = 0; i < cls.size(); ++i) beta(i, j) = cls[i];
            }
            bb.complex.d.push_back(beta);
        }
        out.blocks[w] = std::move(bb);
    }
    return out;
}

GammaMap gamma_map(const BasedComplex& c, const EtaResult& eta, const BocksteinComplex& b) {
    const long p = c.p();
    GammaMap g;
    for (const auto& [w, blk] : eta.complex.blocks()) {
        g.source[w] = reduce_mod_p(eta.complex, w);
        const BocksteinBlock& bb = b.blocks.at(w);
        FpChainMap f;
        for (int n = c.d_min(); n <= c.d_max(); ++n) {
            const auto k = static_cast<std::size_t>(n - c.d_min());
            // Basis vector p^n K_j of (eta_p M)^n goes to the class of K_j mod p.
            const PMatrix kb = eta.inclusion.at(w)[k].scaled(ppow(p, -n));
            FpMatrix m(p, bb.h[k].dim(), kb.cols());
            for (std::size_t j = 0; j < kb.cols(); ++j) {
                auto cls = bb.h[k].classify(reduce_vec(kb.column(j), p));
                for (std::size_t i = 0; i < cls.size(); ++i) m(i, j) = cls[i];
            }
            f.f.push_back(m);
        }
        g.map[w] = std::move(f);
    }
    return g;
}

BasedComplex truncate_leq(const BasedComplex& c, int k) {
    BasedComplex t(c.p(), c.prec(), c.d_min(), c.d_max());
    t.window = c.window;
    for (const auto& [w, blk] : c.blocks()) {
        Block b;
        for (int n = c.d_min(); n <= c.d_max(); ++n) b.rank.push_back(n < k ? c.rank(n, w) : 0);
        PMatrix kb;
        if (k >= c.d_min() && k <= c.d_max()) {
            kb = kernel_lattice(c.diff(k, w)).basis();
            b.rank[static_cast<std::size_t>(k - c.d_min())] = kb.cols();
        }
        for (int n = c.d_min(); n < c.d_max(); ++n) {
            const auto i = static_cast<std::size_t>(n - c.d_min());
            if (n + 1 < k)
                b.d.push_back(c.diff(n, w));
            else if (n + 1 == k)
                b.d.push_back(solve_columns(kb, c.diff(n, w)));
            else
                b.d.emplace_back(c.p(), c.prec(), b.rank[i + 1], b.rank[i]);
        }
        t.set_block(w, b);
    }
    return t;
}

namespace {

PMatrix map_at(const BasedComplex& a, const BasedComplex& b, const ChainMap& f, const Weight& w, int n) {
    auto it = f.find(w);
    const auto k = static_cast<std::size_t>(n - a.d_min());
    if (it != f.end() && n >= a.d_min() && n <= a.d_max()) return it->second.at(k);
    return PMatrix(a.p(), a.prec(), b.rank(n, w), a.rank(n, w));
}

std::vector<Weight> union_weights(const BasedComplex& a, const BasedComplex& b) {
    std::vector<Weight> ws;
    for (const auto& [w, x] : a.blocks()) ws.push_back(w);
    for (const auto& [w, x] : b.blocks())
        if (!a.has(w)) ws.push_back(w);
    std::sort(ws.begin(), ws.end());
    return ws;
}

}  // namespace

bool is_chain_map(const BasedComplex& a, const BasedComplex& b, const ChainMap& f) {
    if (a.d_min() != b.d_min() || a.d_max() != b.d_max()) return false;
    for (const auto& w : union_weights(a, b)) {
        for (int n = a.d_min(); n <= a.d_max(); ++n) {
            PMatrix m = map_at(a, b, f, w, n);
            if (m.rows() != b.rank(n, w) || m.cols() != a.rank(n, w) || !m.is_integral()) return false;
        }
        for (int n = a.d_min(); n < a.d_max(); ++n)
            if (!(map_at(a, b, f, w, n + 1) * a.diff(n, w) - b.diff(n, w) * map_at(a, b, f, w, n)).is_zero())
                return false;
    }
    return true;
}

bool is_quasi_isomorphism_mod_p(const BasedComplex& a, const BasedComplex& b, const ChainMap& f) {
    if (!is_chain_map(a, b, f)) return false;
    for (const auto& w : union_weights(a, b)) {
        FpChainMap fm;
        for (int n = a.d_min(); n <= a.d_max(); ++n) fm.f.push_back(FpMatrix::reduce(map_at(a, b, f, w, n)));
        if (!is_quasi_isomorphism(reduce_mod_p(a, w), reduce_mod_p(b, w), fm)) return false;
    }
    return true;
}

ChainMap eta_p_map(const EtaResult& a, const EtaResult& b, const ChainMap& f) {
    ChainMap g;
    for (const auto& [w, incl_a] : a.inclusion) {
        auto fit = f.find(w);
        auto bit = b.inclusion.find(w);
        std::vector<PMatrix> comps;
        for (std::size_t k = 0; k < incl_a.size(); ++k) {
            const std::size_t rows = bit == b.inclusion.end() ? 0 : bit->second[k].cols();
            if (fit == f.end() || rows == 0) {
                comps.emplace_back(a.complex.p(), a.complex.prec(), rows, incl_a[k].cols());
                continue;
            }
            PMatrix m = solve_columns(bit->second[k], fit->second[k] * incl_a[k]);
            if (!m.is_integral())
                fail(ErrorKind::AxiomViolation, "eta_p(f) is not integral at weight " + w.to_string());
            comps.push_back(m);
        }
        g[w] = std::move(comps);
    }
    return g;
}

BasedComplex random_complex(std::mt19937_64& rng, long p, int prec, std::size_t max_rank) {
    const long bound = p * p;
    std::vector<std::size_t> ranks;
    for (int k = 0; k < 4; ++k) ranks.push_back(static_cast<std::size_t>(draw_in(rng, 0, static_cast<long>(max_rank))));
    std::vector<PMatrix> diffs;
    for (std::size_t k = 0; k + 1 < ranks.size(); ++k) {
        // Rows of d^k are combinations of an integral basis of the left kernel of d^{k-1}.
        PMatrix rowspace;
        if (k == 0) {
            rowspace = PMatrix::identity(p, prec, ranks[0]);
        } else {
            PMatrix lk = kernel_lattice(diffs.back().transpose()).basis();
            for (std::size_t j = 0; j < lk.cols(); ++j) {
                Int l = 1;
                for (std::size_t i = 0; i < lk.rows(); ++i) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), lk(i, j).get_den_mpz_t());
                for (std::size_t i = 0; i < lk.rows(); ++i) lk(i, j) *= l;
            }
            rowspace = lk.transpose();
        }
        PMatrix coeff(p, prec, ranks[k + 1], rowspace.rows());
        for (std::size_t i = 0; i < coeff.rows(); ++i)
            for (std::size_t j = 0; j < coeff.cols(); ++j) coeff(i, j) = draw_in(rng, -bound, bound);
        PMatrix d = coeff.rows() && rowspace.rows() ? coeff * rowspace : PMatrix(p, prec, ranks[k + 1], ranks[k]);
        diffs.push_back(d);
    }
    return make_complex(p, prec, 0, ranks, diffs);
}

}  // namespace drwlab

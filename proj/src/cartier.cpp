#include "drwlab/dieudonne.hpp"

namespace drwlab {

namespace {

std::size_t idx(const BasedComplex& c, int n) { return static_cast<std::size_t>(n - c.d_min()); }

std::string at(int n, const Weight& w) { return "degree " + std::to_string(n) + ", weight " + w.to_string(); }

Lattice span(const PMatrix& gens, int prec) {
    if (gens.cols() == 0) return Lattice::zero(gens.p(), prec, gens.rows());
    PMatrix g = gens;
    g.set_prec(prec);
    return Lattice::from_generators(g);
}

// Class matrix of the columns of f (cycles of M/p) in H.
std::optional<FpMatrix> classes(const FpHomology& h, const FpMatrix& outgoing, const FpMatrix& f) {
    FpMatrix out(f.p(), h.dim(), f.cols());
    for (std::size_t j = 0; j < f.cols(); ++j) {
        auto z = f.column(j);
        if (!h.is_cycle(outgoing, z)) return std::nullopt;
        auto coords = h.classify(z);
        for (std::size_t i = 0; i < h.dim(); ++i) out(i, j) = coords[i];
    }
    return out;
}

}  // namespace

CartierReport cartier_type_check(const DieudonneStructure& d) {
    const auto& c = d.c;
    const long p = c.p();
    CartierReport rep;
    std::size_t tested = 0;
    for (const auto& [w, Fs] : d.F) {
        const Weight t = w.scaled(p);
        FpComplex tgt = reduce_mod_p(c, t);
        for (int n = c.d_min(); n <= c.d_max(); ++n) {
            ++tested;
            const std::size_t src = c.rank(n, w);
            if (!c.has(t)) {
                if (src) rep.defects.push_back({n, w, "F mod p maps a nonzero module to zero cohomology at " + t.to_string()});
                continue;
            }
            FpHomology h = tgt.homology(n);
            auto m = classes(h, tgt.diff(n), FpMatrix::reduce(Fs[idx(c, n)]));
            if (!m) {
                rep.defects.push_back({n, w, "F mod p does not land in cycles"});
                continue;
            }
            if (m->rows() != m->cols() || m->rank() != m->cols())
                rep.defects.push_back({n, w,
                                       "F mod p is not bijective onto H(M/p): " + std::to_string(src) + " -> " +
                                           std::to_string(h.dim()) + ", rank " + std::to_string(m->rank())});
        }
    }
    // Weights with no p-th root in the window must have vanishing H(M/p).
    for (const auto& [t, blk] : c.blocks()) {
        const Weight w = t.scaled(Rat(1, p));
        if (d.F.count(w)) continue;
        if (c.status(w) == WeightStatus::OutOfWindow) {
            rep.untestable.push_back(t);
            continue;
        }
        auto betti = reduce_mod_p(c, t).betti();
        for (std::size_t k = 0; k < betti.size(); ++k) {
            ++tested;
            if (betti[k])
                rep.defects.push_back({c.d_min() + static_cast<int>(k), t, "H(M/p) is nonzero but not hit by F"});
        }
    }
    if (!tested) fail(ErrorKind::WindowTooSmall, "no weight of the window can test the Cartier property");
    rep.cartier_type = rep.defects.empty();
    return rep;
}

CartierCriterionReport cartier_criterion_check(const DieudonneStructure& d, int depth) {
    if (depth < 1) fail(ErrorKind::InvalidArgument, "Cartier criterion needs depth >= 1");
    CartierCriterionReport rep;
    SaturationResult sat = saturate(d, depth);
    const long p = d.p();
    for (int j = 1; j <= depth; ++j) {
        const auto& prev = sat.stages[static_cast<std::size_t>(j - 1)].d.c;
        const auto& cur = sat.stages[static_cast<std::size_t>(j)];
        const auto& c = cur.d.c;
        const std::string stage = "stage " + std::to_string(j - 1) + " -> " + std::to_string(j);
        for (const auto& [w, comps] : cur.alpha) {
            const Weight t = w.scaled(p);
            FpComplex a = reduce_mod_p(prev, w);
            FpComplex b = reduce_mod_p(c, t);
            b.dim.resize(a.dim.size(), 0);
            FpChainMap f;
            for (const auto& m : comps) f.f.push_back(FpMatrix::reduce(m));
            ++rep.comparisons;
            if (!is_chain_map(a, b, f)) {
                rep.failures.push_back(stage + ": alpha_F mod p is not a chain map at " + w.to_string());
                continue;
            }
            if (!is_quasi_isomorphism(a, b, f))
                rep.failures.push_back(stage + ": alpha_F mod p is not a quasi-isomorphism at " + w.to_string());
            if (a.betti() != b.betti())
                rep.failures.push_back(stage + ": mod-p Betti numbers differ between " + w.to_string() + " and " +
                                       t.to_string());
        }
        for (const auto& [t, blk] : c.blocks()) {
            const Weight w = t.scaled(Rat(1, p));
            if (cur.alpha.count(w) || prev.status(w) == WeightStatus::OutOfWindow) continue;
            ++rep.comparisons;
            if (!reduce_mod_p(c, t).is_acyclic())
                rep.failures.push_back(stage + ": weight " + t.to_string() + " is not hit and not acyclic mod p");
        }
    }
    rep.ok = rep.failures.empty();
    return rep;
}

const Lattice& NygaardFiltration::at(int k, const Weight& w, int degree) const {
    if (k < k_min || k > k_max + 1) fail(ErrorKind::InvalidArgument, "Nygaard index out of range");
    const auto& m = lattices[static_cast<std::size_t>(k - k_min)];
    auto it = m.find(w);
    if (it == m.end()) fail(ErrorKind::WindowTooSmall, "no Nygaard lattice at weight " + w.to_string());
    return it->second.at(idx(base.c, degree));
}

NygaardFiltration nygaard(const DieudonneStructure& d, int k_max) {
    NygaardFiltration N;
    N.base = d.V.empty() ? derive_verschiebung(d) : d;
    const auto& c = N.base.c;
    const long p = c.p();
    N.k_min = c.d_min();
    N.k_max = k_max;
    if (k_max < N.k_min) fail(ErrorKind::InvalidArgument, "k_max below the lowest degree");
    std::vector<Weight> ok;
    for (const auto& [w, blk] : c.blocks()) {
        bool good = true;
        for (int i = c.d_min(); i <= c.d_max() && good; ++i) good = N.base.verschiebung(i, w.scaled(p)).has_value();
        if (good)
            ok.push_back(w);
        else
            N.untestable.push_back(w);
    }
    for (int k = N.k_min; k <= k_max + 1; ++k) {
        std::map<Weight, std::vector<Lattice>> level;
        for (const auto& w : ok) {
            std::vector<Lattice> ls;
            for (int i = c.d_min(); i <= c.d_max(); ++i) {
                if (i >= k)
                    ls.push_back(Lattice::full(p, c.prec(), c.rank(i, w)));
                else
                    ls.push_back(span(N.base.verschiebung(i, w.scaled(p))->scaled(ppow(p, k - i - 1)), c.prec()));
            }
            level[w] = std::move(ls);
        }
        N.lattices.push_back(std::move(level));
    }
    return N;
}

NygaardReport nygaard_graded_compare(const NygaardFiltration& N, int k) {
    if (k < N.k_min || k > N.k_max) fail(ErrorKind::InvalidArgument, "Nygaard index out of range");
    const auto& d = N.base;
    const auto& c = d.c;
    const long p = c.p();
    NygaardReport rep;
    auto check = [&](bool ok, int n, const Weight& w, const std::string& what) {
        ++rep.checks;
        if (!ok) rep.violations.push_back({n, w, "k = " + std::to_string(k) + ": " + what});
    };
    for (const auto& [w, ls] : N.lattices[static_cast<std::size_t>(k - N.k_min)]) {
        const Weight t = w.scaled(p);
        FpComplex tgt = reduce_mod_p(c, t);
        for (int i = c.d_min(); i <= c.d_max(); ++i) {
            const Lattice& Nk = ls[idx(c, i)];
            const Lattice& Nk1 = N.at(k + 1, w, i);
            const Lattice full = Lattice::full(p, c.prec(), c.rank(i, w));
            check(Nk.contains(Nk1), i, w, "N^{k+1} is not inside N^k at " + at(i, w));
            if (i < k) {
                check(Nk.contains(full.scaled(ppow(p, k - i))), i, w, "p^{k-i} M is not inside N^k");
                check(full.scaled(ppow(p, k - i - 1)).contains(Nk), i, w, "N^k is not inside p^{k-i-1} M");
            }
            auto f = d.frobenius(i, w);
            if (!f) continue;
            // N^k = {x : p^{i-k} F x integral}, i.e. the preimage of p^k M under alpha_F.
            PMatrix scaledF = f->scaled(ppow(p, i - k));
            check(solve_integrality(scaledF, c.prec()) == Nk, i, w, "N^k differs from alpha_F^{-1}(p^k M)");

            // gr^k -> tau^{<=k}(M/p) at weight p w via x -> p^{-k} alpha_F(x).
            CokernelInvariants gr = cokernel_invariants(Nk1, Nk);
            bool elementary = gr.free_rank == 0 && gr.unresolved == 0;
            for (int e : gr.torsion) elementary = elementary && e == 1;
            check(elementary, i, w, "gr^k is not an F_p-vector space");
            const PMatrix lifted = scaledF * Nk.basis();
            if (!lifted.is_integral()) {
                check(false, i, w, "p^{-k} alpha_F is not integral on N^k");
                continue;
            }
            FpMatrix G = FpMatrix::reduce(lifted);
            FpMatrix G1 = FpMatrix::reduce(scaledF * Nk1.basis());
            check(G1.is_zero(), i, w, "p^{-k} alpha_F does not vanish on N^{k+1} mod p");
            std::size_t target = 0;
            if (i < k)
                target = c.rank(i, t);
            else if (i == k)
                target = c.rank(i, t) - tgt.diff(i).rank();
            check(G.rank() == gr.torsion.size(), i, w, "gr^k -> M/p is not injective");
            check(G.rank() == target, i, w, "gr^k -> tau^{<=k}(M/p) is not surjective");
            if (i == k) check((tgt.diff(i) * G).is_zero(), i, w, "image in degree k is not in the cycles");
        }
    }
    return rep;
}

}  // namespace drwlab

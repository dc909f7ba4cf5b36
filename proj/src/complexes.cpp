#include "drwlab/complexes.hpp"

#include <algorithm>

#include "drwlab/parallel.hpp"

namespace drwlab {

BasedComplex::BasedComplex(long p, int prec, int d_min, int d_max) : p_(p), prec_(prec), d_min_(d_min), d_max_(d_max) {
    require_prime(p);
    if (d_max < d_min) fail(ErrorKind::InvalidArgument, "empty degree range");
}

void BasedComplex::set_prec(int prec) {
    prec_ = prec;
    for (auto& [w, b] : blocks_)
        for (auto& m : b.d) m.set_prec(prec);
}

void BasedComplex::set_block(const Weight& w, Block b) {
    if (b.rank.size() != length()) fail(ErrorKind::ShapeMismatch, "block at " + w.to_string() + ": wrong number of ranks");
    if (b.d.size() + 1 != b.rank.size()) {
        if (!b.d.empty()) fail(ErrorKind::ShapeMismatch, "block at " + w.to_string() + ": wrong number of differentials");
        for (std::size_t k = 0; k + 1 < b.rank.size(); ++k) b.d.emplace_back(p_, prec_, b.rank[k + 1], b.rank[k]);
    }
    for (std::size_t k = 0; k < b.d.size(); ++k) {
        if (b.d[k].rows() != b.rank[k + 1] || b.d[k].cols() != b.rank[k])
            fail(ErrorKind::ShapeMismatch,
                 "block at " + w.to_string() + ": d^" + std::to_string(d_min_ + static_cast<int>(k)) + " has wrong shape");
        if (b.d[k].p() != p_) fail(ErrorKind::ShapeMismatch, "differential over a different prime");
        b.d[k].set_prec(prec_);
    }
    blocks_[w] = std::move(b);
}

const Block& BasedComplex::block(const Weight& w) const {
    auto it = blocks_.find(w);
    if (it == blocks_.end()) fail(ErrorKind::InvalidArgument, "no block at weight " + w.to_string());
    return it->second;
}

WeightStatus BasedComplex::status(const Weight& w) const {
    if (has(w)) return WeightStatus::Present;
    return window.classify(w, p_);
}

std::size_t BasedComplex::rank(int n, const Weight& w) const {
    if (n < d_min_ || n > d_max_) return 0;
    auto it = blocks_.find(w);
    return it == blocks_.end() ? 0 : it->second.rank[static_cast<std::size_t>(n - d_min_)];
}

PMatrix BasedComplex::diff(int n, const Weight& w) const {
    if (n >= d_min_ && n < d_max_) {
        auto it = blocks_.find(w);
        if (it != blocks_.end()) return it->second.d[static_cast<std::size_t>(n - d_min_)];
    }
    return PMatrix(p_, prec_, rank(n + 1, w), rank(n, w));
}

BasedComplex make_complex(long p, int prec, int d_min, const std::vector<std::size_t>& ranks,
                          const std::vector<PMatrix>& diffs, const Weight& w) {
    if (ranks.empty()) fail(ErrorKind::InvalidArgument, "complex needs at least one degree");
    BasedComplex c(p, prec, d_min, d_min + static_cast<int>(ranks.size()) - 1);
    c.set_block(w, Block{ranks, diffs});
    return c;
}

ValidationReport validate(const BasedComplex& c) {
    ValidationReport rep;
    for (const auto& [w, b] : c.blocks()) {
        for (int n = c.d_min(); n < c.d_max(); ++n) {
            const PMatrix d = c.diff(n, w);
            if (!d.is_integral())
                rep.violations.push_back({n, w, "d^" + std::to_string(n) + " has non-integral entries"});
        }
        for (int n = c.d_min(); n + 1 < c.d_max(); ++n) {
            PMatrix dd = c.diff(n + 1, w) * c.diff(n, w);
            if (dd.is_zero()) continue;
            int v = dd.min_valuation();
            if (v < c.prec())
                rep.violations.push_back({n, w,
                                          "d^" + std::to_string(n + 1) + " d^" + std::to_string(n) +
                                              " has an entry of valuation " + std::to_string(v) + " < prec " +
                                              std::to_string(c.prec())});
        }
    }
    return rep;
}

CohomologyGroup CohomologyGroup::modulo_p_torsion() const {
    CohomologyGroup g = *this;
    g.torsion.clear();
    for (int e : torsion)
        if (e > 1) g.torsion.push_back(e - 1);
    return g;
}

std::string CohomologyGroup::to_string() const {
    std::string s = "Z_p^" + std::to_string(free_rank);
    for (int e : torsion) s += " + Z/p^" + std::to_string(e);
    if (unresolved) s += " + " + std::to_string(unresolved) + " unresolved";
    return s;
}

namespace {

std::vector<Weight> weight_list(const BasedComplex& c) {
    std::vector<Weight> ws;
    for (const auto& [w, b] : c.blocks()) ws.push_back(w);
    return ws;
}

}  // namespace

CohomologyProfile cohomology(const BasedComplex& c) {
    const auto ws = weight_list(c);
    auto per_weight = parallel_map<std::vector<CohomologyGroup>>(ws.size(), [&](std::size_t i) {
        const Weight& w = ws[i];
        std::vector<CohomologyGroup> out;
        for (int n = c.d_min(); n <= c.d_max(); ++n) {
            Lattice z = kernel_lattice(c.diff(n, w));
            PMatrix incoming = c.diff(n - 1, w);
            Lattice b = incoming.cols() == 0 ? Lattice::zero(c.p(), c.prec(), z.ambient_rank())
                                             : Lattice::from_generators(incoming);
            CokernelInvariants inv = cokernel_invariants(b, z);
            out.push_back(CohomologyGroup{inv.free_rank, inv.torsion, inv.unresolved});
        }
        return out;
    });
    CohomologyProfile prof;
    for (std::size_t i = 0; i < ws.size(); ++i)
        for (int n = c.d_min(); n <= c.d_max(); ++n)
            prof[{n, ws[i]}] = per_weight[i][static_cast<std::size_t>(n - c.d_min())];
    return prof;
}

EtaResult eta_p(const BasedComplex& c) {
    const int need = c.d_max() - c.d_min() + 1;
    if (c.prec() <= need)
        fail(ErrorKind::PrecisionExhausted,
             "eta_p needs prec > " + std::to_string(need) + ", got " + std::to_string(c.prec()));
    const long p = c.p();
    const int out_prec = c.prec() - 1;
    const auto ws = weight_list(c);

    struct Out {
        Block block;
        std::vector<PMatrix> incl;
    };
    auto outs = parallel_map<Out>(ws.size(), [&](std::size_t i) {
        const Weight& w = ws[i];
        Out o;
        for (int n = c.d_min(); n <= c.d_max(); ++n) {
            PMatrix k = n < c.d_max() ? solve_integrality(c.diff(n, w).scaled(Rat(1, p)), c.prec()).basis()
                                      : PMatrix::identity(p, c.prec(), c.rank(n, w));
            PMatrix b = k.scaled(ppow(p, n));
            b.set_prec(out_prec);
            o.incl.push_back(b);
            o.block.rank.push_back(b.cols());
        }
        for (int n = c.d_min(); n < c.d_max(); ++n) {
            const auto k = static_cast<std::size_t>(n - c.d_min());
            PMatrix dn = solve_columns(o.incl[k + 1], c.diff(n, w) * o.incl[k]);
            dn.set_prec(out_prec);
            o.block.d.push_back(dn);
        }
        return o;
    });

    EtaResult r;
    r.complex = BasedComplex(p, out_prec, c.d_min(), c.d_max());
    r.complex.window = c.window;
    for (std::size_t i = 0; i < ws.size(); ++i) {
        r.complex.set_block(ws[i], outs[i].block);
        r.inclusion[ws[i]] = outs[i].incl;
    }
    return r;
}

}  // namespace drwlab

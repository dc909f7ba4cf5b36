#include "drwlab/dieudonne.hpp"

#include "drwlab/parallel.hpp"

namespace drwlab {

namespace {

std::size_t idx(const BasedComplex& c, int n) { return static_cast<std::size_t>(n - c.d_min()); }

std::string deg(int n) { return std::to_string(n); }

}  // namespace

std::optional<PMatrix> DieudonneStructure::frobenius(int n, const Weight& w) const {
    if (n < c.d_min() || n > c.d_max()) return std::nullopt;
    const Weight t = w.scaled(p());
    auto it = F.find(w);
    if (it != F.end()) return it->second[idx(c, n)];
    if (c.status(w) == WeightStatus::Absent && c.status(t) != WeightStatus::OutOfWindow) return PMatrix(p(), c.prec(), c.rank(n, t), 0);
    return std::nullopt;
}

std::optional<PMatrix> DieudonneStructure::verschiebung(int n, const Weight& b) const {
    if (n < c.d_min() || n > c.d_max()) return std::nullopt;
    const Weight t = b.scaled(Rat(1, p()));
    auto it = V.find(b);
    if (it != V.end()) return it->second[idx(c, n)];
    if (c.status(b) == WeightStatus::Absent && c.status(t) != WeightStatus::OutOfWindow) return PMatrix(p(), c.prec(), c.rank(n, t), 0);
    return std::nullopt;
}

DieudonneReport validate_dieudonne(const DieudonneStructure& d) {
    DieudonneReport rep;
    const auto& c = d.c;
    const long p = c.p();
    for (const auto& [w, blk] : c.blocks()) {
        const Weight t = w.scaled(p);
        auto it = d.F.find(w);
        if (it == d.F.end()) {
            if (c.status(t) == WeightStatus::OutOfWindow)
                rep.untestable.push_back(w);
            else
                rep.violations.push_back({c.d_min(), w, "F missing although p*w is in window"});
            continue;
        }
        const auto& Fs = it->second;
        if (Fs.size() != c.length()) {
            rep.violations.push_back({c.d_min(), w, "F has the wrong number of degrees"});
            continue;
        }
        bool shapes_ok = true;
        for (int n = c.d_min(); n <= c.d_max(); ++n) {
            const PMatrix& f = Fs[idx(c, n)];
            if (f.rows() != c.rank(n, t) || f.cols() != c.rank(n, w)) {
                rep.violations.push_back({n, w, "F^" + deg(n) + " has the wrong shape"});
                shapes_ok = false;
            } else if (!f.is_integral()) {
                rep.violations.push_back({n, w, "F^" + deg(n) + " is not integral"});
            }
        }
        if (!shapes_ok) continue;
        for (int n = c.d_min(); n < c.d_max(); ++n) {
            PMatrix defect = c.diff(n, t) * Fs[idx(c, n)] - (Fs[idx(c, n + 1)] * c.diff(n, w)).scaled(p);
            if (defect.is_zero()) continue;
            const int v = defect.min_valuation();
            if (v < c.prec())
                rep.violations.push_back(
                    {n, w, "dF - pFd has valuation " + std::to_string(v) + " < prec " + std::to_string(c.prec())});
        }
    }
    if (d.algebra)
        for (const auto& g : d.congruences) {
            auto f = d.frobenius(0, g.w);
            if (!f) {
                rep.untestable.push_back(g.w);
                continue;
            }
            auto fx = f->apply(g.x);
            for (std::size_t i = 0; i < fx.size(); ++i)
                if (valuation(fx[i] - g.x_pow_p.at(i), p) < 1) {
                    rep.violations.push_back({0, g.w, "F(x) != x^p mod p on a generator"});
                    break;
                }
        }
    return rep;
}

AlphaMap alpha_F(const DieudonneStructure& d) {
    const auto& c = d.c;
    const long p = c.p();
    AlphaMap a;
    a.eta = eta_p(c);
    for (const auto& [w, Fs] : d.F) {
        const Weight t = w.scaled(p);
        std::vector<PMatrix> comps;
        for (int n = c.d_min(); n <= c.d_max(); ++n) {
            PMatrix img = Fs[idx(c, n)].scaled(ppow(p, n));
            if (!c.has(t)) {
                comps.emplace_back(p, a.eta.complex.prec(), 0, img.cols());
                continue;
            }
            const PMatrix& basis = a.eta.inclusion.at(t)[idx(c, n)];
            std::optional<PMatrix> m;
            try {
                m = solve_columns(basis, img);
            } catch (const Error&) {
            }
            if (!m || !m->is_integral())
                fail(ErrorKind::AxiomViolation,
                     "alpha_F leaves eta_p M at weight " + w.to_string() + ", degree " + deg(n));
            m->set_prec(a.eta.complex.prec());
            comps.push_back(*m);
        }
        a.alpha[w] = std::move(comps);
    }
    return a;
}

SaturationReport is_saturated(const DieudonneStructure& d) { return is_saturated(d, alpha_F(d)); }

SaturationReport is_saturated(const DieudonneStructure& d, const AlphaMap& a) {
    const auto& c = d.c;
    const long p = c.p();
    SaturationReport rep;
    for (const auto& [w, comps] : a.alpha) {
        const Weight t = w.scaled(p);
        for (int n = c.d_min(); n <= c.d_max(); ++n) {
            const PMatrix& m = comps[idx(c, n)];
            WeightDefect def;
            def.weight = t;
            def.degree = n;
            def.injective = rank_q(m) == m.cols();
            Lattice amb = Lattice::full(p, a.eta.complex.prec(), m.rows());
            Lattice sub = m.cols() ? Lattice::from_generators(m) : Lattice::zero(p, a.eta.complex.prec(), m.rows());
            def.cokernel = cokernel_invariants(sub, amb);
            if (!def.injective || !def.cokernel.is_zero()) rep.defects.push_back(def);
        }
    }
    // Targets with no source weight.
    for (const auto& [t, blk] : c.blocks()) {
        const Weight w = t.scaled(Rat(1, p));
        if (a.alpha.count(w)) continue;
        if (t.is_untwisted()) continue;  // handled above when F is present
        const WeightStatus s = c.status(w);
        if (s == WeightStatus::OutOfWindow) {
            rep.untestable.push_back(t);
            continue;
        }
        for (int n = c.d_min(); n <= c.d_max(); ++n) {
            if (c.rank(n, t) == 0) continue;
            WeightDefect def;
            def.weight = t;
            def.degree = n;
            def.cokernel.free_rank = c.rank(n, t);
            rep.defects.push_back(def);
        }
    }
    rep.saturated = rep.defects.empty();
    return rep;
}

SaturationResult saturate(const DieudonneStructure& d, int s) {
    if (s < 0) fail(ErrorKind::InvalidArgument, "saturation depth must be >= 0");
    const long p = d.p();
    SaturationResult res;
    SaturationStage first;
    first.d = d;
    for (const auto& [w, blk] : d.c.blocks())
        for (int n = d.c.d_min(); n <= d.c.d_max(); ++n)
            first.cumulative[w].push_back(PMatrix::identity(p, d.c.prec(), d.c.rank(n, w)));
    res.stages.push_back(std::move(first));

    for (int j = 1; j <= s; ++j) {
        const SaturationStage& prev = res.stages.back();
        AlphaMap a = alpha_F(prev.d);
        SaturationStage next;
        next.d.c = a.eta.complex;
        const auto& c = next.d.c;
        for (const auto& [w, Fs] : prev.d.F) {
            const Weight t = w.scaled(p);
            std::vector<PMatrix> comps;
            for (int n = c.d_min(); n <= c.d_max(); ++n) {
                const auto k = idx(c, n);
                PMatrix src = Fs[k] * a.eta.inclusion.at(w)[k];
                PMatrix m = c.has(t) ? solve_columns(a.eta.inclusion.at(t)[k], src) : PMatrix(p, c.prec(), 0, src.cols());
                if (!m.is_integral())
                    fail(ErrorKind::AxiomViolation, "F does not preserve eta_p M at weight " + w.to_string());
                m.set_prec(c.prec());
                comps.push_back(m);
            }
            next.d.F[w] = std::move(comps);
        }
        for (const auto& [w, incl] : a.eta.inclusion)
            for (std::size_t k = 0; k < incl.size(); ++k) {
                PMatrix cum = prev.cumulative.at(w)[k] * incl[k];
                cum.set_prec(c.prec());
                next.cumulative[w].push_back(cum);
            }
        next.alpha = std::move(a.alpha);
        res.stages.push_back(std::move(next));
    }
    return res;
}

Lattice stage_lattice(const SaturationResult& r, int j, const Weight& c, int degree) {
    if (j < 0 || j >= static_cast<int>(r.stages.size())) fail(ErrorKind::InvalidArgument, "no such saturation stage");
    const auto& st = r.stages[static_cast<std::size_t>(j)];
    const Weight b = c.scaled(ipow(st.d.p(), static_cast<unsigned>(j)));
    auto it = st.cumulative.find(b);
    if (it == st.cumulative.end())
        fail(ErrorKind::WindowTooSmall, "stage " + std::to_string(j) + " has no block at weight " + b.to_string() +
                                            " (needed for weight " + c.to_string() + ")");
    const PMatrix& basis = it->second.at(idx(st.d.c, degree));
    if (basis.cols() == 0) return Lattice::zero(st.d.p(), basis.prec(), basis.rows());
    return Lattice::from_generators(basis);
}

DieudonneStructure derive_verschiebung(const DieudonneStructure& d) {
    const auto& c = d.c;
    const long p = c.p();
    DieudonneStructure out = d;
    out.V.clear();
    for (const auto& [t, blk] : c.blocks()) {
        const Weight w = t.scaled(Rat(1, p));
        auto it = d.F.find(w);
        if (it == d.F.end()) {
            const WeightStatus s = c.status(w);
            if (s == WeightStatus::OutOfWindow) continue;
            for (int n = c.d_min(); n <= c.d_max(); ++n)
                if (c.rank(n, t))
                    fail(ErrorKind::NotSaturated, "weight " + t.to_string() + " is not in the image of F");
            continue;
        }
        std::vector<PMatrix> vs;
        for (int n = c.d_min(); n <= c.d_max(); ++n) {
            const PMatrix& f = it->second[idx(c, n)];
            if (f.rows() != f.cols() || rank_q(f) != f.cols())
                fail(ErrorKind::NotSaturated, "F is not invertible at weight " + w.to_string() + ", degree " + deg(n));
            PMatrix v = solve_columns(f, PMatrix::identity(p, c.prec(), f.rows()).scaled(p));
            if (!v.is_integral())
                fail(ErrorKind::NotSaturated, "p F^{-1} is not integral at weight " + t.to_string() + ", degree " + deg(n));
            v.set_prec(c.prec());
            vs.push_back(v);
        }
        out.V[t] = std::move(vs);
    }
    // VF = p, FdV = d, Vd = p dV wherever both maps are known.
    for (const auto& [t, vs] : out.V) {
        const Weight w = t.scaled(Rat(1, p));
        const auto& Fs = out.F.at(w);
        for (int n = c.d_min(); n <= c.d_max(); ++n) {
            const auto k = idx(c, n);
            if (!(vs[k] * Fs[k] == PMatrix::identity(p, c.prec(), Fs[k].cols()).scaled(p)))
                fail(ErrorKind::AxiomViolation, "VF != p at weight " + w.to_string());
            if (n < c.d_max()) {
                if (!(Fs[k + 1] * c.diff(n, w) * vs[k] == c.diff(n, t)))
                    fail(ErrorKind::AxiomViolation, "FdV != d at weight " + t.to_string());
                if (!(vs[k + 1] * c.diff(n, t) == (c.diff(n, w) * vs[k]).scaled(p)))
                    fail(ErrorKind::AxiomViolation, "Vd != p dV at weight " + t.to_string());
            }
        }
    }
    return out;
}

std::optional<PMatrix> verschiebung_power(const DieudonneStructure& d, int n, const Weight& w, int r) {
    const long p = d.p();
    PMatrix acc = PMatrix::identity(p, d.c.prec(), d.c.rank(n, w));
    Weight cur = w;
    for (int j = 0; j < r; ++j) {
        const Weight src = cur.scaled(p);
        if (d.c.status(src) == WeightStatus::OutOfWindow) return std::nullopt;
        auto v = d.verschiebung(n, src);
        if (!v) return std::nullopt;
        acc = acc * *v;
        cur = src;
    }
    return acc;
}

}  // namespace drwlab

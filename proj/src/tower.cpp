#include "drwlab/dieudonne.hpp"

namespace drwlab {

namespace {

std::size_t idx(const BasedComplex& c, int n) { return static_cast<std::size_t>(n - c.d_min()); }

Lattice span(const PMatrix& gens, int prec) {
    if (gens.cols() == 0) return Lattice::zero(gens.p(), prec, gens.rows());
    PMatrix g = gens;
    g.set_prec(prec);
    return Lattice::from_generators(g);
}

Lattice image(const PMatrix& a, const Lattice& l) { return span(a * l.basis(), l.prec()); }

// V^r(M^n_{p^r w}) + d V^r(M^{n-1}_{p^r w}) inside M^n_w.
std::optional<Lattice> vr_relations(const DieudonneStructure& d, const Weight& w, int n, int r, bool with_dv = true) {
    const auto& c = d.c;
    auto vr = verschiebung_power(d, n, w, r);
    if (!vr) return std::nullopt;
    PMatrix gens = *vr;
    if (with_dv && n > c.d_min()) {
        auto vr1 = verschiebung_power(d, n - 1, w, r);
        if (!vr1) return std::nullopt;
        gens = gens.hcat(c.diff(n - 1, w) * *vr1);
    }
    return span(gens, c.prec());
}

}  // namespace

QuotientLevel quotient_Wr(const DieudonneStructure& d, int r) {
    if (r < 0) fail(ErrorKind::InvalidArgument, "W_r needs r >= 0");
    const auto& c = d.c;
    if (r > 0 && d.V.empty() && !c.blocks().empty())
        fail(ErrorKind::NotSaturated, "W_r needs the Verschiebung; derive it from a saturated structure first");
    QuotientLevel lvl;
    lvl.r = r;
    for (const auto& [w, blk] : c.blocks()) {
        QuotientBlock qb;
        bool ok = true;
        for (int n = c.d_min(); n <= c.d_max() && ok; ++n) {
            auto s = vr_relations(d, w, n, r);
            if (!s) {
                ok = false;
                break;
            }
            qb.invariants.push_back(cokernel_invariants(*s, Lattice::full(c.p(), c.prec(), c.rank(n, w))));
            qb.relations.push_back(std::move(*s));
        }
        if (ok)
            lvl.blocks[w] = std::move(qb);
        else
            lvl.untestable.push_back(w);
    }
    return lvl;
}

StrictTower build_tower(const DieudonneStructure& d, int R) {
    if (R < 0) fail(ErrorKind::InvalidArgument, "tower height must be >= 0");
    StrictTower t;
    t.base = d.V.empty() ? derive_verschiebung(d) : d;
    for (int r = 0; r <= R; ++r) t.levels.push_back(quotient_Wr(t.base, r));
    return t;
}

TowerReport validate_tower(const StrictTower& t) {
    TowerReport rep;
    const auto& d = t.base;
    const auto& c = d.c;
    const long p = c.p();
    const int prec = c.prec();
    const int R = static_cast<int>(t.levels.size()) - 1;

    // Relation lattice at (level r, weight w, degree n). Weights absent from the
    // complex carry the zero module.
    auto rel = [&](int r, const Weight& w, int n) -> std::optional<Lattice> {
        if (r < 0 || r > R || n < c.d_min() || n > c.d_max()) return std::nullopt;
        const auto& lvl = t.levels[static_cast<std::size_t>(r)];
        auto it = lvl.blocks.find(w);
        if (it != lvl.blocks.end()) return it->second.relations[idx(c, n)];
        if (!c.has(w) && c.status(w) != WeightStatus::OutOfWindow) return Lattice::zero(p, prec, 0);
        return std::nullopt;
    };
    auto check = [&](bool ok, int n, const Weight& w, const std::string& what) {
        ++rep.checks;
        if (!ok) rep.violations.push_back({n, w, what});
    };
    auto full = [&](const Weight& w, int n) { return Lattice::full(p, prec, c.rank(n, w)); };

    for (int r = 0; r <= R; ++r) {
        const std::string lv = " at level " + std::to_string(r);
        for (const auto& [w, qb] : t.levels[static_cast<std::size_t>(r)].blocks) {
            const Weight up = w.scaled(p), down = w.scaled(Rat(1, p));
            for (int n = c.d_min(); n <= c.d_max(); ++n) {
                const Lattice& S = qb.relations[idx(c, n)];
                if (r == 0) check(S == full(w, n), n, w, "axiom 1: level 0 is not zero");
                // d is well defined on the quotient.
                if (n < c.d_max()) {
                    if (auto S1 = rel(r, w, n + 1))
                        check(S1->contains(image(c.diff(n, w), S)), n, w, "axiom 3: d does not preserve relations" + lv);
                    else
                        ++rep.untestable;
                }
                // Axiom 6: dx divisible by p modulo relations implies x in im F + relations.
                {
                    Lattice A = full(w, n);
                    if (n < c.d_max()) {
                        auto S1 = rel(r, w, n + 1);
                        if (!S1) {
                            ++rep.untestable;
                            goto after6;
                        }
                        A = preimage(c.diff(n, w), full(w, n + 1).scaled(p) + *S1);
                    }
                    if (auto f = d.frobenius(n, down); f && c.status(down) != WeightStatus::OutOfWindow)
                        check((span(*f, prec) + S).contains(A), n, w, "axiom 6: element with dx in pX is not in im F" + lv);
                    else
                        ++rep.untestable;
                }
            after6:
                if (r == R) continue;
                auto Snext = rel(r + 1, w, n);
                if (!Snext) {
                    ++rep.untestable;
                    continue;
                }
                check(S.contains(*Snext), n, w, "axiom 2: restriction is not well defined" + lv);
                check(S == preimage(PMatrix::identity(p, prec, c.rank(n, w)).scaled(p), *Snext), n, w,
                      "axiom 7: ker(Res) differs from the p-torsion" + lv);
                if (auto g = vr_relations(d, w, n, r))
                    check(S == *g + *Snext, n, w, "axiom 8: ker(Res) is not spanned by im V^r + im dV^r" + lv);
                else
                    ++rep.untestable;
                // F: X_{r+1}(w) -> X_r(p w), V: X_r(w) -> X_{r+1}(w / p).
                auto f = d.frobenius(n, w);
                auto Sup = rel(r, up, n);
                if (f && Sup) {
                    check(Sup->contains(image(*f, *Snext)), n, w, "axiom 3: F is not well defined" + lv);
                    auto vup = d.verschiebung(n, up);
                    if (vup)
                        check(Snext->contains(span(*vup * *f - PMatrix::identity(p, prec, c.rank(n, w)).scaled(p), prec)),
                              n, w, "axiom 5: VF != p" + lv);
                } else {
                    ++rep.untestable;
                }
                auto v = d.verschiebung(n, w);
                auto Sdown = rel(r + 1, down, n);
                if (v && Sdown) {
                    check(Sdown->contains(image(*v, S)), n, w, "axiom 4: V is not well defined" + lv);
                    if (auto fd = d.frobenius(n, down))
                        check(S.contains(span(*fd * *v - PMatrix::identity(p, prec, c.rank(n, w)).scaled(p), prec)), n, w,
                              "axiom 5: FV != p" + lv);
                } else {
                    ++rep.untestable;
                }
            }
        }
    }

    // Converse: X_R / (V^r X_{R-r} + dV^r X_{R-r}) is X_r via Res^{R-r}.
    if (R >= 0)
        for (int r = 0; r <= R; ++r)
            for (const auto& [w, qb] : t.levels[static_cast<std::size_t>(r)].blocks)
                for (int n = c.d_min(); n <= c.d_max(); ++n) {
                    auto SR = rel(R, w, n);
                    auto g = vr_relations(d, w, n, r);
                    if (!SR || !g) {
                        ++rep.untestable;
                        continue;
                    }
                    check(*SR + *g == qb.relations[idx(c, n)], n, w,
                          "converse: level " + std::to_string(R) + " modulo V^" + std::to_string(r) + " differs from level " +
                              std::to_string(r));
                }
    return rep;
}

namespace {

// Greedy column basis of the span.
FpMatrix column_basis(const FpMatrix& m) {
    FpMatrix acc(m.p(), m.rows(), 0);
    for (std::size_t j = 0; j < m.cols(); ++j) {
        FpMatrix col(m.p(), m.rows(), 1);
        for (std::size_t i = 0; i < m.rows(); ++i) col(i, 0) = m(i, j);
        FpMatrix cand = acc.hcat(col);
        if (cand.rank() > acc.cols()) acc = cand;
    }
    return acc;
}

// Complement Q of span(U) from standard vectors, and the projection onto Q
// along U.
std::pair<FpMatrix, FpMatrix> complement_projection(const FpMatrix& u) {
    const long p = u.p();
    const std::size_t n = u.rows();
    FpMatrix acc = u, q(p, n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        FpMatrix e(p, n, 1);
        e(i, 0) = 1;
        FpMatrix cand = acc.hcat(e);
        if (cand.rank() > acc.cols()) {
            acc = cand;
            q = q.hcat(e);
        }
    }
    // acc = [U | Q] is invertible; projection = last q.cols() rows of acc^{-1}.
    FpMatrix proj(p, q.cols(), n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<long> e(n, 0);
        e[i] = 1;
        auto x = acc.solve(e);
        for (std::size_t k = 0; k < q.cols(); ++k) proj(k, i) = (*x)[u.cols() + k];
    }
    return {q, proj};
}

}  // namespace

bool check_mod_p_quotient_quasi_iso(const DieudonneStructure& d) {
    const auto& c = d.c;
    const long p = c.p();
    QuotientLevel w1 = quotient_Wr(d, 1);
    for (const auto& [w, qb] : w1.blocks) {
        FpComplex mp = reduce_mod_p(c, w);
        std::vector<FpMatrix> qs, projs;
        for (int n = c.d_min(); n <= c.d_max(); ++n) {
            FpMatrix u = column_basis(FpMatrix::reduce(qb.relations[idx(c, n)].basis()));
            auto [q, proj] = complement_projection(u);
            // The relations must contain pM, so W_1 is an F_p-complex.
            if (q.cols() != qb.invariants[idx(c, n)].torsion.size() + qb.invariants[idx(c, n)].free_rank) return false;
            qs.push_back(q);
            projs.push_back(proj);
        }
        FpComplex quo;
        quo.p = p;
        quo.d_min = c.d_min();
        for (const auto& q : qs) quo.dim.push_back(q.cols());
        for (std::size_t k = 0; k + 1 < qs.size(); ++k) quo.d.push_back(projs[k + 1] * mp.d[k] * qs[k]);
        FpChainMap pi{projs};
        if (!is_chain_map(mp, quo, pi)) return false;
        if (!is_quasi_isomorphism(mp, quo, pi)) return false;
    }
    return true;
}

}  // namespace drwlab

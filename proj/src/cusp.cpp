#include <algorithm>

#include "drwlab/drw.hpp"

namespace drwlab {

namespace {

Lattice span(const PMatrix& gens, int prec) {
    if (gens.cols() == 0) return Lattice::zero(gens.p(), prec, gens.rows());
    PMatrix g = gens;
    g.set_prec(prec);
    return Lattice::from_generators(g);
}

// Stage-j lattice at weight p^j c in stage-0 coordinates; zero when absent.
Lattice stage_or_zero(const SaturationResult& r, const DeRhamModel& m, int j, long c, int degree) {
    const auto& st = r.stages[static_cast<std::size_t>(j)];
    const Weight w = Weight::of({c}).scaled(ipow(m.ring.p, static_cast<unsigned>(j)));
    if (!st.d.c.has(w)) return Lattice::zero(m.ring.p, st.d.c.prec(), 0);
    return stage_lattice(r, j, Weight::of({c}), degree);
}

// iota: degree 0 is t^w -> t^w, degree 1 is g_w t^w dlog t -> g_w t^w dlog t.
bool matches_line(const CuspSaturation& cs, int j, long c, int deg, std::size_t* cusp_rank = nullptr,
                  std::size_t* line_rank = nullptr) {
    Lattice cl = stage_or_zero(cs.cusp_sat, cs.cusp, j, c, deg);
    Lattice ll = stage_or_zero(cs.line_sat, cs.line, j, c, deg);
    if (cusp_rank) *cusp_rank = cl.basis().cols();
    if (line_rank) *line_rank = ll.basis().cols();
    if (cl.basis().rows() == 0) return ll.basis().cols() == 0;
    PMatrix emb = cl.basis();
    const long w = c * ipow(cs.p, static_cast<unsigned>(j)).get_si();
    if (deg == 1) emb = emb.scaled(Rat(cs.cusp.cusp_scale.at(Weight::of({w}))));
    return span(emb, ll.prec()) == ll;
}

int log_floor(long p, long w) {
    int k = 0;
    for (long q = p; q <= w; q *= p) ++k;
    return k;
}

}  // namespace

bool CuspSaturation::ok() const {
    return degree2_zero && std::all_of(blocks.begin(), blocks.end(), [](const CuspComparisonBlock& b) { return b.iso; });
}

CuspSaturation cusp_saturation(long p, long w_max, int prec) {
    require_prime(p);
    if (w_max < p) fail(ErrorKind::WindowTooSmall, "cusp saturation needs w_max >= p");
    CuspSaturation cs;
    cs.p = p;
    cs.w_max = w_max;
    cs.depth = log_floor(p, w_max);
    cs.cusp = derham_complex(MonomialRing{RingKind::Cusp, 1, p, prec}, {0}, {w_max});
    cs.line = derham_complex(MonomialRing{RingKind::Affine, 1, p, prec}, {0}, {w_max});
    cs.cusp_sat = saturate(frobenius_lift_structure(cs.cusp), cs.depth);
    cs.line_sat = saturate(frobenius_lift_structure(cs.line), cs.depth);
    cs.degree2_zero = cs.cusp.complex.d_max() <= 1;
    for (long c = 0; c <= w_max; ++c) {
        int j = cs.depth;
        if (c > 0) {
            j = 0;
            for (long q = c * p; q <= w_max; q *= p) ++j;
        }
        for (int deg = 0; deg <= 1; ++deg) {
            CuspComparisonBlock b;
            b.weight = Rat(c);
            b.stage = j;
            b.degree = deg;
            b.iso = matches_line(cs, j, c, deg, &b.cusp_rank, &b.line_rank);
            cs.blocks.push_back(b);
        }
    }
    return cs;
}

CuspWitness cusp_F_dt(long p) {
    require_prime(p);
    CuspWitness out;
    out.p = p;
    // F^n(dt) = t^{p^n - 1} dt = (1/2) t^{w-2} dy = (1/3) t^{w-3} dx.
    for (int n = 1; n <= 8; ++n) {
        const long w = ipow(p, static_cast<unsigned>(n)).get_si();
        for (long g : {2L, 3L}) {
            if (p == g) continue;
            auto mono = cusp_monomial(w - g);
            if (!mono) continue;
            out.n = n;
            out.coefficient = Rat(1, g);
            out.monomial = cusp_monomial_string(w - g);
            out.differential = g == 2 ? "dy" : "dx";
            out.expression = "(1/" + std::to_string(g) + ")*" + (out.monomial == "1" ? "" : out.monomial + "*") + out.differential;
            out.verified = out.coefficient * g == 1 && 3 * mono->first + 2 * mono->second + g == w;
            return out;
        }
    }
    fail(ErrorKind::WindowTooSmall, "no witness for F^n(dt) with n <= 8");
}

CuspOmega2Report cusp_omega2(long p, long w_max) {
    require_prime(p);
    if (w_max < 5) fail(ErrorKind::WindowTooSmall, "Omega^2 of the cusp starts at weight 5");
    CuspOmega2Report rep;
    rep.p = p;
    // Omega^2 = R/(2x, 3y^2) dx^dy.
    rep.annihilator = p == 2 ? "(y^2)" : p == 3 ? "(x)" : "(x, y^2)";
    for (long w = 0; w <= w_max; ++w) {
        const long m = w - 5;
        std::size_t dim = 0;
        if (cusp_monomial(m)) {
            const bool hit = (p != 2 && cusp_monomial(m - 3)) || (p != 3 && cusp_monomial(m - 4));
            dim = hit ? 0 : 1;
        }
        rep.dims[w] = dim;
    }
    rep.omega2_weight5_nonzero = rep.dims.at(5) == 1;
    rep.saturated_degree2_zero = derham_complex(MonomialRing{RingKind::Cusp, 1, p, 2}, {0}, {w_max}).complex.d_max() <= 1;
    return rep;
}

bool SeminormalReport::ok() const {
    return std::all_of(w1_dims.begin(), w1_dims.end(), [](const auto& kv) { return kv.second == 1; });
}

SeminormalReport cusp_seminormal_h0(const CuspSaturation& cs) {
    const long p = cs.p;
    SeminormalReport rep;
    for (long c = 0; c * p <= cs.w_max; ++c) {
        int j = cs.depth - 1;
        if (c > 0) {
            j = 0;
            for (long q = c * p * p; q <= cs.w_max; q *= p) ++j;
        }
        const auto& st = cs.cusp_sat.stages[static_cast<std::size_t>(j)].d;
        const Weight w = Weight::of({c * ipow(p, static_cast<unsigned>(j)).get_si()});
        auto f = st.frobenius(0, w);
        // Only stages where both weights already agree with the line are trustworthy.
        const bool converged = matches_line(cs, j, c, 0) && matches_line(cs, j, c * p, 0);
        if (!converged || !st.c.has(w) || !f || f->rows() != f->cols() || f->rows() == 0) {
            rep.untestable.push_back(c);
            continue;
        }
        // V = p F^{-1}: M_{pw} -> M_w; W_1 Omega^0 = M_w / V M_{pw}.
        PMatrix v = solve_columns(*f, PMatrix::identity(p, st.c.prec(), f->rows()).scaled(Rat(p)));
        if (!v.is_integral()) {
            rep.w1_dims[c] = 0;
            continue;
        }
        auto inv = cokernel_invariants(span(v, st.c.prec()), Lattice::full(p, st.c.prec(), f->cols()));
        rep.w1_dims[c] = static_cast<std::size_t>(std::count(inv.torsion.begin(), inv.torsion.end(), 1));
        if (inv.free_rank || inv.unresolved || inv.torsion.size() != rep.w1_dims[c]) rep.w1_dims[c] = 0;
    }
    return rep;
}

}  // namespace drwlab

#include <random>
#include <set>

#include "drwlab/cli.hpp"
#include "drwlab/parallel.hpp"
#include "drwlab/witt.hpp"

namespace drwlab {

namespace {

RingKind ring_kind(const std::string& k) {
    if (k == "affine") return RingKind::Affine;
    if (k == "cusp") return RingKind::Cusp;
    return RingKind::Laurent;
}

std::vector<long> box(const JobConfig& c, long v) { return std::vector<long>(c.n, v); }
std::vector<Rat> rbox(const JobConfig& c, long v) { return std::vector<Rat>(c.n, Rat(v)); }

Json invariants_json(const CokernelInvariants& inv) {
    return {{"torsion", inv.torsion}, {"free_rank", inv.free_rank}, {"unresolved", inv.unresolved}};
}

IntegralFormModel forms(const JobConfig& c, int s) {
    return integral_forms(ring_kind(c.kind), c.n, c.p, s, rbox(c, c.wmin), rbox(c, c.wmax), c.prec);
}

DeRhamModel derham(const JobConfig& c, int prec) {
    return derham_complex(MonomialRing{ring_kind(c.kind), c.n, c.p, prec}, box(c, c.wmin), box(c, c.wmax));
}

// W(F_p) as the one-term Dieudonne complex Z_p with F = 1.
DieudonneStructure point(long p, int prec) {
    DieudonneStructure d;
    d.c = make_complex(p, prec, 0, {1}, {});
    d.F[Weight::untwisted()] = {PMatrix::identity(p, prec, 1)};
    return d;
}

std::vector<BasedComplex> corpus(const JobConfig& c) {
    std::mt19937_64 rng(c.seed);
    std::vector<BasedComplex> out;
    for (std::size_t i = 0; i < c.count; ++i) out.push_back(random_complex(rng, c.p, c.prec));
    return out;
}

// ---------------------------------------------------------------- compute

void compute_torus(const JobConfig& c, Report& rep) {
    auto m = forms(c, c.s);
    rep.prec_consumed = c.s;
    rep.add("model/dieudonne", validate_dieudonne(m.d).ok());
    Json ws = Json::array();
    for (const auto& [a, B] : m.bases) {
        Json wj;
        wj["weight"] = weight_json(a, c.p);
        Json ds = Json::array();
        for (int j = 0; j <= static_cast<int>(c.n); ++j) {
            Json labels = Json::array();
            for (const auto& S : m.labels.at(a)[static_cast<std::size_t>(j)]) labels.push_back(S);
            ds.push_back({{"degree", j}, {"dlog_labels", labels}, {"lattice", lattice_json(m.lattice(a, j))}});
        }
        wj["degrees"] = ds;
        ws.push_back(wj);
    }
    rep.data["weights"] = ws;
    if (c.R > 0) {
        auto t = drw_tower(m, c.R);
        Json levels = Json::array();
        for (const auto& lvl : t.levels) {
            Json blocks = Json::array();
            for (const auto& [w, qb] : lvl.blocks) {
                Json inv = Json::array();
                for (const auto& x : qb.invariants) inv.push_back(invariants_json(x));
                blocks.push_back({{"weight", weight_json(w, c.p)}, {"invariants", inv}});
            }
            levels.push_back({{"r", lvl.r}, {"blocks", blocks}, {"untestable", lvl.untestable.size()}});
        }
        rep.data["tower"] = levels;
    }
}

void compute_derham(const JobConfig& c, Report& rep) {
    auto m = derham(c, c.prec);
    rep.add("model/complex", validate(m.complex).ok());
    rep.data["complex"] = complex_json(m.complex);
}

void compute_witt_polys(const JobConfig& c, Report& rep) {
    const auto& s = structure_polys(c.p, c.r, witt_op_from_string(c.op));
    rep.add("witt/ghost-identity", verify_ghost_identity(s));
    Json polys = Json::array();
    for (const auto& f : s.polys) polys.push_back(f.to_string(s.variable_names()));
    rep.data = {{"p", c.p}, {"r", c.r}, {"op", c.op}, {"variables", s.variable_names()}, {"polys", polys}};
}

void compute_cusp_witness(const JobConfig& c, Report& rep) {
    auto w = cusp_F_dt(c.p);
    rep.add("cusp/witness", w.verified);
    rep.data = {{"p", c.p}, {"n", w.n}, {"expression", w.expression}, {"coefficient", w.coefficient.get_str()},
                {"monomial", w.monomial}, {"differential", w.differential}};
}

void compute_saturation(const JobConfig& c, Report& rep) {
    auto m = derham(c, c.prec);
    auto sat = saturate(frobenius_lift_structure(m), c.s);
    rep.prec_consumed = c.s;
    Json stages = Json::array();
    for (int j = 0; j <= c.s; ++j) {
        const auto& st = sat.stages[static_cast<std::size_t>(j)];
        const Rat scale = ppow(c.p, -j);
        Json blocks = Json::array();
        for (const auto& [w, blk] : st.d.c.blocks()) {
            const Weight base = w.scaled(scale);
            Json ds = Json::array();
            for (int n = st.d.c.d_min(); n <= st.d.c.d_max(); ++n) ds.push_back(lattice_json(stage_lattice(sat, j, base, n)));
            blocks.push_back({{"weight", weight_json(w, c.p)}, {"lattices", ds}});
        }
        stages.push_back({{"stage", j}, {"blocks", blocks}});
    }
    rep.data["stages"] = stages;
}

// ---------------------------------------------------------------- verify

void verify_etap(const JobConfig& c, Report& rep) {
    auto cs = corpus(c);
    rep.prec_consumed = 1;
    struct Out {
        std::vector<std::pair<int, bool>> deg;
        std::vector<std::string> msg;
    };
    auto res = parallel_map<Out>(cs.size(), [&](std::size_t i) {
        Out o;
        auto e = eta_p(cs[i]);
        auto h = cohomology(cs[i]), he = cohomology(e.complex);
        for (const auto& [key, g] : h) {
            const auto want = g.modulo_p_torsion();
            const auto& got = he.at(key);
            o.deg.emplace_back(key.first, got == want);
            o.msg.push_back("H(eta_p M) = " + got.to_string() + ", H(M)/H(M)[p] = " + want.to_string());
        }
        return o;
    });
    for (std::size_t i = 0; i < res.size(); ++i)
        for (std::size_t k = 0; k < res[i].deg.size(); ++k)
            rep.add("etap/" + std::to_string(i), res[i].deg[k].second, res[i].msg[k], res[i].deg[k].first);
}

void verify_gamma(const JobConfig& c, Report& rep) {
    auto cs = corpus(c);
    rep.prec_consumed = 1;
    auto res = parallel_map<std::pair<bool, bool>>(cs.size(), [&](std::size_t i) {
        auto e = eta_p(cs[i]);
        auto b = bockstein(cs[i]);
        auto g = gamma_map(cs[i], e, b);
        bool chain = true, quasi = true;
        for (const auto& [w, f] : g.map) {
            const auto& src = g.source.at(w);
            const auto& dst = b.blocks.at(w).complex;
            chain = chain && is_chain_map(src, dst, f);
            quasi = quasi && chain && is_quasi_isomorphism(src, dst, f);
        }
        return std::make_pair(chain, quasi);
    });
    for (std::size_t i = 0; i < res.size(); ++i) {
        rep.add("gamma/" + std::to_string(i) + "/chain-map", res[i].first);
        rep.add("gamma/" + std::to_string(i) + "/quasi-iso", res[i].second);
    }
}

void verify_cartier(const JobConfig& c, Report& rep) {
    auto m1 = derham(c, 1);
    auto iso = verify_cartier_iso(m1);
    for (const auto& b : iso.blocks) {
        const bool bij = b.source_dim == b.target_dim && b.matrix.rank() == b.source_dim;
        const std::string msg = std::to_string(b.source_dim) + " -> " + std::to_string(b.target_dim) + ", rank " +
                                std::to_string(b.matrix.rank());
        if (iso.hypothesis_met)
            rep.add("cartier/iso", bij, msg, b.degree, b.weight);
        else if (!bij)
            rep.untestable("cartier/iso", "not smooth; Cartier isomorphism not expected: " + msg, b.degree, b.weight);
    }
    for (const auto& [deg, w] : iso.unhit)
        if (iso.hypothesis_met) rep.add("cartier/unhit", false, "H(Omega/p) nonzero without a p-th root weight", deg, w);
    if (iso.untestable) rep.untestable("cartier/window", std::to_string(iso.untestable) + " weights have p*a outside the window");

    if (c.prec >= 2) {
        auto d = frobenius_lift_structure(derham(c, c.prec));
        auto ct = cartier_type_check(d);
        if (ring_kind(c.kind) == RingKind::Cusp) {
            rep.add("cartier/type-fails-on-cusp", !ct.cartier_type);
            return;
        }
        rep.add("cartier/type", ct.cartier_type);
        for (const auto& v : ct.defects) rep.add("cartier/type", false, v.message, v.degree, v.weight);
        const int depth = std::max(c.s, 1);
        auto cc = cartier_criterion_check(d, depth);
        rep.prec_consumed = depth;
        rep.add("cartier/criterion", cc.ok, std::to_string(cc.comparisons) + " stage comparisons");
        for (const auto& f : cc.failures) rep.add("cartier/criterion", false, f);
    }
}

void verify_tower(const JobConfig& c, Report& rep) {
    const int s = std::max(c.s, c.R);
    auto m = forms(c, s);
    auto t = drw_tower(m, c.R);
    rep.prec_consumed = s;
    auto tr = validate_tower(t);
    rep.add("tower/axioms", tr.ok(), std::to_string(tr.checks) + " lattice checks");
    for (const auto& v : tr.violations) rep.add("tower/" + v.message.substr(0, v.message.find(':')), false, v.message, v.degree, v.weight);
    if (tr.untestable) rep.untestable("tower/window", std::to_string(tr.untestable) + " checks leave the window");
    rep.add("tower/mod-p-quotient", check_mod_p_quotient_quasi_iso(m.d));
    if (c.n == 1 && ring_kind(c.kind) == RingKind::Laurent) {
        // W_r Omega^0 at weight a is Z/p^{r - depth a}.
        for (int r = 1; r <= c.R; ++r)
            for (const auto& [w, qb] : t.levels[static_cast<std::size_t>(r)].blocks) {
                const int e = std::max(r - w.depth(c.p), 0);
                const auto& inv = qb.invariants[0];
                rep.add("tower/degree0-oracle/r" + std::to_string(r),
                        inv.torsion == (e ? std::vector<int>{e} : std::vector<int>{}) && inv.free_rank == 0, "", 0, w);
            }
    }
}

void verify_nygaard(const JobConfig& c, Report& rep) {
    const int kmax = 3;
    auto m = forms(c, std::max(c.s, 1));
    auto N = nygaard(m.d, kmax);
    rep.prec_consumed = std::max(c.s, 1);
    for (const auto& w : N.untestable) rep.untestable("nygaard/window", "V from p*w unavailable", std::nullopt, w);
    for (int k = 0; k <= kmax; ++k) {
        auto r = nygaard_graded_compare(N, k);
        rep.add("nygaard/k" + std::to_string(k), r.ok(), std::to_string(r.checks) + " checks");
        for (const auto& v : r.violations) rep.add("nygaard/k" + std::to_string(k), false, v.message, v.degree, v.weight);
    }
    auto P = nygaard(point(c.p, c.prec), kmax);
    for (int k = 0; k <= kmax + 1; ++k)
        rep.add("nygaard/point/N" + std::to_string(k),
                P.at(k, Weight::untwisted(), 0) == Lattice::full(c.p, c.prec, 1).scaled(ppow(c.p, k)), "N^k W(F_p) = p^k W(F_p)");
    for (int k = 0; k <= kmax; ++k) rep.add("nygaard/point/gr" + std::to_string(k), nygaard_graded_compare(P, k).ok());
}

void verify_nu(const JobConfig& c, Report& rep) {
    auto m = forms(c, std::max(c.s, 1));
    auto t = drw_tower(m, 1);
    rep.prec_consumed = std::max(c.s, 1);
    auto nr = nu_comparison(m, t);
    for (const auto& b : nr.blocks)
        rep.add("nu/iso", b.iso, std::to_string(b.source_dim) + " -> " + std::to_string(b.target_dim), b.degree, b.weight);
    if (nr.untestable) rep.untestable("nu/window", std::to_string(nr.untestable) + " weights leave the window");
}

void verify_oracle(const JobConfig& c, Report& rep) {
    auto r = oracle_compare_saturation(ring_kind(c.kind), c.n, c.p, c.s, box(c, c.wmin), box(c, c.wmax), c.prec);
    rep.prec_consumed = c.s;
    rep.add("oracle/compared", r.comparisons > 0, std::to_string(r.comparisons) + " lattices");
    for (const auto& mm : r.mismatches)
        rep.add("oracle/lattice", false, "expected " + mm.expected + ", got " + mm.actual, mm.degree, mm.weight);
    rep.data["comparisons"] = r.comparisons;
}

void verify_cusp(const JobConfig& c, Report& rep) {
    const long p = c.p;
    auto w = cusp_F_dt(p);
    rep.add("cusp/witness", w.verified, "F^" + std::to_string(w.n) + "(dt) = " + w.expression);
    static const std::map<long, std::pair<int, std::string>> expected{
        {2, {3, "(1/3)*x*y*dx"}}, {3, {2, "(1/2)*x*y^2*dy"}}, {5, {1, "(1/2)*x*dy"}}};
    if (auto it = expected.find(p); it != expected.end())
        rep.add("cusp/witness-formula", w.n == it->second.first && w.expression == it->second.second, w.expression);
    rep.data["witness"] = {{"n", w.n}, {"expression", w.expression}};

    const long w_max = c.wmax > 2 ? c.wmax : 2 * p * p * p;
    auto cs = cusp_saturation(p, w_max, c.prec);
    rep.prec_consumed = cs.depth;
    for (const auto& b : cs.blocks)
        rep.add("cusp/saturation", b.iso,
                "stage " + std::to_string(b.stage) + ", ranks " + std::to_string(b.cusp_rank) + "/" + std::to_string(b.line_rank),
                b.degree, Weight(std::vector<Rat>{b.weight}));
    rep.add("cusp/saturated-degree2-zero", cs.degree2_zero);
    auto o2 = cusp_omega2(p, w_max);
    rep.add("cusp/omega2-weight5-nonzero", o2.omega2_weight5_nonzero, "annihilator " + o2.annihilator);
    rep.data["omega2_annihilator"] = o2.annihilator;
    auto sn = cusp_seminormal_h0(cs);
    for (const auto& [wt, dim] : sn.w1_dims)
        rep.add("cusp/seminormal-h0", dim == 1, "dim " + std::to_string(dim), 0, Weight::of({wt}));
    for (long wt : sn.untestable) rep.untestable("cusp/seminormal-h0", "stage not converged in window", 0, Weight::of({wt}));
}

void verify_witt(const JobConfig& c, Report& rep) {
    const long p = c.p;
    const int rmax = std::min(c.r, 3);
    for (int r = 1; r <= rmax; ++r)
        for (auto op : {WittOp::Sum, WittOp::Product})
            rep.add(std::string("witt/ghost/") + to_string(op) + "/r" + std::to_string(r),
                    verify_ghost_identity(structure_polys(p, r, op)));
    // W_r(F_p) = Z/p^r, exhaustively.
    const ZmodRing fp(p, 1);
    for (int r = 1; r <= rmax; ++r) {
        const long size = ipow(p, static_cast<unsigned>(r)).get_si();
        std::vector<WittVector<ZmodRing>> all;
        std::vector<Int> image;
        std::set<Int> seen;
        for (long code = 0; code < size; ++code) {
            WittVector<ZmodRing> v = witt_zero(fp, p, r);
            long x = code;
            for (auto& comp : v.c) {
                comp = x % p;
                x /= p;
            }
            image.push_back(witt_fp_to_int(p, v.c));
            seen.insert(image.back());
            all.push_back(v);
        }
        rep.add("witt/fp-bijective/r" + std::to_string(r), static_cast<long>(seen.size()) == size);
        bool hom = true;
        const Int mod = size;
        for (long i = 0; i < size && hom; ++i)
            for (long j = 0; j < size && hom; ++j) {
                const Int s = witt_fp_to_int(p, witt_add(all[static_cast<std::size_t>(i)], all[static_cast<std::size_t>(j)]).c);
                const Int m = witt_fp_to_int(p, witt_mul(all[static_cast<std::size_t>(i)], all[static_cast<std::size_t>(j)]).c);
                Int es = (image[static_cast<std::size_t>(i)] + image[static_cast<std::size_t>(j)]) % mod;
                Int em = (image[static_cast<std::size_t>(i)] * image[static_cast<std::size_t>(j)]) % mod;
                hom = s == es && m == em;
            }
        rep.add("witt/fp-ring-iso/r" + std::to_string(r), hom);
    }
    const int r = std::max(2, std::min(c.r, 3));
    auto m = integral_forms(RingKind::Laurent, 1, p, r + 1, {Rat(-2)}, {Rat(2)}, r + 6);
    auto t = drw_tower(m, r);
    auto x = witt_crosscheck(t, r, c.count, c.seed);
    rep.add("witt/degree0-crosscheck", x.ok(), std::to_string(x.checks) + " checks");
    for (const auto& f : x.failures) rep.add("witt/degree0-crosscheck", false, f);
}

}  // namespace

Report run_compute(const JobConfig& c) {
    Report rep;
    rep.job = c;
    if (c.target == "torus") compute_torus(c, rep);
    else if (c.target == "derham") compute_derham(c, rep);
    else if (c.target == "witt-polys") compute_witt_polys(c, rep);
    else if (c.target == "cusp-witness") compute_cusp_witness(c, rep);
    else if (c.target == "saturation") compute_saturation(c, rep);
    else fail(ErrorKind::InvalidArgument, "unknown compute target '" + c.target + "'");
    return rep;
}

Report run_verify(const JobConfig& c) {
    Report rep;
    rep.job = c;
    if (c.target == "etap") verify_etap(c, rep);
    else if (c.target == "gamma") verify_gamma(c, rep);
    else if (c.target == "cartier") verify_cartier(c, rep);
    else if (c.target == "tower") verify_tower(c, rep);
    else if (c.target == "nygaard") verify_nygaard(c, rep);
    else if (c.target == "nu") verify_nu(c, rep);
    else if (c.target == "oracle") verify_oracle(c, rep);
    else if (c.target == "cusp") verify_cusp(c, rep);
    else if (c.target == "witt") verify_witt(c, rep);
    else fail(ErrorKind::InvalidArgument, "unknown verify suite '" + c.target + "'");
    return rep;
}

}  // namespace drwlab

#include "drwlab/drw.hpp"

#include <algorithm>
#include <cmath>

namespace drwlab {

namespace {

std::size_t idx(const BasedComplex& c, int n) { return static_cast<std::size_t>(n - c.d_min()); }

Lattice span(const PMatrix& gens, int prec) {
    if (gens.cols() == 0) return Lattice::zero(gens.p(), prec, gens.rows());
    PMatrix g = gens;
    g.set_prec(prec);
    return Lattice::from_generators(g);
}

Int ceil_div(const Rat& q) {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Int floor_div(const Rat& q) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

// Weights (1/P) Z^n inside [lo, hi].
std::vector<Weight> grid(const std::vector<Rat>& lo, const std::vector<Rat>& hi, const Int& P) {
    const std::size_t n = lo.size();
    std::vector<long> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = ceil_div(lo[i] * Rat(P)).get_si();
        b[i] = floor_div(hi[i] * Rat(P)).get_si();
        if (a[i] > b[i]) return {};
    }
    std::vector<Weight> out;
    std::vector<long> cur = a;
    while (true) {
        std::vector<Rat> c;
        for (long x : cur) c.emplace_back(Rat(x) / Rat(P));
        out.emplace_back(std::move(c));
        std::size_t i = 0;
        for (; i < n; ++i) {
            if (cur[i] < b[i]) {
                ++cur[i];
                break;
            }
            cur[i] = a[i];
        }
        if (i == n) break;
    }
    return out;
}

std::string basis_string(const Lattice& l) {
    std::string s = "[";
    const PMatrix& b = l.basis();
    for (std::size_t j = 0; j < b.cols(); ++j) {
        s += j ? "; " : "";
        for (std::size_t i = 0; i < b.rows(); ++i) s += (i ? "," : "") + b(i, j).get_str();
    }
    return s + "]";
}

}  // namespace

Lattice IntegralFormModel::lattice(const Weight& a, int degree) const {
    auto it = bases.find(a);
    if (it == bases.end()) fail(ErrorKind::WindowTooSmall, "integral forms model has no weight " + a.to_string());
    return span(it->second.at(idx(d.c, degree)), d.c.prec());
}

IntegralFormModel integral_forms(RingKind kind, std::size_t n, long p, int s, const std::vector<Rat>& lo,
                                 const std::vector<Rat>& hi, int prec) {
    require_prime(p);
    if (kind == RingKind::Cusp) fail(ErrorKind::InvalidArgument, "integral forms cover tori and affine spaces only");
    if (n == 0 || lo.size() != n || hi.size() != n) fail(ErrorKind::InvalidArgument, "window dimension must equal n");
    if (s < 0) fail(ErrorKind::InvalidArgument, "depth must be >= 0");
    // solve_integrality spends up to s digits.
    const int out_prec = prec - s;
    if (out_prec < 2) fail(ErrorKind::PrecisionExhausted, "integral forms of depth " + std::to_string(s) + " need prec >= " + std::to_string(s + 2));
    const bool affine = kind == RingKind::Affine;
    IntegralFormModel m;
    m.kind = kind;
    m.n = n;
    m.s = s;
    m.lo = lo;
    m.hi = hi;
    BasedComplex c(p, out_prec, 0, static_cast<int>(n));
    for (const auto& a : grid(lo, hi, ipow(p, static_cast<unsigned>(s)))) {
        if (affine && std::any_of(a.coords.begin(), a.coords.end(), [](const Rat& x) { return x < 0; })) continue;
        auto labels = dlog_labels(n, a.coords, affine);
        std::vector<PMatrix> D, B;
        for (std::size_t j = 0; j <= n; ++j) {
            PMatrix dj = j < n ? dlog_differential(p, prec, a.coords, labels[j], labels[j + 1])
                               : PMatrix(p, prec, 0, labels[j].size());
            Lattice L = (dj.rows() == 0 || dj.is_zero()) ? Lattice::full(p, prec, labels[j].size())
                                                         : solve_integrality(dj, prec);
            PMatrix b = L.basis();
            b.set_prec(out_prec);
            D.push_back(dj);
            B.push_back(b);
        }
        Block blk;
        for (std::size_t j = 0; j <= n; ++j) blk.rank.push_back(labels[j].size());
        for (std::size_t j = 0; j < n; ++j) {
            PMatrix dn = solve_columns(B[j + 1], D[j] * B[j]);
            if (!dn.is_integral()) fail(ErrorKind::AxiomViolation, "d leaves the integral forms at " + a.to_string());
            dn.set_prec(out_prec);
            blk.d.push_back(dn);
        }
        c.set_block(a, blk);
        m.bases[a] = std::move(B);
        m.labels[a] = std::move(labels);
    }
    c.window = WeightWindow::box(lo, hi, s);
    c.window.nonnegative = affine;
    m.d.c = c;

    // F: a -> pa on coefficients; V: b -> b/p times p.
    for (const auto& [a, B] : m.bases) {
        const Weight up = a.scaled(p), down = a.scaled(Rat(1, p));
        if (c.status(up) != WeightStatus::OutOfWindow) {
            std::vector<PMatrix> fs;
            for (int j = 0; j <= static_cast<int>(n); ++j) {
                const auto k = static_cast<std::size_t>(j);
                PMatrix f = c.has(up) ? solve_columns(m.bases.at(up)[k], B[k]) : PMatrix(p, out_prec, 0, B[k].cols());
                f.set_prec(out_prec);
                fs.push_back(f);
            }
            m.d.F[a] = std::move(fs);
        }
        if (c.has(down)) {
            std::vector<PMatrix> vs;
            for (int j = 0; j <= static_cast<int>(n); ++j) {
                const auto k = static_cast<std::size_t>(j);
                PMatrix v = solve_columns(m.bases.at(down)[k], B[k].scaled(p));
                if (!v.is_integral()) fail(ErrorKind::AxiomViolation, "V leaves the integral forms at " + a.to_string());
                v.set_prec(out_prec);
                vs.push_back(v);
            }
            m.d.V[a] = std::move(vs);
        } else if (c.status(down) == WeightStatus::Absent) {
            std::vector<PMatrix> vs;
            for (const auto& b : B) vs.emplace_back(p, out_prec, 0, b.cols());
            m.d.V[a] = std::move(vs);
        }
    }
    return m;
}

OracleReport oracle_compare_saturation(RingKind kind, std::size_t n, long p, int s, const std::vector<long>& lo,
                                       const std::vector<long>& hi, int prec) {
    if (lo.size() != n || hi.size() != n) fail(ErrorKind::InvalidArgument, "window dimension must equal n");
    const long P = ipow(p, static_cast<unsigned>(s)).get_si();
    std::vector<long> dlo, dhi;
    std::vector<Rat> flo, fhi;
    for (std::size_t i = 0; i < n; ++i) {
        dlo.push_back(lo[i] * P);
        dhi.push_back(hi[i] * P);
        flo.emplace_back(lo[i]);
        fhi.emplace_back(hi[i]);
    }
    auto dr = derham_complex(MonomialRing{kind, n, p, prec}, dlo, dhi);
    auto sat = saturate(frobenius_lift_structure(dr), s);
    auto forms = integral_forms(kind, n, p, s, flo, fhi, prec);
    OracleReport rep;
    for (const auto& [a, B] : forms.bases)
        for (int j = 0; j <= static_cast<int>(n); ++j) {
            ++rep.comparisons;
            Lattice expected = forms.lattice(a, j).scaled(ppow(p, j * s));
            Lattice actual = stage_lattice(sat, s, a, j);
            if (expected != actual) rep.mismatches.push_back({a, j, basis_string(expected), basis_string(actual)});
        }
    return rep;
}

StrictTower drw_tower(const IntegralFormModel& m, int R) {
    if (m.s < R) fail(ErrorKind::InvalidArgument, "tower height R needs integral forms of depth s >= R");
    return build_tower(m.d, R);
}

bool NuReport::ok() const {
    return std::all_of(blocks.begin(), blocks.end(), [](const NuBlock& b) { return b.iso; });
}

NuReport nu_comparison(const IntegralFormModel& m, const StrictTower& t) {
    if (t.levels.size() < 2) fail(ErrorKind::InvalidArgument, "nu comparison needs tower level 1");
    const auto& c = m.d.c;
    const long p = c.p();
    NuReport rep;
    const auto& lvl = t.levels[1];
    rep.untestable = lvl.untestable.size();
    for (const auto& [w, qb] : lvl.blocks)
        for (int j = c.d_min(); j <= c.d_max(); ++j) {
            NuBlock nb;
            nb.weight = w;
            nb.degree = j;
            const Lattice& S = qb.relations[idx(c, j)];
            const auto& inv = qb.invariants[idx(c, j)];
            nb.target_dim = inv.torsion.size() + inv.free_rank + inv.unresolved;
            const std::size_t rank = c.rank(j, w);
            const Lattice full = Lattice::full(p, c.prec(), rank);
            if (!w.is_integral()) {
                nb.source_dim = 0;
                nb.iso = S == full;
            } else {
                nb.source_dim = m.labels.at(w)[idx(c, j)].size();
                // nu(x^a dlog_S) = class of the dlog basis vector e_S.
                PMatrix nu = solve_columns(m.bases.at(w)[idx(c, j)], PMatrix::identity(p, c.prec(), rank));
                bool elementary = inv.free_rank == 0 && inv.unresolved == 0 &&
                                  std::all_of(inv.torsion.begin(), inv.torsion.end(), [](int e) { return e == 1; });
                nb.iso = nu.is_integral() && elementary && inv.torsion.size() == nb.source_dim &&
                         S + span(nu, c.prec()) == full;
            }
            rep.blocks.push_back(nb);
        }
    return rep;
}

}  // namespace drwlab

#include "drwlab/derham.hpp"

#include <algorithm>

namespace drwlab {

namespace {

std::size_t idx(const BasedComplex& c, int n) { return static_cast<std::size_t>(n - c.d_min()); }

std::vector<Subset> subsets_of_size(std::size_t n, std::size_t k) {
    std::vector<Subset> out;
    Subset cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

// Sign of moving dlog x_i in front of the sorted factors of s into its slot.
int insertion_sign(const Subset& s, std::size_t i) {
    std::size_t below = 0;
    for (auto x : s)
        if (x < i) ++below;
    return below % 2 ? -1 : 1;
}

Subset with(const Subset& s, std::size_t i) {
    Subset t = s;
    t.insert(std::upper_bound(t.begin(), t.end(), i), i);
    return t;
}

std::vector<std::vector<long>> box_points(const std::vector<long>& lo, const std::vector<long>& hi) {
    std::vector<std::vector<long>> pts;
    std::vector<long> cur = lo;
    if (lo.empty()) return pts;
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (lo[i] > hi[i]) return pts;
    while (true) {
        pts.push_back(cur);
        std::size_t i = 0;
        for (; i < cur.size(); ++i) {
            if (cur[i] < hi[i]) {
                ++cur[i];
                break;
            }
            cur[i] = lo[i];
        }
        if (i == cur.size()) break;
    }
    return pts;
}

Weight weight_of(const std::vector<long>& a) {
    std::vector<Rat> c;
    for (long x : a) c.emplace_back(x);
    return Weight(std::move(c));
}

std::vector<long> exps_of(const Weight& w) {
    std::vector<long> a;
    for (const auto& x : w.coords) a.push_back(x.get_num().get_si());
    return a;
}

// p-adic generator of the lattice spanned by the available images of dx and dy.
std::optional<Int> cusp_generator(long p, long w) {
    std::optional<int> best;
    if (cusp_monomial(w - 2)) best = valuation(Rat(2), p);
    if (cusp_monomial(w - 3)) best = std::min(best.value_or(kInfVal), valuation(Rat(3), p));
    if (!best) return std::nullopt;
    return ipow(p, static_cast<unsigned>(*best));
}

}  // namespace

std::vector<std::vector<Subset>> dlog_labels(std::size_t n, const std::vector<Rat>& a, bool affine) {
    std::vector<std::vector<Subset>> labels(n + 1);
    for (std::size_t j = 0; j <= n; ++j)
        for (const auto& s : subsets_of_size(n, j))
            if (!affine || std::all_of(s.begin(), s.end(), [&](std::size_t i) { return a[i] != 0; }))
                labels[j].push_back(s);
    return labels;
}

PMatrix dlog_differential(long p, int prec, const std::vector<Rat>& a, const std::vector<Subset>& src,
                          const std::vector<Subset>& dst) {
    PMatrix m(p, prec, dst.size(), src.size());
    for (std::size_t c = 0; c < src.size(); ++c) {
        const Subset& s = src[c];
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0 || std::binary_search(s.begin(), s.end(), i)) continue;
            auto it = std::find(dst.begin(), dst.end(), with(s, i));
            if (it == dst.end()) continue;
            m(static_cast<std::size_t>(it - dst.begin()), c) = a[i] * insertion_sign(s, i);
        }
    }
    return m;
}

const char* to_string(RingKind k) {
    switch (k) {
    case RingKind::Laurent: return "laurent";
    case RingKind::Affine: return "affine";
    case RingKind::Cusp: return "cusp";
    }
    return "?";
}

std::optional<std::pair<int, int>> cusp_monomial(long m) {
    if (m < 0 || m == 1) return std::nullopt;
    if (m % 2 == 0) return std::make_pair(0, static_cast<int>(m / 2));
    return std::make_pair(1, static_cast<int>((m - 3) / 2));
}

std::string cusp_monomial_string(long m) {
    auto e = cusp_monomial(m);
    if (!e) fail(ErrorKind::InvalidArgument, "no monomial of weight " + std::to_string(m) + " in Z[t^2, t^3]");
    std::vector<std::string> parts;
    if (e->first) parts.push_back("x");
    if (e->second == 1) parts.push_back("y");
    if (e->second > 1) parts.push_back("y^" + std::to_string(e->second));
    if (parts.empty()) return "1";
    std::string s = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) s += "*" + parts[i];
    return s;
}

DeRhamModel derham_complex(const MonomialRing& ring, const std::vector<long>& lo, const std::vector<long>& hi) {
    require_prime(ring.p);
    if (ring.prec < 1) fail(ErrorKind::InvalidArgument, "precision must be >= 1");
    const long p = ring.p;
    DeRhamModel m;
    m.ring = ring;
    if (ring.kind == RingKind::Cusp) {
        if (ring.n != 1 || lo.size() != 1 || hi.size() != 1 || lo[0] < 0)
            fail(ErrorKind::InvalidArgument, "cusp windows are intervals [lo, hi] with lo >= 0");
        m.complex = BasedComplex(p, ring.prec, 0, 1);
        for (long w = lo[0]; w <= hi[0]; ++w) {
            if (!cusp_monomial(w)) continue;
            const Weight wt = Weight::of({w});
            auto g = cusp_generator(p, w);
            Block b;
            b.rank = {1, g ? 1u : 0u};
            b.d = {g ? PMatrix::from_rows(p, ring.prec, {{Rat(w) / Rat(*g)}}) : PMatrix(p, ring.prec, 0, 1)};
            m.complex.set_block(wt, b);
            m.labels[wt] = {{Subset{}}, g ? std::vector<Subset>{{0}} : std::vector<Subset>{}};
            if (g) m.cusp_scale[wt] = *g;
        }
        std::vector<Rat> l{Rat(lo[0])}, h{Rat(hi[0])};
        m.complex.window = WeightWindow::box(l, h, 0);
        m.complex.window.depth_exhaustive = true;
        m.complex.window.nonnegative = true;
        return m;
    }
    const std::size_t n = ring.n;
    if (n == 0 || lo.size() != n || hi.size() != n) fail(ErrorKind::InvalidArgument, "window dimension must equal n");
    const bool affine = ring.kind == RingKind::Affine;
    m.complex = BasedComplex(p, ring.prec, 0, static_cast<int>(n));
    for (const auto& a : box_points(lo, hi)) {
        if (affine && std::any_of(a.begin(), a.end(), [](long x) { return x < 0; })) continue;
        const Weight w = weight_of(a);
        auto labels = dlog_labels(n, w.coords, affine);
        Block b;
        for (const auto& l : labels) b.rank.push_back(l.size());
        for (std::size_t j = 0; j < n; ++j) b.d.push_back(dlog_differential(p, ring.prec, w.coords, labels[j], labels[j + 1]));
        m.complex.set_block(w, b);
        m.labels[w] = std::move(labels);
    }
    std::vector<Rat> l, h;
    for (std::size_t i = 0; i < n; ++i) {
        l.emplace_back(lo[i]);
        h.emplace_back(hi[i]);
    }
    m.complex.window = WeightWindow::box(l, h, 0);
    m.complex.window.depth_exhaustive = true;
    m.complex.window.nonnegative = affine;
    return m;
}

DieudonneStructure frobenius_lift_structure(const DeRhamModel& m) {
    const auto& c = m.complex;
    const long p = c.p();
    DieudonneStructure d;
    d.c = c;
    d.algebra = true;
    for (const auto& [w, lab] : m.labels) {
        const Weight t = w.scaled(p);
        if (c.status(t) == WeightStatus::OutOfWindow) continue;
        std::vector<PMatrix> comps;
        for (int n = c.d_min(); n <= c.d_max(); ++n) {
            PMatrix f(p, c.prec(), c.rank(n, t), c.rank(n, w));
            if (c.has(t)) {
                const auto& src = lab[idx(c, n)];
                const auto& dst = m.labels.at(t)[idx(c, n)];
                for (std::size_t k = 0; k < src.size(); ++k) {
                    auto r = static_cast<std::size_t>(std::find(dst.begin(), dst.end(), src[k]) - dst.begin());
                    Rat v = 1;
                    if (m.ring.kind == RingKind::Cusp && n == 1) v = Rat(m.cusp_scale.at(w)) / Rat(m.cusp_scale.at(t));
                    f(r, k) = v;
                }
            }
            comps.push_back(f);
        }
        d.F[w] = std::move(comps);
    }
    // F(x) = x^p on the ring generators.
    std::vector<Weight> gens;
    if (m.ring.kind == RingKind::Cusp) {
        gens = {Weight::of({3}), Weight::of({2})};
    } else {
        for (std::size_t i = 0; i < m.ring.n; ++i) {
            std::vector<long> e(m.ring.n, 0);
            e[i] = 1;
            gens.push_back(weight_of(e));
            if (m.ring.kind == RingKind::Laurent) {
                e[i] = -1;
                gens.push_back(weight_of(e));
            }
        }
    }
    for (const auto& g : gens)
        if (c.has(g) && c.has(g.scaled(p))) d.congruences.push_back({g, {Rat(1)}, {Rat(1)}});
    return d;
}

// ---------------------------------------------------------------- forms

Form Form::monomial(const std::vector<long>& a, const Subset& s, const Rat& c) {
    Form f;
    if (c != 0) f.terms[{a, s}] = c;
    return f;
}

int Form::degree() const { return terms.empty() ? 0 : static_cast<int>(terms.begin()->first.second.size()); }

Form Form::operator+(const Form& o) const {
    Form r = *this;
    for (const auto& [k, v] : o.terms) {
        Rat s = r.terms[k] + v;
        if (s == 0)
            r.terms.erase(k);
        else
            r.terms[k] = s;
    }
    return r;
}

Form Form::scaled(const Rat& c) const {
    if (c == 0) return {};
    Form r = *this;
    for (auto& [k, v] : r.terms) v *= c;
    return r;
}

std::string Form::to_string() const {
    if (terms.empty()) return "0";
    std::string s;
    for (const auto& [k, v] : terms) {
        if (!s.empty()) s += " + ";
        s += v.get_str() + "*x^(";
        for (std::size_t i = 0; i < k.first.size(); ++i) s += (i ? "," : "") + std::to_string(k.first[i]);
        s += ")";
        for (auto i : k.second) s += "*dlog" + std::to_string(i);
    }
    return s;
}

Form d(const Form& f) {
    Form out;
    for (const auto& [k, v] : f.terms) {
        const auto& [a, s] = k;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0 || std::binary_search(s.begin(), s.end(), i)) continue;
            out = out + Form::monomial(a, with(s, i), v * a[i] * insertion_sign(s, i));
        }
    }
    return out;
}

Form wedge(const Form& x, const Form& y) {
    Form out;
    for (const auto& [kx, vx] : x.terms)
        for (const auto& [ky, vy] : y.terms) {
            const auto& [a, s] = kx;
            const auto& [b, t] = ky;
            Subset u;
            std::set_union(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(u));
            if (u.size() != s.size() + t.size()) continue;
            std::size_t inv = 0;
            for (auto i : s)
                for (auto j : t)
                    if (i > j) ++inv;
            std::vector<long> e(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) e[i] = a[i] + b[i];
            out = out + Form::monomial(e, u, vx * vy * (inv % 2 ? -1 : 1));
        }
    return out;
}

std::vector<Rat> coordinates(const DeRhamModel& m, const Weight& a, int j, const Form& f) {
    const auto& lab = m.labels.at(a)[static_cast<std::size_t>(j)];
    const auto e = exps_of(a);
    std::vector<Rat> v(lab.size(), 0);
    for (const auto& [k, c] : f.terms) {
        if (k.first != e) fail(ErrorKind::InvalidArgument, "form is not homogeneous of weight " + a.to_string());
        auto it = std::find(lab.begin(), lab.end(), k.second);
        if (it == lab.end()) fail(ErrorKind::InvalidArgument, "form has a term outside the model basis");
        Rat x = c;
        if (m.ring.kind == RingKind::Cusp && j == 1) x /= Rat(m.cusp_scale.at(a));
        v[static_cast<std::size_t>(it - lab.begin())] = x;
    }
    return v;
}

bool leibniz_holds(const Form& a, const Form& b) {
    Form lhs = d(wedge(a, b));
    Form rhs = wedge(d(a), b) + wedge(a, d(b)).scaled(a.degree() % 2 ? -1 : 1);
    return lhs == rhs;
}

// ---------------------------------------------------------------- general lift

namespace {

Poly1 trim(Poly1 f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

Poly1 padd(const Poly1& a, const Poly1& b) {
    Poly1 r(std::max(a.size(), b.size()), Int(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return trim(r);
}

Poly1 pmul(const Poly1& a, const Poly1& b) {
    if (a.empty() || b.empty()) return {};
    Poly1 r(a.size() + b.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return trim(r);
}

Poly1 compose(const Poly1& f, const Poly1& g) {
    Poly1 r;
    for (std::size_t i = f.size(); i-- > 0;) r = padd(pmul(r, g), Poly1{f[i]});
    return r;
}

}  // namespace

Poly1 poly_derivative(const Poly1& f) {
    Poly1 r;
    for (std::size_t i = 1; i < f.size(); ++i) r.push_back(f[i] * static_cast<long>(i));
    return trim(r);
}

Poly1 GeneralLift::on_functions(const Poly1& f) const {
    Poly1 phi(static_cast<std::size_t>(p) + 1, Int(0));
    phi[static_cast<std::size_t>(p)] = 1;
    for (std::size_t i = 0; i < theta.size(); ++i) phi[i] += theta[i] * p;
    return compose(f, trim(phi));
}

Poly1 GeneralLift::on_one_forms(const Poly1& g) const {
    Poly1 xp(static_cast<std::size_t>(p), Int(0));
    xp[static_cast<std::size_t>(p) - 1] = 1;
    return pmul(on_functions(g), padd(xp, poly_derivative(theta)));
}

// ---------------------------------------------------------------- Cartier

CartierMap cartier_map(const DeRhamModel& m) {
    const auto& c = m.complex;
    const long p = c.p();
    CartierMap out;
    out.p = p;
    for (const auto& [w, lab] : m.labels) {
        const Weight t = w.scaled(p);
        if (!c.has(t)) continue;
        FpComplex tgt = reduce_mod_p(c, t);
        const auto a = exps_of(w);
        for (int j = c.d_min(); j <= c.d_max(); ++j) {
            const auto& src = lab[idx(c, j)];
            FpHomology h = tgt.homology(j);
            CartierBlock blk;
            blk.weight = w;
            blk.degree = j;
            blk.source_dim = src.size();
            blk.target_dim = h.dim();
            blk.matrix = FpMatrix(p, h.dim(), src.size());
            for (std::size_t k = 0; k < src.size(); ++k) {
                // Cart(x^a) = x^{pa}; Cart(dlog x_i) = Cart(x_i)^{-1} [x_i^{p-1} dx_i] = [dlog x_i].
                std::vector<long> pa(a.size());
                for (std::size_t i = 0; i < a.size(); ++i) pa[i] = p * a[i];
                Form img = Form::monomial(pa, {});
                for (auto i : src[k]) {
                    std::vector<long> e(a.size(), 0), inv(a.size(), 0);
                    e[i] = p;
                    inv[i] = -p;
                    img = wedge(img, wedge(Form::monomial(inv, {}), Form::monomial(e, {i})));
                }
                Rat scale = 1;
                if (m.ring.kind == RingKind::Cusp && j == 1) scale = Rat(m.cusp_scale.at(w));
                std::vector<long> z;
                for (const auto& x : coordinates(m, t, j, img.scaled(scale))) z.push_back(reduce_rat_mod_p(x, p));
                if (!h.is_cycle(tgt.diff(j), z))
                    fail(ErrorKind::AxiomViolation, "Cartier image is not a cycle at weight " + t.to_string());
                auto cls = h.classify(z);
                for (std::size_t i = 0; i < cls.size(); ++i) blk.matrix(i, k) = cls[i];
            }
            out.blocks.push_back(std::move(blk));
        }
    }
    if (out.blocks.empty()) fail(ErrorKind::WindowTooSmall, "no weight a with p*a in the window");
    return out;
}

CartierIsoReport verify_cartier_iso(const DeRhamModel& m) {
    CartierIsoReport rep;
    if (m.ring.kind == RingKind::Cusp) {
        rep.hypothesis_met = false;
        rep.bijective = false;
        return rep;
    }
    const auto& c = m.complex;
    const long p = c.p();
    CartierMap cart = cartier_map(m);
    for (const auto& b : cart.blocks)
        if (b.source_dim != b.target_dim || b.matrix.rank() != b.source_dim) rep.bijective = false;
    rep.blocks = std::move(cart.blocks);
    for (const auto& [t, blk] : c.blocks()) {
        const Weight w = t.scaled(Rat(1, p));
        if (w.is_integral()) {
            if (!c.has(w)) ++rep.untestable;
            continue;
        }
        auto betti = reduce_mod_p(c, t).betti();
        for (std::size_t j = 0; j < betti.size(); ++j)
            if (betti[j]) {
                rep.unhit.emplace_back(c.d_min() + static_cast<int>(j), t);
                rep.bijective = false;
            }
    }
    return rep;
}

// ---------------------------------------------------------------- cusp presentation

CuspOmega1Piece cusp_omega1_piece(long p, int prec, long w) {
    CuspOmega1Piece out;
    out.weight = w;
    std::vector<Rat> img;
    long dx_col = -1, dy_col = -1;
    auto name = [](long m, const char* diff) {
        return m == 0 ? std::string(diff) : cusp_monomial_string(m) + "*" + diff;
    };
    if (cusp_monomial(w - 3)) {
        dx_col = static_cast<long>(out.generators.size());
        out.generators.push_back(name(w - 3, "dx"));
        img.emplace_back(3);
    }
    if (cusp_monomial(w - 2)) {
        dy_col = static_cast<long>(out.generators.size());
        out.generators.push_back(name(w - 2, "dy"));
        img.emplace_back(2);
    }
    out.image = PMatrix(p, prec, 1, img.size());
    for (std::size_t i = 0; i < img.size(); ++i) out.image(0, i) = img[i];
    // m (2x dx - 3y^2 dy) for the weight-(w-6) monomial m.
    const bool rel = cusp_monomial(w - 6).has_value();
    out.relations = PMatrix(p, prec, out.generators.size(), rel ? 1 : 0);
    if (rel) {
        out.relations(static_cast<std::size_t>(dx_col), 0) = 2;
        out.relations(static_cast<std::size_t>(dy_col), 0) = -3;
    }
    return out;
}

}  // namespace drwlab

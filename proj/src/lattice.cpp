#include "drwlab/lattice.hpp"

#include <algorithm>
#include <numeric>

namespace drwlab {

namespace {

void swap_rows(PMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(PMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row_dst -= f * row_src
void row_axpy(PMatrix& m, std::size_t dst, std::size_t src, const Rat& f) {
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (m(src, j) != 0) m(dst, j) -= f * m(src, j);
}

void col_axpy(PMatrix& m, std::size_t dst, std::size_t src, const Rat& f) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        if (m(i, src) != 0) m(i, dst) -= f * m(i, src);
}

void col_scale(PMatrix& m, std::size_t j, const Rat& f) {
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) *= f;
}

}  // namespace

std::size_t SNFResult::rank() const {
    return static_cast<std::size_t>(
        std::count_if(diag_valuations.begin(), diag_valuations.end(), [](int v) { return v != kInfVal; }));
}

bool SNFResult::has_unresolved() const {
    return std::any_of(diag_valuations.begin(), diag_valuations.end(),
                       [this](int v) { return v != kInfVal && v >= prec; });
}

SNFResult snf(const PMatrix& input) {
    if (input.prec() < 1) fail(ErrorKind::PrecisionExhausted, "snf requires prec >= 1");
    const long p = input.p();
    const std::size_t m = input.rows(), n = input.cols();
    PMatrix a = input;
    PMatrix left = PMatrix::identity(p, input.prec(), m);
    PMatrix right = PMatrix::identity(p, input.prec(), n);
    SNFResult res;
    res.prec = input.prec();

    const std::size_t steps = std::min(m, n);
    for (std::size_t k = 0; k < steps; ++k) {
        int best = kInfVal;
        std::size_t bi = k, bj = k;
        for (std::size_t i = k; i < m; ++i)
            for (std::size_t j = k; j < n; ++j) {
                int v = valuation(a(i, j), p);
                if (v < best) {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        if (best == kInfVal) {
            for (std::size_t r = k; r < steps; ++r) res.diag_valuations.push_back(kInfVal);
            break;
        }
        swap_rows(a, k, bi);
        swap_rows(left, k, bi);
        swap_cols(a, k, bj);
        swap_cols(right, k, bj);

        const Rat pivot = a(k, k);
        for (std::size_t i = k + 1; i < m; ++i) {
            if (a(i, k) == 0) continue;
            Rat f = a(i, k) / pivot;
            row_axpy(a, i, k, f);
            row_axpy(left, i, k, f);
        }
        for (std::size_t j = k + 1; j < n; ++j) {
            if (a(k, j) == 0) continue;
            Rat f = a(k, j) / pivot;
            col_axpy(a, j, k, f);
            col_axpy(right, j, k, f);
        }
        // Absorb the unit so the diagonal entry is exactly p^v.
        Rat unit_inv = ppow(p, best) / pivot;
        col_scale(a, k, unit_inv);
        col_scale(right, k, unit_inv);
        res.diag_valuations.push_back(best);
    }
    res.left = std::move(left);
    res.right = std::move(right);
    return res;
}

// ---------------------------------------------------------------- Lattice

Lattice Lattice::from_generators(const PMatrix& gens) {
    const long p = gens.p();
    const std::size_t m = gens.rows();
    PMatrix g = gens;
    std::vector<std::size_t> remaining(g.cols());
    std::iota(remaining.begin(), remaining.end(), 0);
    std::vector<std::size_t> pivot_cols, pivot_rows;

    for (std::size_t i = 0; i < m && !remaining.empty(); ++i) {
        int best = kInfVal;
        std::size_t pos = 0;
        for (std::size_t t = 0; t < remaining.size(); ++t) {
            int v = valuation(g(i, remaining[t]), p);
            if (v < best) {
                best = v;
                pos = t;
            }
        }
        if (best == kInfVal) continue;
        std::size_t c = remaining[pos];
        remaining.erase(remaining.begin() + static_cast<long>(pos));
        const Rat pivot = g(i, c);
        for (std::size_t other : remaining)
            if (g(i, other) != 0) col_axpy(g, other, c, g(i, other) / pivot);
        col_scale(g, c, ppow(p, best) / pivot);
        pivot_cols.push_back(c);
        pivot_rows.push_back(i);
    }

    PMatrix basis(p, gens.prec(), m, pivot_cols.size());
    for (std::size_t j = 0; j < pivot_cols.size(); ++j)
        for (std::size_t i = 0; i < m; ++i) basis(i, j) = g(i, pivot_cols[j]);

    // Reduce entries of earlier columns in later pivot rows.
    for (std::size_t j = 0; j < pivot_cols.size(); ++j) {
        const std::size_t r = pivot_rows[j];
        const int e = valuation(basis(r, j), p);
        for (std::size_t l = 0; l < j; ++l) {
            const Rat& x = basis(r, l);
            if (x == 0) continue;
            Rat rep = reduce_mod_ppow(x, p, e);
            if (rep == x) continue;
            col_axpy(basis, l, j, (x - rep) / ppow(p, e));
        }
    }
    return Lattice(std::move(basis), std::move(pivot_rows));
}

Lattice Lattice::full(long p, int prec, std::size_t ambient_rank) {
    return from_generators(PMatrix::identity(p, prec, ambient_rank));
}

Lattice Lattice::zero(long p, int prec, std::size_t ambient_rank) {
    return Lattice(PMatrix(p, prec, ambient_rank, 0), {});
}

PMatrix Lattice::coordinate_map() const {
    const std::size_t k = rank(), m = ambient_rank();
    PMatrix c(p(), prec(), k, m);
    for (std::size_t j = 0; j < k; ++j) {
        const std::size_t r = pivot_rows_[j];
        c(j, r) = 1;
        for (std::size_t l = 0; l < j; ++l) {
            const Rat& b = basis_(r, l);
            if (b == 0) continue;
            for (std::size_t t = 0; t < m; ++t) c(j, t) -= b * c(l, t);
        }
        const Rat inv = Rat(1) / basis_(r, j);
        for (std::size_t t = 0; t < m; ++t) c(j, t) *= inv;
    }
    return c;
}

PMatrix Lattice::residual_map() const {
    return PMatrix::identity(p(), prec(), ambient_rank()) - basis_ * coordinate_map();
}

std::optional<std::vector<Rat>> Lattice::coordinates(const std::vector<Rat>& v) const {
    if (v.size() != ambient_rank()) fail(ErrorKind::ShapeMismatch, "vector length differs from ambient rank");
    std::vector<Rat> x(rank());
    for (std::size_t j = 0; j < rank(); ++j) {
        const std::size_t r = pivot_rows_[j];
        Rat acc = v[r];
        for (std::size_t l = 0; l < j; ++l) acc -= basis_(r, l) * x[l];
        x[j] = acc / basis_(r, j);
    }
    if (basis_.apply(x) != v) return std::nullopt;
    return x;
}

bool Lattice::contains(const std::vector<Rat>& v) const {
    auto x = coordinates(v);
    if (!x) return false;
    return std::all_of(x->begin(), x->end(), [this](const Rat& c) { return valuation(c, p()) >= 0; });
}

bool Lattice::contains(const Lattice& other) const {
    for (std::size_t j = 0; j < other.rank(); ++j)
        if (!contains(other.basis_.column(j))) return false;
    return true;
}

Lattice Lattice::scaled(const Rat& s) const { return from_generators(basis_.scaled(s)); }

Lattice Lattice::operator+(const Lattice& other) const {
    if (other.ambient_rank() != ambient_rank()) fail(ErrorKind::ShapeMismatch, "lattice sum ambient mismatch");
    PMatrix g = basis_.hcat(other.basis_);
    g.set_prec(std::min(prec(), other.prec()));
    return from_generators(g);
}

// ---------------------------------------------------------------- solvers

Lattice solve_integrality(const PMatrix& d, int prec) {
    const int vmin = d.min_valuation();
    const int s = (vmin == kInfVal || vmin >= 0) ? 0 : -vmin;
    if (prec <= s)
        fail(ErrorKind::PrecisionExhausted, "solve_integrality needs prec > " + std::to_string(s) +
                                                " (denominator depth), got " + std::to_string(prec));
    PMatrix work = d;
    work.set_prec(prec);
    SNFResult r = snf(work);
    PMatrix gens = r.right;
    gens.set_prec(prec - s);
    for (std::size_t i = 0; i < r.diag_valuations.size(); ++i) {
        int v = r.diag_valuations[i];
        if (v != kInfVal && v < 0) col_scale(gens, i, ppow(d.p(), -v));
    }
    return Lattice::from_generators(gens);
}

Lattice kernel_lattice(const PMatrix& a) {
    SNFResult r = snf(a);
    const std::size_t rk = r.rank();
    PMatrix gens = r.right.columns(rk, a.cols() - rk);
    gens.set_prec(a.prec());
    return Lattice::from_generators(gens);
}

std::size_t rank_q(const PMatrix& a) {
    if (a.empty()) return 0;
    PMatrix w = a;
    if (w.prec() < 1) w.set_prec(1);
    return snf(w).rank();
}

Lattice preimage(const PMatrix& a, const Lattice& target) {
    if (a.rows() != target.ambient_rank()) fail(ErrorKind::ShapeMismatch, "preimage: target ambient mismatch");
    const int prec = std::min(a.prec(), target.prec());
    PMatrix residual = target.residual_map() * a;
    residual.set_prec(prec);
    Lattice k = kernel_lattice(residual);
    if (k.rank() == 0) return Lattice::zero(a.p(), prec, a.cols());
    PMatrix coords = target.coordinate_map() * a * k.basis();
    SNFResult r = snf([&] { PMatrix c = coords; c.set_prec(std::max(prec, 1)); return c; }());
    PMatrix gens = k.basis() * r.right;
    for (std::size_t i = 0; i < r.diag_valuations.size(); ++i) {
        int v = r.diag_valuations[i];
        if (v != kInfVal && v < 0) col_scale(gens, i, ppow(a.p(), -v));
    }
    gens.set_prec(prec);
    return Lattice::from_generators(gens);
}

std::optional<std::vector<Rat>> solve_exact(const PMatrix& b, const std::vector<Rat>& y) {
    const std::size_t m = b.rows(), n = b.cols();
    if (y.size() != m) fail(ErrorKind::ShapeMismatch, "solve_exact: rhs length mismatch");
    PMatrix aug = b.hcat(PMatrix::column_vector(b.p(), b.prec(), y));
    std::vector<std::size_t> pivcol;
    std::size_t row = 0;
    for (std::size_t c = 0; c < n && row < m; ++c) {
        std::size_t piv = row;
        while (piv < m && aug(piv, c) == 0) ++piv;
        if (piv == m) continue;
        swap_rows(aug, row, piv);
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row || aug(i, c) == 0) continue;
            row_axpy(aug, i, row, aug(i, c) / aug(row, c));
        }
        pivcol.push_back(c);
        ++row;
    }
    for (std::size_t i = row; i < m; ++i)
        if (aug(i, n) != 0) return std::nullopt;
    std::vector<Rat> x(n);
    for (std::size_t i = 0; i < pivcol.size(); ++i) x[pivcol[i]] = aug(i, n) / aug(i, pivcol[i]);
    return x;
}

PMatrix solve_columns(const PMatrix& b, const PMatrix& y) {
    if (b.rows() != y.rows()) fail(ErrorKind::ShapeMismatch, "solve_columns: row mismatch");
    PMatrix x(b.p(), std::min(b.prec(), y.prec()), b.cols(), y.cols());
    for (std::size_t j = 0; j < y.cols(); ++j) {
        auto sol = solve_exact(b, y.column(j));
        if (!sol) fail(ErrorKind::ShapeMismatch, "solve_columns: column outside span");
        for (std::size_t i = 0; i < b.cols(); ++i) x(i, j) = (*sol)[i];
    }
    return x;
}

CokernelInvariants cokernel_invariants(const Lattice& sub, const Lattice& amb) {
    if (sub.ambient_rank() != amb.ambient_rank())
        fail(ErrorKind::ShapeMismatch, "cokernel_invariants: ambient rank mismatch");
    const int prec = std::min(sub.prec(), amb.prec());
    PMatrix coords(amb.p(), std::max(prec, 1), amb.rank(), sub.rank());
    for (std::size_t j = 0; j < sub.rank(); ++j) {
        auto x = amb.coordinates(sub.basis().column(j));
        if (!x || !std::all_of(x->begin(), x->end(), [&](const Rat& c) { return valuation(c, amb.p()) >= 0; }))
            fail(ErrorKind::NotASublattice, "sub basis vector " + std::to_string(j) + " is not in the ambient lattice");
        for (std::size_t i = 0; i < amb.rank(); ++i) coords(i, j) = (*x)[i];
    }
    CokernelInvariants out;
    out.free_rank = amb.rank();
    if (amb.rank() == 0 || sub.rank() == 0) return out;
    SNFResult r = snf(coords);
    for (int v : r.diag_valuations) {
        if (v == kInfVal) continue;
        --out.free_rank;
        if (v == 0) continue;
        if (v >= prec)
            ++out.unresolved;
        else
            out.torsion.push_back(v);
    }
    std::sort(out.torsion.begin(), out.torsion.end());
    return out;
}

}  // namespace drwlab

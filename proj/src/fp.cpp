#include "drwlab/fp.hpp"

#include <algorithm>

namespace drwlab {

long mod_p(long x, long p) {
    long r = x % p;
    return r < 0 ? r + p : r;
}

long inv_mod_p(long x, long p) {
    x = mod_p(x, p);
    if (x == 0) fail(ErrorKind::InvalidArgument, "zero has no inverse mod p");
    long r = 1, b = x, e = p - 2;
    while (e > 0) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

long reduce_rat_mod_p(const Rat& q, long p) {
    if (valuation(q, p) < 0) fail(ErrorKind::InvalidArgument, "cannot reduce a non-integral element mod p");
    Int pp = p;
    Int num = q.get_num() % pp;
    Int den = q.get_den() % pp;
    long n = mod_p(num.get_si(), p), d = mod_p(den.get_si(), p);
    return n * inv_mod_p(d, p) % p;
}

FpMatrix FpMatrix::identity(long p, std::size_t n) {
    FpMatrix m(p, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

FpMatrix FpMatrix::reduce(const PMatrix& m) {
    FpMatrix r(m.p(), m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = reduce_rat_mod_p(m(i, j), m.p());
    return r;
}

std::vector<long> FpMatrix::column(std::size_t j) const {
    std::vector<long> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

FpMatrix FpMatrix::hcat(const FpMatrix& right) const {
    if (right.rows_ != rows_) fail(ErrorKind::ShapeMismatch, "FpMatrix hcat row mismatch");
    FpMatrix m(p_, rows_, cols_ + right.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
        for (std::size_t j = 0; j < right.cols_; ++j) m(i, cols_ + j) = right(i, j);
    }
    return m;
}

FpMatrix operator*(const FpMatrix& a, const FpMatrix& b) {
    if (a.cols_ != b.rows_) fail(ErrorKind::ShapeMismatch, "FpMatrix product shape mismatch");
    FpMatrix m(a.p_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            long x = a(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) = (m(i, j) + x * b(k, j)) % a.p_;
        }
    return m;
}

FpMatrix operator-(const FpMatrix& a, const FpMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) fail(ErrorKind::ShapeMismatch, "FpMatrix difference shape mismatch");
    FpMatrix m = a;
    for (std::size_t k = 0; k < m.data_.size(); ++k) m.data_[k] = mod_p(a.data_[k] - b.data_[k], a.p_);
    return m;
}

bool FpMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](long x) { return x == 0; });
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(FpMatrix& a) {
    const long p = a.p();
    std::vector<std::size_t> piv;
    std::size_t row = 0;
    for (std::size_t c = 0; c < a.cols() && row < a.rows(); ++c) {
        std::size_t r = row;
        while (r < a.rows() && a(r, c) == 0) ++r;
        if (r == a.rows()) continue;
        for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r, j), a(row, j));
        long inv = inv_mod_p(a(row, c), p);
        for (std::size_t j = 0; j < a.cols(); ++j) a(row, j) = a(row, j) * inv % p;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == row || a(i, c) == 0) continue;
            long f = a(i, c);
            for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = mod_p(a(i, j) - f * a(row, j), p);
        }
        piv.push_back(c);
        ++row;
    }
    return piv;
}

}  // namespace

std::size_t FpMatrix::rank() const {
    FpMatrix w = *this;
    return rref(w).size();
}

FpMatrix FpMatrix::kernel() const {
    FpMatrix w = *this;
    auto piv = rref(w);
    std::vector<bool> is_piv(cols_, false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < cols_; ++c)
        if (!is_piv[c]) free_cols.push_back(c);
    FpMatrix k(p_, cols_, free_cols.size());
    for (std::size_t t = 0; t < free_cols.size(); ++t) {
        std::size_t f = free_cols[t];
        k(f, t) = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) k(piv[i], t) = mod_p(-w(i, f), p_);
    }
    return k;
}

std::optional<std::vector<long>> FpMatrix::solve(const std::vector<long>& y) const {
    FpMatrix aug(p_, rows_, cols_ + 1);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
        aug(i, cols_) = mod_p(y[i], p_);
    }
    auto piv = rref(aug);
    if (!piv.empty() && piv.back() == cols_) return std::nullopt;
    std::vector<long> x(cols_, 0);
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug(i, cols_);
    return x;
}

std::vector<long> FpHomology::classify(const std::vector<long>& z) const {
    FpMatrix sys = representatives.hcat(boundaries);
    auto sol = sys.solve(z);
    if (!sol) fail(ErrorKind::InvalidArgument, "classify: vector is not a cycle");
    return std::vector<long>(sol->begin(), sol->begin() + static_cast<long>(dim()));
}

bool FpHomology::is_cycle(const FpMatrix& outgoing, const std::vector<long>& z) const {
    if (outgoing.rows() == 0) return true;
    FpMatrix v(p, z.size(), 1);
    for (std::size_t i = 0; i < z.size(); ++i) v(i, 0) = mod_p(z[i], p);
    return (outgoing * v).is_zero();
}

FpHomology fp_homology(long p, std::size_t ambient, const FpMatrix& incoming, const FpMatrix& outgoing) {
    FpHomology h;
    h.p = p;
    h.ambient = ambient;
    FpMatrix cycles = outgoing.rows() == 0 ? FpMatrix::identity(p, ambient) : outgoing.kernel();
    // Boundaries: a basis of the column space of `incoming`.
    FpMatrix inc = incoming.cols() == 0 ? FpMatrix(p, ambient, 0) : incoming;
    {
        std::vector<std::size_t> keep;
        FpMatrix acc(p, ambient, 0);
        for (std::size_t j = 0; j < inc.cols(); ++j) {
            FpMatrix cand = acc.hcat([&] {
                FpMatrix c(p, ambient, 1);
                for (std::size_t i = 0; i < ambient; ++i) c(i, 0) = inc(i, j);
                return c;
            }());
            if (cand.rank() > acc.cols()) acc = cand;
        }
        h.boundaries = acc;
    }
    // Extend the boundary basis by cycles.
    FpMatrix acc = h.boundaries;
    FpMatrix reps(p, ambient, 0);
    for (std::size_t j = 0; j < cycles.cols(); ++j) {
        FpMatrix c(p, ambient, 1);
        for (std::size_t i = 0; i < ambient; ++i) c(i, 0) = cycles(i, j);
        FpMatrix cand = acc.hcat(c);
        if (cand.rank() > acc.cols()) {
            acc = cand;
            reps = reps.hcat(c);
        }
    }
    h.representatives = reps;
    return h;
}

}  // namespace drwlab

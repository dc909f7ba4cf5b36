#include "drwlab/padic.hpp"

#include <algorithm>
#include <sstream>

namespace drwlab {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::WindowTooSmall: return "WindowTooSmall";
    case ErrorKind::NotSaturated: return "NotSaturated";
    case ErrorKind::NotASublattice: return "NotASublattice";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::CostGuard: return "CostGuard";
    case ErrorKind::AxiomViolation: return "AxiomViolation";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

void require_prime(long p) {
    if (!is_prime(p)) fail(ErrorKind::InvalidArgument, "p = " + std::to_string(p) + " is not prime");
    if (p > (1L << 31)) fail(ErrorKind::InvalidArgument, "prime exceeds machine-word bound");
}

int valuation(const Int& z, long p) {
    if (z == 0) return kInfVal;
    Int r = z;
    int v = 0;
    while (mpz_divisible_ui_p(r.get_mpz_t(), static_cast<unsigned long>(p))) {
        mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), static_cast<unsigned long>(p));
        ++v;
    }
    return v;
}

int valuation(const Rat& q, long p) {
    if (q == 0) return kInfVal;
    return valuation(q.get_num(), p) - valuation(q.get_den(), p);
}

Int ipow(long base, unsigned exp) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), exp);
    return r;
}

Rat ppow(long p, int exp) {
    if (exp >= 0) return Rat(ipow(p, static_cast<unsigned>(exp)));
    return Rat(Int(1), ipow(p, static_cast<unsigned>(-exp)));
}

Int inverse_mod(const Int& a, const Int& modulus) {
    Int r;
    if (modulus == 1) return 0;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), modulus.get_mpz_t()) == 0)
        fail(ErrorKind::InvalidArgument, "element is not a unit modulo " + modulus.get_str());
    return r;
}

namespace {

// u mod p^k for a rational u with unit denominator.
Int unit_residue(const Rat& u, long p, int k) {
    if (k <= 0) return 0;
    Int mod = ipow(p, static_cast<unsigned>(k));
    Int num = u.get_num() % mod;
    if (num < 0) num += mod;
    Int inv = inverse_mod(u.get_den() % mod, mod);
    Int r = (num * inv) % mod;
    if (r < 0) r += mod;
    return r;
}

}  // namespace

Rat reduce_mod_ppow(const Rat& q, long p, int e) {
    int v = valuation(q, p);
    if (v >= e) return 0;
    Rat u = q / ppow(p, v);
    return ppow(p, v) * Rat(unit_residue(u, p, e - v));
}

// ---------------------------------------------------------------- PScalar

PScalar PScalar::exact_zero(long p) { return PScalar(p, kInfVal, 0, kInfVal); }

PScalar PScalar::normalized(long p, const Rat& value, int prec) {
    if (prec == kInfVal) {
        if (value != 0) fail(ErrorKind::InvalidArgument, "only zero may be exact");
        return exact_zero(p);
    }
    int v = valuation(value, p);
    if (v >= prec) return PScalar(p, prec, 0, prec);
    Rat u = value / ppow(p, v);
    return PScalar(p, v, unit_residue(u, p, prec - v), prec);
}

PScalar PScalar::from_rational(const Rat& q, long p, int prec) {
    require_prime(p);
    if (q == 0) return exact_zero(p);
    return normalized(p, q, prec);
}

Rat PScalar::lift() const {
    if (is_zero()) return 0;
    return ppow(p_, val_) * Rat(unit_);
}

PScalar PScalar::operator-() const {
    if (is_exact_zero()) return *this;
    return normalized(p_, -lift(), prec_);
}

PScalar operator+(const PScalar& a, const PScalar& b) {
    if (a.p_ != b.p_) fail(ErrorKind::ShapeMismatch, "PScalar prime mismatch");
    if (a.is_exact_zero()) return b;
    if (b.is_exact_zero()) return a;
    return PScalar::normalized(a.p_, a.lift() + b.lift(), std::min(a.prec_, b.prec_));
}

PScalar operator*(const PScalar& a, const PScalar& b) {
    if (a.p_ != b.p_) fail(ErrorKind::ShapeMismatch, "PScalar prime mismatch");
    if (a.is_exact_zero() || b.is_exact_zero()) return PScalar::exact_zero(a.p_);
    // Absolute precision of a product: min(v_a + N_b, v_b + N_a).
    int prec = std::min(a.val_ + b.prec_, b.val_ + a.prec_);
    return PScalar::normalized(a.p_, a.lift() * b.lift(), prec);
}

PScalar PScalar::div_p() const {
    if (is_exact_zero()) return *this;
    return PScalar(p_, val_ - 1, unit_, prec_ - 1);
}

PScalar PScalar::inverse() const {
    if (is_zero()) fail(ErrorKind::PrecisionExhausted, "cannot invert a scalar that is zero at its precision");
    int rel = prec_ - val_;
    return normalized(p_, Rat(1) / lift(), -val_ + rel);
}

bool PScalar::equals_at_precision(const PScalar& other) const { return (*this - other).is_zero(); }

std::string PScalar::to_string() const {
    std::ostringstream os;
    if (is_exact_zero()) return "0";
    os << "p^" << val_ << "*" << unit_.get_str() << " + O(p^" << prec_ << ")";
    return os.str();
}

// ---------------------------------------------------------------- PMatrix

PMatrix::PMatrix(long p, int prec, std::size_t rows, std::size_t cols)
    : p_(p), prec_(prec), rows_(rows), cols_(cols), data_(rows * cols) {}

PMatrix PMatrix::identity(long p, int prec, std::size_t n) {
    PMatrix m(p, prec, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

PMatrix PMatrix::from_rows(long p, int prec, const std::vector<std::vector<Rat>>& rows) {
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    PMatrix m(p, prec, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) fail(ErrorKind::ShapeMismatch, "ragged matrix rows");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

PMatrix PMatrix::from_pscalars(const std::vector<std::vector<PScalar>>& grid, std::size_t cols) {
    if (grid.empty()) return PMatrix(2, 1, 0, cols);
    long p = grid.front().empty() ? 2 : grid.front().front().p();
    int prec = kInfVal;
    PMatrix m(p, 1, grid.size(), cols);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i].size() != cols) fail(ErrorKind::ShapeMismatch, "ragged matrix rows");
        for (std::size_t j = 0; j < cols; ++j) {
            const PScalar& s = grid[i][j];
            if (s.p() != p) fail(ErrorKind::ShapeMismatch, "entries must share the prime");
            m(i, j) = s.lift();
            prec = std::min(prec, s.prec());
        }
    }
    m.prec_ = prec == kInfVal ? 1 : prec;
    return m;
}

PMatrix PMatrix::column_vector(long p, int prec, const std::vector<Rat>& v) {
    PMatrix m(p, prec, v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
}

std::vector<Rat> PMatrix::column(std::size_t j) const {
    std::vector<Rat> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

std::vector<Rat> PMatrix::row(std::size_t i) const {
    return std::vector<Rat>(data_.begin() + static_cast<long>(i * cols_),
                            data_.begin() + static_cast<long>((i + 1) * cols_));
}

PMatrix PMatrix::transpose() const {
    PMatrix t(p_, prec_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

PMatrix PMatrix::scaled(const Rat& s) const {
    PMatrix m = *this;
    for (auto& x : m.data_) x *= s;
    return m;
}

PMatrix PMatrix::hcat(const PMatrix& right) const {
    if (right.rows_ != rows_) fail(ErrorKind::ShapeMismatch, "hcat row mismatch");
    PMatrix m(p_, std::min(prec_, right.prec_), rows_, cols_ + right.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
        for (std::size_t j = 0; j < right.cols_; ++j) m(i, cols_ + j) = right(i, j);
    }
    return m;
}

PMatrix PMatrix::columns(std::size_t first, std::size_t count) const {
    PMatrix m(p_, prec_, rows_, count);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < count; ++j) m(i, j) = (*this)(i, first + j);
    return m;
}

PMatrix operator*(const PMatrix& a, const PMatrix& b) {
    if (a.cols_ != b.rows_)
        fail(ErrorKind::ShapeMismatch, "matrix product " + std::to_string(a.rows_) + "x" +
                                           std::to_string(a.cols_) + " * " + std::to_string(b.rows_) +
                                           "x" + std::to_string(b.cols_));
    PMatrix m(a.p_, std::min(a.prec_, b.prec_), a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Rat& x = a(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                if (b(k, j) != 0) m(i, j) += x * b(k, j);
        }
    return m;
}

void require_same_shape(const PMatrix& a, const PMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) fail(ErrorKind::ShapeMismatch, what);
}

PMatrix operator+(const PMatrix& a, const PMatrix& b) {
    require_same_shape(a, b, "matrix sum shape mismatch");
    PMatrix m = a;
    m.prec_ = std::min(a.prec_, b.prec_);
    for (std::size_t k = 0; k < m.data_.size(); ++k) m.data_[k] += b.data_[k];
    return m;
}

PMatrix operator-(const PMatrix& a, const PMatrix& b) {
    require_same_shape(a, b, "matrix difference shape mismatch");
    PMatrix m = a;
    m.prec_ = std::min(a.prec_, b.prec_);
    for (std::size_t k = 0; k < m.data_.size(); ++k) m.data_[k] -= b.data_[k];
    return m;
}

std::vector<Rat> PMatrix::apply(const std::vector<Rat>& v) const {
    if (v.size() != cols_) fail(ErrorKind::ShapeMismatch, "matrix-vector size mismatch");
    std::vector<Rat> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (v[j] != 0) out[i] += (*this)(i, j) * v[j];
    return out;
}

bool PMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rat& x) { return x == 0; });
}

bool PMatrix::is_zero_at_precision() const { return min_valuation() >= prec_; }

bool PMatrix::is_integral() const {
    return std::all_of(data_.begin(), data_.end(), [this](const Rat& x) { return valuation(x, p_) >= 0; });
}

int PMatrix::min_valuation() const {
    int v = kInfVal;
    for (const auto& x : data_) v = std::min(v, valuation(x, p_));
    return v;
}

bool PMatrix::operator==(const PMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

std::vector<std::vector<PScalar>> PMatrix::to_pscalars() const {
    std::vector<std::vector<PScalar>> grid(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) grid[i].push_back(PScalar::from_rational((*this)(i, j), p_, prec_));
    return grid;
}

}  // namespace drwlab

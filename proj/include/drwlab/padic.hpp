#pragma once

// p-adic scalars and exact matrices over Z_(p)[1/p].
//
// Linear algebra in this library runs on exact rationals whose denominators
// are arbitrary p-adic units times powers of p. The working precision N
// carried by every matrix is a budget: it bounds which valuations can be
// reported as resolved, and operations that divide by p spend digits of it.
// PScalar is the truncated view of a single coefficient, used for
// serialization and for the explicit truncated arithmetic exposed to callers.

#include <gmpxx.h>

#include <climits>
#include <cstdint>
#include <string>
#include <vector>

#include "drwlab/errors.hpp"

namespace drwlab {

using Int = mpz_class;
using Rat = mpq_class;

inline constexpr int kInfVal = INT_MAX / 4;

bool is_prime(long n);
void require_prime(long p);

/// v_p(q); kInfVal for q == 0.
int valuation(const Rat& q, long p);
int valuation(const Int& z, long p);

Int ipow(long base, unsigned exp);
Rat ppow(long p, int exp);  // exp may be negative

/// Inverse of a unit modulo p^k, as a nonnegative integer.
Int inverse_mod(const Int& a, const Int& modulus);

/// Canonical representative of q modulo p^e Z_p: the unique p^v * m with
/// 0 <= m < p^(e-v) congruent to q, or 0 if v_p(q) >= e.
Rat reduce_mod_ppow(const Rat& q, long p, int e);

/// Truncated p-adic scalar p^val * unit, known modulo p^prec (absolute
/// precision). An exact zero has val == kInfVal and never loses precision.
class PScalar {
public:
    PScalar() = default;

    static PScalar exact_zero(long p);
    static PScalar from_rational(const Rat& q, long p, int prec);
    static PScalar from_int(long z, long p, int prec) { return from_rational(Rat(z), p, prec); }

    long p() const { return p_; }
    int val() const { return val_; }
    const Int& unit() const { return unit_; }
    int prec() const { return prec_; }

    bool is_exact_zero() const { return val_ == kInfVal; }
    /// Zero modulo p^prec (includes exact zero).
    bool is_zero() const { return val_ >= prec_; }
    int relative_precision() const { return is_exact_zero() ? kInfVal : prec_ - val_; }

    /// The representative p^val * unit as a rational number.
    Rat lift() const;

    PScalar operator-() const;
    friend PScalar operator+(const PScalar& a, const PScalar& b);
    friend PScalar operator-(const PScalar& a, const PScalar& b) { return a + (-b); }
    friend PScalar operator*(const PScalar& a, const PScalar& b);

    /// Exact division by p: val - 1, prec - 1.
    PScalar div_p() const;
    /// Inverse of a nonzero scalar; relative precision is preserved.
    PScalar inverse() const;

    /// Equality modulo p^min(prec).
    bool equals_at_precision(const PScalar& other) const;

    std::string to_string() const;

private:
    PScalar(long p, int val, Int unit, int prec)
        : p_(p), val_(val), unit_(std::move(unit)), prec_(prec) {}
    static PScalar normalized(long p, const Rat& value, int prec);

    long p_ = 2;
    int val_ = kInfVal;
    Int unit_ = 0;
    int prec_ = kInfVal;
};

/// Dense matrix with exact entries in Z_(p)[1/p], carrying the prime and the
/// working precision N.
class PMatrix {
public:
    PMatrix() = default;
    PMatrix(long p, int prec, std::size_t rows, std::size_t cols);

    static PMatrix identity(long p, int prec, std::size_t n);
    static PMatrix from_rows(long p, int prec, const std::vector<std::vector<Rat>>& rows);
    static PMatrix from_pscalars(const std::vector<std::vector<PScalar>>& grid, std::size_t cols);
    static PMatrix column_vector(long p, int prec, const std::vector<Rat>& v);

    long p() const { return p_; }
    int prec() const { return prec_; }
    void set_prec(int prec) { prec_ = prec; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<Rat> column(std::size_t j) const;
    std::vector<Rat> row(std::size_t i) const;

    PMatrix transpose() const;
    PMatrix scaled(const Rat& s) const;
    PMatrix hcat(const PMatrix& right) const;
    PMatrix columns(std::size_t first, std::size_t count) const;

    friend PMatrix operator*(const PMatrix& a, const PMatrix& b);
    friend PMatrix operator+(const PMatrix& a, const PMatrix& b);
    friend PMatrix operator-(const PMatrix& a, const PMatrix& b);
    std::vector<Rat> apply(const std::vector<Rat>& v) const;

    bool is_zero() const;
    /// Every entry has valuation >= prec (zero at working precision).
    bool is_zero_at_precision() const;
    bool is_integral() const;
    /// Minimum entry valuation; kInfVal for the zero matrix.
    int min_valuation() const;
    bool operator==(const PMatrix& other) const;

    std::vector<std::vector<PScalar>> to_pscalars() const;

private:
    long p_ = 2;
    int prec_ = 1;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rat> data_;
};

void require_same_shape(const PMatrix& a, const PMatrix& b, const char* what);

}  // namespace drwlab

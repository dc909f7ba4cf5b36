#pragma once

// Lattice linear algebra over Z_p: Smith normal form, canonical Hermite
// bases, integrality solving and quotient invariants.

#include <optional>
#include <vector>

#include "drwlab/padic.hpp"

namespace drwlab {

struct SNFResult {
    /// min(rows, cols) entries, ascending; kInfVal marks an exact zero.
    std::vector<int> diag_valuations;
    /// left * M * right == diag(p^v_i), entries exact.
    PMatrix left;
    PMatrix right;
    int prec = 0;

    std::size_t rank() const;
    /// Diagonal exponents that are finite but >= prec, i.e. not resolved at
    /// working precision.
    bool has_unresolved() const;
};

/// Smith normal form over Z_(p). Pivots are chosen by minimal valuation with
/// ties broken in row-major order; the pivot unit is absorbed into `right`.
SNFResult snf(const PMatrix& m);

/// Sub-Z_p-module of Q_p^ambient_rank given by a basis in column Hermite form:
/// column j has its first nonzero entry p^e_j in pivot row r_j, pivot rows
/// strictly increase, and entries of earlier columns in row r_j are reduced
/// modulo p^e_j.
class Lattice {
public:
    Lattice() = default;

    static Lattice from_generators(const PMatrix& generators);
    static Lattice full(long p, int prec, std::size_t ambient_rank);
    static Lattice zero(long p, int prec, std::size_t ambient_rank);

    long p() const { return basis_.p(); }
    int prec() const { return basis_.prec(); }
    std::size_t ambient_rank() const { return basis_.rows(); }
    std::size_t rank() const { return basis_.cols(); }
    const PMatrix& basis() const { return basis_; }
    const std::vector<std::size_t>& pivot_rows() const { return pivot_rows_; }

    /// Coordinates of v in the basis, if v lies in the Q_p-span.
    std::optional<std::vector<Rat>> coordinates(const std::vector<Rat>& v) const;
    bool contains(const std::vector<Rat>& v) const;
    bool contains(const Lattice& other) const;

    Lattice scaled(const Rat& s) const;
    Lattice operator+(const Lattice& other) const;

    /// Linear maps y -> echelon coordinates and y -> residual (y - B * coords).
    PMatrix coordinate_map() const;
    PMatrix residual_map() const;

    bool operator==(const Lattice& other) const { return basis_ == other.basis_; }
    bool operator!=(const Lattice& other) const { return !(*this == other); }

private:
    explicit Lattice(PMatrix basis, std::vector<std::size_t> pivots)
        : basis_(std::move(basis)), pivot_rows_(std::move(pivots)) {}

    PMatrix basis_;
    std::vector<std::size_t> pivot_rows_;
};

/// {c in Z_p^cols : D c in Z_p^rows}. Consumes s = max(0, -v_min(D)) digits;
/// the result carries precision N - s.
Lattice solve_integrality(const PMatrix& d, int prec);

/// {x in Z_p^cols : A x in L}.
Lattice preimage(const PMatrix& a, const Lattice& target);

/// {x in Z_p^cols : A x = 0}, saturated.
Lattice kernel_lattice(const PMatrix& a);

/// Rank over Q_p.
std::size_t rank_q(const PMatrix& a);

/// Some x with B x = y over Q_p, if one exists.
std::optional<std::vector<Rat>> solve_exact(const PMatrix& b, const std::vector<Rat>& y);

/// Unique X with B X = Y when B has full column rank; ShapeMismatch if a
/// column of Y is outside the span of B.
PMatrix solve_columns(const PMatrix& b, const PMatrix& y);

struct CokernelInvariants {
    /// Exponents e of the Z/p^e summands, ascending.
    std::vector<int> torsion;
    std::size_t free_rank = 0;
    /// Exponents >= prec, reported separately rather than clamped.
    std::size_t unresolved = 0;

    bool is_zero() const { return torsion.empty() && free_rank == 0 && unresolved == 0; }
    bool operator==(const CokernelInvariants&) const = default;
};

/// Invariants of amb / sub. NotASublattice if sub is not contained in amb.
CokernelInvariants cokernel_invariants(const Lattice& sub, const Lattice& amb);

}  // namespace drwlab

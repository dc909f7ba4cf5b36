#pragma once

// Saturated de Rham-Witt models: integral forms on tori and the affine line,
// the W_r towers built from them, the nu-comparison with Omega, the degree-0
// Witt vector cross-check, and the cusp Z_p[t^2, t^3].

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "drwlab/derham.hpp"

namespace drwlab {

/// Forms sum c_S x^a dlog_S with a in (1/p^s) Z^n, c and dc p-integral.
/// The complex is written in the lattice bases; `bases` records them in dlog
/// coordinates. F is the identity on coefficients (a -> pa), V multiplies
/// them by p (a -> a/p).
struct IntegralFormModel {
    RingKind kind = RingKind::Laurent;
    std::size_t n = 1;
    int s = 0;
    std::vector<Rat> lo, hi;
    DieudonneStructure d;
    BasisMaps bases;
    std::map<Weight, std::vector<std::vector<Subset>>> labels;

    /// Lattice at (weight, degree) in dlog coordinates.
    Lattice lattice(const Weight& a, int degree) const;
};

/// Weights a with depth <= s in the box [lo, hi] (affine: a >= 0).
IntegralFormModel integral_forms(RingKind kind, std::size_t n, long p, int s, const std::vector<Rat>& lo,
                                 const std::vector<Rat>& hi, int prec);

struct LatticeMismatch {
    Weight weight;
    int degree = 0;
    std::string expected;
    std::string actual;
};

struct OracleReport {
    std::size_t comparisons = 0;
    std::vector<LatticeMismatch> mismatches;
    bool ok() const { return mismatches.empty(); }
};

/// Saturation of the de Rham complex by s rounds of eta_p, against the
/// integral forms of depth s: stage s at p^s a equals p^{js} L^j_a for every
/// weight a of the integral box [lo, hi] with depth <= s.
OracleReport oracle_compare_saturation(RingKind kind, std::size_t n, long p, int s, const std::vector<long>& lo,
                                       const std::vector<long>& hi, int prec);

/// Strict tower of height R on an integral forms model (needs s >= R).
StrictTower drw_tower(const IntegralFormModel& m, int R);

struct NuBlock {
    Weight weight;
    int degree = 0;
    std::size_t source_dim = 0;
    std::size_t target_dim = 0;
    bool iso = false;
};

struct NuReport {
    std::vector<NuBlock> blocks;
    std::size_t untestable = 0;
    bool ok() const;
};

/// nu: Omega_{F_p-ring} -> W_1 Omega of the tower, x^a dlog_S -> class of x^a dlog_S.
NuReport nu_comparison(const IntegralFormModel& m, const StrictTower& t);

// ---------------------------------------------------------------- Witt cross-check

/// Degree-0 elements of the one-variable model: exponents in Z[1/p], the
/// coefficient at a lying in p^{depth(a)} Z.
struct FracLaurent {
    std::map<Rat, Int> terms;

    FracLaurent operator+(const FracLaurent& o) const;
    FracLaurent operator*(const FracLaurent& o) const;
    FracLaurent frobenius(long p) const;
    FracLaurent verschiebung(long p) const;
    /// Canonical representative modulo V^r of the model.
    FracLaurent reduced(long p, int r) const;
    bool in_model(long p) const;
    bool operator==(const FracLaurent& o) const { return terms == o.terms; }
    std::string to_string() const;
};

struct WittCrosscheckReport {
    std::size_t checks = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

/// W_r(F_p[x^{+-1}]) against degree 0 of the tower via V^j[x^k] -> p^j x^{k/p^j}:
/// sums, products, F, V on `samples` random pairs, weight-0 against Z/p^r,
/// and piece sizes against the tower level r.
WittCrosscheckReport witt_crosscheck(const StrictTower& t, int r, std::size_t samples, std::uint64_t seed);

// ---------------------------------------------------------------- cusp

struct CuspComparisonBlock {
    Rat weight;  // weight of the saturation
    int stage = 0;
    int degree = 0;
    std::size_t cusp_rank = 0;
    std::size_t line_rank = 0;
    bool iso = false;
};

struct CuspSaturation {
    long p = 2;
    long w_max = 0;
    int depth = 0;
    DeRhamModel cusp, line;
    SaturationResult cusp_sat, line_sat;
    std::vector<CuspComparisonBlock> blocks;
    bool degree2_zero = true;
    bool ok() const;
};

/// Saturates both sides to depth floor(log_p w_max); compares every integral
/// weight c in [0, w_max] at its deepest in-window representative p^j c.
CuspSaturation cusp_saturation(long p, long w_max, int prec);

struct CuspWitness {
    long p = 2;
    int n = 0;
    std::string expression;
    Rat coefficient;
    std::string monomial;
    std::string differential;  // "dx" or "dy"
    bool verified = false;
};

CuspWitness cusp_F_dt(long p);

struct CuspOmega2Report {
    long p = 2;
    std::string annihilator;
    /// Weight -> dimension of the Omega^2 piece over F_p.
    std::map<long, std::size_t> dims;
    bool omega2_weight5_nonzero = false;
    bool saturated_degree2_zero = true;
};

CuspOmega2Report cusp_omega2(long p, long w_max);

struct SeminormalReport {
    std::map<long, std::size_t> w1_dims;  // weight -> dim W_1 Omega^0
    std::vector<long> untestable;
    bool ok() const;
};

/// dim W_1 Omega^0 of the cusp saturation per integral weight, as the
/// cokernel of V = p F^{-1} at the deepest stage that carries F.
SeminormalReport cusp_seminormal_h0(const CuspSaturation& cs);

}  // namespace drwlab

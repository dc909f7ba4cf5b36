#pragma once

// De Rham complexes of monomial rings (Laurent, affine, the cusp
// Z_p[t^2, t^3]) over Z/p^N, with the monomial Frobenius lift and the
// Cartier map.
//
// Laurent and affine rings in n variables: the weight-a piece of Omega^j has
// basis x^a dlog_S for |S| = j (affine: a >= 0 and S inside supp(a)), and
// d(x^a dlog_S) = sum_{i not in S} a_i x^a dlog x_i ^ dlog_S. The dlog factors
// are kept sorted; moving dlog x_i into place gives the sign (-1)^{#{s in S : s < i}}.
//
// Cusp: the torsion-free image of Omega_R inside Omega_{Z_p[t]}. Weights are
// t-degrees; the degree-1 basis at weight w is g_w t^w dlog t where g_w
// generates the image lattice.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "drwlab/dieudonne.hpp"

namespace drwlab {

enum class RingKind { Laurent, Affine, Cusp };

const char* to_string(RingKind k);

struct MonomialRing {
    RingKind kind = RingKind::Laurent;
    std::size_t n = 1;  // cusp: 1
    long p = 2;
    int prec = 1;  // coefficients Z/p^prec; prec 1 is F_p
};

/// A dlog subset as a sorted list of variable indices.
using Subset = std::vector<std::size_t>;

/// Basis labels at weight a per degree 0..n: all subsets, or for affine rings
/// the subsets inside supp(a).
std::vector<std::vector<Subset>> dlog_labels(std::size_t n, const std::vector<Rat>& a, bool affine);

/// d: span(src) -> span(dst) at weight a in the x^a dlog_S bases.
PMatrix dlog_differential(long p, int prec, const std::vector<Rat>& a, const std::vector<Subset>& src,
                          const std::vector<Subset>& dst);

struct DeRhamModel {
    MonomialRing ring;
    BasedComplex complex;
    /// Basis labels per weight and degree.
    std::map<Weight, std::vector<std::vector<Subset>>> labels;
    /// Cusp only: g_w per weight (index into degree-1 basis scale).
    std::map<Weight, Int> cusp_scale;
};

/// All weights a with lo <= a <= hi (integral) in the ring's weight monoid.
/// Cusp windows are [lo[0], hi[0]] with lo >= 0.
DeRhamModel derham_complex(const MonomialRing& ring, const std::vector<long>& lo, const std::vector<long>& hi);

/// F(x^a dlog_S) = x^{pa} dlog_S, recorded where p*a is in the window.
/// Algebra congruences for the generators x_i (and x_i^{-1}).
DieudonneStructure frobenius_lift_structure(const DeRhamModel& m);

// ---------------------------------------------------------------- forms

/// Sparse differential form over Q in the Laurent/affine coordinates.
struct Form {
    std::map<std::pair<std::vector<long>, Subset>, Rat> terms;

    static Form monomial(const std::vector<long>& a, const Subset& s, const Rat& c = 1);
    int degree() const;
    Form operator+(const Form& o) const;
    Form scaled(const Rat& c) const;
    bool is_zero() const { return terms.empty(); }
    bool operator==(const Form& o) const { return terms == o.terms; }
    std::string to_string() const;
};

Form d(const Form& f);
Form wedge(const Form& a, const Form& b);
/// Coordinates of a homogeneous form in the model basis at weight a, degree j.
std::vector<Rat> coordinates(const DeRhamModel& m, const Weight& a, int j, const Form& f);

/// d(a ^ b) == da ^ b + (-1)^|a| a ^ db.
bool leibniz_holds(const Form& a, const Form& b);

// ---------------------------------------------------------------- general lift

/// One-variable polynomial with integer coefficients, index = exponent.
using Poly1 = std::vector<Int>;

/// Frobenius lift phi(x) = x^p + p theta(x) on Z[x] forms:
/// F(f) = f(phi), F(g dx) = g(phi) (x^{p-1} + theta'(x)) dx.
struct GeneralLift {
    long p = 2;
    Poly1 theta;

    Poly1 on_functions(const Poly1& f) const;
    Poly1 on_one_forms(const Poly1& g) const;  // coefficient of dx
};

Poly1 poly_derivative(const Poly1& f);

// ---------------------------------------------------------------- Cartier

/// Cart: Omega^j_a -> H^j(Omega/p)_{pa} in representative coordinates.
struct CartierBlock {
    Weight weight;
    int degree = 0;
    FpMatrix matrix;
    std::size_t source_dim = 0;
    std::size_t target_dim = 0;
};

struct CartierMap {
    long p = 2;
    std::vector<CartierBlock> blocks;
};

/// Built multiplicatively from Cart(x_i) = x_i^p and Cart(dx_i) = [x_i^{p-1} dx_i].
/// WindowTooSmall if no weight has p*a in the window.
CartierMap cartier_map(const DeRhamModel& m);

struct CartierIsoReport {
    bool hypothesis_met = true;  // smooth ring kinds only
    bool bijective = true;
    std::vector<CartierBlock> blocks;
    /// (degree, weight) pairs where H(Omega/p) is nonzero but not hit.
    std::vector<std::pair<int, Weight>> unhit;
    std::size_t untestable = 0;
};

CartierIsoReport verify_cartier_iso(const DeRhamModel& m);

// ---------------------------------------------------------------- cusp presentation

/// Normal form of the weight-m monomial of Z[t^2, t^3] in x = t^3, y = t^2:
/// y^{m/2} for even m, x y^{(m-3)/2} for odd m >= 3. nullopt for m = 1 or m < 0.
std::optional<std::pair<int, int>> cusp_monomial(long m);
std::string cusp_monomial_string(long m);

/// Weight-w piece of R dx + R dy modulo R (2x dx - 3y^2 dy).
struct CuspOmega1Piece {
    long weight = 0;
    std::vector<std::string> generators;  // "y*dx", "x*dy", ...
    PMatrix relations;                    // columns: relations in generator coordinates
    PMatrix image;                        // 1 x gens: coefficient of t^w dlog t
};

CuspOmega1Piece cusp_omega1_piece(long p, int prec, long w);

}  // namespace drwlab

#pragma once

// Dieudonne complexes (M, d, F) with dF = pFd, where F sends weight w to
// weight p*w. Saturation via alpha_F and eta_p, Verschiebung, the quotients
// W_r and strict towers, Cartier type, and the Nygaard filtration.
//
// Finite windows: F at weight w is recorded only when p*w is in the window
// (present, or absent and therefore zero). Statements whose target weight is
// outside the window are reported as untestable rather than pass or fail.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "drwlab/complexes.hpp"

namespace drwlab {

/// Per weight, one matrix per degree d_min..d_max.
using GradedMaps = std::map<Weight, std::vector<PMatrix>>;

/// A degree-0 element x at weight w together with x^p at weight p*w, for the
/// algebra congruence F(x) = x^p mod p.
struct FrobeniusCongruence {
    Weight w;
    std::vector<Rat> x;
    std::vector<Rat> x_pow_p;
};

struct DieudonneStructure {
    BasedComplex c;
    /// F[w][k]: block (d_min+k, w) -> block (d_min+k, p*w).
    GradedMaps F;
    /// V[b][k]: block (d_min+k, b) -> block (d_min+k, b/p); empty until derived.
    GradedMaps V;
    bool algebra = false;
    std::vector<FrobeniusCongruence> congruences;

    long p() const { return c.p(); }
    /// F at (degree n, weight w); nullopt when the target weight is out of window.
    std::optional<PMatrix> frobenius(int n, const Weight& w) const;
    std::optional<PMatrix> verschiebung(int n, const Weight& b) const;
};

struct DieudonneReport {
    std::vector<Violation> violations;
    std::vector<Weight> untestable;
    bool ok() const { return violations.empty(); }
};

/// Shapes, integrality, dF = pFd modulo p^prec and, for algebras, the
/// degree-0 congruence.
DieudonneReport validate_dieudonne(const DieudonneStructure& d);

struct AlphaMap {
    EtaResult eta;
    /// alpha[w][k]: block (n, w) of M -> block (n, p*w) of eta_p M, in eta_p bases.
    GradedMaps alpha;
};

/// alpha_F(x) = p^n F(x); AxiomViolation if an image leaves eta_p M.
AlphaMap alpha_F(const DieudonneStructure& d);

struct WeightDefect {
    Weight weight;  // target weight in eta_p M
    int degree = 0;
    bool injective = true;
    CokernelInvariants cokernel;
};

struct SaturationReport {
    bool saturated = true;
    std::vector<WeightDefect> defects;
    std::vector<Weight> untestable;
};

SaturationReport is_saturated(const DieudonneStructure& d);
SaturationReport is_saturated(const DieudonneStructure& d, const AlphaMap& a);

struct SaturationStage {
    DieudonneStructure d;
    /// Stage basis in the coordinates of stage 0 (inside M[1/p]).
    BasisMaps cumulative;
    /// alpha from the previous stage (weight w) into this stage (weight p*w).
    GradedMaps alpha;
};

struct SaturationResult {
    std::vector<SaturationStage> stages;  // stages[0] is the input
};

/// The first s stages of M -> eta_p M -> eta_p^2 M -> ..., with F transported.
SaturationResult saturate(const DieudonneStructure& d, int s);

/// Lattice of stage j at weight p^j * c, in stage-0 coordinates. WindowTooSmall
/// if that weight is not present.
Lattice stage_lattice(const SaturationResult& r, int j, const Weight& c, int degree);

/// V = p F^{-1}; NotSaturated if F is not invertible with p F^{-1} integral.
/// Checks VF = p, FdV = d and Vd = p dV, throwing AxiomViolation on failure.
DieudonneStructure derive_verschiebung(const DieudonneStructure& d);

// ---------------------------------------------------------------- W_r and towers

/// W_r at one weight: relation lattices S_r inside the free module M_w.
struct QuotientBlock {
    std::vector<Lattice> relations;  // per degree
    std::vector<CokernelInvariants> invariants;
};

struct QuotientLevel {
    int r = 0;
    std::map<Weight, QuotientBlock> blocks;
    std::vector<Weight> untestable;
};

/// V^r: M^n_{p^r w} -> M^n_w as a composite of stored V maps; nullopt when a
/// weight along the way is out of window.
std::optional<PMatrix> verschiebung_power(const DieudonneStructure& d, int n, const Weight& w, int r);

/// S_r(w) = V^r(M_{p^r w}) + d V^r(M_{p^r w}). Needs V (NotSaturated otherwise).
QuotientLevel quotient_Wr(const DieudonneStructure& d, int r);

struct StrictTower {
    DieudonneStructure base;
    std::vector<QuotientLevel> levels;  // r = 0..R
};

StrictTower build_tower(const DieudonneStructure& d, int R);

struct TowerReport {
    /// Failures tagged "axiom k" or "converse".
    std::vector<Violation> violations;
    std::size_t checks = 0;
    std::size_t untestable = 0;
    bool ok() const { return violations.empty(); }
};

TowerReport validate_tower(const StrictTower& t);

/// Mod-p comparison M/p -> W_1(M) per weight: same relation lattice pM + VM + dVM
/// and quasi-isomorphism of M/p onto the quotient.
bool check_mod_p_quotient_quasi_iso(const DieudonneStructure& d);

// ---------------------------------------------------------------- Cartier type

struct CartierReport {
    bool cartier_type = true;
    std::vector<Violation> defects;
    std::vector<Weight> untestable;
};

/// F mod p: M_w/p -> H(M/p)_{p w} bijective in every testable weight, and
/// H(M/p) vanishes at weights with no p-th root in the window.
CartierReport cartier_type_check(const DieudonneStructure& d);

/// For Cartier-type input: alpha_F mod p is a quasi-isomorphism at every stage
/// up to `depth`, and the mod-p Betti numbers agree between stage j at w and
/// stage j+1 at p*w.
struct CartierCriterionReport {
    bool ok = true;
    std::vector<std::string> failures;
    std::size_t comparisons = 0;
};

CartierCriterionReport cartier_criterion_check(const DieudonneStructure& d, int depth);

// ---------------------------------------------------------------- Nygaard

struct NygaardFiltration {
    DieudonneStructure base;
    int k_min = 0;
    int k_max = 0;
    /// lattices[k - k_min][w][degree index]
    std::vector<std::map<Weight, std::vector<Lattice>>> lattices;
    std::vector<Weight> untestable;

    const Lattice& at(int k, const Weight& w, int degree) const;
};

/// N^k M^i = M^i for i >= k, p^{k-i-1} V(M^i_{pw}) for i < k. Needs V.
NygaardFiltration nygaard(const DieudonneStructure& d, int k_max);

struct NygaardReport {
    std::vector<Violation> violations;
    std::size_t checks = 0;
    bool ok() const { return violations.empty(); }
};

/// Inclusions, sandwich bounds, N^k = alpha_F^{-1}(p^k M), and
/// gr^k -> tau^{<=k}(M/p) via x -> p^{-k} alpha_F(x).
NygaardReport nygaard_graded_compare(const NygaardFiltration& n, int k);

}  // namespace drwlab

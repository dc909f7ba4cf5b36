#pragma once

// Weight-graded based cochain complexes of finite free Z_p-modules, their
// cohomology, the decalage operator eta_p, Bockstein complexes and gamma.

#include <map>
#include <random>
#include <string>
#include <vector>

#include "drwlab/fp.hpp"
#include "drwlab/lattice.hpp"
#include "drwlab/weight.hpp"

namespace drwlab {

/// One weight component: ranks in degrees d_min..d_max and the differentials
/// between consecutive degrees (d[k] has shape rank[k+1] x rank[k]).
struct Block {
    std::vector<std::size_t> rank;
    std::vector<PMatrix> d;
};

class BasedComplex {
public:
    BasedComplex() = default;
    BasedComplex(long p, int prec, int d_min, int d_max);

    long p() const { return p_; }
    int prec() const { return prec_; }
    void set_prec(int prec);
    int d_min() const { return d_min_; }
    int d_max() const { return d_max_; }
    std::size_t length() const { return static_cast<std::size_t>(d_max_ - d_min_ + 1); }

    WeightWindow window;

    /// Adds a block; ShapeMismatch on inconsistent shapes.
    void set_block(const Weight& w, Block b);
    const std::map<Weight, Block>& blocks() const { return blocks_; }
    bool has(const Weight& w) const { return blocks_.count(w) != 0; }
    const Block& block(const Weight& w) const;
    WeightStatus status(const Weight& w) const;

    /// Rank at (degree, weight); 0 outside the degree range or for missing weights.
    std::size_t rank(int n, const Weight& w) const;
    /// d^n at weight w, shape rank(n+1) x rank(n); zero-sized outside the range.
    PMatrix diff(int n, const Weight& w) const;

private:
    long p_ = 2;
    int prec_ = 1;
    int d_min_ = 0;
    int d_max_ = 0;
    std::map<Weight, Block> blocks_;
};

/// Single-weight complex from a list of differentials starting in degree d_min.
BasedComplex make_complex(long p, int prec, int d_min, const std::vector<std::size_t>& ranks,
                          const std::vector<PMatrix>& diffs, const Weight& w = Weight::untwisted());

struct Violation {
    int degree = 0;
    Weight weight;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks integrality of differentials and d o d = 0 modulo p^prec.
ValidationReport validate(const BasedComplex& c);

struct CohomologyGroup {
    std::size_t free_rank = 0;
    std::vector<int> torsion;  // exponents e of Z/p^e, ascending
    std::size_t unresolved = 0;

    bool is_zero() const { return free_rank == 0 && torsion.empty() && unresolved == 0; }
    /// Quotient by the p-torsion subgroup: every Z/p^e becomes Z/p^(e-1).
    CohomologyGroup modulo_p_torsion() const;
    bool operator==(const CohomologyGroup&) const = default;
    std::string to_string() const;
};

using CohomologyProfile = std::map<std::pair<int, Weight>, CohomologyGroup>;

CohomologyProfile cohomology(const BasedComplex& c);

/// Per weight and degree, the columns express the basis of the new complex in
/// the coordinates of the old one (an inclusion into C[1/p]).
using BasisMaps = std::map<Weight, std::vector<PMatrix>>;

struct EtaResult {
    BasedComplex complex;
    BasisMaps inclusion;
};

/// (eta_p M)^n = {x in p^n M^n : dx in p^(n+1) M^(n+1)}, with its own basis.
/// Spends one digit of precision.
EtaResult eta_p(const BasedComplex& c);

/// A bounded complex of F_p vector spaces.
struct FpComplex {
    long p = 2;
    int d_min = 0;
    std::vector<std::size_t> dim;
    std::vector<FpMatrix> d;  // d[k]: degree d_min+k -> d_min+k+1

    std::vector<std::size_t> betti() const;
    /// d^n, zero-sized outside the range.
    FpMatrix diff(int n) const;
    FpHomology homology(int n) const;
    bool is_complex() const;
    bool is_acyclic() const;
};

FpComplex reduce_mod_p(const BasedComplex& c, const Weight& w);

/// Chain map between FpComplexes with the same degree range.
struct FpChainMap {
    std::vector<FpMatrix> f;
};

bool is_chain_map(const FpComplex& a, const FpComplex& b, const FpChainMap& f);
FpComplex mapping_cone(const FpComplex& a, const FpComplex& b, const FpChainMap& f);
bool is_quasi_isomorphism(const FpComplex& a, const FpComplex& b, const FpChainMap& f);

struct BocksteinBlock {
    std::vector<FpHomology> h;   // H^n(M/p) per degree
    FpComplex complex;           // dims = dim H^n, d = beta
};

struct BocksteinComplex {
    long p = 2;
    int d_min = 0;
    std::map<Weight, BocksteinBlock> blocks;
};

BocksteinComplex bockstein(const BasedComplex& c);

struct GammaMap {
    /// Per weight: the mod-p eta_p complex, and gamma as an FpChainMap into the
    /// Bockstein complex of the same weight.
    std::map<Weight, FpComplex> source;
    std::map<Weight, FpChainMap> map;
};

GammaMap gamma_map(const BasedComplex& c, const EtaResult& eta, const BocksteinComplex& b);

/// tau^{<=k}: degrees > k vanish, degree k becomes ker d with a saturated basis.
BasedComplex truncate_leq(const BasedComplex& c, int k);

/// Integral chain map between based complexes over the same weights.
using ChainMap = std::map<Weight, std::vector<PMatrix>>;

bool is_chain_map(const BasedComplex& a, const BasedComplex& b, const ChainMap& f);
/// f reduced mod p is a quasi-isomorphism in every weight.
bool is_quasi_isomorphism_mod_p(const BasedComplex& a, const BasedComplex& b, const ChainMap& f);
/// The map eta_p(f) in the bases of eta_p(a) and eta_p(b); AxiomViolation if
/// f does not preserve the decalage conditions.
ChainMap eta_p_map(const EtaResult& a, const EtaResult& b, const ChainMap& f);

/// Deterministic random torsion-free complex: 4 degrees starting at 0, ranks
/// at most `max_rank`, entries drawn from [-p^2, p^2].
BasedComplex random_complex(std::mt19937_64& rng, long p, int prec, std::size_t max_rank = 6);

/// Portable bounded draw from a 64-bit Mersenne twister.
long draw_in(std::mt19937_64& rng, long lo, long hi);

}  // namespace drwlab

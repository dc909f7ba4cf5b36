#include <gtest/gtest.h>

#include <set>

#include "drwlab/lattice.hpp"
#include "test_support.hpp"

using namespace drwlab;
using drwlab::testing::draw;

namespace {

PMatrix diag_from(const SNFResult& r, std::size_t rows, std::size_t cols, long p) {
    PMatrix d(p, r.prec, rows, cols);
    for (std::size_t i = 0; i < r.diag_valuations.size(); ++i)
        if (r.diag_valuations[i] != kInfVal) d(i, i) = ppow(p, r.diag_valuations[i]);
    return d;
}

Rat det_q(PMatrix m) {
    // Fraction-free enough for tiny unimodular checks.
    const std::size_t n = m.rows();
    Rat det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t r = c;
        while (r < n && m(r, c) == 0) ++r;
        if (r == n) return 0;
        if (r != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(r, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            Rat f = m(i, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

}  // namespace

TEST(PScalar, ConstructionAndValuation) {
    PScalar a = PScalar::from_int(12, 2, 8);
    EXPECT_EQ(a.val(), 2);
    EXPECT_EQ(a.unit(), 3);
    EXPECT_EQ(a.prec(), 8);
    EXPECT_TRUE(PScalar::from_int(0, 3, 5).is_exact_zero());
    PScalar z = PScalar::from_int(81, 3, 4);  // 3^4 is zero mod 3^4 but not exact
    EXPECT_TRUE(z.is_zero());
    EXPECT_FALSE(z.is_exact_zero());
}

TEST(PScalar, DivisionByPIsExactAndSpendsOneDigit) {
    PScalar a = PScalar::from_int(18, 3, 6);
    PScalar b = a.div_p();
    EXPECT_EQ(b.val(), a.val() - 1);
    EXPECT_EQ(b.prec(), a.prec() - 1);
    EXPECT_EQ(b.lift(), Rat(6));
}

TEST(PScalar, ArithmeticNeverClaimsExtraPrecision) {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 200; ++it) {
        long p = std::vector<long>{2, 3, 5, 7}[it % 4];
        long x = draw(rng, -500, 500), y = draw(rng, -500, 500);
        if (x == 0 || y == 0) continue;  // rational zero is exact by construction
        int nx = static_cast<int>(draw(rng, 3, 9)), ny = static_cast<int>(draw(rng, 3, 9));
        PScalar a = PScalar::from_int(x, p, nx), b = PScalar::from_int(y, p, ny);
        PScalar s = a + b, m = a * b;
        if (!s.is_exact_zero()) {
            EXPECT_LE(s.prec(), std::min(nx, ny));
            EXPECT_TRUE(s.equals_at_precision(PScalar::from_int(x + y, p, s.prec())));
        }
        if (!m.is_exact_zero()) {
            EXPECT_LE(m.prec(), std::min(a.val() + ny, b.val() + nx));
            EXPECT_TRUE(m.equals_at_precision(PScalar::from_int(x * y, p, m.prec())));
        }
    }
}

TEST(PScalar, UnitInverse) {
    PScalar a = PScalar::from_rational(Rat(2, 5), 3, 6);
    PScalar b = a.inverse();
    PScalar one = a * b;
    EXPECT_TRUE(one.equals_at_precision(PScalar::from_int(1, 3, 6)));
}

TEST(Snf, IdentityAndSingleEntry) {
    EXPECT_EQ(snf(PMatrix::identity(5, 4, 2)).diag_valuations, (std::vector<int>{0, 0}));
    PMatrix m(3, 4, 1, 1);
    m(0, 0) = 3;
    EXPECT_EQ(snf(m).diag_valuations, (std::vector<int>{1}));
}

TEST(Snf, RejectsZeroPrecision) {
    PMatrix m(3, 0, 1, 1);
    EXPECT_THROW(snf(m), Error);
}

TEST(Snf, MatchesIntegerDeterminantalDivisors) {
    std::mt19937_64 rng(3);
    for (int it = 0; it < 40; ++it) {
        PMatrix m = drwlab::testing::random_int_matrix(rng, 3, 8, 3, 3, 30);
        if (it % 5 == 0)
            for (std::size_t j = 0; j < 3; ++j) m(2, j) = m(0, j) * 3;  // force a rank drop or 3-divisibility
        auto expected = drwlab::testing::integer_snf_valuations(drwlab::testing::to_int_rows(m), 3);
        EXPECT_EQ(snf(m).diag_valuations, expected);
    }
}

TEST(Snf, ReconstructionAndUnimodularTransforms) {
    std::mt19937_64 rng(5);
    for (int it = 0; it < 60; ++it) {
        long p = std::vector<long>{2, 3, 5}[it % 3];
        std::size_t r = static_cast<std::size_t>(draw(rng, 1, 5)), c = static_cast<std::size_t>(draw(rng, 1, 5));
        PMatrix m = drwlab::testing::random_int_matrix(rng, p, 8, r, c, p * p);
        SNFResult s = snf(m);
        EXPECT_EQ(s.left * m * s.right, diag_from(s, r, c, p));
        EXPECT_EQ(valuation(det_q(s.left), p), 0);
        EXPECT_EQ(valuation(det_q(s.right), p), 0);
        EXPECT_TRUE(std::is_sorted(s.diag_valuations.begin(), s.diag_valuations.end()));
    }
}

TEST(Integrality, TrivialCases) {
    PMatrix zero(3, 5, 1, 1);
    EXPECT_EQ(solve_integrality(zero, 5), Lattice::full(3, 5, 1));
    PMatrix inv_p = PMatrix::from_rows(3, 5, {{Rat(1, 3)}});
    Lattice l = solve_integrality(inv_p, 5);
    EXPECT_EQ(l.basis()(0, 0), Rat(3));
    EXPECT_EQ(l.prec(), 4);
}

TEST(Integrality, PrecisionBudget) {
    PMatrix d = PMatrix::from_rows(2, 2, {{Rat(1, 4)}});
    EXPECT_THROW(solve_integrality(d, 2), Error);
    EXPECT_NO_THROW(solve_integrality(d, 3));
}

TEST(Integrality, AgreesWithEnumerationModPCubed) {
    for (long p : {2L, 3L, 5L}) {
        const Rat ip(1, p), ip2(1, p * p);
        PMatrix d = PMatrix::from_rows(p, 8, {{ip, 0}, {ip2, ip}});
        Lattice l = solve_integrality(d, 8);
        const long mod = p * p * p;
        std::size_t count = 0;
        for (long a = 0; a < mod; ++a)
            for (long b = 0; b < mod; ++b) {
                std::vector<Rat> c{Rat(a), Rat(b)};
                auto dc = d.apply(c);
                bool integral = valuation(dc[0], p) >= 0 && valuation(dc[1], p) >= 0;
                EXPECT_EQ(l.contains(c), integral) << "p=" << p << " c=(" << a << "," << b << ")";
                count += integral;
            }
        // a = 0 mod p and a/p + b = 0 mod p: index p^2, so p^4 residues mod p^3.
        EXPECT_EQ(count, static_cast<std::size_t>(mod * p));
    }
}

TEST(Integrality, RandomPropertyBasisIntegralAndOutsidersFail) {
    std::mt19937_64 rng(17);
    for (int it = 0; it < 30; ++it) {
        long p = std::vector<long>{2, 3, 5}[it % 3];
        const int s = 2, n_prec = 8;
        PMatrix d = drwlab::testing::random_int_matrix(rng, p, n_prec, 2, 3, p * p).scaled(ppow(p, -s));
        Lattice l = solve_integrality(d, n_prec);
        for (std::size_t j = 0; j < l.rank(); ++j) {
            auto dc = d.apply(l.basis().column(j));
            for (auto& x : dc) EXPECT_GE(valuation(x, p), 0);
        }
        int outsiders = 0;
        for (int k = 0; k < 100; ++k) {
            std::vector<Rat> v(3);
            const long mod = static_cast<long>(ipow(p, n_prec - s).get_si());
            for (auto& x : v) x = draw(rng, 0, mod - 1);
            auto dv = d.apply(v);
            bool integral = std::all_of(dv.begin(), dv.end(), [&](const Rat& x) { return valuation(x, p) >= 0; });
            EXPECT_EQ(l.contains(v), integral);
            outsiders += !integral;
        }
        EXPECT_GT(outsiders, 0);
    }
}

TEST(Cokernel, Examples) {
    const long p = 3;
    Lattice amb1 = Lattice::full(p, 8, 1);
    Lattice sub1 = Lattice::from_generators(PMatrix::from_rows(p, 8, {{Rat(p)}}));
    EXPECT_EQ(cokernel_invariants(sub1, amb1).torsion, (std::vector<int>{1}));
    EXPECT_TRUE(cokernel_invariants(amb1, amb1).is_zero());
    Lattice amb2 = Lattice::full(p, 8, 2);
    Lattice sub2 = Lattice::from_generators(PMatrix::from_rows(p, 8, {{Rat(p), 0}, {0, Rat(p * p)}}));
    EXPECT_EQ(cokernel_invariants(sub2, amb2).torsion, (std::vector<int>{1, 2}));
    EXPECT_EQ(cokernel_invariants(sub2, amb2).free_rank, 0u);
    Lattice line = Lattice::from_generators(PMatrix::from_rows(p, 8, {{Rat(p)}, {0}}));
    auto inv = cokernel_invariants(line, amb2);
    EXPECT_EQ(inv.torsion, (std::vector<int>{1}));
    EXPECT_EQ(inv.free_rank, 1u);
}

TEST(Cokernel, NotASublattice) {
    Lattice amb = Lattice::from_generators(PMatrix::from_rows(2, 8, {{Rat(2)}}));
    Lattice sub = Lattice::full(2, 8, 1);
    try {
        cokernel_invariants(sub, amb);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotASublattice);
    }
}

TEST(Cokernel, InvariantUnderUnimodularChangeOfBasis) {
    std::mt19937_64 rng(23);
    for (int it = 0; it < 30; ++it) {
        long p = std::vector<long>{2, 3}[it % 2];
        PMatrix amb_gens = drwlab::testing::random_int_matrix(rng, p, 10, 3, 3, 6);
        if (rank_q(amb_gens) < 3) continue;
        PMatrix mix = drwlab::testing::random_int_matrix(rng, p, 10, 3, 3, p * p);
        Lattice amb = Lattice::from_generators(amb_gens);
        Lattice sub = Lattice::from_generators(amb_gens * mix);
        auto base = cokernel_invariants(sub, amb);
        // Unimodular change: upper triangular with unit diagonal.
        PMatrix u = PMatrix::identity(p, 10, 3);
        u(0, 1) = draw(rng, -5, 5);
        u(1, 2) = draw(rng, -5, 5);
        u(0, 2) = draw(rng, -5, 5);
        Lattice amb2 = Lattice::from_generators(amb_gens * u);
        Lattice sub2 = Lattice::from_generators(amb_gens * mix * u);
        EXPECT_EQ(cokernel_invariants(sub2, amb2), base);
        EXPECT_EQ(amb2, amb);  // Hermite form is canonical
    }
}

TEST(Lattice, HermiteFormIsCanonical) {
    const long p = 5;
    PMatrix g1 = PMatrix::from_rows(p, 6, {{Rat(5), Rat(10)}, {Rat(1), Rat(7)}});
    PMatrix g2 = PMatrix::from_rows(p, 6, {{Rat(15), Rat(5)}, {Rat(8), Rat(1)}});
    Lattice a = Lattice::from_generators(g1), b = Lattice::from_generators(g2);
    EXPECT_EQ(a == b, a.contains(b) && b.contains(a));
}

TEST(Lattice, PreimageOfFullRankLattice) {
    const long p = 3;
    PMatrix a = PMatrix::from_rows(p, 6, {{Rat(1), Rat(1)}, {0, Rat(3)}});
    Lattice target = Lattice::from_generators(PMatrix::from_rows(p, 6, {{Rat(9), 0}, {0, Rat(9)}}));
    Lattice pre = preimage(a, target);
    for (long x = 0; x < 27; ++x)
        for (long y = 0; y < 27; ++y) {
            std::vector<Rat> v{Rat(x), Rat(y)};
            EXPECT_EQ(pre.contains(v), target.contains(a.apply(v)));
        }
}

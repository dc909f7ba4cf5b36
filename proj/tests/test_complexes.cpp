#include <gtest/gtest.h>

#include <numeric>

#include "drwlab/complexes.hpp"
#include "test_support.hpp"

using namespace drwlab;

namespace {

const Weight U = Weight::untwisted();

BasedComplex arrow(long p, int prec, const Rat& x) {
    return make_complex(p, prec, 0, {1, 1}, {PMatrix::from_rows(p, prec, {{x}})});
}

// H^n over Z_(p) from integer invariant factors of consecutive differentials.
CohomologyGroup integer_oracle(const BasedComplex& c, int n) {
    const long p = c.p();
    CohomologyGroup g;
    auto rank_of = [&](const PMatrix& d) {
        if (d.empty()) return std::size_t{0};
        auto v = drwlab::testing::integer_snf_valuations(drwlab::testing::to_int_rows(d), p);
        return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](int x) { return x != kInfVal; }));
    };
    const PMatrix out = c.diff(n, U), in = c.diff(n - 1, U);
    g.free_rank = c.rank(n, U) - rank_of(out) - rank_of(in);
    if (!in.empty())
        for (int v : drwlab::testing::integer_snf_valuations(drwlab::testing::to_int_rows(in), p))
            if (v != kInfVal && v > 0) g.torsion.push_back(v);
    std::sort(g.torsion.begin(), g.torsion.end());
    return g;
}

CohomologyGroup H(const CohomologyProfile& h, int n) { return h.at(std::make_pair(n, U)); }

}  // namespace

TEST(Validate, Examples) {
    EXPECT_TRUE(validate(make_complex(3, 5, 0, {2, 1}, {})).ok());
    EXPECT_TRUE(validate(arrow(3, 5, 3)).ok());
    const int prec = 5;
    auto bad = make_complex(3, prec, 0, {1, 1, 1},
                            {PMatrix::from_rows(3, prec, {{1}}), PMatrix::from_rows(3, prec, {{ppow(3, prec - 1)}})});
    auto rep = validate(bad);
    ASSERT_EQ(rep.violations.size(), 1u);
    EXPECT_EQ(rep.violations[0].degree, 0);
    auto fine = make_complex(3, prec, 0, {1, 1, 1},
                             {PMatrix::from_rows(3, prec, {{1}}), PMatrix::from_rows(3, prec, {{ppow(3, prec)}})});
    EXPECT_TRUE(validate(fine).ok());
}

TEST(Cohomology, Examples) {
    auto zero = arrow(2, 6, 0);
    auto h = cohomology(zero);
    EXPECT_EQ(H(h, 0).free_rank, 1u);
    EXPECT_EQ(H(h, 1).free_rank, 1u);
    auto hp = cohomology(arrow(3, 6, 3));
    EXPECT_TRUE(H(hp, 0).is_zero());
    EXPECT_EQ(H(hp, 1).torsion, (std::vector<int>{1}));
    EXPECT_EQ(H(hp, 1).free_rank, 0u);
}

TEST(Cohomology, TorsionBeyondPrecisionIsFlagged) {
    auto h = cohomology(arrow(2, 3, 16));
    EXPECT_EQ(H(h, 1).unresolved, 1u);
    EXPECT_TRUE(H(h, 1).torsion.empty());
}

TEST(Cohomology, MatchesIntegerOracleOnRandomComplexes) {
    std::mt19937_64 rng(101);
    for (int it = 0; it < 30; ++it) {
        const long p = 3;
        BasedComplex c = random_complex(rng, p, 40, 5);
        ASSERT_TRUE(validate(c).ok());
        auto h = cohomology(c);
        for (int n = 0; n < 4; ++n) EXPECT_EQ(H(h, n), integer_oracle(c, n)) << "iteration " << it << " degree " << n;
    }
}

TEST(EtaP, Examples) {
    auto single = make_complex(5, 6, 0, {1}, {});
    auto e = eta_p(single);
    EXPECT_EQ(e.complex.rank(0, U), 1u);
    EXPECT_EQ(e.inclusion.at(U)[0](0, 0), Rat(1));

    auto e2 = eta_p(arrow(5, 6, 0));
    EXPECT_EQ(e2.inclusion.at(U)[1](0, 0), Rat(5));
    auto h2 = cohomology(e2.complex);
    EXPECT_EQ(H(h2, 0).free_rank, 1u);
    EXPECT_EQ(H(h2, 1).free_rank, 1u);

    auto h3 = cohomology(eta_p(arrow(5, 6, 5)).complex);
    EXPECT_TRUE(H(h3, 0).is_zero());
    EXPECT_TRUE(H(h3, 1).is_zero());
}

TEST(EtaP, PrecisionPrecondition) {
    auto c = make_complex(3, 3, 0, {1, 1, 1}, {});
    EXPECT_THROW(eta_p(c), Error);
    EXPECT_EQ(eta_p(make_complex(3, 4, 0, {1, 1, 1}, {})).complex.prec(), 3);
}

TEST(EtaP, CohomologyIsModPTorsion) {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 30; ++it) {
        const long p = std::vector<long>{2, 3, 5}[it % 3];
        BasedComplex c = random_complex(rng, p, 30, 5);
        auto e = eta_p(c);
        ASSERT_TRUE(validate(e.complex).ok());
        auto h = cohomology(c), he = cohomology(e.complex);
        for (int n = 0; n < 4; ++n) EXPECT_EQ(H(he, n), H(h, n).modulo_p_torsion()) << "it " << it << " n " << n;
    }
}

TEST(Bockstein, Examples) {
    auto z = bockstein(arrow(3, 4, 0));
    EXPECT_TRUE(z.blocks.at(U).complex.d[0].is_zero());

    auto b = bockstein(arrow(3, 4, 3));
    const auto& blk = b.blocks.at(U);
    EXPECT_EQ(blk.complex.dim, (std::vector<std::size_t>{1, 1}));
    EXPECT_EQ(blk.complex.d[0].rank(), 1u);

    auto b2 = bockstein(arrow(3, 4, 9));
    EXPECT_TRUE(b2.blocks.at(U).complex.d[0].is_zero());
}

TEST(Bockstein, SquaresToZero) {
    std::mt19937_64 rng(9);
    for (int it = 0; it < 30; ++it) {
        BasedComplex c = random_complex(rng, std::vector<long>{2, 3, 5}[it % 3], 20, 5);
        EXPECT_TRUE(bockstein(c).blocks.at(U).complex.is_complex());
    }
}

TEST(Gamma, ZeroDifferentialIsIdentityShaped) {
    auto c = make_complex(3, 6, 0, {2, 1}, {});
    auto e = eta_p(c);
    auto b = bockstein(c);
    auto g = gamma_map(c, e, b);
    EXPECT_EQ(g.map.at(U).f[0], FpMatrix::identity(3, 2));
    EXPECT_EQ(g.map.at(U).f[1], FpMatrix::identity(3, 1));
}

TEST(Gamma, QuasiIsomorphismOnFiftyRandomComplexes) {
    std::mt19937_64 rng(2024);
    for (int it = 0; it < 50; ++it) {
        const long p = std::vector<long>{2, 3, 5}[it % 3];
        BasedComplex c = random_complex(rng, p, 20);
        auto e = eta_p(c);
        auto b = bockstein(c);
        auto g = gamma_map(c, e, b);
        const auto& src = g.source.at(U);
        const auto& dst = b.blocks.at(U).complex;
        ASSERT_TRUE(is_chain_map(src, dst, g.map.at(U))) << "it " << it;
        EXPECT_TRUE(is_quasi_isomorphism(src, dst, g.map.at(U))) << "it " << it;
    }
}

TEST(Truncate, Examples) {
    std::mt19937_64 rng(4);
    BasedComplex c = random_complex(rng, 3, 10);
    auto full = truncate_leq(c, c.d_max());
    EXPECT_EQ(cohomology(full), cohomology(c));
    auto none = truncate_leq(c, -1);
    for (int n = 0; n < 4; ++n) EXPECT_EQ(none.rank(n, U), 0u);
    auto t0 = truncate_leq(arrow(3, 5, 3), 0);
    EXPECT_EQ(t0.rank(0, U), 0u);
    EXPECT_EQ(t0.rank(1, U), 0u);
}

TEST(Truncate, KeepsLowCohomology) {
    std::mt19937_64 rng(12);
    for (int it = 0; it < 10; ++it) {
        BasedComplex c = random_complex(rng, 2, 20, 5);
        for (int k = 0; k < 4; ++k) {
            auto h = cohomology(c), ht = cohomology(truncate_leq(c, k));
            for (int n = 0; n < 4; ++n) {
                if (n <= k) EXPECT_EQ(H(ht, n), H(h, n));
                else EXPECT_TRUE(H(ht, n).is_zero());
            }
        }
    }
}

TEST(EtaPFunctoriality, QuasiIsomorphismsModPArePreserved) {
    std::mt19937_64 rng(31);
    for (int it = 0; it < 15; ++it) {
        const long p = std::vector<long>{2, 3, 5}[it % 3];
        BasedComplex c = random_complex(rng, p, 20, 4);
        // C' = C plus a contractible summand Z --u--> Z in degrees k, k+1.
        const int k = static_cast<int>(draw_in(rng, 0, 2));
        const long u = 1 + p * draw_in(rng, 0, 3);
        std::vector<std::size_t> r2;
        for (int n = 0; n < 4; ++n) r2.push_back(c.rank(n, U) + ((n == k || n == k + 1) ? 1 : 0));
        std::vector<PMatrix> d2;
        ChainMap f;
        for (int n = 0; n < 4; ++n) {
            PMatrix inc(p, 20, r2[static_cast<std::size_t>(n)], c.rank(n, U));
            for (std::size_t i = 0; i < c.rank(n, U); ++i) inc(i, i) = 1;
            f[U].push_back(inc);
        }
        for (int n = 0; n < 3; ++n) {
            PMatrix d(p, 20, r2[static_cast<std::size_t>(n + 1)], r2[static_cast<std::size_t>(n)]);
            PMatrix old = c.diff(n, U);
            for (std::size_t i = 0; i < old.rows(); ++i)
                for (std::size_t j = 0; j < old.cols(); ++j) d(i, j) = old(i, j);
            if (n == k) d(d.rows() - 1, d.cols() - 1) = u;
            d2.push_back(d);
        }
        BasedComplex c2 = make_complex(p, 20, 0, r2, d2);
        ASSERT_TRUE(is_quasi_isomorphism_mod_p(c, c2, f));
        auto e1 = eta_p(c), e2 = eta_p(c2);
        ChainMap g = eta_p_map(e1, e2, f);
        EXPECT_TRUE(is_quasi_isomorphism_mod_p(e1.complex, e2.complex, g)) << "it " << it;

        ChainMap times_p;
        for (int n = 0; n < 4; ++n) times_p[U].push_back(PMatrix::identity(p, 20, c.rank(n, U)).scaled(p));
        auto betti = reduce_mod_p(c, U).betti();
        if (std::accumulate(betti.begin(), betti.end(), std::size_t{0}) > 0)
            EXPECT_FALSE(is_quasi_isomorphism_mod_p(c, c, times_p));
    }
}

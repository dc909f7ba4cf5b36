#include <gtest/gtest.h>

#include <random>
#include <set>

#include "drwlab/witt.hpp"

using namespace drwlab;

namespace {

long rnd(std::mt19937_64& rng, long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

WittVector<ZmodRing> fp_vec(long p, const std::vector<long>& xs) {
    ZmodRing f(p, 1);
    WittVector<ZmodRing> w{f, p, {}};
    for (long x : xs) w.c.push_back(f.from_int(x));
    return w;
}

std::vector<Int> comps(const WittVector<ZmodRing>& w) { return w.c; }

}  // namespace

TEST(StructurePolys, LengthOneSumIsAddition) {
    for (long p : {2L, 3L, 5L}) {
        const auto& s = structure_polys(p, 1, WittOp::Sum);
        ASSERT_EQ(s.polys.size(), 1u);
        EXPECT_EQ(s.polys[0], Poly::variable(2, 0) + Poly::variable(2, 1));
    }
}

TEST(StructurePolys, SecondSumComponentForPTwo) {
    const auto& s = structure_polys(2, 2, WittOp::Sum);
    const std::size_t nv = 4;
    Poly x0 = Poly::variable(nv, 0), x1 = Poly::variable(nv, 1), y0 = Poly::variable(nv, 2), y1 = Poly::variable(nv, 3);
    Poly expected = x1 + y1 + (x0.pow(2) + y0.pow(2) - (x0 + y0).pow(2)).divided_exactly(2);
    EXPECT_EQ(s.polys[1], expected);
    EXPECT_EQ(s.polys[1].to_string(s.variable_names()), "-x0*y0 + x1 + y1");
}

TEST(StructurePolys, FirstProductComponent) {
    for (long p : {2L, 3L, 7L}) {
        const auto& s = structure_polys(p, 2, WittOp::Product);
        EXPECT_EQ(s.polys[0], Poly::variable(4, 0) * Poly::variable(4, 2));
    }
}

TEST(StructurePolys, GhostIdentityHolds) {
    for (long p : {2L, 3L})
        for (int r = 1; r <= 3; ++r)
            for (WittOp op : {WittOp::Sum, WittOp::Product, WittOp::Neg, WittOp::Frobenius}) {
                if (op == WittOp::Frobenius && r < 2) continue;
                EXPECT_TRUE(verify_ghost_identity(structure_polys(p, r, op))) << p << " " << r << " " << to_string(op);
            }
}

TEST(StructurePolys, TamperedSetFailsVerification) {
    WittPolySet s = structure_polys(3, 2, WittOp::Sum);
    s.polys[1] = s.polys[1] + Poly::constant(4, 1);
    EXPECT_FALSE(verify_ghost_identity(s));
}

TEST(StructurePolys, CostGuard) {
    try {
        structure_polys(2, 5, WittOp::Sum);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::CostGuard);
    }
    EXPECT_THROW(structure_polys(17, 2, WittOp::Sum), Error);
}

TEST(WittArithmetic, AdditiveIdentity) {
    std::mt19937_64 rng(1);
    for (int it = 0; it < 10; ++it) {
        auto a = fp_vec(3, {rnd(rng, 0, 2), rnd(rng, 0, 2), rnd(rng, 0, 2)});
        EXPECT_EQ(witt_add(a, witt_zero(a.ring, 3, 3)), a);
    }
}

TEST(WittArithmetic, PTimesOneIsVOne) {
    for (long p : {2L, 3L, 5L}) {
        auto one = fp_vec(p, {1, 0});
        auto acc = witt_zero(one.ring, p, 2);
        for (long k = 0; k < p; ++k) acc = witt_add(acc, one);
        EXPECT_EQ(acc, fp_vec(p, {0, 1}));
    }
}

TEST(WittArithmetic, TeichmullerIsMultiplicative) {
    for (long p : {2L, 3L}) {
        FpLaurentRing ring(p, 2);
        auto x = ring.monomial(1, {1, 0}), y = ring.monomial(1, {0, -1});
        auto prod = witt_mul(teichmuller(ring, p, 3, x), teichmuller(ring, p, 3, y));
        EXPECT_EQ(prod, teichmuller(ring, p, 3, ring.mul(x, y)));
    }
}

TEST(WittArithmetic, RingAxiomsOnSamples) {
    std::mt19937_64 rng(2);
    for (long p : {2L, 3L}) {
        FpLaurentRing ring(p, 1);
        auto sample = [&] {
            WittVector<FpLaurentRing> w{ring, p, {}};
            for (int i = 0; i < 2; ++i)
                w.c.push_back(ring.add(ring.monomial(rnd(rng, 0, p - 1), {rnd(rng, -2, 2)}),
                                       ring.monomial(rnd(rng, 0, p - 1), {rnd(rng, -2, 2)})));
            return w;
        };
        for (int it = 0; it < 5; ++it) {
            auto a = sample(), b = sample(), c = sample();
            EXPECT_EQ(witt_add(a, b), witt_add(b, a));
            EXPECT_EQ(witt_mul(a, b), witt_mul(b, a));
            EXPECT_EQ(witt_add(witt_add(a, b), c), witt_add(a, witt_add(b, c)));
            EXPECT_EQ(witt_mul(witt_mul(a, b), c), witt_mul(a, witt_mul(b, c)));
            EXPECT_EQ(witt_mul(a, witt_add(b, c)), witt_add(witt_mul(a, b), witt_mul(a, c)));
            EXPECT_EQ(witt_add(a, witt_neg(a)), witt_zero(ring, p, 2));
        }
    }
}

TEST(WittOperators, FrobeniusOfTeichmullerInCharP) {
    FpLaurentRing ring(3, 1);
    auto x = ring.monomial(2, {1});
    auto f = frobenius_w(teichmuller(ring, 3, 3, x));
    EXPECT_EQ(f, teichmuller(ring, 3, 2, ring_pow(ring, x, 3)));
}

TEST(WittOperators, UniversalFrobeniusMatchesCharPFormula) {
    std::mt19937_64 rng(3);
    FpLaurentRing ring(2, 1);
    for (int it = 0; it < 10; ++it) {
        WittVector<FpLaurentRing> a{ring, 2, {}};
        for (int i = 0; i < 3; ++i)
            a.c.push_back(ring.add(ring.monomial(1, {rnd(rng, -2, 2)}), ring.monomial(rnd(rng, 0, 1), {rnd(rng, -2, 2)})));
        EXPECT_EQ(frobenius_w(a), frobenius_char_p(a));
        EXPECT_EQ(frobenius_w(restrict_w(a)), restrict_w(frobenius_w(a)));
    }
}

TEST(WittOperators, FVAndVFArePInW3F5) {
    std::mt19937_64 rng(5);
    const long p = 5;
    for (int it = 0; it < 20; ++it) {
        auto a = fp_vec(p, {rnd(rng, 0, 4), rnd(rng, 0, 4), rnd(rng, 0, 4)});
        auto pa = witt_times(a, static_cast<unsigned>(p));
        EXPECT_EQ(frobenius_w(verschiebung_w(a)), pa);
        EXPECT_EQ(verschiebung_w(frobenius_w(a)), pa);
    }
}

TEST(WittFp, IsomorphicToIntegersModPr) {
    for (long p : {2L, 3L})
        for (int r = 1; r <= 3; ++r) {
            const long mod = ipow(p, static_cast<unsigned>(r)).get_si();
            std::vector<WittVector<ZmodRing>> all;
            std::vector<long> digits(static_cast<std::size_t>(r), 0);
            for (long code = 0; code < mod; ++code) {
                long c = code;
                for (auto& d : digits) {
                    d = c % p;
                    c /= p;
                }
                all.push_back(fp_vec(p, digits));
            }
            std::set<long> images;
            for (const auto& a : all) images.insert(witt_fp_to_int(p, comps(a)).get_si());
            EXPECT_EQ(images.size(), static_cast<std::size_t>(mod));
            for (const auto& a : all)
                for (const auto& b : all) {
                    const Int ia = witt_fp_to_int(p, comps(a)), ib = witt_fp_to_int(p, comps(b));
                    EXPECT_EQ(witt_fp_to_int(p, comps(witt_add(a, b))), Int((ia + ib) % mod));
                    EXPECT_EQ(witt_fp_to_int(p, comps(witt_mul(a, b))), Int((ia * ib) % mod));
                }
        }
}

#include <gtest/gtest.h>

#include <random>

#include "vfix/algebra.hpp"
#include "vfix/linalg.hpp"

using namespace vfix;

// [DERIVED] x^q + x = d holds for the returned root; extension iff trace nonzero
TEST(ArtinSchreier, SolvesOnRandomInputs)
{
    std::mt19937_64 rng(11);
    int extended = 0;
    for (int i = 0; i < 1000; ++i) {
        const int d = 2 + 2 * (i % 4);  // 2, 4, 6, 8
        const int qd = (i % 3 == 0 && d % 2 == 0) ? 2 : 1;
        FieldRef f = BinaryField::standard(d);
        const bits_t v = rng() % f->size();
        ArtinSchreierRoot r = artin_schreier_solve(f, qd, v);
        const BinaryField& g = *r.field;
        const bits_t lifted = r.lift ? r.lift->apply(v) : v;
        EXPECT_EQ(g.frobenius(r.root, qd) ^ r.root, lifted);
        EXPECT_EQ(r.extension_multiplier == 1, f->trace(v, qd) == 0);
        EXPECT_EQ(g.degree(), d * r.extension_multiplier);
        extended += r.extension_multiplier == 2;
    }
    EXPECT_GT(extended, 0);
}

TEST(ArtinSchreier, RejectsNonSubfield)
{
    EXPECT_THROW(artin_schreier_solve(BinaryField::standard(3), 2, 1), PreconditionError);
}

TEST(BinaryForm, ZerosAndResultant)
{
    const BinaryField& f = BinaryField::gf(2);
    // X Y and X (X + Y) share (0 : 1)
    BinaryForm a(f, {0, 1, 0}), b(f, {1, 1, 0});
    EXPECT_EQ(quadratic_resultant(a, b), 0u);
    std::vector<ProjectivePoint1> z = quadratic_form_zeros(a);
    ASSERT_EQ(z.size(), 2u);
    EXPECT_EQ(z[0], (ProjectivePoint1{0, 1}));
    EXPECT_TRUE(z[1].is_infinity());
    // X^2 + X Y + Y^2 is irreducible over GF(2), coprime to X Y
    BinaryForm c(BinaryField::gf(1), {1, 1, 1}), d(BinaryField::gf(1), {0, 1, 0});
    EXPECT_TRUE(quadratic_form_zeros(c).empty());
    EXPECT_NE(quadratic_resultant(c, d), 0u);
}

// [DERIVED] resultant vanishes iff a common zero exists over GF(16)
TEST(BinaryForm, ResultantAgreesWithCommonZeroScan)
{
    FieldRef f4 = BinaryField::standard(2), f16 = BinaryField::standard(4);
    FieldEmbedding e = embed(f4, f16);
    std::mt19937_64 rng(12);
    for (int i = 0; i < 300; ++i) {
        BinaryForm h1(*f4, {bits_t(rng() % 4), bits_t(rng() % 4), bits_t(rng() % 4)});
        BinaryForm h2(*f4, {bits_t(rng() % 4), bits_t(rng() % 4), bits_t(rng() % 4)});
        if (h1.is_zero() || h2.is_zero())
            continue;
        BinaryForm g1 = h1.map(e), g2 = h2.map(e);
        bool common = false;
        for (ProjectivePoint1 p : projective_line(*f16))
            common = common || (g1.eval(p.x, p.y) == 0 && g2.eval(p.x, p.y) == 0);
        EXPECT_EQ(quadratic_resultant(h1, h2) == 0, common) << h1.to_string() << " " << h2.to_string();
    }
}

TEST(BinaryForm, CommonLinearFactor)
{
    FieldRef f = BinaryField::standard(2);
    // (X + w Y)(X + Y) and (X + w Y) X
    BinaryForm l(*f, {1, 2}), h1 = l * BinaryForm(*f, {1, 1}), h2 = l * BinaryForm(*f, {1, 0});
    CommonLinearFactor c = quadratic_common_linear_factor(f, h1, h2);
    EXPECT_EQ(c.factor, l.normalized());
    EXPECT_EQ(c.factor * c.residual1, h1);
    EXPECT_EQ(c.factor * c.residual2, h2);
    EXPECT_EQ(c.factor.eval(c.common_zero.x, c.common_zero.y), 0u);
    EXPECT_THROW(quadratic_common_linear_factor(f, BinaryForm(*f, {1, 0, 0}), BinaryForm(*f, {0, 0, 1})), PreconditionError);
}

TEST(BinaryForm, FactorOverQuadraticExtension)
{
    // X^2 + X Y + Y^2 shared by both: common zeros live in GF(4)
    FieldRef f2 = BinaryField::standard(1);
    BinaryForm q(*f2, {1, 1, 1});
    CommonLinearFactor c = quadratic_common_linear_factor(f2, q, q);
    EXPECT_EQ(c.field->degree(), 2);
    ASSERT_TRUE(c.lift.has_value());
    EXPECT_EQ(c.factor * c.residual1, q.map(*c.lift));
}

TEST(LinearAlgebra, NullspaceAndRank)
{
    const BinaryField& f = BinaryField::gf(2);
    // rows (1 1 0), (0 1 1) over GF(4): kernel spanned by (1 1 1)
    auto k = nullspace(f, 2, 3, {1, 1, 0, 0, 1, 1});
    ASSERT_EQ(k.size(), 1u);
    EXPECT_EQ(k[0], (std::vector<bits_t>{1, 1, 1}));
    EXPECT_EQ(rank(f, 2, 3, {1, 1, 0, 0, 1, 1}), 2);
    EXPECT_EQ(rank(f, 2, 2, {2, 3, 1, f.div(3, 2)}), 1);
}

TEST(LinearAlgebra, Gf2Solve)
{
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const int eq = 1 + rng() % 10, unk = 1 + rng() % 10;
        std::vector<BitVector> cols(unk, BitVector(eq));
        for (auto& c : cols)
            for (int i = 0; i < eq; ++i)
                c.set(i, rng() & 1);
        BitVector x(unk), rhs(eq);
        for (int j = 0; j < unk; ++j)
            if (rng() & 1) {
                x.set(j);
                rhs ^= cols[j];
            }
        auto sol = solve_gf2(cols, rhs);
        ASSERT_TRUE(sol.has_value());
        auto image = [&](const BitVector& v) {
            BitVector r(eq);
            for (int j = 0; j < unk; ++j)
                if (v.get(j))
                    r ^= cols[j];
            return r;
        };
        EXPECT_EQ(image(sol->particular), rhs);
        for (const BitVector& k : sol->kernel)
            EXPECT_TRUE(image(k).is_zero());
    }
}

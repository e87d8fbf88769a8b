#include <gtest/gtest.h>

#include <cmath>

#include "oracle.hpp"
#include "vfix/curve.hpp"
#include "vfix/jacobian.hpp"

using namespace vfix;

TEST(Curve, ParseAndSpec)
{
    Curve c = Curve::parse("d=2;t=0x2");
    EXPECT_EQ(c.base().degree(), 2);
    EXPECT_EQ(c.t(), 2u);
    EXPECT_EQ(c.twist(), 0);
    EXPECT_EQ(Curve::parse(c.spec()).spec(), c.spec());
    EXPECT_EQ(Curve::parse("d=2;t=0x2;n=1").effective_t(), 3u);
    EXPECT_THROW(Curve::parse("d=2;t=0x1"), PreconditionError);
    EXPECT_THROW(Curve::parse("d=2;t=0x0"), PreconditionError);
    EXPECT_THROW(Curve::parse("d=2;t=0x9"), PreconditionError);
    EXPECT_THROW(Curve::parse("t=0x2"), PreconditionError);
}

// [TRIVIAL] X(d) has the same equation as X(0)
TEST(Curve, TwistsArePeriodic)
{
    Curve c = Curve::parse("d=4;t=0x7");
    EXPECT_TRUE(c.twisted(4).same_model(c));
    EXPECT_FALSE(c.twisted(1).same_model(c));
}

// [DERIVED] point counts against the brute-force equation scan
TEST(Curve, PointCountsMatchBruteForce)
{
    for (auto [d, t] : {std::pair{2, 2u}, {2, 3u}, {4, 7u}, {4, 2u}, {3, 5u}}) {
        Curve c(BinaryField::standard(d), t);
        for (int e : {d, 2 * d}) {
            if (e > 8)
                continue;
            FieldRef f = BinaryField::standard(e);
            FieldEmbedding emb = embed(c.base_ref(), f);
            EXPECT_EQ(count_points(c, f), oracle::curve_points(emb.apply(t), f->modulus(), e)) << c.spec() << " over " << f->name();
        }
    }
}

TEST(Curve, EnumeratedPointsLieOnCurve)
{
    Curve c = Curve::parse("d=2;t=0x2");
    std::vector<CurvePoint> pts = enumerate_points(c, BinaryField::standard(4));
    EXPECT_TRUE(pts.front().is_infinity());
    for (const CurvePoint& p : pts) {
        EXPECT_TRUE(on_curve(c, p));
        EXPECT_TRUE(on_curve(c, hyperelliptic_involution(c, p)));
    }
}

// [DERIVED] equation identity under (x, y) -> (x^2, y^2), exhaustive over GF(16)
TEST(Curve, FrobeniusEquationIdentity)
{
    Curve c = Curve::parse("d=4;t=0x7");
    FieldRef f = c.base_ref();
    ModelRef m0 = c.over(f), m1 = c.twisted(1).over(f);
    for (bits_t x = 0; x < f->size(); ++x)
        for (bits_t y = 0; y < f->size(); ++y)
            ASSERT_EQ(m1->equation(f->square(x), f->square(y)), f->square(m0->equation(x, y)));
}

TEST(Curve, RelativeFrobeniusRoundTrip)
{
    Curve c = Curve::parse("d=2;t=0x2");
    for (const CurvePoint& p : enumerate_points(c, BinaryField::standard(4))) {
        CurvePoint q = relative_frobenius(c, p);
        EXPECT_TRUE(on_curve(c.twisted(1), q));
        EXPECT_EQ(frobenius_preimage(c.twisted(1), q), p);
    }
}

TEST(Curve, WeilBounds)
{
    for (auto [d, t] : {std::pair{2, 2u}, {4, 7u}, {4, 11u}}) {
        Curve c(BinaryField::standard(d), t);
        for (int e = d; e <= 12; e += d) {
            const std::uint64_t q = std::uint64_t{1} << e;
            EXPECT_TRUE(weil_point_interval(q).contains(static_cast<double>(count_points(c, BinaryField::standard(e)))));
        }
    }
}

// [DERIVED] nonsingular: no affine point where both partials vanish
TEST(Curve, Nonsingular)
{
    for (auto [d, t] : {std::pair{2, 2u}, {4, 7u}}) {
        Curve c(BinaryField::standard(d), t);
        for (int e : {d, 2 * d}) {
            FieldRef f = BinaryField::standard(e);
            ModelRef m = c.over(f);
            Poly hd = m->h.derivative(), fd = m->f.derivative();
            for (const CurvePoint& p : enumerate_points(c, f)) {
                if (p.is_infinity())
                    continue;
                // d/dy: h(x); d/dx: h'(x) y + f'(x)
                const bits_t dy = m->h.eval(p.x());
                const bits_t dx = f->mul(hd.eval(p.x()), p.y()) ^ fd.eval(p.x());
                EXPECT_FALSE(dx == 0 && dy == 0) << p.to_string();
            }
        }
    }
}

// [PAPER] three branch points, hence ordinary
TEST(Curve, OrdinaryWithThreeBranchPoints)
{
    for (bits_t t = 2; t < 16; ++t) {
        Curve c(BinaryField::standard(4), t);
        EXPECT_EQ(branch_points(c).size(), 3u);
        EXPECT_TRUE(is_ordinary(c));
        EXPECT_EQ(weierstrass_points(c).size(), 3u);
    }
}

// [DERIVED] zeta bookkeeping matches counts over GF(4^j), j = 1..4
TEST(Curve, ZetaPredictsPointCounts)
{
    Curve c = Curve::parse("d=2;t=0x2");
    LPolynomial l = zeta(c);
    EXPECT_TRUE(l.functional_equation_holds());
    for (int j = 1; j <= 4; ++j)
        EXPECT_EQ(l.points(j), static_cast<std::int64_t>(count_points(c, c.extension(j))));
    const std::int64_t n1 = count_points(c, c.extension(1)), n2 = count_points(c, c.extension(2));
    EXPECT_EQ(l.jacobian_order(1), oracle::jacobian_order(4, n1, n2));
}

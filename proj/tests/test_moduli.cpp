#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "vfix/moduli.hpp"

using namespace vfix;

namespace {

void expect_three_fixed(const Curve& c, int k)
{
    KummerSearch s = g_fixed_kummer_points(c, k);
    ASSERT_EQ(s.points.size(), 3u) << c.spec();
    EXPECT_TRUE(s.points.front().is_trivial());
    for (BundleLabel l : {BundleLabel::E1, BundleLabel::E2}) {
        KummerPoint e = build_E(c, l).point;
        EXPECT_EQ(std::count(s.points.begin(), s.points.end(), e), 1) << c.spec() << " " << e.to_string();
    }
}

}  // namespace

// [PAPER] exactly three G-fixed Kummer points
TEST(FixedKummerPoints, ThreeOverGF4)
{
    expect_three_fixed(Curve::parse("d=2;t=0x2"), 3);
    expect_three_fixed(Curve::parse("d=2;t=0x3"), 2);
    expect_three_fixed(Curve::parse("d=2;t=0x2;n=1"), 2);
}

TEST(FixedKummerPoints, ThreeForEveryParameterInGF16)
{
    FieldRef f16 = BinaryField::standard(4);
    for (bits_t t = 2; t < 16; ++t)
        expect_three_fixed(Curve(f16, t), 2);
}

// [DERIVED] every listed point is fixed by all twelve automorphisms
TEST(FixedKummerPoints, FixedByWholeGroup)
{
    Curve c = Curve::parse("d=2;t=0x2");
    AutomorphismGroup g = automorphism_group(c);
    for (const KummerPoint& p : g_fixed_kummer_points(c, 2).points)
        for (const CurveAutomorphism& a : g.elements)
            EXPECT_TRUE(kummer_fixed_by(a, p.representative()));
}

TEST(KummerPoint, SignIsForgotten)
{
    Curve c = Curve::parse("d=2;t=0x2");
    std::mt19937_64 rng(41);
    for (int i = 0; i < 50; ++i) {
        JacobianClass a = random_class(c, c.extension(2), rng);
        EXPECT_EQ(KummerPoint(a), KummerPoint(-a));
        EXPECT_EQ(KummerPoint(a).representative(), KummerPoint(-a).representative());
        EXPECT_EQ(KummerPoint(a).representative().field().degree(), a.minimal().field().degree());
    }
}

// [PAPER] order three; [DERIVED] defined over GF(16) for t = w
TEST(Bundles, OrderThree)
{
    Curve c = Curve::parse("d=2;t=0x2");
    for (BundleLabel l : {BundleLabel::E1, BundleLabel::E2}) {
        GFixedBundle b = build_E(c, l);
        ASSERT_TRUE(b.q.has_value());
        EXPECT_FALSE(b.cls.is_identity());
        EXPECT_TRUE(mul_int(b.cls, 3).is_identity());
        EXPECT_EQ(b.point.representative().field().degree(), 4);
    }
    EXPECT_NE(build_E(c, BundleLabel::E1).point, build_E(c, BundleLabel::E2).point);
    EXPECT_EQ(to_string(BundleLabel::E2), "E2");
}

// [DERIVED] 3Q - 3 tau01(Q) has an explicit function for every sigma-fixed Q
TEST(Bundles, PrincipalWitnesses)
{
    Curve c = Curve::parse("d=2;t=0x2");
    AutomorphismGroup g = automorphism_group(c);
    std::vector<CurvePoint> qs = sigma_fixed_points(c, g);
    ASSERT_EQ(qs.size(), 4u);
    for (const CurvePoint& q : qs) {
        FormalDivisor d = FormalDivisor::point(q, 3) - FormalDivisor::point(act_on_point(g.tau01(), q), 3);
        auto phi = principal_witness(c, d);
        ASSERT_TRUE(phi.has_value()) << q.to_string();
        EXPECT_TRUE(verify_divisor(c, *phi, d));
        // Q - tau01(Q) itself is not principal
        FormalDivisor d1 = FormalDivisor::point(q) - FormalDivisor::point(act_on_point(g.tau01(), q));
        EXPECT_FALSE(principal_witness(c, d1).has_value());
    }
}

TEST(Bundles, PullbackAcrossTwists)
{
    Curve c = Curve::parse("d=2;t=0x2");
    for (BundleLabel l : {BundleLabel::E1, BundleLabel::E2})
        for (int n = 0; n <= 1; ++n)
            EXPECT_EQ(KummerPoint(frobenius_pullback(build_E(c.twisted(n + 1), l).cls)), build_E(c.twisted(n), l).point);
}

// [PAPER] V fixes the three decomposable points
TEST(Verschiebung, FixesDecomposablePoints)
{
    for (const char* spec : {"d=2;t=0x2", "d=4;t=0x7"}) {
        Curve c = Curve::parse(spec);
        for (BundleLabel l : {BundleLabel::Trivial, BundleLabel::E1, BundleLabel::E2}) {
            KummerPoint p = build_E(c, l).point;
            EXPECT_EQ(verschiebung_on_kummer(p), p) << spec << " " << to_string(l);
        }
    }
}

// [DERIVED] small-field tables against integer arithmetic mod p
TEST(SmallField, PrimeFieldsMatchModularArithmetic)
{
    for (int p : {2, 3, 5, 7}) {
        SmallField f = SmallField::create(p, 1);
        for (int a = 0; a < p; ++a)
            for (int b = 0; b < p; ++b) {
                EXPECT_EQ(f.add(a, b), (a + b) % p);
                EXPECT_EQ(f.mul(a, b), a * b % p);
                EXPECT_EQ(f.sub(a, b), (a - b + p) % p);
            }
    }
    SmallField f9 = SmallField::create(3, 2);
    EXPECT_EQ(f9.size(), 9);
    for (int a = 1; a < 9; ++a)
        EXPECT_EQ(f9.mul(a, f9.inv(a)), 1);
    EXPECT_THROW(SmallField::create(4, 1), PreconditionError);
    EXPECT_THROW(SmallField::create(2, 9), PreconditionError);
}

TEST(ProjectiveTransform, OrdersAndApplication)
{
    SmallField f = SmallField::create(3, 1);
    ProjectiveTransform u(f, 2, {1, 1, 0, 1});
    EXPECT_EQ(u.projective_order(), 3);
    EXPECT_TRUE((u * u * u).is_scalar());
    ProjectiveTransform s(f, 2, {2, 0, 0, 2});
    EXPECT_TRUE(s.is_scalar());
    EXPECT_EQ(s.projective_order(), 1);
    EXPECT_EQ(u.apply({0, 1}), (std::vector<int>{1, 1}));
    EXPECT_THROW(ProjectiveTransform(f, 2, {1, 1, 1, 1}), PreconditionError);
    EXPECT_EQ(line_points(f, {1, 0}, {0, 1}).size(), 4u);
}

// [TRIVIAL] a transvection fixes the line through two fixed points
TEST(Ptrick, TransvectionExample)
{
    SmallField f = SmallField::create(2, 1);
    ProjectiveTransform t(f, 3, {1, 0, 1, 0, 1, 0, 0, 0, 1});
    PtrickVerdict v = ptrick_verify(f, {t}, {1, 0, 0}, {0, 1, 0});
    EXPECT_TRUE(v.pass);
    EXPECT_EQ(v.points_checked, 3u);
}

TEST(Ptrick, PreconditionsEnforced)
{
    SmallField f = SmallField::create(3, 1);
    // diag(1, 2): order 2, not a power of 3
    ProjectiveTransform d(f, 2, {1, 0, 0, 2});
    EXPECT_THROW(ptrick_verify(f, {d}, {1, 0}, {0, 1}), PreconditionError);
    ProjectiveTransform u(f, 2, {1, 1, 0, 1});
    EXPECT_THROW(ptrick_verify(f, {u}, {1, 0}, {1, 0}), PreconditionError);
    EXPECT_THROW(ptrick_verify(f, {u}, {1, 0}, {0, 1}), PreconditionError);  // (0:1) moves
}

// [DERIVED] planted instances over several fields
TEST(Ptrick, RandomInstances)
{
    std::mt19937_64 rng(42);
    for (auto [p, k] : {std::pair{2, 1}, {2, 2}, {3, 1}, {3, 2}, {5, 1}}) {
        SmallField f = SmallField::create(p, k);
        for (int i = 0; i < 30; ++i) {
            PtrickInstance in = random_ptrick_instance(f, 2 + i % 3, 1 + i % 3, rng);
            PtrickVerdict v = ptrick_verify(f, in.transforms, in.p1, in.p2);
            ASSERT_TRUE(v.pass) << f.name();
            for (const auto& t : v.transforms) {
                EXPECT_EQ(t.mu1, t.mu2);
                int q = t.order;
                while (q % p == 0)
                    q /= p;
                EXPECT_EQ(q, 1);
            }
            EXPECT_EQ(v.points_checked, static_cast<std::size_t>(f.size() + 1));
        }
    }
}

TEST(Pencil, KnownReduction)
{
    FieldRef f = BinaryField::standard(2);
    // [X(X+Y) : XY] = [X+Y : Y] away from (0:1)
    BinaryForm h1(*f, {1, 1, 0}), h2(*f, {0, 1, 0});
    PencilReduction r = reduce_quadratic_pencil(f, h1, h2, {0, 1});
    EXPECT_TRUE(r.agrees);
    EXPECT_EQ(r.check_field->degree(), 4);
    EXPECT_EQ(r.points_checked, 16u);
    EXPECT_EQ(r.factor.factor, BinaryForm(*f, {1, 0}));
    EXPECT_THROW(reduce_quadratic_pencil(f, h1, h2, {1, 1}), PreconditionError);
}

// [DERIVED] residual map against direct evaluation on P^1(GF(16))
TEST(Pencil, RandomInstances)
{
    FieldRef f = BinaryField::standard(2), f16 = BinaryField::standard(4);
    FieldEmbedding e = embed(f, f16);
    std::mt19937_64 rng(43);
    for (int i = 0; i < 100; ++i) {
        PencilInstance in = random_pencil_instance(f, rng);
        PencilReduction r = reduce_quadratic_pencil(f, in.h1, in.h2, in.base);
        ASSERT_TRUE(r.agrees);
        // independent check of proportionality on every non-base point
        const BinaryForm g1 = in.h1.map(e), g2 = in.h2.map(e);
        const BinaryForm m1 = in.l1.map(e), m2 = in.l2.map(e);
        for (ProjectivePoint1 p : projective_line(*f16)) {
            const bits_t a1 = g1.eval(p.x, p.y), a2 = g2.eval(p.x, p.y);
            if (a1 == 0 && a2 == 0)
                continue;
            const bits_t b1 = m1.eval(p.x, p.y), b2 = m2.eval(p.x, p.y);
            EXPECT_EQ(f16->mul(a1, b2), f16->mul(a2, b1));
        }
    }
}

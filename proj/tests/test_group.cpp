#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "vfix/group_action.hpp"

using namespace vfix;

namespace {

// Multiplication table of a permutation group given by its elements.
std::vector<std::vector<int>> permutation_table(const std::vector<std::vector<int>>& els)
{
    std::vector<std::vector<int>> t(els.size(), std::vector<int>(els.size()));
    for (std::size_t i = 0; i < els.size(); ++i)
        for (std::size_t j = 0; j < els.size(); ++j) {
            std::vector<int> p(els[i].size());
            for (std::size_t k = 0; k < p.size(); ++k)
                p[k] = els[i][els[j][k]];
            t[i][j] = static_cast<int>(std::find(els.begin(), els.end(), p) - els.begin());
        }
    return t;
}

std::vector<std::vector<int>> alternating4()
{
    std::vector<int> p{0, 1, 2, 3};
    std::vector<std::vector<int>> out;
    do {
        int inv = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                inv += p[i] > p[j];
        if (inv % 2 == 0)
            out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// S3 x Z/2 acting on {0,1,2} u {3,4}
std::vector<std::vector<int>> s3_times_z2()
{
    std::vector<int> p{0, 1, 2};
    std::vector<std::vector<int>> out;
    do {
        out.push_back({p[0], p[1], p[2], 3, 4});
        out.push_back({p[0], p[1], p[2], 4, 3});
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

const AutomorphismGroup& group_w()
{
    static const AutomorphismGroup g = automorphism_group(Curve::parse("d=2;t=0x2"));
    return g;
}

}  // namespace

// [DERIVED] the recognizer against tables of the groups of order 12
TEST(GroupRecognizer, DistinguishesOrderTwelveGroups)
{
    EXPECT_TRUE(is_z2_times_s3(permutation_table(s3_times_z2())));
    EXPECT_FALSE(is_z2_times_s3(permutation_table(alternating4())));
    std::vector<std::vector<int>> z12(12, std::vector<int>(12));
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 12; ++j)
            z12[i][j] = (i + j) % 12;
    EXPECT_FALSE(is_z2_times_s3(z12));
    std::vector<std::vector<int>> z6z2(12, std::vector<int>(12));
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 12; ++j)
            z6z2[i][j] = ((i / 2 + j / 2) % 6) * 2 + (i + j) % 2;
    EXPECT_FALSE(is_z2_times_s3(z6z2));
}

TEST(MobiusMaps, PermuteBranchPoints)
{
    FieldRef f = BinaryField::standard(2);
    std::vector<MobiusMap> ms = MobiusMap::branch_permutations(f);
    ASSERT_EQ(ms.size(), 6u);
    for (const MobiusMap& m : ms) {
        EXPECT_TRUE(m.permutes_branch_points());
        EXPECT_EQ(m.compose(m.inverse()), MobiusMap::identity(f));
    }
    EXPECT_FALSE(MobiusMap(f, 2, 0, 0, 1).permutes_branch_points());
}

// [PAPER] twelve automorphisms forming Z/2 x S3
TEST(AutomorphismGroup, StructureAndRelations)
{
    const AutomorphismGroup& g = group_w();
    ASSERT_EQ(g.elements.size(), 12u);
    EXPECT_TRUE(is_z2_times_s3(g.cayley));
    for (const CurveAutomorphism& a : g.elements)
        EXPECT_TRUE(a.preserves_equation()) << a.to_string();
    EXPECT_EQ(g.sigma().pow(3), g.identity());
    EXPECT_EQ(g.tau01().pow(2), g.identity());
    EXPECT_EQ(g.iota().pow(2), g.identity());
    EXPECT_EQ(g.tau01() * g.sigma() * g.tau01(), g.sigma().pow(2));
    for (const CurveAutomorphism& a : g.elements)
        EXPECT_EQ(a * g.iota(), g.iota() * a);
}

TEST(AutomorphismGroup, OtherParameters)
{
    for (const char* spec : {"d=4;t=0x7", "d=4;t=0x2;n=1", "d=2;t=0x3;n=1", "d=3;t=0x3"}) {
        AutomorphismGroup g = automorphism_group(Curve::parse(spec));
        EXPECT_TRUE(is_z2_times_s3(g.cayley)) << spec;
    }
}

// [PAPER] sigma fixes four points over GF(16)
TEST(AutomorphismGroup, SigmaFixedPoints)
{
    const AutomorphismGroup& g = group_w();
    std::vector<CurvePoint> fx = fixed_points(g.sigma(), BinaryField::standard(4));
    EXPECT_EQ(fx.size(), 4u);
    for (const CurvePoint& p : fx)
        EXPECT_EQ(act_on_point(g.sigma(), p), p);
    EXPECT_TRUE(fixed_points(g.sigma(), BinaryField::standard(2)).empty());
}

TEST(AutomorphismGroup, ActionOnPointsIsAGroupAction)
{
    const AutomorphismGroup& g = group_w();
    Curve c = Curve::parse("d=2;t=0x2");
    std::vector<CurvePoint> pts = enumerate_points(c, BinaryField::standard(4));
    for (std::size_t i = 0; i < g.elements.size(); ++i)
        for (std::size_t j = 0; j < g.elements.size(); ++j)
            for (std::size_t k = 0; k < pts.size(); k += 5) {
                const CurvePoint& p = pts[k];
                CurvePoint lhs = act_on_point(g.elements[g.cayley[i][j]], p);
                ASSERT_TRUE(on_curve(c, lhs));
                ASSERT_EQ(lhs, act_on_point(g.elements[i], act_on_point(g.elements[j], p)));
            }
}

// [PAPER] iota is -1 on the Jacobian
TEST(AutomorphismGroup, IotaIsNegation)
{
    const AutomorphismGroup& g = group_w();
    Curve c = Curve::parse("d=2;t=0x2");
    for (const JacobianClass& x : enumerate_classes(c, c.extension(2)))
        ASSERT_EQ(act_on_class(g.iota(), x), -x);
}

TEST(AutomorphismGroup, ActionOnClassesIsAdditive)
{
    const AutomorphismGroup& g = group_w();
    Curve c = Curve::parse("d=2;t=0x2");
    std::mt19937_64 rng(31);
    for (int i = 0; i < 40; ++i) {
        JacobianClass a = random_class(c, c.extension(2), rng), b = random_class(c, c.extension(2), rng);
        const CurveAutomorphism& s = g.elements[i % 12];
        EXPECT_EQ(act_on_class(s, a + b), act_on_class(s, a) + act_on_class(s, b));
    }
}

TEST(AutomorphismGroup, FrobeniusTwistMovesToNextCurve)
{
    Curve c = Curve::parse("d=2;t=0x2");
    AutomorphismGroup g0 = automorphism_group(c), g1 = automorphism_group(c.twisted(1));
    for (const std::string& name : {"sigma", "tau01", "tau0inf"})
        EXPECT_EQ(g0.get(name).frobenius_twist(), g1.get(name)) << name;
}

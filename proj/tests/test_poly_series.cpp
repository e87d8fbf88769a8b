#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "vfix/matrix.hpp"
#include "vfix/poly.hpp"
#include "vfix/series.hpp"

using namespace vfix;

namespace {

Poly random_poly(const BinaryField& f, int deg, std::mt19937_64& rng)
{
    std::vector<bits_t> c(deg + 1);
    for (auto& x : c)
        x = rng() % f.size();
    return Poly(f, c);
}

Series random_series(const BinaryField& f, int n, std::mt19937_64& rng, bool unit = false)
{
    std::vector<bits_t> c(n);
    for (auto& x : c)
        x = rng() % f.size();
    if (unit && c[0] == 0)
        c[0] = 1;
    return Series(f, n, c);
}

}  // namespace

TEST(Poly, Normalization)
{
    const BinaryField& f = BinaryField::gf(2);
    Poly p(f, {1, 2, 0, 0});
    EXPECT_EQ(p.degree(), 1);
    EXPECT_TRUE(Poly(f, {0, 0}).is_zero());
    EXPECT_EQ(Poly(f).degree(), -1);
    EXPECT_EQ(p.to_hex(), "0x1,0x2");
    EXPECT_EQ(Poly::from_hex(f, p.to_hex()), p);
}

TEST(Poly, DivisionIdentity)
{
    std::mt19937_64 rng(1);
    const BinaryField& f = BinaryField::gf(4);
    for (int i = 0; i < 300; ++i) {
        Poly a = random_poly(f, rng() % 9, rng), b = random_poly(f, rng() % 5, rng);
        if (b.is_zero())
            continue;
        auto [q, r] = Poly::divmod(a, b);
        EXPECT_EQ(q * b + r, a);
        EXPECT_LT(r.degree(), b.degree());
    }
    EXPECT_THROW(Poly::divmod(Poly::x(f), Poly(f)), PreconditionError);
}

TEST(Poly, ExtendedGcdBezout)
{
    std::mt19937_64 rng(2);
    const BinaryField& f = BinaryField::gf(3);
    for (int i = 0; i < 200; ++i) {
        Poly common = random_poly(f, rng() % 3, rng);
        Poly a = random_poly(f, rng() % 5, rng) * common, b = random_poly(f, rng() % 5, rng) * common;
        ExtendedGcd g = xgcd(a, b);
        EXPECT_EQ(g.s * a + g.t * b, g.gcd);
        if (!g.gcd.is_zero()) {
            EXPECT_EQ(g.gcd.leading(), 1u);
            EXPECT_TRUE((a % g.gcd).is_zero());
            EXPECT_TRUE((b % g.gcd).is_zero());
            if (!common.is_zero())
                EXPECT_TRUE((g.gcd % common.monic()).is_zero());
        }
    }
}

TEST(Poly, RootsFromRoots)
{
    const BinaryField& f = BinaryField::gf(4);
    Poly p = Poly::from_roots(f, {3, 3, 9, 0});
    EXPECT_EQ(p.degree(), 4);
    EXPECT_EQ(poly_roots(p), (std::vector<bits_t>{0, 3, 9}));
    for (bits_t r : {0u, 3u, 9u})
        EXPECT_EQ(p.eval(r), 0u);
}

// [DERIVED] quadratic roots against exhaustive evaluation
TEST(Poly, QuadraticRootsAgreeWithScan)
{
    const BinaryField& f = BinaryField::gf(3);
    for (bits_t a = 1; a < f.size(); ++a)
        for (bits_t b = 0; b < f.size(); ++b)
            for (bits_t c = 0; c < f.size(); ++c) {
                Poly p(f, {c, b, a});
                std::vector<bits_t> q = quadratic_roots(p), scan = poly_roots(p);
                std::vector<bits_t> distinct = q;
                distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
                EXPECT_EQ(distinct, scan);
                if (!q.empty()) {
                    EXPECT_EQ(q.size(), 2u);
                }
            }
}

TEST(Poly, ComposeDerivativeFrobenius)
{
    const BinaryField& f = BinaryField::gf(4);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        Poly p = random_poly(f, 4, rng), g = random_poly(f, 2, rng);
        bits_t x = rng() % 16;
        EXPECT_EQ(p.compose(g).eval(x), p.eval(g.eval(x)));
        // (p^2)' = 0 in characteristic 2
        EXPECT_TRUE((p * p).derivative().is_zero());
        // p^(2)(x^2) = p(x)^2
        EXPECT_EQ(p.frobenius(1).eval(f.square(x)), f.square(p.eval(x)));
    }
}

TEST(Poly, MapDescend)
{
    FieldRef f2 = BinaryField::standard(2), f4 = BinaryField::standard(4);
    FieldEmbedding e = embed(f2, f4);
    Poly p(*f2, {1, 2, 3});
    Poly big = p.map(e);
    EXPECT_EQ(big.descend(e), p);
    EXPECT_FALSE(Poly(*f4, {1, 5}).descend(e).has_value());
}

// [DERIVED] truncated product against the convolution
TEST(Series, MultiplicationIsTruncatedConvolution)
{
    std::mt19937_64 rng(4);
    const BinaryField& f = BinaryField::gf(4);
    for (int i = 0; i < 200; ++i) {
        const int n = 1 + rng() % 8;
        Series a = random_series(f, n, rng), b = random_series(f, n, rng);
        Series p = a * b;
        for (int k = 0; k < n; ++k) {
            bits_t acc = 0;
            for (int j = 0; j <= k; ++j)
                acc ^= oracle::gf_mul(a.coeff(j), b.coeff(k - j), f.modulus(), 4);
            EXPECT_EQ(p.coeff(k), acc);
        }
    }
}

TEST(Series, InverseAndUnits)
{
    std::mt19937_64 rng(5);
    const BinaryField& f = BinaryField::gf(2);
    for (int i = 0; i < 100; ++i) {
        Series a = random_series(f, 1 + rng() % 6, rng, true);
        EXPECT_TRUE((a * a.inverse()).is_one());
    }
    Series s = Series::monomial(f, 4, 1, 1);
    EXPECT_FALSE(s.is_unit());
    EXPECT_EQ(s.valuation(), 1);
    EXPECT_TRUE(s.pow(4).is_zero());
    EXPECT_THROW(s.inverse(), PreconditionError);
}

// [TRIVIAL] the twist acts on coefficients and fixes s
TEST(Series, TwistFixesS)
{
    const BinaryField& f = BinaryField::gf(4);
    Series s = Series::monomial(f, 5, 1, 1);
    EXPECT_EQ(s.twist(1), s);
    EXPECT_EQ(s.twist(3), s);
    Series a(f, 3, {2, 3, 4});
    Series t = a.twist(1);
    for (int k = 0; k < 3; ++k)
        EXPECT_EQ(t.coeff(k), f.square(a.coeff(k)));
    EXPECT_EQ(a.twist(4), a);
    Series s3 = Series::monomial(f, 3, 1, 1);
    EXPECT_EQ((a * s3).twist(2), a.twist(2) * s3);
}

TEST(Series, MismatchedTruncationThrows)
{
    const BinaryField& f = BinaryField::gf(2);
    EXPECT_THROW(Series::one(f, 2) + Series::one(f, 3), PreconditionError);
}

TEST(Matrix, DeterminantAndInverse)
{
    std::mt19937_64 rng(6);
    const BinaryField& f = BinaryField::gf(2);
    int invertible = 0;
    for (int i = 0; i < 100; ++i) {
        SeriesMatrix m = SeriesMatrix::zero(2, 2, Series::zero(f, 3));
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                m(r, c) = random_series(f, 3, rng);
        auto inv = m.inverse();
        EXPECT_EQ(inv.has_value(), m.determinant().is_unit());
        if (inv) {
            ++invertible;
            EXPECT_TRUE((m * *inv).is_identity());
            EXPECT_EQ((m * *inv).determinant(), m.determinant() * inv->determinant());
        }
    }
    EXPECT_GT(invertible, 0);
}

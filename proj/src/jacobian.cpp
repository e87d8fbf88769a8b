#include "vfix/jacobian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "vfix/linalg.hpp"
#include "vfix/series.hpp"

namespace vfix {

// ---------------------------------------------------------------------------
// FormalDivisor

FormalDivisor FormalDivisor::point(const CurvePoint& p, int m)
{
    FormalDivisor d;
    d.add(p, m);
    return d;
}

FormalDivisor FormalDivisor::point_minus_infinity(const CurvePoint& p)
{
    FormalDivisor d = point(p, 1);
    d.add(CurvePoint::infinity(p.field_ref()), -1);
    return d;
}

void FormalDivisor::add(const CurvePoint& p, int m)
{
    if (m == 0)
        return;
    for (auto it = terms_.begin(); it != terms_.end(); ++it) {
        if (it->first == p) {
            it->second += m;
            if (it->second == 0)
                terms_.erase(it);
            return;
        }
    }
    terms_.emplace_back(p, m);
}

int FormalDivisor::degree() const
{
    int d = 0;
    for (const auto& [p, m] : terms_)
        d += m;
    return d;
}

int FormalDivisor::multiplicity(const CurvePoint& p) const
{
    for (const auto& [q, m] : terms_) {
        if (q == p)
            return m;
    }
    return 0;
}

FormalDivisor FormalDivisor::operator+(const FormalDivisor& o) const
{
    FormalDivisor r = *this;
    for (const auto& [p, m] : o.terms_)
        r.add(p, m);
    return r;
}

FormalDivisor FormalDivisor::scaled(int k) const
{
    FormalDivisor r;
    if (k == 0)
        return r;
    for (const auto& [p, m] : terms_)
        r.terms_.emplace_back(p, m * k);
    return r;
}

FormalDivisor FormalDivisor::balanced() const
{
    FormalDivisor r = *this;
    const int d = degree();
    if (d != 0) {
        FieldRef f = terms_.front().first.field_ref();
        r.add(CurvePoint::infinity(f), -d);
    }
    return r;
}

FormalDivisor FormalDivisor::affine_positive() const
{
    FormalDivisor r;
    for (const auto& [p, m] : terms_) {
        if (!p.is_infinity() && m > 0)
            r.terms_.emplace_back(p, m);
    }
    return r;
}

FormalDivisor FormalDivisor::affine_negative() const
{
    FormalDivisor r;
    for (const auto& [p, m] : terms_) {
        if (!p.is_infinity() && m < 0)
            r.terms_.emplace_back(p, -m);
    }
    return r;
}

FieldRef FormalDivisor::common_field(const BinaryField& floor) const
{
    int d = floor.degree();
    for (const auto& [p, m] : terms_)
        d = std::lcm(d, p.field().degree());
    if (d > kMaxFieldDegree)
        throw FieldCapExceeded("divisor support needs GF(2^" + std::to_string(d) + ")");
    return BinaryField::standard(d);
}

std::string FormalDivisor::to_string() const
{
    if (terms_.empty())
        return "0";
    std::string out;
    for (const auto& [p, m] : terms_) {
        if (!out.empty())
            out += m < 0 ? " - " : " + ";
        else if (m < 0)
            out += "-";
        const int a = std::abs(m);
        out += (a == 1 ? "" : std::to_string(a) + "*") + p.to_string();
    }
    return out;
}

// ---------------------------------------------------------------------------
// Mumford helpers

namespace {

bool congruence_holds(const CurveModel& m, const Poly& u, const Poly& v)
{
    return ((v * v + m.h * v + m.f) % u).is_zero();
}

// (u, v) of P1 + P2 with distinct x-coordinates.
std::pair<Poly, Poly> mumford_pair(const BinaryField& k, bits_t a1, bits_t b1, bits_t a2, bits_t b2)
{
    const bits_t slope = k.div(b1 ^ b2, a1 ^ a2);
    Poly u(k, {k.mul(a1, a2), a1 ^ a2, 1});
    Poly v(k, {b1 ^ k.mul(slope, a1), slope});
    return {std::move(u), std::move(v)};
}

// (u, v) of 2P for a non-Weierstrass P: v is the tangent expansion of y at P.
std::pair<Poly, Poly> mumford_double(const CurveModel& m, bits_t a, bits_t b)
{
    const BinaryField& k = *m.field;
    const bits_t ha = m.h.eval(a);
    if (ha == 0)
        throw InternalError("2P requested at a Weierstrass point");
    // h(a) y' = f'(a) + h'(a) b
    const bits_t slope = k.div(m.f.derivative().eval(a) ^ k.mul(m.h.derivative().eval(a), b), ha);
    Poly u(k, {k.square(a), 0, 1});
    Poly v(k, {b ^ k.mul(slope, a), slope});
    return {std::move(u), std::move(v)};
}

void require_extension_of_base(const Curve& c, const BinaryField& f)
{
    if (f.degree() % c.base().degree() != 0)
        throw PreconditionError(f.name() + " is not an extension of the curve base " + c.base().name());
}

}  // namespace

// ---------------------------------------------------------------------------
// JacobianClass

JacobianClass::JacobianClass(Curve c, ModelRef m, Poly u, Poly v)
    : curve_(std::move(c)), model_(std::move(m)), u_(std::move(u)), v_(std::move(v))
{
}

JacobianClass JacobianClass::identity(const Curve& c, const FieldRef& field)
{
    require_extension_of_base(c, *field);
    return JacobianClass(c, c.over(field), Poly::constant(*field, 1), Poly(*field));
}

JacobianClass JacobianClass::from_mumford(const Curve& c, const Poly& u, const Poly& v)
{
    if (!u.field().same_as(v.field()))
        throw PreconditionError("u and v over different fields");
    FieldRef field = BinaryField::standard(u.field().degree());
    if (!field->same_as(u.field()))
        throw PreconditionError("Mumford coefficients must be over a shipped field");
    require_extension_of_base(c, *field);
    if (u.is_zero() || u.leading() != 1 || u.degree() > 2)
        throw PreconditionError("u must be monic of degree <= 2, got " + u.to_hex());
    if (v.degree() >= u.degree())
        throw PreconditionError("deg v must be < deg u");
    ModelRef m = c.over(field);
    if (!congruence_holds(*m, u, v))
        throw PreconditionError("v^2 + h v != f mod u for u=" + u.to_hex() + ", v=" + v.to_hex());
    return JacobianClass(c, std::move(m), u, v);
}

JacobianClass JacobianClass::reduce(const Curve& c, const ModelRef& model, Poly u, Poly v)
{
    const CurveModel& m = *model;
    while (u.degree() > 2) {
        auto [q, r] = Poly::divmod(m.f + v * m.h + v * v, u);
        if (!r.is_zero())
            throw InternalError("Cantor reduction: u does not divide f + v h + v^2");
        u = std::move(q);
        v = (m.h + v) % u;
    }
    u = u.monic();
    v = v % u;
    return JacobianClass(c, model, std::move(u), std::move(v));
}

JacobianClass JacobianClass::of_point(const Curve& c, const CurvePoint& p)
{
    require_extension_of_base(c, p.field());
    if (p.is_infinity())
        return identity(c, p.field_ref());
    if (!on_curve(c, p))
        throw PreconditionError(p.to_string() + " is not on " + c.spec());
    const BinaryField& k = p.field();
    return JacobianClass(c, c.over(p.field_ref()), Poly(k, {p.x(), 1}), Poly::constant(k, p.y()));
}

JacobianClass JacobianClass::parse(const Curve& c, const std::string& s)
{
    std::string us, vs;
    int d = -1;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ';')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw PreconditionError("class item \"" + item + "\" is not key=value");
        const std::string key = item.substr(0, eq), value = item.substr(eq + 1);
        if (key == "u")
            us = value;
        else if (key == "v")
            vs = value;
        else if (key == "field")
            d = std::stoi(value);
        else
            throw PreconditionError("unknown class key \"" + key + "\"");
    }
    if (d < 1 || d > kMaxFieldDegree || us.empty() || vs.empty())
        throw PreconditionError("class needs u, v and field: \"" + s + "\"");
    FieldRef f = BinaryField::standard(d);
    return from_mumford(c, Poly::from_hex(*f, us), Poly::from_hex(*f, vs));
}

JacobianClass JacobianClass::operator+(const JacobianClass& o) const
{
    if (!curve_.same_model(o.curve_))
        throw PreconditionError("adding classes on different curves");
    if (!field().same_as(o.field())) {
        FieldRef c = compositum(field(), o.field());
        return lifted(c) + o.lifted(c);
    }
    const CurveModel& m = *model_;
    const Poly &u1 = u_, &v1 = v_, &u2 = o.u_, &v2 = o.v_;
    // d0 = e1 u1 + e2 u2,  d = c1 d0 + c2 (v1 + v2 + h)
    ExtendedGcd g1 = xgcd(u1, u2);
    ExtendedGcd g2 = xgcd(g1.gcd, v1 + v2 + m.h);
    const Poly& d = g2.gcd;
    const Poly s1 = g2.s * g1.s, s2 = g2.s * g1.t, s3 = g2.t;
    auto [u, ru] = Poly::divmod(u1 * u2, d * d);
    auto [v, rv] = Poly::divmod(s1 * u1 * v2 + s2 * u2 * v1 + s3 * (v1 * v2 + m.f), d);
    if (!ru.is_zero() || !rv.is_zero())
        throw InternalError("Cantor composition: inexact division");
    v = v % u;
    return reduce(curve_, model_, std::move(u), std::move(v));
}

JacobianClass JacobianClass::operator-() const
{
    return JacobianClass(curve_, model_, u_, (v_ + model_->h) % u_);
}

JacobianClass JacobianClass::lifted(const FieldRef& target) const
{
    if (target->same_as(field()))
        return *this;
    FieldEmbedding e = embed(field_ref(), target);
    return JacobianClass(curve_, curve_.over(target), u_.map(e), v_.map(e));
}

std::optional<JacobianClass> JacobianClass::descended(const FieldRef& sub) const
{
    if (sub->same_as(field()))
        return *this;
    if (field().degree() % sub->degree() != 0 || sub->degree() % curve_.base().degree() != 0)
        return std::nullopt;
    FieldEmbedding e = embed(sub, field_ref());
    auto u = u_.descend(e);
    auto v = v_.descend(e);
    if (!u || !v)
        return std::nullopt;
    return JacobianClass(curve_, curve_.over(sub), *u, *v);
}

JacobianClass JacobianClass::minimal() const
{
    const int b = curve_.base().degree(), d = field().degree();
    for (int e = b; e < d; e += b) {
        if (d % e != 0)
            continue;
        if (auto r = descended(BinaryField::standard(e)))
            return *r;
    }
    return *this;
}

JacobianClass JacobianClass::on(const Curve& c) const
{
    if (!c.same_model(curve_))
        throw PreconditionError(c.spec() + " and " + curve_.spec() + " have different equations");
    return JacobianClass(c, model_, u_, v_);
}

FormalDivisor JacobianClass::support() const
{
    FormalDivisor d;
    if (is_identity())
        return d;
    FieldRef f = field_ref();
    Poly u = u_, v = v_;
    std::vector<bits_t> roots = quadratic_roots(u);
    if (roots.empty()) {
        if (2 * f->degree() > kMaxFieldDegree)
            throw FieldCapExceeded("splitting u needs GF(2^" + std::to_string(2 * f->degree()) + ")");
        FieldRef ext = BinaryField::standard(2 * f->degree());
        FieldEmbedding e = embed(f, ext);
        u = u.map(e);
        v = v.map(e);
        f = ext;
        roots = quadratic_roots(u);
    }
    for (bits_t a : roots)
        d.add(CurvePoint(f, a, v.eval(a)), 1);
    return d;
}

bool JacobianClass::operator==(const JacobianClass& o) const
{
    if (!curve_.same_model(o.curve_))
        return false;
    if (field().same_as(o.field()))
        return u_ == o.u_ && v_ == o.v_;
    FieldRef c = compositum(field(), o.field());
    JacobianClass a = lifted(c), b = o.lifted(c);
    return a.u_ == b.u_ && a.v_ == b.v_;
}

std::strong_ordering JacobianClass::operator<=>(const JacobianClass& o) const
{
    if (!field().same_as(o.field()))
        throw PreconditionError("ordering classes over different fields");
    if (auto c = u_ <=> o.u_; c != 0)
        return c;
    return v_ <=> o.v_;
}

std::string JacobianClass::to_string() const
{
    return "u=" + u_.to_hex() + ";v=" + v_.to_hex() + ";field=" + std::to_string(field().degree());
}

JacobianClass mul_int(const JacobianClass& c, std::int64_t m)
{
    JacobianClass base = m < 0 ? -c : c;
    std::uint64_t k = m < 0 ? static_cast<std::uint64_t>(-(m + 1)) + 1 : static_cast<std::uint64_t>(m);
    JacobianClass acc = JacobianClass::identity(c.curve(), c.field_ref());
    while (k) {
        if (k & 1)
            acc += base;
        k >>= 1;
        if (k)
            base += base;
    }
    return acc;
}

JacobianClass class_of(const Curve& c, const FormalDivisor& d)
{
    if (d.degree() != 0)
        throw PreconditionError("class_of needs a degree-0 divisor, got degree " + std::to_string(d.degree()));
    FieldRef f = d.common_field(c.base());
    JacobianClass acc = JacobianClass::identity(c, f);
    for (const auto& [p, m] : d.terms()) {
        if (p.is_infinity())
            continue;
        acc += mul_int(JacobianClass::of_point(c, p.lifted(f)), m);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Enumeration and zeta bookkeeping

std::vector<JacobianClass> enumerate_classes(const Curve& c, const FieldRef& field)
{
    require_extension_of_base(c, *field);
    if (2 * field->degree() > kMaxFieldDegree)
        throw FieldCapExceeded("enumerating J(" + field->name() + ") needs points over its quadratic extension");
    const BinaryField& k = *field;
    ModelRef m = c.over(field);
    std::vector<JacobianClass> out;
    auto push = [&](Poly u, Poly v) {
        if (!congruence_holds(*m, u, v))
            throw InternalError("enumerated pair fails the Mumford congruence");
        out.push_back(JacobianClass::from_mumford(c, u, v));
    };
    out.push_back(JacobianClass::identity(c, field));

    std::vector<std::pair<bits_t, bits_t>> pts;
    for (bits_t x = 0; x < k.size(); ++x)
        for (bits_t y : points_above(*m, x))
            pts.emplace_back(x, y);
    for (auto [a, b] : pts) {
        push(Poly(k, {a, 1}), Poly::constant(k, b));
        if (m->h.eval(a) != 0) {
            auto [u, v] = mumford_double(*m, a, b);
            push(std::move(u), std::move(v));
        }
    }
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            if (pts[i].first == pts[j].first)
                continue;
            auto [u, v] = mumford_pair(k, pts[i].first, pts[i].second, pts[j].first, pts[j].second);
            push(std::move(u), std::move(v));
        }

    // Irreducible u: a point over the quadratic extension paired with its conjugate.
    FieldRef ext = BinaryField::standard(2 * k.degree());
    FieldEmbedding e = embed(field, ext);
    ModelRef me = c.over(ext);
    for (bits_t x = 0; x < ext->size(); ++x) {
        const bits_t xq = ext->frobenius(x, k.degree());
        if (xq <= x)
            continue;  // x in the subfield, or the conjugate was already visited
        for (bits_t y : points_above(*me, x)) {
            auto [u, v] = mumford_pair(*ext, x, y, xq, ext->frobenius(y, k.degree()));
            auto ud = u.descend(e), vd = v.descend(e);
            if (!ud || !vd)
                throw InternalError("conjugate pair does not descend");
            push(std::move(*ud), std::move(*vd));
        }
    }
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end())
        throw InternalError("duplicate class in enumeration of J(" + k.name() + ")");
    return out;
}

std::vector<JacobianClass> enumerate_classes_bruteforce(const Curve& c, const FieldRef& field)
{
    require_extension_of_base(c, *field);
    const BinaryField& k = *field;
    ModelRef m = c.over(field);
    std::vector<JacobianClass> out;
    out.push_back(JacobianClass::identity(c, field));
    const bits_t n = k.size();
    for (bits_t a = 0; a < n; ++a)
        for (bits_t b = 0; b < n; ++b) {
            Poly u(k, {a, 1}), v(k, {b});
            if (congruence_holds(*m, u, v))
                out.push_back(JacobianClass::from_mumford(c, u, v));
        }
    for (bits_t a0 = 0; a0 < n; ++a0)
        for (bits_t a1 = 0; a1 < n; ++a1) {
            Poly u(k, {a0, a1, 1});
            for (bits_t v0 = 0; v0 < n; ++v0)
                for (bits_t v1 = 0; v1 < n; ++v1) {
                    Poly v(k, {v0, v1});
                    if (congruence_holds(*m, u, v))
                        out.push_back(JacobianClass::from_mumford(c, u, v));
                }
        }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

using i128 = __int128;

// Power sums s_1..s_count of the reciprocal roots of L.
std::vector<i128> power_sums(const LPolynomial& l, int count)
{
    const i128 q = static_cast<i128>(l.q);
    // L(T) = sum (-1)^k e_k T^k
    const i128 e[5] = {1, -static_cast<i128>(l.a1), l.a2, -q * l.a1, q * q};
    std::vector<i128> s(count + 1, 0);
    for (int k = 1; k <= count; ++k) {
        i128 acc = 0;
        for (int i = 1; i <= std::min(k - 1, 4); ++i)
            acc += ((i - 1) % 2 == 0 ? 1 : -1) * e[i] * s[k - i];
        if (k <= 4)
            acc += ((k - 1) % 2 == 0 ? 1 : -1) * k * e[k];
        s[k] = acc;
    }
    return s;
}

std::int64_t narrow(i128 v)
{
    if (v > static_cast<i128>(INT64_MAX) || v < static_cast<i128>(INT64_MIN))
        throw InternalError("zeta bookkeeping overflow");
    return static_cast<std::int64_t>(v);
}

LPolynomial lpoly_from_counts(std::uint64_t q, std::int64_t n1, std::int64_t n2)
{
    const std::int64_t qq = static_cast<std::int64_t>(q);
    const std::int64_t a1 = n1 - qq - 1;
    const std::int64_t twice_a2 = n2 - qq * qq - 1 + a1 * a1;
    if (twice_a2 % 2 != 0)
        throw InternalError("point counts give a non-integral L-polynomial");
    return {q, a1, twice_a2 / 2};
}

}  // namespace

std::vector<std::int64_t> LPolynomial::coefficients() const
{
    const std::int64_t qq = static_cast<std::int64_t>(q);
    return {1, a1, a2, qq * a1, qq * qq};
}

std::int64_t LPolynomial::points(int j) const
{
    if (j < 1)
        throw PreconditionError("extension degree must be >= 1");
    auto s = power_sums(*this, j);
    i128 qj = 1;
    for (int i = 0; i < j; ++i)
        qj *= static_cast<i128>(q);
    return narrow(qj + 1 - s[j]);
}

std::int64_t LPolynomial::jacobian_order(int j) const
{
    if (j < 1)
        throw PreconditionError("extension degree must be >= 1");
    auto s = power_sums(*this, 4 * j);
    const i128 p1 = s[j], p2 = s[2 * j], p3 = s[3 * j], p4 = s[4 * j];
    // Newton's identities for the elementary symmetric functions of alpha^j.
    const i128 e1 = p1;
    const i128 e2 = (e1 * p1 - p2) / 2;
    const i128 e3 = (e2 * p1 - e1 * p2 + p3) / 3;
    const i128 e4 = (e3 * p1 - e2 * p2 + e1 * p3 - p4) / 4;
    return narrow(1 - e1 + e2 - e3 + e4);
}

bool LPolynomial::functional_equation_holds() const
{
    // T^4 q^2 L(1/(qT)) = L(T): coefficient c_i = q^(2-i) c_(4-i) for i < 2.
    auto c = coefficients();
    const std::int64_t qq = static_cast<std::int64_t>(q);
    if (c[4] != qq * qq * c[0] || c[3] != qq * c[1])
        return false;
    // Weil bounds for the two free coefficients of a genus-2 L-polynomial.
    const double r = std::sqrt(static_cast<double>(q));
    if (std::abs(static_cast<double>(a1)) > 4 * r + 1e-9)
        return false;
    const double a2d = static_cast<double>(a2), a1d = static_cast<double>(a1);
    return a2d >= 2 * r * std::abs(a1d) - 2 * static_cast<double>(q) - 1e-9 &&
           a2d <= a1d * a1d / 4 + 2 * static_cast<double>(q) + 1e-9;
}

LPolynomial zeta(const Curve& c)
{
    if (2 * c.base().degree() > kMaxFieldDegree)
        throw FieldCapExceeded("zeta needs points over GF(2^" + std::to_string(2 * c.base().degree()) + ")");
    const auto n1 = static_cast<std::int64_t>(count_points(c, c.base_ref()));
    const auto n2 = static_cast<std::int64_t>(count_points(c, c.extension(2)));
    return lpoly_from_counts(c.base().size(), n1, n2);
}

std::int64_t group_order(const Curve& c, const FieldRef& field)
{
    require_extension_of_base(c, *field);
    const int j = field->degree() / c.base().degree();
    const std::int64_t n = zeta(c).jacobian_order(j);
    if (j > 1 && 2 * field->degree() <= kMaxFieldDegree) {
        const auto n1 = static_cast<std::int64_t>(count_points(c, field));
        const auto n2 = static_cast<std::int64_t>(count_points(c, BinaryField::standard(2 * field->degree())));
        const std::int64_t direct = lpoly_from_counts(field->size(), n1, n2).jacobian_order(1);
        if (direct != n)
            throw InternalError("#J(" + field->name() + "): " + std::to_string(direct) + " from direct counts vs " +
                                std::to_string(n) + " from the base L-polynomial");
    }
    return n;
}

WeilIntervalInt weil_jacobian_interval(std::uint64_t q)
{
    const long double r = std::sqrt(static_cast<long double>(q));
    const long double lo = std::pow(r - 1, 4), hi = std::pow(r + 1, 4);
    return {static_cast<std::int64_t>(std::ceil(lo - 1e-9L)), static_cast<std::int64_t>(std::floor(hi + 1e-9L))};
}

namespace {

CurvePoint random_point(const Curve& c, const FieldRef& field, const CurveModel& m, std::mt19937_64& rng)
{
    std::uniform_int_distribution<bits_t> pick(0, field->size() - 1);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        const bits_t x = pick(rng);
        auto ys = points_above(m, x);
        if (ys.empty())
            continue;
        const bits_t y = ys[std::uniform_int_distribution<std::size_t>(0, ys.size() - 1)(rng)];
        return CurvePoint(field, x, y);
    }
    throw InternalError("no affine point found on " + c.spec() + " over " + field->name());
}

}  // namespace

JacobianClass random_class(const Curve& c, const FieldRef& field, std::mt19937_64& rng, int terms)
{
    ModelRef m = c.over(field);
    JacobianClass acc = JacobianClass::identity(c, field);
    for (int i = 0; i < terms; ++i)
        acc += JacobianClass::of_point(c, random_point(c, field, *m, rng));
    return acc;
}

FormalDivisor random_divisor(const Curve& c, const FieldRef& field, std::mt19937_64& rng, int terms)
{
    ModelRef m = c.over(field);
    std::uniform_int_distribution<int> mult(1, 3);
    std::bernoulli_distribution negative(0.5);
    FormalDivisor d;
    for (int i = 0; i < terms; ++i) {
        const int k = mult(rng);
        d.add(random_point(c, field, *m, rng), negative(rng) ? -k : k);
    }
    if (d.empty())
        return d;
    return d.balanced();
}

// ---------------------------------------------------------------------------
// Riemann-Roch machinery

std::string RRMonomial::to_string() const
{
    std::string xs = power == 0 ? "" : power == 1 ? "x" : "x^" + std::to_string(power);
    if (!is_y)
        return xs.empty() ? "1" : xs;
    return xs.empty() ? "y" : xs + "*y";
}

std::vector<RRMonomial> riemann_roch_space(int m)
{
    if (m < 0)
        throw PreconditionError("riemann_roch_space needs m >= 0");
    std::vector<RRMonomial> out;
    for (int i = 0; 2 * i <= m; ++i)
        out.push_back({i, false});
    for (int j = 0; 2 * j + 5 <= m; ++j)
        out.push_back({j, true});
    return out;
}

std::string RationalFunction::to_string() const
{
    return "(" + a.to_hex() + ") + (" + b.to_hex() + ")*y over (" + denominator.to_hex() + ") in " + field->name();
}

namespace {

Series eval_at(const Poly& p, const Series& s)
{
    Series acc = zero_like(s);
    for (int i = p.degree(); i >= 0; --i)
        acc = acc * s + Series::constant(s.field(), s.truncation(), p.coeff(i));
    return acc;
}

// Expansions of x and y at an affine point in a local uniformizer, to
// precision n: x - x0 away from Weierstrass points, y - y0 at them.
struct LocalExpansion {
    Series x;
    Series y;
};

LocalExpansion expand_at(const CurveModel& m, const CurvePoint& p, int n)
{
    const BinaryField& k = *m.field;
    if (!p.field().same_as(k))
        throw InternalError("local expansion: point and model over different fields");
    const Series t = Series::monomial(k, n, 1, 1);
    const Series x0 = Series::constant(k, n, p.x()), y0 = Series::constant(k, n, p.y());
    const int iterations = 2 + static_cast<int>(std::ceil(std::log2(std::max(n, 1))));
    auto residual = [&](const Series& x, const Series& y) { return y * y + eval_at(m.h, x) * y + eval_at(m.f, x); };
    if (m.h.eval(p.x()) != 0) {
        Series x = x0 + t, y = y0;
        const Series hx = eval_at(m.h, x);  // d/dy of the equation
        const Series hinv = hx.inverse();
        for (int i = 0; i < iterations; ++i)
            y = y + residual(x, y) * hinv;
        if (!residual(x, y).is_zero())
            throw InternalError("local expansion did not converge");
        return {x, y};
    }
    Series y = y0 + t, x = x0;
    const Poly hd = m.h.derivative(), fd = m.f.derivative();
    for (int i = 0; i < iterations; ++i) {
        const Series gx = eval_at(hd, x) * y + eval_at(fd, x);
        if (!gx.is_unit())
            throw InternalError("curve singular at " + p.to_string());
        x = x + residual(x, y) * gx.inverse();
    }
    if (!residual(x, y).is_zero())
        throw InternalError("local expansion did not converge");
    return {x, y};
}

Series monomial_at(const LocalExpansion& e, const RRMonomial& mono)
{
    Series r = e.x.pow(static_cast<std::uint64_t>(mono.power));
    return mono.is_y ? r * e.y : r;
}

// u_D = prod (x - x_P)^m over an effective affine divisor.
Poly x_polynomial(const BinaryField& k, const FormalDivisor& d)
{
    Poly u = Poly::constant(k, 1);
    for (const auto& [p, m] : d.terms()) {
        if (p.is_infinity())
            continue;
        if (m < 0)
            throw InternalError("x_polynomial of a non-effective divisor");
        u *= Poly(k, {p.x(), 1}).pow(static_cast<unsigned>(m));
    }
    return u;
}

FormalDivisor lifted_divisor(const FormalDivisor& d, const FieldRef& f)
{
    FormalDivisor r;
    for (const auto& [p, m] : d.terms())
        r.add(p.lifted(f), m);
    return r;
}

FormalDivisor involuted(const Curve& c, const FormalDivisor& d)
{
    FormalDivisor r;
    for (const auto& [p, m] : d.terms())
        r.add(hyperelliptic_involution(c, p), m);
    return r;
}

// Nonzero functions in L(m infinity) vanishing on the effective divisor W,
// as coordinate vectors in riemann_roch_space(m).
std::vector<std::vector<bits_t>> vanishing_functions(const CurveModel& model, const FormalDivisor& w, int m)
{
    const BinaryField& k = *model.field;
    const auto basis = riemann_roch_space(m);
    const int cols = static_cast<int>(basis.size());
    std::vector<bits_t> rows;
    int nrows = 0;
    for (const auto& [p, e] : w.terms()) {
        LocalExpansion ex = expand_at(model, p, e);
        std::vector<Series> images;
        for (const auto& mono : basis)
            images.push_back(monomial_at(ex, mono));
        for (int i = 0; i < e; ++i) {
            for (const auto& s : images)
                rows.push_back(s.coeff(i));
            ++nrows;
        }
    }
    if (nrows == 0)
        return nullspace(k, 1, cols, std::vector<bits_t>(cols, 0));
    return nullspace(k, nrows, cols, std::move(rows));
}

std::pair<Poly, Poly> split_coordinates(const BinaryField& k, const std::vector<RRMonomial>& basis,
                                        const std::vector<bits_t>& coords)
{
    std::vector<bits_t> a, b;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        auto& target = basis[i].is_y ? b : a;
        if (static_cast<int>(target.size()) <= basis[i].power)
            target.resize(basis[i].power + 1, 0);
        target[basis[i].power] = coords[i];
    }
    return {Poly(k, a), Poly(k, b)};
}

Poly norm(const CurveModel& m, const Poly& a, const Poly& b)
{
    return a * a + a * b * m.h + b * b * m.f;
}

// Drops P + iota(P) pairs (each is equivalent to 2 infinity).
FormalDivisor cancel_vertical_pairs(const Curve& c, const FormalDivisor& w)
{
    FormalDivisor r;
    std::vector<CurvePoint> seen;
    for (const auto& [p, m] : w.terms()) {
        const CurvePoint ip = hyperelliptic_involution(c, p);
        if (ip == p) {
            if (m % 2)
                r.add(p, 1);
            continue;
        }
        if (std::find(seen.begin(), seen.end(), p) != seen.end())
            continue;
        seen.push_back(ip);
        const int mi = w.multiplicity(ip);
        const int k = std::min(m, mi);
        r.add(p, m - k);
        r.add(ip, mi - k);
    }
    return r;
}

}  // namespace

int local_order(const CurveModel& model, const Poly& a, const Poly& b, const CurvePoint& p, int cap)
{
    if (p.is_infinity())
        throw PreconditionError("local_order is for affine points");
    if (model.equation(p.x(), p.y()) != 0)
        throw PreconditionError(p.to_string() + " is not on the curve");
    LocalExpansion e = expand_at(model, p, cap);
    Series s = eval_at(a, e.x) + eval_at(b, e.x) * e.y;
    return s.valuation();
}

bool verify_divisor(const Curve& c, const RationalFunction& phi, const FormalDivisor& d)
{
    if (d.degree() != 0)
        return false;
    const FieldRef& f = phi.field;
    const BinaryField& k = *f;
    ModelRef m = c.over(f);
    if (phi.a.is_zero() && phi.b.is_zero())
        return false;
    FormalDivisor dl = lifted_divisor(d, f);
    FormalDivisor neg = dl.affine_negative();
    FormalDivisor w = dl.affine_positive() + involuted(c, neg);
    if (phi.denominator != x_polynomial(k, neg))
        return false;
    const Poly n = norm(*m, phi.a, phi.b);
    if (n.monic() != x_polynomial(k, w))
        return false;
    for (const auto& [p, e] : w.terms()) {
        if (local_order(*m, phi.a, phi.b, p, e) < e)
            return false;
    }
    return true;
}

std::optional<RationalFunction> principal_witness(const Curve& c, const FormalDivisor& d)
{
    if (d.degree() != 0)
        throw PreconditionError("principal_witness needs a degree-0 divisor");
    FieldRef f = d.common_field(c.base());
    const BinaryField& k = *f;
    ModelRef m = c.over(f);
    FormalDivisor dl = lifted_divisor(d, f);
    FormalDivisor neg = dl.affine_negative();
    FormalDivisor w = dl.affine_positive() + involuted(c, neg);
    const int deg = w.degree();
    auto sols = vanishing_functions(*m, w, deg);
    if (sols.empty())
        return std::nullopt;
    if (sols.size() > 1)
        throw InternalError("L(D) of a degree-0 divisor has dimension > 1");
    const auto basis = riemann_roch_space(deg);
    auto [a, b] = split_coordinates(k, basis, sols.front());
    RationalFunction phi{f, a, b, x_polynomial(k, neg), basis, sols.front()};
    if (!verify_divisor(c, phi, d))
        throw InternalError("candidate function fails the divisor check for " + d.to_string());
    return phi;
}

JacobianClass riemann_roch_reduce(const Curve& c, const FormalDivisor& d)
{
    if (d.degree() != 0)
        throw PreconditionError("riemann_roch_reduce needs a degree-0 divisor");
    FieldRef f = d.common_field(c.base());
    const BinaryField& k = *f;
    ModelRef m = c.over(f);
    FormalDivisor dl = lifted_divisor(d, f);
    FormalDivisor w = cancel_vertical_pairs(c, dl.affine_positive() + involuted(c, dl.affine_negative()));
    const int deg = w.degree();
    for (int pole = deg; pole <= deg + 2; ++pole) {
        auto sols = vanishing_functions(*m, w, pole);
        if (sols.empty())
            continue;
        const auto basis = riemann_roch_space(pole);
        auto [a, b] = split_coordinates(k, basis, sols.front());
        // div(psi) = W + E' - pole * infinity; the class of D is -[E'].
        auto [ue, rem] = Poly::divmod(norm(*m, a, b).monic(), x_polynomial(k, w));
        if (!rem.is_zero() || ue.degree() != pole - deg)
            throw InternalError("norm of the minimal function does not factor through W");
        if (ue.degree() == 0)
            return JacobianClass::identity(c, f);
        // Points of E' over the splitting field of ue.
        FieldRef sf = f;
        Poly us = ue, as = a, bs = b;
        std::vector<bits_t> roots = quadratic_roots(us);
        if (roots.empty()) {
            sf = BinaryField::standard(2 * k.degree());
            FieldEmbedding e = embed(f, sf);
            us = ue.map(e);
            as = a.map(e);
            bs = b.map(e);
            roots = quadratic_roots(us);
        }
        ModelRef ms = c.over(sf);
        FormalDivisor ws = lifted_divisor(w, sf);
        std::vector<std::pair<bits_t, bits_t>> pts;
        std::vector<bits_t> distinct = roots;
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        for (bits_t x0 : distinct) {
            const int need = static_cast<int>(std::count(roots.begin(), roots.end(), x0));
            int found = 0;
            for (bits_t y0 : points_above(*ms, x0)) {
                CurvePoint p(sf, x0, y0);
                const int extra = local_order(*ms, as, bs, p, pole + 1) - ws.multiplicity(p);
                for (int i = 0; i < extra; ++i)
                    pts.emplace_back(x0, y0);
                found += std::max(extra, 0);
            }
            if (found != need)
                throw InternalError("zeros of the minimal function do not match its norm");
        }
        std::pair<Poly, Poly> uv = pts.size() == 1
                                       ? std::pair<Poly, Poly>{Poly(*sf, {pts[0].first, 1}), Poly::constant(*sf, pts[0].second)}
                                   : pts[0].first == pts[1].first ? mumford_double(*ms, pts[0].first, pts[0].second)
                                                                  : mumford_pair(*sf, pts[0].first, pts[0].second,
                                                                                 pts[1].first, pts[1].second);
        JacobianClass e = JacobianClass::from_mumford(c, uv.first, uv.second);
        auto down = e.descended(f);
        if (!down)
            throw InternalError("reduced divisor is not defined over " + f->name());
        return -*down;
    }
    throw InternalError("no function with pole order <= deg W + 2 vanishes on W");
}

// ---------------------------------------------------------------------------
// Frobenius pullback

JacobianClass frobenius_pullback(const JacobianClass& c)
{
    const Curve& target = c.curve();
    const Curve source = target.twisted(-1);
    FormalDivisor d;
    FieldRef f = c.field_ref();
    const FormalDivisor supp = c.support();
    for (const auto& [p, m] : supp.terms()) {
        d.add(frobenius_preimage(target, p), 2 * m);
        d.add(CurvePoint::infinity(p.field_ref()), -2 * m);
    }
    if (d.empty())
        return JacobianClass::identity(source, f);
    auto r = class_of(source, d).descended(f);
    if (!r)
        throw InternalError("Frobenius pullback left the field of definition");
    return *r;
}

JacobianClass frobenius_pullback_coefficients(const JacobianClass& c)
{
    const Curve source = c.curve().twisted(-1);
    JacobianClass pre = JacobianClass::from_mumford(source, c.u().frobenius(-1), c.v().frobenius(-1));
    return mul_int(pre, 2);
}

JacobianClass verschiebung(const JacobianClass& c)
{
    const int d = c.curve().base().degree();
    JacobianClass r = c.on(c.curve().twisted(d));
    for (int i = 0; i < d; ++i)
        r = frobenius_pullback(r);
    return r;
}

// ---------------------------------------------------------------------------
// Torsion

namespace {

// J[2](E): c = -c iff h = 0 mod u, and then v(a)^2 = f(a) at each root a of u.
std::vector<JacobianClass> two_torsion_over(const Curve& c, const FieldRef& field)
{
    const BinaryField& k = *field;
    ModelRef m = c.over(field);
    const std::vector<bits_t> roots = poly_roots(m->h);
    std::vector<JacobianClass> out;
    for (std::uint32_t mask = 0; mask < (1u << roots.size()); ++mask) {
        Poly u = Poly::constant(k, 1);
        std::vector<std::pair<bits_t, bits_t>> pts;
        for (std::size_t i = 0; i < roots.size(); ++i) {
            if ((mask >> i) & 1) {
                u *= Poly(k, {roots[i], 1});
                pts.emplace_back(roots[i], k.sqrt(m->f.eval(roots[i])));
            }
        }
        Poly v(k);
        if (pts.size() == 1)
            v = Poly::constant(k, pts[0].second);
        else if (pts.size() == 2)
            v = mumford_pair(k, pts[0].first, pts[0].second, pts[1].first, pts[1].second).second;
        else if (pts.size() > 2)
            throw InternalError("h has more than two roots");
        JacobianClass cl = JacobianClass::from_mumford(c, u, v);
        if (!mul_int(cl, 2).is_identity())
            throw InternalError("2-torsion candidate " + cl.to_string() + " is not killed by 2");
        out.push_back(cl);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<JacobianClass> span_with(const std::vector<JacobianClass>& h, const JacobianClass& g, int r)
{
    std::set<JacobianClass> s(h.begin(), h.end());
    for (const auto& x : h) {
        JacobianClass y = x;
        for (int i = 1; i < r; ++i) {
            y += g;
            s.insert(y);
        }
    }
    return {s.begin(), s.end()};
}

std::vector<JacobianClass> sylow_torsion(const Curve& c, const FieldRef& field, int r, std::int64_t order,
                                         std::uint64_t seed, std::size_t bound)
{
    std::int64_t part = 1;
    for (std::int64_t n = order; n % r == 0; n /= r)
        part *= r;
    std::vector<JacobianClass> h{JacobianClass::identity(c, field)};
    if (part == 1)
        return h;
    const std::int64_t cofactor = order / part;
    std::mt19937_64 rng(seed);
    int stale = 0;
    for (int sample = 0; sample < 4000 && stale < 200 && h.size() < bound; ++sample) {
        JacobianClass x = mul_int(random_class(c, field, rng), cofactor);
        if (x.is_identity()) {
            ++stale;
            continue;
        }
        for (JacobianClass nx = mul_int(x, r); !nx.is_identity(); nx = mul_int(x, r))
            x = nx;
        if (std::binary_search(h.begin(), h.end(), x)) {
            ++stale;
            continue;
        }
        stale = 0;
        h = span_with(h, x, r);
    }
    return h;
}

}  // namespace

TorsionReport torsion_subgroup(const Curve& c, int r, int k, std::uint64_t seed)
{
    if (r != 2 && r != 3)
        throw PreconditionError("torsion_subgroup supports r = 2 and r = 3");
    if (k < 1 || k > 6)
        throw PreconditionError("torsion search bound must be in 1..6");
    const std::size_t full = r == 2 ? 4 : 81;  // 2^g for the ordinary 2-rank, r^(2g) otherwise
    const std::size_t bound = r == 2 ? 16 : 81;
    TorsionReport rep;
    rep.r = r;
    for (int j = 1; j <= k; ++j) {
        const int deg = c.base().degree() * j;
        if (deg > kMaxFieldDegree)
            break;
        FieldRef e = BinaryField::standard(deg);
        std::vector<JacobianClass> pts;
        bool exhaustive = true;
        if (r == 2) {
            pts = two_torsion_over(c, e);
        } else {
            const std::int64_t order = group_order(c, e);
            if (order <= 200000 && 2 * deg <= kMaxFieldDegree) {
                for (const auto& cl : enumerate_classes(c, e)) {
                    if (mul_int(cl, 3).is_identity())
                        pts.push_back(cl);
                }
            } else {
                pts = sylow_torsion(c, e, 3, order, seed + static_cast<std::uint64_t>(j), bound);
                exhaustive = false;
            }
        }
        if (pts.size() > bound)
            throw InternalError("more than r^4 classes killed by r");
        rep.counts.emplace_back(deg, pts.size());
        rep.points = std::move(pts);
        rep.field_degree = deg;
        rep.exhaustive = exhaustive;
        if (rep.points.size() == full) {
            rep.stabilized = true;
            break;
        }
    }
    return rep;
}

OrdinarityCheck verify_ordinarity(const Curve& c, int k)
{
    OrdinarityCheck out;
    out.branch_criterion = is_ordinary(c);
    const int deg = c.base().degree() * k;
    if (deg > kMaxFieldDegree)
        throw FieldCapExceeded("2-torsion over GF(2^" + std::to_string(deg) + ")");
    out.two_torsion = two_torsion_over(c, BinaryField::standard(deg)).size();
    out.consistent = out.branch_criterion == (out.two_torsion == 4);
    if (!out.consistent)
        throw InternalError("branch-point criterion and 2-torsion count disagree on " + c.spec());
    return out;
}

std::vector<JacobianClass> two_torsion(const Curve& c, const FieldRef& field)
{
    require_extension_of_base(c, *field);
    return two_torsion_over(c, field);
}

}  // namespace vfix

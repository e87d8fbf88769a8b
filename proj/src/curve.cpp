#include "vfix/curve.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace vfix {

bits_t CurveModel::equation(bits_t x, bits_t y) const
{
    const BinaryField& k = *field;
    return k.square(y) ^ k.mul(h.eval(x), y) ^ f.eval(x);
}

FieldRef compositum(const BinaryField& a, const BinaryField& b)
{
    const int d = std::lcm(a.degree(), b.degree());
    if (d > kMaxFieldDegree)
        throw FieldCapExceeded("compositum of " + a.name() + " and " + b.name() + " exceeds GF(2^16)");
    return BinaryField::standard(d);
}

CurvePoint::CurvePoint(FieldRef field, bits_t x, bits_t y) : field_(std::move(field)), x_(x), y_(y)
{
    if (!field_->contains(x) || !field_->contains(y))
        throw PreconditionError("point coordinates outside " + field_->name());
}

CurvePoint CurvePoint::lifted(const FieldRef& target) const
{
    if (target->same_as(*field_))
        return *this;
    if (infinity_)
        return infinity(target);
    FieldEmbedding e = embed(field_, target);
    return CurvePoint(target, e.apply(x_), e.apply(y_));
}

CurvePoint CurvePoint::minimal(const BinaryField& floor) const
{
    const int d = field_->degree();
    if (d % floor.degree() != 0)
        throw PreconditionError("point field does not contain " + floor.name());
    for (int e = floor.degree(); e < d; e += floor.degree()) {
        if (d % e != 0)
            continue;
        FieldRef sub = BinaryField::standard(e);
        if (infinity_)
            return infinity(sub);
        FieldEmbedding emb = embed(sub, field_);
        auto px = emb.preimage(x_);
        auto py = emb.preimage(y_);
        if (px && py)
            return CurvePoint(sub, *px, *py);
    }
    return *this;
}

bool CurvePoint::operator==(const CurvePoint& o) const
{
    if (infinity_ || o.infinity_)
        return infinity_ == o.infinity_;
    if (field_->same_as(*o.field_))
        return x_ == o.x_ && y_ == o.y_;
    FieldRef c = compositum(*field_, *o.field_);
    CurvePoint a = lifted(c), b = o.lifted(c);
    return a.x_ == b.x_ && a.y_ == b.y_;
}

std::string CurvePoint::to_string() const
{
    if (infinity_)
        return "inf";
    return "(" + to_hex(x_) + "," + to_hex(y_) + ")@" + std::to_string(field_->degree());
}

Curve::Curve(FieldRef base, bits_t t, int twist) : base_(std::move(base)), t_(t), twist_(twist)
{
    if (!base_->contains(t))
        throw PreconditionError("t = " + to_hex(t) + " is not an element of " + base_->name());
    if (t == 0 || t == 1)
        throw PreconditionError("t must differ from 0 and 1 (got " + to_hex(t) + ")");
}

Curve Curve::parse(const std::string& spec)
{
    int d = -1, n = 0;
    std::optional<bits_t> t;
    std::stringstream in(spec);
    std::string item;
    while (std::getline(in, item, ';')) {
        if (item.empty())
            continue;
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw PreconditionError("curve spec item \"" + item + "\" is not key=value");
        const std::string key = item.substr(0, eq), value = item.substr(eq + 1);
        try {
            if (key == "d")
                d = std::stoi(value);
            else if (key == "t")
                t = parse_hex(value);
            else if (key == "n")
                n = std::stoi(value);
            else
                throw PreconditionError("unknown curve spec key \"" + key + "\"");
        } catch (const std::invalid_argument&) {
            throw PreconditionError("bad value in curve spec item \"" + item + "\"");
        }
    }
    if (d < 1 || !t)
        throw PreconditionError("curve spec needs d and t, e.g. \"d=2;t=0x2;n=0\"");
    if (d > kMaxFieldDegree)
        throw PreconditionError("curve base degree must be <= 16");
    return Curve(BinaryField::standard(d), *t, n);
}

std::string Curve::spec() const
{
    return "d=" + std::to_string(base_->degree()) + ";t=" + to_hex(t_) + ";n=" + std::to_string(twist_);
}

bits_t Curve::effective_t() const { return base_->frobenius(t_, twist_); }

bool Curve::same_model(const Curve& o) const
{
    return base_->same_as(*o.base_) && effective_t() == o.effective_t();
}

ModelRef Curve::over(const FieldRef& field) const
{
    FieldEmbedding e = embed(base_, field);
    const BinaryField& k = *field;
    const bits_t t = e.apply(effective_t());
    const bits_t t2 = k.square(t);
    const bits_t a = t2 ^ t;
    // f = a x^5 + t^2 x^3 + a x
    Poly f(k, {0, a, 0, t2, 0, a});
    Poly h(k, {0, 1, 1});
    return std::make_shared<const CurveModel>(CurveModel{field, std::move(h), std::move(f)});
}

FieldRef Curve::extension(int k) const
{
    if (k < 1)
        throw PreconditionError("extension degree must be >= 1");
    return BinaryField::standard(base_->degree() * k);
}

bool on_curve(const Curve& c, const CurvePoint& p)
{
    if (p.field().degree() % c.base().degree() != 0)
        throw PreconditionError("point field " + p.field().name() + " is not an extension of " + c.base().name());
    if (p.is_infinity())
        return true;
    return c.over(p.field_ref())->equation(p.x(), p.y()) == 0;
}

std::vector<bits_t> points_above(const CurveModel& model, bits_t x)
{
    const BinaryField& k = *model.field;
    const bits_t hx = model.h.eval(x);
    const bits_t fx = model.f.eval(x);
    if (hx == 0)
        return {k.sqrt(fx)};
    // y = h z with z^2 + z = f / h^2
    auto z = k.artin_schreier_root(k.div(fx, k.square(hx)));
    if (!z)
        return {};
    bits_t y1 = k.mul(hx, *z), y2 = y1 ^ hx;
    if (y2 < y1)
        std::swap(y1, y2);
    return {y1, y2};
}

std::vector<CurvePoint> enumerate_points(const Curve& c, const FieldRef& field)
{
    auto model = c.over(field);
    std::vector<CurvePoint> out;
    out.push_back(CurvePoint::infinity(field));
    for (bits_t x = 0; x < field->size(); ++x) {
        for (bits_t y : points_above(*model, x))
            out.emplace_back(field, x, y);
    }
    return out;
}

std::uint64_t count_points(const Curve& c, const FieldRef& field)
{
    auto model = c.over(field);
    std::uint64_t n = 1;
    for (bits_t x = 0; x < field->size(); ++x)
        n += points_above(*model, x).size();
    return n;
}

CurvePoint hyperelliptic_involution(const Curve& c, const CurvePoint& p)
{
    if (p.is_infinity())
        return p;
    auto model = c.over(p.field_ref());
    return CurvePoint(p.field_ref(), p.x(), p.y() ^ model->h.eval(p.x()));
}

std::vector<ProjectivePoint1> branch_points(const Curve& c)
{
    auto model = c.model();
    std::vector<ProjectivePoint1> out;
    for (bits_t r : poly_roots(model->h))
        out.push_back({r, 1});
    if (model->f.degree() % 2 == 1)
        out.push_back({1, 0});
    return out;
}

bool is_ordinary(const Curve& c) { return static_cast<int>(branch_points(c).size()) == c.genus() + 1; }

std::vector<CurvePoint> weierstrass_points(const Curve& c)
{
    auto model = c.model();
    std::vector<CurvePoint> out;
    for (const auto& b : branch_points(c)) {
        if (b.is_infinity())
            out.push_back(CurvePoint::infinity(c.base_ref()));
        else
            out.emplace_back(c.base_ref(), b.x, c.base().sqrt(model->f.eval(b.x)));
    }
    return out;
}

CurvePoint relative_frobenius(const Curve& c, const CurvePoint& p)
{
    if (p.is_infinity())
        return p;
    const BinaryField& k = p.field();
    CurvePoint image(p.field_ref(), k.square(p.x()), k.square(p.y()));
    if (!on_curve(c.twisted(1), image))
        throw InternalError("relative Frobenius image " + image.to_string() + " is not on " + c.twisted(1).spec());
    return image;
}

CurvePoint frobenius_preimage(const Curve& c, const CurvePoint& p)
{
    if (p.is_infinity())
        return p;
    const BinaryField& k = p.field();
    CurvePoint pre(p.field_ref(), k.sqrt(p.x()), k.sqrt(p.y()));
    if (!on_curve(c.twisted(-1), pre))
        throw PreconditionError(p.to_string() + " is not on " + c.spec());
    return pre;
}

WeilInterval weil_point_interval(std::uint64_t q)
{
    const double s = 4.0 * std::sqrt(static_cast<double>(q));
    const double mid = static_cast<double>(q) + 1.0;
    return {mid - s, mid + s};
}

}  // namespace vfix

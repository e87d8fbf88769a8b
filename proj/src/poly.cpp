#include "vfix/poly.hpp"

#include <algorithm>
#include <sstream>

namespace vfix {

Poly::Poly(const BinaryField& f, std::vector<bits_t> coeffs) : field_(&f), c_(std::move(coeffs))
{
    for (bits_t c : c_) {
        if (!f.contains(c))
            throw PreconditionError(vfix::to_hex(c) + " is not an element of " + f.name());
    }
    normalize();
}

Poly Poly::monomial(const BinaryField& f, bits_t c, int k)
{
    std::vector<bits_t> v(static_cast<std::size_t>(k) + 1, 0);
    v[k] = c;
    return Poly(f, std::move(v));
}

Poly Poly::from_roots(const BinaryField& f, const std::vector<bits_t>& roots)
{
    Poly p = constant(f, 1);
    for (bits_t r : roots)
        p *= Poly(f, {r, 1});
    return p;
}

void Poly::normalize()
{
    while (!c_.empty() && c_.back() == 0)
        c_.pop_back();
}

void Poly::check_same_field(const Poly& o) const
{
    if (!field_->same_as(*o.field_))
        throw PreconditionError("polynomials over different fields: " + field_->name() + " vs " +
                                o.field_->name());
}

Poly Poly::operator+(const Poly& o) const
{
    check_same_field(o);
    Poly r(*field_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < c_.size(); ++i)
        r.c_[i] ^= c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i)
        r.c_[i] ^= o.c_[i];
    r.normalize();
    return r;
}

Poly Poly::operator*(const Poly& o) const
{
    check_same_field(o);
    Poly r(*field_);
    if (is_zero() || o.is_zero())
        return r;
    r.c_.assign(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0)
            continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            r.c_[i + j] ^= field_->mul(c_[i], o.c_[j]);
    }
    r.normalize();
    return r;
}

Poly Poly::scaled(bits_t c) const
{
    Poly r(*field_);
    r.c_.reserve(c_.size());
    for (bits_t a : c_)
        r.c_.push_back(field_->mul(a, c));
    r.normalize();
    return r;
}

Poly Poly::monic() const
{
    if (is_zero())
        return *this;
    return scaled(field_->inv(leading()));
}

Poly Poly::derivative() const
{
    Poly r(*field_);
    for (std::size_t i = 1; i < c_.size(); ++i)
        r.c_.push_back(i % 2 ? c_[i] : 0);
    r.normalize();
    return r;
}

Poly Poly::pow(unsigned e) const
{
    Poly r = constant(*field_, 1);
    Poly b = *this;
    while (e) {
        if (e & 1)
            r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& a, const Poly& b)
{
    a.check_same_field(b);
    if (b.is_zero())
        throw PreconditionError("polynomial division by zero");
    const BinaryField& f = *a.field_;
    Poly q(f);
    Poly r = a;
    if (r.degree() < b.degree())
        return {q, r};
    q.c_.assign(static_cast<std::size_t>(r.degree() - b.degree()) + 1, 0);
    const bits_t lead_inv = f.inv(b.leading());
    const int db = b.degree();
    for (int i = r.degree(); i >= db; --i) {
        const bits_t c = f.mul(r.c_[i], lead_inv);
        if (c == 0)
            continue;
        q.c_[i - db] = c;
        for (int j = 0; j <= db; ++j)
            r.c_[i - db + j] ^= f.mul(c, b.c_[j]);
    }
    q.normalize();
    r.normalize();
    return {q, r};
}

bits_t Poly::eval(bits_t x) const
{
    bits_t acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = field_->mul(acc, x) ^ *it;
    return acc;
}

FieldElement Poly::eval(const FieldElement& x) const
{
    if (!x.field().same_as(*field_))
        throw PreconditionError("evaluation point from " + x.field().name() + " for polynomial over " +
                                field_->name());
    return {*field_, eval(x.bits())};
}

Poly Poly::compose(const Poly& g) const
{
    Poly acc(*field_);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * g + constant(*field_, *it);
    return acc;
}

Poly Poly::frobenius(int k) const
{
    Poly r(*field_);
    for (bits_t a : c_)
        r.c_.push_back(field_->frobenius(a, k));
    return r;
}

Poly Poly::map(const FieldEmbedding& e) const
{
    if (!e.source().same_as(*field_))
        throw PreconditionError("embedding source " + e.source().name() + " does not match " + field_->name());
    Poly r(e.target());
    for (bits_t a : c_)
        r.c_.push_back(e.apply(a));
    return r;
}

std::optional<Poly> Poly::descend(const FieldEmbedding& e) const
{
    if (!e.target().same_as(*field_))
        throw PreconditionError("embedding target " + e.target().name() + " does not match " + field_->name());
    Poly r(e.source());
    for (bits_t a : c_) {
        auto p = e.preimage(a);
        if (!p)
            return std::nullopt;
        r.c_.push_back(*p);
    }
    return r;
}

std::strong_ordering Poly::operator<=>(const Poly& o) const
{
    const std::size_t n = std::max(c_.size(), o.c_.size());
    for (std::size_t i = 0; i < n; ++i) {
        const bits_t a = i < c_.size() ? c_[i] : 0;
        const bits_t b = i < o.c_.size() ? o.c_[i] : 0;
        if (a != b)
            return a <=> b;
    }
    return std::strong_ordering::equal;
}

std::string Poly::to_hex() const
{
    if (c_.empty())
        return "0";
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i)
            out += ',';
        out += vfix::to_hex(c_[i]);
    }
    return out;
}

Poly Poly::from_hex(const BinaryField& f, const std::string& s)
{
    std::vector<bits_t> v;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ','))
        v.push_back(parse_hex(item));
    return Poly(f, std::move(v));
}

Poly gcd(const Poly& a, const Poly& b) { return xgcd(a, b).gcd; }

ExtendedGcd xgcd(const Poly& a, const Poly& b)
{
    const BinaryField& f = a.field();
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::constant(f, 1), s1(f);
    Poly t0(f), t1 = Poly::constant(f, 1);
    while (!r1.is_zero()) {
        auto [q, r] = Poly::divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly s2 = s0 + q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly t2 = t0 + q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero())
        return {r0, s0, t0};
    const bits_t li = f.inv(r0.leading());
    return {r0.scaled(li), s0.scaled(li), t0.scaled(li)};
}

std::vector<bits_t> poly_roots(const Poly& p)
{
    if (p.is_zero())
        throw PreconditionError("roots of the zero polynomial");
    std::vector<bits_t> out;
    for (bits_t x = 0; x < p.field().size(); ++x) {
        if (p.eval(x) == 0)
            out.push_back(x);
    }
    return out;
}

std::vector<bits_t> quadratic_roots(const Poly& p)
{
    const BinaryField& f = p.field();
    switch (p.degree()) {
    case -1:
        throw PreconditionError("roots of the zero polynomial");
    case 0:
        return {};
    case 1:
        return {f.div(p.coeff(0), p.coeff(1))};
    case 2:
        break;
    default:
        throw PreconditionError("quadratic_roots needs degree <= 2");
    }
    const Poly m = p.monic();
    const bits_t b = m.coeff(1), c = m.coeff(0);
    if (b == 0) {
        const bits_t r = f.sqrt(c);
        return {r, r};
    }
    // x = b z, z^2 + z = c / b^2
    auto z = f.artin_schreier_root(f.div(c, f.square(b)));
    if (!z)
        return {};
    bits_t r1 = f.mul(b, *z), r2 = r1 ^ b;
    if (r2 < r1)
        std::swap(r1, r2);
    return {r1, r2};
}

}  // namespace vfix

#include "vfix/algebra.hpp"

#include <algorithm>

#include "vfix/linalg.hpp"

namespace vfix {

namespace {

std::optional<bits_t> solve_in(const BinaryField& f, int q_degree, bits_t d)
{
    const int n = f.degree();
    std::vector<BitVector> cols;
    for (int i = 0; i < n; ++i) {
        const bits_t b = 1u << i;
        const bits_t img = f.frobenius(b, q_degree) ^ b;
        BitVector v(n);
        for (int k = 0; k < n; ++k)
            v.set(k, (img >> k) & 1);
        cols.push_back(std::move(v));
    }
    BitVector rhs(n);
    for (int k = 0; k < n; ++k)
        rhs.set(k, (d >> k) & 1);
    auto sol = solve_gf2(cols, rhs);
    if (!sol)
        return std::nullopt;
    auto to_bits = [n](const BitVector& v) {
        bits_t r = 0;
        for (int k = 0; k < n; ++k)
            r |= static_cast<bits_t>(v.get(k)) << k;
        return r;
    };
    const bits_t x0 = to_bits(sol->particular);
    std::vector<bits_t> ker;
    for (const auto& k : sol->kernel)
        ker.push_back(to_bits(k));
    bits_t best = x0;
    for (std::uint32_t mask = 1; mask < (1u << ker.size()); ++mask) {
        bits_t x = x0;
        for (std::size_t k = 0; k < ker.size(); ++k) {
            if ((mask >> k) & 1)
                x ^= ker[k];
        }
        best = std::min(best, x);
    }
    return best;
}

}  // namespace

ArtinSchreierRoot artin_schreier_solve(const FieldRef& field, int q_degree, bits_t d)
{
    if (q_degree < 1 || field->degree() % q_degree != 0)
        throw PreconditionError("Artin-Schreier: q = 2^" + std::to_string(q_degree) + " is not a subfield order of " +
                                field->name());
    if (!field->contains(d))
        throw PreconditionError("Artin-Schreier: right-hand side not in " + field->name());
    if (auto r = solve_in(*field, q_degree, d))
        return {field, *r, 1, std::nullopt};
    if (2 * field->degree() > kMaxFieldDegree)
        throw FieldCapExceeded("Artin-Schreier root needs GF(2^" + std::to_string(2 * field->degree()) + ")");
    FieldRef ext = BinaryField::standard(2 * field->degree());
    FieldEmbedding e = embed(field, ext);
    auto r = solve_in(*ext, q_degree, e.apply(d));
    if (!r)
        throw InternalError("Artin-Schreier equation unsolvable in the quadratic extension");
    return {ext, *r, 2, e};
}

BinaryForm::BinaryForm(const BinaryField& f, std::vector<bits_t> coeffs) : field_(&f), c_(std::move(coeffs))
{
    if (c_.empty())
        throw PreconditionError("binary form needs at least one coefficient");
    for (bits_t c : c_) {
        if (!f.contains(c))
            throw PreconditionError(to_hex(c) + " is not an element of " + f.name());
    }
}

bool BinaryForm::is_zero() const
{
    return std::all_of(c_.begin(), c_.end(), [](bits_t c) { return c == 0; });
}

bits_t BinaryForm::eval(bits_t x, bits_t y) const
{
    const int d = degree();
    bits_t acc = 0;
    for (int i = 0; i <= d; ++i)
        acc ^= field_->mul(c_[i], field_->mul(field_->pow(x, d - i), field_->pow(y, i)));
    return acc;
}

BinaryForm BinaryForm::operator*(const BinaryForm& o) const
{
    std::vector<bits_t> r(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            r[i + j] ^= field_->mul(c_[i], o.c_[j]);
    return BinaryForm(*field_, std::move(r));
}

BinaryForm BinaryForm::scaled(bits_t c) const
{
    std::vector<bits_t> r;
    for (bits_t a : c_)
        r.push_back(field_->mul(a, c));
    return BinaryForm(*field_, std::move(r));
}

BinaryForm BinaryForm::normalized() const
{
    for (bits_t a : c_) {
        if (a != 0)
            return scaled(field_->inv(a));
    }
    return *this;
}

BinaryForm BinaryForm::map(const FieldEmbedding& e) const
{
    std::vector<bits_t> r;
    for (bits_t a : c_)
        r.push_back(e.apply(a));
    return BinaryForm(e.target(), std::move(r));
}

std::string BinaryForm::to_string() const
{
    const int d = degree();
    std::string out;
    for (int i = 0; i <= d; ++i) {
        if (c_[i] == 0)
            continue;
        std::string mono;
        if (d - i == 1)
            mono += "X";
        else if (d - i > 1)
            mono += "X^" + std::to_string(d - i);
        if (i == 1)
            mono += "Y";
        else if (i > 1)
            mono += "Y^" + std::to_string(i);
        std::string term = c_[i] == 1 && !mono.empty() ? mono : to_hex(c_[i]) + (mono.empty() ? "" : "*" + mono);
        out += (out.empty() ? "" : " + ") + term;
    }
    return out.empty() ? "0" : out;
}

ProjectivePoint1 ProjectivePoint1::normalized(const BinaryField& f, bits_t x, bits_t y)
{
    if (y != 0)
        return {f.div(x, y), 1};
    if (x == 0)
        throw PreconditionError("(0 : 0) is not a projective point");
    return {1, 0};
}

std::vector<ProjectivePoint1> projective_line(const BinaryField& f)
{
    std::vector<ProjectivePoint1> out;
    for (bits_t x = 0; x < f.size(); ++x)
        out.push_back({x, 1});
    out.push_back({1, 0});
    return out;
}

std::vector<ProjectivePoint1> quadratic_form_zeros(const BinaryForm& h)
{
    if (h.degree() != 2 || h.is_zero())
        throw PreconditionError("quadratic_form_zeros needs a nonzero quadratic form");
    const BinaryField& f = h.field();
    // h(x, 1) = a x^2 + b x + c; (1 : 0) is a zero iff a = 0.
    Poly affine(f, {h.coeff(2), h.coeff(1), h.coeff(0)});
    std::vector<ProjectivePoint1> out;
    if (affine.degree() >= 1) {
        for (bits_t r : quadratic_roots(affine))
            out.push_back({r, 1});
    }
    const int missing = 2 - std::max(affine.degree(), 0);
    if (!out.empty() || affine.degree() < 2) {
        for (int i = 0; i < missing; ++i)
            out.push_back({1, 0});
    }
    return out;
}

bits_t quadratic_resultant(const BinaryForm& h1, const BinaryForm& h2)
{
    if (h1.degree() != 2 || h2.degree() != 2)
        throw PreconditionError("quadratic_resultant needs two quadratic forms");
    const BinaryField& f = h1.field();
    const bits_t a1 = h1.coeff(0), b1 = h1.coeff(1), c1 = h1.coeff(2);
    const bits_t a2 = h2.coeff(0), b2 = h2.coeff(1), c2 = h2.coeff(2);
    // Res = (a1 c2 - a2 c1)^2 - (a1 b2 - a2 b1)(b1 c2 - b2 c1)
    const bits_t ac = f.mul(a1, c2) ^ f.mul(a2, c1);
    const bits_t ab = f.mul(a1, b2) ^ f.mul(a2, b1);
    const bits_t bc = f.mul(b1, c2) ^ f.mul(b2, c1);
    return f.square(ac) ^ f.mul(ab, bc);
}

BinaryForm linear_form_through(const BinaryField& f, ProjectivePoint1 p)
{
    // y X - x Y vanishes at (x : y).
    return BinaryForm(f, {p.y, p.x}).normalized();
}

namespace {

// q = L * m for a linear L dividing q.
BinaryForm divide_linear(const BinaryForm& q, const BinaryForm& l)
{
    const BinaryField& f = q.field();
    const bits_t l0 = l.coeff(0), l1 = l.coeff(1);
    bits_t m0, m1;
    if (l0 != 0) {
        m0 = f.div(q.coeff(0), l0);
        m1 = f.div(q.coeff(1) ^ f.mul(l1, m0), l0);
    } else {
        m1 = f.div(q.coeff(2), l1);
        m0 = f.div(q.coeff(1) ^ f.mul(l0, m1), l1);
    }
    BinaryForm m(f, {m0, m1});
    if (!(l * m == q))
        throw InternalError("linear factor " + l.to_string() + " does not divide " + q.to_string());
    return m;
}

bool order_before(const ProjectivePoint1& a, const ProjectivePoint1& b)
{
    if (a.is_infinity() != b.is_infinity())
        return !a.is_infinity();
    return a.x < b.x;
}

}  // namespace

CommonLinearFactor quadratic_common_linear_factor(const FieldRef& field, const BinaryForm& h1, const BinaryForm& h2,
                                                  std::optional<ProjectivePoint1> preferred)
{
    if (h1.degree() != 2 || h2.degree() != 2 || h1.is_zero() || h2.is_zero())
        throw PreconditionError("quadratic_common_linear_factor needs two nonzero quadratic forms");
    if (!h1.field().same_as(*field) || !h2.field().same_as(*field))
        throw PreconditionError("forms are not over the given field");
    if (quadratic_resultant(h1, h2) != 0)
        throw PreconditionError("no common factor: " + h1.to_string() + " and " + h2.to_string() +
                                " have nonzero resultant");

    FieldRef work = field;
    std::optional<FieldEmbedding> lift;
    BinaryForm g1 = h1, g2 = h2;
    std::vector<ProjectivePoint1> zeros = quadratic_form_zeros(g1);
    if (zeros.empty()) {
        if (2 * field->degree() > kMaxFieldDegree)
            throw FieldCapExceeded("common factor needs GF(2^" + std::to_string(2 * field->degree()) + ")");
        work = BinaryField::standard(2 * field->degree());
        lift = embed(field, work);
        g1 = h1.map(*lift);
        g2 = h2.map(*lift);
        zeros = quadratic_form_zeros(g1);
        if (preferred)
            preferred = ProjectivePoint1{lift->apply(preferred->x), lift->apply(preferred->y)};
    }
    std::vector<ProjectivePoint1> common;
    for (const auto& z : zeros) {
        if (g2.eval(z.x, z.y) == 0)
            common.push_back(z);
    }
    if (common.empty())
        throw InternalError("zero resultant but no common zero found");
    std::sort(common.begin(), common.end(), order_before);
    ProjectivePoint1 chosen = common.front();
    if (preferred) {
        auto it = std::find(common.begin(), common.end(), *preferred);
        if (it == common.end())
            throw PreconditionError("preferred point is not a common zero");
        chosen = *it;
    }
    BinaryForm l = linear_form_through(*work, chosen);
    BinaryForm r1 = divide_linear(g1, l);
    BinaryForm r2 = divide_linear(g2, l);
    return {work, lift, l, r1, r2, chosen};
}

}  // namespace vfix

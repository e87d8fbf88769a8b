#include "vfix/group_action.hpp"

#include <algorithm>
#include <map>

#include "vfix/linalg.hpp"

namespace vfix {

// ---------------------------------------------------------------------------
// MobiusMap

MobiusMap::MobiusMap(FieldRef field, bits_t alpha, bits_t beta, bits_t gamma, bits_t delta)
    : field_(std::move(field)), e_{alpha, beta, gamma, delta}
{
    const BinaryField& k = *field_;
    for (bits_t v : e_) {
        if (!k.contains(v))
            throw PreconditionError("Mobius entry " + to_hex(v) + " outside " + k.name());
    }
    if ((k.mul(alpha, delta) ^ k.mul(beta, gamma)) == 0)
        throw PreconditionError("singular Mobius matrix");
    // Scale so the first nonzero entry is 1.
    for (bits_t v : e_) {
        if (v != 0) {
            const bits_t inv = k.inv(v);
            for (auto& w : e_)
                w = k.mul(w, inv);
            break;
        }
    }
}

std::vector<MobiusMap> MobiusMap::branch_permutations(const FieldRef& field)
{
    return {
        {field, 1, 0, 0, 1},  // x
        {field, 1, 1, 0, 1},  // x + 1
        {field, 0, 1, 1, 0},  // 1/x
        {field, 0, 1, 1, 1},  // 1/(x+1)
        {field, 1, 0, 1, 1},  // x/(x+1)
        {field, 1, 1, 1, 0},  // (x+1)/x
    };
}

ProjectivePoint1 MobiusMap::apply(const BinaryField& target, ProjectivePoint1 p) const
{
    FieldEmbedding e = embed(field_, BinaryField::standard(target.degree()));
    const bits_t a = e.apply(e_[0]), b = e.apply(e_[1]), c = e.apply(e_[2]), d = e.apply(e_[3]);
    const bits_t nx = target.mul(a, p.x) ^ target.mul(b, p.y);
    const bits_t ny = target.mul(c, p.x) ^ target.mul(d, p.y);
    return ProjectivePoint1::normalized(target, nx, ny);
}

MobiusMap MobiusMap::compose(const MobiusMap& o) const
{
    if (!field_->same_as(*o.field_))
        throw PreconditionError("composing Mobius maps over different fields");
    const BinaryField& k = *field_;
    auto [a, b, c, d] = e_;
    auto [a2, b2, c2, d2] = o.e_;
    return MobiusMap(field_, k.mul(a, a2) ^ k.mul(b, c2), k.mul(a, b2) ^ k.mul(b, d2), k.mul(c, a2) ^ k.mul(d, c2),
                     k.mul(c, b2) ^ k.mul(d, d2));
}

MobiusMap MobiusMap::inverse() const
{
    // Adjugate; signs vanish in characteristic 2.
    return MobiusMap(field_, e_[3], e_[1], e_[2], e_[0]);
}

bool MobiusMap::permutes_branch_points() const
{
    const BinaryField& k = *field_;
    const std::vector<ProjectivePoint1> branch{{0, 1}, {1, 1}, {1, 0}};
    for (const auto& p : branch) {
        if (std::find(branch.begin(), branch.end(), apply(k, p)) == branch.end())
            return false;
    }
    return true;
}

std::pair<Poly, Poly> MobiusMap::numerator_denominator(const BinaryField& target) const
{
    FieldEmbedding e = embed(field_, BinaryField::standard(target.degree()));
    return {Poly(target, {e.apply(e_[1]), e.apply(e_[0])}), Poly(target, {e.apply(e_[3]), e.apply(e_[2])})};
}

bool MobiusMap::operator==(const MobiusMap& o) const
{
    return field_->same_as(*o.field_) && e_ == o.e_;
}

std::string MobiusMap::to_string() const
{
    return to_hex(e_[0]) + "," + to_hex(e_[1]) + "," + to_hex(e_[2]) + "," + to_hex(e_[3]);
}

std::string MobiusMap::name() const
{
    static const std::map<std::array<bits_t, 4>, std::string> names{
        {{1, 0, 0, 1}, "x"},       {{1, 1, 0, 1}, "x+1"},     {{0, 1, 1, 0}, "1/x"},
        {{0, 1, 1, 1}, "1/(x+1)"}, {{1, 0, 1, 1}, "x/(x+1)"}, {{1, 1, 1, 0}, "(x+1)/x"},
    };
    auto it = names.find(e_);
    return it == names.end() ? "(" + to_string() + ")" : it->second;
}

// ---------------------------------------------------------------------------
// CurveAutomorphism

namespace {

// sum p_i P^i Q^(n-i)
Poly homogenized(const Poly& p, const Poly& P, const Poly& Q, int n)
{
    Poly acc(P.field());
    for (int i = 0; i <= p.degree(); ++i)
        acc += Poly::constant(P.field(), p.coeff(i)) * P.pow(i) * Q.pow(n - i);
    return acc;
}

void normalize(Poly& a, Poly& b, Poly& c)
{
    if (c.is_zero())
        throw InternalError("automorphism with zero denominator");
    Poly g = gcd(gcd(a, b), c);
    if (g.degree() > 0) {
        a = a / g;
        b = b / g;
        c = c / g;
    }
    const bits_t li = c.field().inv(c.leading());
    a = a.scaled(li);
    b = b.scaled(li);
    c = c.scaled(li);
}

std::strong_ordering coefficient_order(const CurveAutomorphism& x, const CurveAutomorphism& y)
{
    if (auto r = x.a() <=> y.a(); r != 0)
        return r;
    if (auto r = x.b() <=> y.b(); r != 0)
        return r;
    return x.c() <=> y.c();
}

}  // namespace

CurveAutomorphism::CurveAutomorphism(Curve curve, MobiusMap m, Poly a, Poly b, Poly c)
    : curve_(std::move(curve)), m_(std::move(m)), a_(std::move(a)), b_(std::move(b)), c_(std::move(c))
{
    if (!m_.field().same_as(curve_.base()))
        throw PreconditionError("automorphism must be defined over the curve base");
    normalize(a_, b_, c_);
}

CurveAutomorphism CurveAutomorphism::compose(const CurveAutomorphism& o) const
{
    if (!curve_.same_model(o.curve_))
        throw PreconditionError("composing automorphisms of different curves");
    const BinaryField& k = curve_.base();
    // y' = (a1 y + b1)/c1, x' = P1/Q1; y'' = (A2 y' + B2)/C2 with the
    // common Q1^5 of the homogenized A2, B2, C2 cancelling.
    auto [P1, Q1] = o.m_.numerator_denominator(k);
    const Poly A2 = homogenized(a_, P1, Q1, 5), B2 = homogenized(b_, P1, Q1, 5), C2 = homogenized(c_, P1, Q1, 5);
    Poly a = A2 * o.a_;
    Poly b = A2 * o.b_ + B2 * o.c_;
    Poly c = C2 * o.c_;
    return CurveAutomorphism(curve_, m_.compose(o.m_), std::move(a), std::move(b), std::move(c));
}

CurveAutomorphism CurveAutomorphism::pow(int k) const
{
    if (k < 0)
        throw PreconditionError("negative automorphism power");
    const BinaryField& f = curve_.base();
    CurveAutomorphism r(curve_, MobiusMap::identity(curve_.base_ref()), Poly::constant(f, 1), Poly(f),
                        Poly::constant(f, 1));
    for (int i = 0; i < k; ++i)
        r = compose(r);
    return r;
}

bool CurveAutomorphism::preserves_equation() const
{
    const BinaryField& k = curve_.base();
    ModelRef model = curve_.model();
    auto [P, Q] = m_.numerator_denominator(k);
    const Poly H2 = homogenized(model->h, P, Q, 2), F5 = homogenized(model->f, P, Q, 5);
    const Poly Q3 = Q.pow(3), Q5 = Q.pow(5);
    // (a y + b)^2 + h(x') c (a y + b) + f(x') c^2 reduced by y^2 = h y + f, times Q^5.
    const Poly y_coeff = Q5 * a_ * a_ * model->h + Q3 * H2 * c_ * a_;
    const Poly constant = Q5 * (a_ * a_ * model->f + b_ * b_) + Q3 * H2 * c_ * b_ + F5 * c_ * c_;
    return !a_.is_zero() && y_coeff.is_zero() && constant.is_zero();
}

CurveAutomorphism CurveAutomorphism::frobenius_twist() const
{
    const BinaryField& k = curve_.base();
    MobiusMap m(curve_.base_ref(), k.square(m_.alpha()), k.square(m_.beta()), k.square(m_.gamma()),
                k.square(m_.delta()));
    CurveAutomorphism r(curve_.twisted(1), m, a_.frobenius(1), b_.frobenius(1), c_.frobenius(1));
    r.iota_flag_ = iota_flag_;
    return r;
}

bool CurveAutomorphism::operator==(const CurveAutomorphism& o) const
{
    return curve_.same_model(o.curve_) && m_ == o.m_ && a_ == o.a_ && b_ == o.b_ && c_ == o.c_;
}

std::string CurveAutomorphism::to_string() const
{
    return "m=" + m_.to_string() + ";a=" + a_.to_hex() + ";b=" + b_.to_hex() + ";c=" + c_.to_hex();
}

// ---------------------------------------------------------------------------
// Lifting

namespace {

BitVector poly_bits(const Poly& p, int max_degree, int k)
{
    BitVector v((max_degree + 1) * k);
    for (int i = 0; i <= p.degree(); ++i) {
        if (i > max_degree)
            throw InternalError("lift system: polynomial degree exceeds the bound");
        for (int j = 0; j < k; ++j)
            v.set(i * k + j, (p.coeff(i) >> j) & 1);
    }
    return v;
}

Poly bits_poly(const BinaryField& f, const BitVector& v, int terms)
{
    const int k = f.degree();
    std::vector<bits_t> c(terms, 0);
    for (int i = 0; i < terms; ++i)
        for (int j = 0; j < k; ++j)
            c[i] |= static_cast<bits_t>(v.get(i * k + j)) << j;
    return Poly(f, c);
}

// Monic polynomials of degree <= d over f, by degree then coefficients.
std::vector<Poly> monic_up_to(const BinaryField& f, int d)
{
    std::vector<Poly> out;
    for (int deg = 0; deg <= d; ++deg) {
        std::uint64_t count = 1;
        for (int i = 0; i < deg; ++i)
            count *= f.size();
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            std::vector<bits_t> c(deg + 1, 0);
            std::uint64_t r = idx;
            for (int i = 0; i < deg; ++i) {
                c[i] = static_cast<bits_t>(r % f.size());
                r /= f.size();
            }
            c[deg] = 1;
            out.emplace_back(f, c);
        }
    }
    return out;
}

// Solutions b (deg <= 5) of Q^5 b^2 + Q^3 H2 c b = Q^5 a^2 f + F5 c^2.
std::vector<Poly> solve_lift_b(const BinaryField& k, const CurveModel& model, const Poly& P, const Poly& Q,
                               const Poly& a, const Poly& c)
{
    const Poly H2 = homogenized(model.h, P, Q, 2), F5 = homogenized(model.f, P, Q, 5);
    const Poly Q3 = Q.pow(3), Q5 = Q.pow(5);
    const Poly lin = Q3 * H2 * c;
    const Poly rhs = Q5 * a * a * model.f + F5 * c * c;
    constexpr int kBDegree = 5;
    const int bound = std::max({rhs.degree(), Q5.degree() + 2 * kBDegree, lin.degree() + kBDegree, 0});
    const int d = k.degree();
    std::vector<BitVector> cols;
    for (int i = 0; i <= kBDegree; ++i)
        for (int j = 0; j < d; ++j) {
            Poly b = Poly::monomial(k, 1u << j, i);
            cols.push_back(poly_bits(Q5 * b * b + lin * b, bound, d));
        }
    auto sol = solve_gf2(cols, poly_bits(rhs, bound, d));
    if (!sol)
        return {};
    std::vector<Poly> out;
    const std::size_t n = sol->kernel.size();
    if (n > 4)
        throw InternalError("lift system has an unexpectedly large kernel");
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        BitVector v = sol->particular;
        for (std::size_t i = 0; i < n; ++i) {
            if ((mask >> i) & 1)
                v ^= sol->kernel[i];
        }
        out.push_back(bits_poly(k, v, kBDegree + 1));
    }
    return out;
}

std::optional<std::vector<CurveAutomorphism>> lifts_over(const Curve& curve, const MobiusMap& m)
{
    const BinaryField& k = curve.base();
    ModelRef model = curve.model();
    auto [P, Q] = m.numerator_denominator(k);
    // a/c = h(m(x)) / h(x) = H2 / (Q^2 h)
    const Poly H2 = homogenized(model->h, P, Q, 2);
    const Poly den = Q * Q * model->h;
    const Poly g0 = gcd(H2, den);
    Poly a1 = H2 / g0, c1 = den / g0;
    const bits_t li = k.inv(c1.leading());
    a1 = a1.scaled(li);
    c1 = c1.scaled(li);
    if (c1.degree() > 3 || a1.degree() > 2)
        return std::nullopt;
    const int room = std::min(3 - c1.degree(), 2 - a1.degree());
    for (const Poly& g : monic_up_to(k, room)) {
        const Poly a = g * a1, c = g * c1;
        auto bs = solve_lift_b(k, *model, P, Q, a, c);
        if (bs.empty())
            continue;
        std::vector<CurveAutomorphism> out;
        for (const Poly& b : bs) {
            CurveAutomorphism cand(curve, m, a, b, c);
            if (!cand.preserves_equation())
                throw InternalError("lift solution fails the equation check");
            if (std::find(out.begin(), out.end(), cand) == out.end())
                out.push_back(cand);
        }
        return out;
    }
    return std::nullopt;
}

}  // namespace

CurveAutomorphism hyperelliptic_automorphism(const Curve& c)
{
    const BinaryField& k = c.base();
    CurveAutomorphism r(c, MobiusMap::identity(c.base_ref()), Poly::constant(k, 1), c.model()->h,
                        Poly::constant(k, 1));
    r.set_composed_with_iota(true);
    return r;
}

std::pair<CurveAutomorphism, CurveAutomorphism> lift_automorphism(const Curve& c, const MobiusMap& m)
{
    if (!m.field().same_as(c.base()))
        throw PreconditionError("Mobius map must be over the curve base");
    if (!m.permutes_branch_points())
        throw PreconditionError("Mobius map " + m.to_string() + " does not permute {0, 1, infinity}");
    auto lifts = lifts_over(c, m);
    if (!lifts) {
        int minimal = 0;
        if (2 * c.base().degree() <= kMaxFieldDegree) {
            FieldRef ext = c.extension(2);
            FieldEmbedding e = embed(c.base_ref(), ext);
            Curve over_ext(ext, e.apply(c.effective_t()), 0);
            MobiusMap me(ext, e.apply(m.alpha()), e.apply(m.beta()), e.apply(m.gamma()), e.apply(m.delta()));
            if (lifts_over(over_ext, me))
                minimal = ext->degree();
        }
        throw LiftNeedsExtension("lift of " + m.name() + " requires field extension" +
                                     (minimal ? " (found over GF(2^" + std::to_string(minimal) + "))" : ""),
                                 minimal);
    }
    std::vector<CurveAutomorphism> all = std::move(*lifts);
    std::sort(all.begin(), all.end(),
              [](const CurveAutomorphism& x, const CurveAutomorphism& y) { return coefficient_order(x, y) < 0; });
    if (all.size() != 2)
        throw InternalError("expected two lifts of " + m.name() + ", found " + std::to_string(all.size()));
    CurveAutomorphism other = all[1];
    if (other != hyperelliptic_automorphism(c).compose(all[0]))
        throw InternalError("the two lifts of " + m.name() + " do not differ by iota");
    other.set_composed_with_iota(true);
    return {all[0], other};
}

// ---------------------------------------------------------------------------
// Action

CurvePoint act_on_point(const CurveAutomorphism& g, const CurvePoint& p)
{
    const Curve& curve = g.curve();
    const BinaryField& k = p.field();
    if (k.degree() % g.field().degree() != 0)
        throw PreconditionError("automorphism field is not a subfield of the point field");
    ModelRef model = curve.over(p.field_ref());
    auto [P, Q] = g.mobius().numerator_denominator(k);
    auto weierstrass_over = [&](bits_t x) {
        if (model->h.eval(x) != 0)
            throw InternalError("Mobius image of a branch point is not a branch point");
        return CurvePoint(p.field_ref(), x, k.sqrt(model->f.eval(x)));
    };
    CurvePoint image = CurvePoint::infinity(p.field_ref());
    if (p.is_infinity()) {
        if (Q.coeff(1) != 0)
            image = weierstrass_over(k.div(P.coeff(1), Q.coeff(1)));
    } else {
        const bits_t qv = Q.eval(p.x());
        if (qv == 0) {
            if (model->h.eval(p.x()) != 0)
                throw InternalError("non-branch point sent to infinity");
        } else {
            const bits_t x1 = k.div(P.eval(p.x()), qv);
            FieldEmbedding e = embed(curve.base_ref(), p.field_ref());
            const Poly a = g.a().map(e), b = g.b().map(e), c = g.c().map(e);
            const bits_t cv = c.eval(p.x());
            if (cv != 0) {
                image = CurvePoint(p.field_ref(), x1, k.div(k.mul(a.eval(p.x()), p.y()) ^ b.eval(p.x()), cv));
            } else {
                auto ys = points_above(*model, x1);
                if (ys.size() != 1)
                    throw InternalError("indeterminate automorphism value at " + p.to_string());
                image = CurvePoint(p.field_ref(), x1, ys[0]);
            }
        }
    }
    if (!on_curve(curve, image))
        throw InternalError("image " + image.to_string() + " is off the curve");
    return image;
}

JacobianClass act_on_class(const CurveAutomorphism& g, const JacobianClass& c)
{
    if (!g.curve().same_model(c.curve()))
        throw PreconditionError("automorphism and class on different curves");
    const FormalDivisor supp = c.support();
    if (supp.empty())
        return c;
    FormalDivisor d;
    for (const auto& [p, m] : supp.terms())
        d.add(act_on_point(g, p), m);
    d.add(act_on_point(g, CurvePoint::infinity(supp.terms().front().first.field_ref())), -supp.degree());
    auto r = class_of(c.curve(), d).descended(c.field_ref());
    if (!r)
        throw InternalError("image class is not defined over " + c.field().name());
    return *r;
}

std::vector<CurvePoint> fixed_points(const CurveAutomorphism& g, const FieldRef& field)
{
    std::vector<CurvePoint> out;
    for (const auto& p : enumerate_points(g.curve(), field)) {
        if (act_on_point(g, p) == p)
            out.push_back(p);
    }
    return out;
}

// ---------------------------------------------------------------------------
// The group

const CurveAutomorphism& AutomorphismGroup::get(const std::string& name) const
{
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name)
            return elements[i];
    }
    throw PreconditionError("no group element named " + name);
}

namespace {

std::string s3_name(const MobiusMap& m)
{
    static const std::map<std::string, std::string> names{
        {"x", "id"},        {"x+1", "tau01"},     {"1/x", "tau0inf"},
        {"x/(x+1)", "tau1inf"}, {"1/(x+1)", "sigma"}, {"(x+1)/x", "sigma^2"},
    };
    return names.at(m.name());
}

}  // namespace

AutomorphismGroup automorphism_group(const Curve& c)
{
    const FieldRef& k = c.base_ref();
    const auto maps = MobiusMap::branch_permutations(k);
    const CurveAutomorphism iota = hyperelliptic_automorphism(c);
    const CurveAutomorphism id = lift_automorphism(c, maps[0]).first;

    // Lifts are chosen on X(0) and carried to X(n) by n Frobenius twists, so
    // that the relative Frobenius intertwines the groups of X(n) and X(n+1).
    const Curve root(k, c.t(), 0);
    const CurveAutomorphism root_id = lift_automorphism(root, maps[0]).first;
    auto pick = [&](const MobiusMap& m, int order) {
        auto [p, alt] = lift_automorphism(root, m);
        if (p.pow(order) == root_id)
            return p;
        if (alt.pow(order) == root_id)
            return alt;
        throw InternalError("no lift of " + m.name() + " has order " + std::to_string(order));
    };
    auto carry = [&](CurveAutomorphism g) {
        const int d = k->degree();
        for (int i = 0; i < ((c.twist() % d) + d) % d; ++i)
            g = g.frobenius_twist();
        return CurveAutomorphism(c, MobiusMap(k, g.mobius().alpha(), g.mobius().beta(), g.mobius().gamma(),
                                               g.mobius().delta()),
                                 g.a(), g.b(), g.c());
    };
    const CurveAutomorphism sigma = carry(pick(maps[3], 3));
    const CurveAutomorphism tau = carry(pick(maps[1], 2));
    const CurveAutomorphism sigma2 = sigma * sigma;
    std::vector<CurveAutomorphism> s3{id, sigma, sigma2, tau, tau * sigma, tau * sigma2};

    AutomorphismGroup g;
    for (const auto& e : s3) {
        g.elements.push_back(e);
        g.names.push_back(s3_name(e.mobius()));
    }
    for (std::size_t i = 0; i < s3.size(); ++i) {
        g.elements.push_back(iota * s3[i]);
        g.names.push_back(i == 0 ? "iota" : "iota*" + g.names[i]);
    }
    // Each lift is one of the two solutions of the lift equations.
    for (const auto& e : g.elements) {
        if (!e.preserves_equation())
            throw InternalError("group element fails the equation check");
        auto [p, q] = lift_automorphism(c, e.mobius());
        if (e != p && e != q)
            throw InternalError("group element is not a lift of its Mobius map");
    }
    const std::size_t n = g.elements.size();
    g.cayley.assign(n, std::vector<int>(n, -1));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const CurveAutomorphism prod = g.elements[i] * g.elements[j];
            for (std::size_t l = 0; l < n; ++l) {
                if (g.elements[l] == prod) {
                    g.cayley[i][j] = static_cast<int>(l);
                    break;
                }
            }
            if (g.cayley[i][j] < 0)
                throw InternalError("the 12 lifts are not closed under composition");
        }
    // Presentation relations.
    if (iota.pow(2) != id)
        throw InternalError("iota is not an involution");
    for (const auto& e : g.elements) {
        if (iota * e != e * iota)
            throw InternalError("iota is not central");
    }
    if (sigma.pow(3) != id || tau.pow(2) != id || tau * sigma * tau != sigma2)
        throw InternalError("S3 relations fail for the chosen lifts");
    if (!is_z2_times_s3(g.cayley))
        throw InternalError("Cayley table is not that of Z/2 x S3");
    return g;
}

bool is_z2_times_s3(const std::vector<std::vector<int>>& t)
{
    const int n = static_cast<int>(t.size());
    if (n != 12)
        return false;
    for (const auto& row : t) {
        if (static_cast<int>(row.size()) != n)
            return false;
        for (int v : row) {
            if (v < 0 || v >= n)
                return false;
        }
    }
    int e = -1;
    for (int i = 0; i < n && e < 0; ++i) {
        bool ok = true;
        for (int j = 0; j < n; ++j)
            ok = ok && t[i][j] == j && t[j][i] == j;
        if (ok)
            e = i;
    }
    if (e < 0)
        return false;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                if (t[t[a][b]][c] != t[a][t[b][c]])
                    return false;
            }
    for (int a = 0; a < n; ++a) {
        bool has_inverse = false;
        for (int b = 0; b < n; ++b)
            has_inverse = has_inverse || t[a][b] == e;
        if (!has_inverse)
            return false;
    }
    int center = 0;
    for (int a = 0; a < n; ++a) {
        bool central = true;
        for (int b = 0; b < n; ++b)
            central = central && t[a][b] == t[b][a];
        center += central;
    }
    std::map<int, int> orders;
    for (int a = 0; a < n; ++a) {
        int k = 1;
        for (int x = a; x != e; x = t[x][a])
            ++k;
        ++orders[k];
    }
    return center == 2 && orders == std::map<int, int>{{1, 1}, {2, 7}, {3, 2}, {6, 2}};
}

}  // namespace vfix

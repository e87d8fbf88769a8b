#include "vfix/series.hpp"

#include <algorithm>

namespace vfix {

Series::Series(const BinaryField& f, int n) : field_(&f)
{
    if (n < 1)
        throw PreconditionError("truncation level must be >= 1");
    c_.assign(n, 0);
}

Series::Series(const BinaryField& f, int n, std::vector<bits_t> coeffs) : Series(f, n)
{
    if (static_cast<int>(coeffs.size()) > n) {
        for (std::size_t i = n; i < coeffs.size(); ++i) {
            if (coeffs[i] != 0)
                throw PreconditionError("series coefficient beyond truncation s^" + std::to_string(n));
        }
        coeffs.resize(n);
    }
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (!f.contains(coeffs[i]))
            throw PreconditionError(to_hex(coeffs[i]) + " is not an element of " + f.name());
        c_[i] = coeffs[i];
    }
}

Series Series::constant(const BinaryField& f, int n, bits_t c)
{
    Series r(f, n);
    r.c_[0] = c;
    return r;
}

Series Series::monomial(const BinaryField& f, int n, bits_t c, int k)
{
    Series r(f, n);
    if (k < n)
        r.c_[k] = c;
    return r;
}

bool Series::is_zero() const
{
    return std::all_of(c_.begin(), c_.end(), [](bits_t a) { return a == 0; });
}

bool Series::is_one() const
{
    if (c_[0] != 1)
        return false;
    return std::all_of(c_.begin() + 1, c_.end(), [](bits_t a) { return a == 0; });
}

int Series::valuation() const
{
    for (int i = 0; i < truncation(); ++i) {
        if (c_[i] != 0)
            return i;
    }
    return truncation();
}

void Series::check_compatible(const Series& o) const
{
    if (!field_->same_as(*o.field_))
        throw PreconditionError("series over different fields: " + field_->name() + " vs " + o.field_->name());
    if (c_.size() != o.c_.size())
        throw PreconditionError("series with different truncation levels");
}

Series Series::operator+(const Series& o) const
{
    check_compatible(o);
    Series r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i)
        r.c_[i] ^= o.c_[i];
    return r;
}

Series Series::operator*(const Series& o) const
{
    check_compatible(o);
    const int n = truncation();
    Series r(*field_, n);
    for (int i = 0; i < n; ++i) {
        if (c_[i] == 0)
            continue;
        for (int j = 0; i + j < n; ++j)
            r.c_[i + j] ^= field_->mul(c_[i], o.c_[j]);
    }
    return r;
}

Series Series::scaled(bits_t c) const
{
    Series r = *this;
    for (auto& a : r.c_)
        a = field_->mul(a, c);
    return r;
}

Series Series::inverse() const
{
    if (!is_unit())
        throw PreconditionError("series " + to_string() + " is not a unit");
    const int n = truncation();
    Series r(*field_, n);
    const bits_t c0i = field_->inv(c_[0]);
    r.c_[0] = c0i;
    for (int k = 1; k < n; ++k) {
        bits_t acc = 0;
        for (int j = 1; j <= k; ++j)
            acc ^= field_->mul(c_[j], r.c_[k - j]);
        r.c_[k] = field_->mul(acc, c0i);
    }
    return r;
}

Series Series::pow(std::uint64_t e) const
{
    Series r = one(*field_, truncation());
    Series b = *this;
    while (e) {
        if (e & 1)
            r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

Series Series::twist(int k) const
{
    Series r = *this;
    for (auto& a : r.c_)
        a = field_->frobenius(a, k);
    return r;
}

Series Series::truncated(int m) const
{
    if (m < 1 || m > truncation())
        throw PreconditionError("cannot truncate to level " + std::to_string(m));
    return Series(*field_, m, std::vector<bits_t>(c_.begin(), c_.begin() + m));
}

Series Series::map(const FieldEmbedding& e) const
{
    Series r(e.target(), truncation());
    for (std::size_t i = 0; i < c_.size(); ++i)
        r.c_[i] = e.apply(FieldElement(*field_, c_[i])).bits();
    return r;
}

std::optional<Series> Series::descend(const FieldEmbedding& e) const
{
    if (!e.target().same_as(*field_))
        throw PreconditionError("embedding target does not match series field");
    Series r(e.source(), truncation());
    for (std::size_t i = 0; i < c_.size(); ++i) {
        auto p = e.preimage(c_[i]);
        if (!p)
            return std::nullopt;
        r.c_[i] = *p;
    }
    return r;
}

std::string Series::to_string() const
{
    std::string out;
    for (int i = 0; i < truncation(); ++i) {
        if (c_[i] == 0)
            continue;
        if (!out.empty())
            out += " + ";
        std::string term = to_hex(c_[i]);
        if (i == 1)
            term += "*s";
        else if (i > 1)
            term += "*s^" + std::to_string(i);
        out += term;
    }
    return out.empty() ? "0" : out;
}

}  // namespace vfix

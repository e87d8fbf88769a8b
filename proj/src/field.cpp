#include "vfix/field.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <numeric>
#include <sstream>

namespace vfix {

namespace {

constexpr std::string_view kShippedTable =
#include "binary_moduli.inc"
    ;

std::vector<std::uint32_t> prime_factors(std::uint32_t n)
{
    std::vector<std::uint32_t> out;
    for (std::uint32_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0)
                n /= p;
        }
    }
    if (n > 1)
        out.push_back(n);
    return out;
}

}  // namespace

ReducibleModulus::ReducibleModulus(bits_t modulus, bits_t factor)
    : PreconditionError("modulus " + to_hex(modulus) + " is reducible: divisible by " + to_hex(factor)),
      modulus_(modulus),
      factor_(factor)
{
}

namespace gf2x {

int degree(std::uint64_t p)
{
    if (p == 0)
        return -1;
    return 63 - __builtin_clzll(p);
}

std::uint64_t mul(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t r = 0;
    while (b) {
        if (b & 1)
            r ^= a;
        b >>= 1;
        a <<= 1;
    }
    return r;
}

std::uint64_t mod(std::uint64_t a, std::uint64_t m)
{
    const int dm = degree(m);
    for (int da = degree(a); da >= dm; da = degree(a))
        a ^= m << (da - dm);
    return a;
}

std::optional<bits_t> smallest_factor(bits_t p)
{
    const int d = degree(p);
    for (bits_t f = 2; degree(f) <= d / 2; ++f) {
        if (mod(p, f) == 0)
            return f;
    }
    return std::nullopt;
}

}  // namespace gf2x

BinaryField::BinaryField(int degree, bits_t modulus) : degree_(degree), modulus_(modulus)
{
    if (degree < 1 || degree > kMaxFieldDegree)
        throw PreconditionError("field degree must be in 1..16, got " + std::to_string(degree));
    if (gf2x::degree(modulus) != degree)
        throw PreconditionError("modulus " + to_hex(modulus) + " does not have degree " + std::to_string(degree));
    if (auto f = gf2x::smallest_factor(modulus))
        throw ReducibleModulus(modulus, *f);

    const std::uint32_t n = size() - 1;
    auto slow_mul = [&](bits_t a, bits_t b) { return static_cast<bits_t>(gf2x::mod(gf2x::mul(a, b), modulus_)); };
    auto slow_pow = [&](bits_t a, std::uint32_t e) {
        bits_t r = 1;
        while (e) {
            if (e & 1)
                r = slow_mul(r, a);
            a = slow_mul(a, a);
            e >>= 1;
        }
        return r;
    };
    const auto factors = prime_factors(n);
    primitive_ = 0;
    for (bits_t g = 1; g <= n; ++g) {
        bool ok = true;
        for (auto p : factors)
            ok = ok && slow_pow(g, n / p) != 1;
        if (ok) {
            primitive_ = g;
            break;
        }
    }
    if (primitive_ == 0)
        throw InternalError("no primitive element found in " + name());

    log_.assign(size(), 0);
    exp_.assign(2 * static_cast<std::size_t>(n) + 1, 0);
    bits_t v = 1;
    for (std::uint32_t i = 0; i < 2 * n + 1; ++i) {
        exp_[i] = v;
        if (i < n)
            log_[v] = i;
        v = slow_mul(v, primitive_);
    }

    as_root_.assign(size(), kNoRoot);
    for (bits_t z = 0; z < size(); ++z) {
        bits_t d = mul(z, z) ^ z;
        if (as_root_[d] == kNoRoot)
            as_root_[d] = z;
    }
}

FieldRef BinaryField::create(int degree, bits_t modulus)
{
    return std::make_shared<const BinaryField>(degree, modulus);
}

FieldRef BinaryField::standard(int degree)
{
    static const std::array<FieldRef, kMaxFieldDegree + 1> table = [] {
        std::array<FieldRef, kMaxFieldDegree + 1> t{};
        for (auto [d, m] : parse_modulus_table(kShippedTable))
            t[d] = create(d, m);
        return t;
    }();
    if (degree < 1 || degree > kMaxFieldDegree)
        throw FieldCapExceeded("no field of degree " + std::to_string(degree) + " (cap is 16)");
    if (!table[degree])
        throw InternalError("shipped modulus table lacks degree " + std::to_string(degree));
    return table[degree];
}

bits_t BinaryField::inv(bits_t a) const
{
    if (a == 0)
        throw PreconditionError("inverse of zero in " + name());
    const std::uint32_t n = size() - 1;
    return exp_[(n - log_[a]) % n];
}

bits_t BinaryField::pow(bits_t a, std::uint64_t e) const
{
    if (e == 0)
        return 1;
    if (a == 0)
        return 0;
    const std::uint64_t n = size() - 1;
    return exp_[(static_cast<std::uint64_t>(log_[a]) * (e % n)) % n];
}

bits_t BinaryField::sqrt(bits_t a) const
{
    if (a == 0)
        return 0;
    const std::uint64_t n = size() - 1;
    // 2^{-1} mod n is (n + 1) / 2 since n is odd.
    return exp_[(static_cast<std::uint64_t>(log_[a]) * ((n + 1) / 2)) % n];
}

bits_t BinaryField::frobenius(bits_t a, int k) const
{
    k %= degree_;
    if (k < 0)
        k += degree_;
    for (int i = 0; i < k; ++i)
        a = square(a);
    return a;
}

bits_t BinaryField::trace(bits_t a, int sub_degree) const
{
    if (sub_degree < 1 || degree_ % sub_degree != 0)
        throw PreconditionError("trace target degree " + std::to_string(sub_degree) + " does not divide " +
                                std::to_string(degree_));
    bits_t t = 0;
    for (int i = 0; i < degree_ / sub_degree; ++i) {
        t ^= a;
        a = frobenius(a, sub_degree);
    }
    return t;
}

std::uint32_t BinaryField::multiplicative_order(bits_t a) const
{
    if (a == 0)
        throw PreconditionError("order of zero");
    const std::uint32_t n = size() - 1;
    return n / std::gcd(n, log_[a]);
}

std::string BinaryField::name() const
{
    return "GF(2^" + std::to_string(degree_) + ")[" + to_hex(modulus_) + "]";
}

FieldElement::FieldElement(const BinaryField& f, bits_t bits) : field_(&f), bits_(bits)
{
    if (!f.contains(bits))
        throw PreconditionError(vfix::to_hex(bits) + " is not an element of " + f.name());
}

void FieldElement::check_same_field(const FieldElement& o) const
{
    if (!field_->same_as(*o.field_))
        throw PreconditionError("mixed-field arithmetic: " + field_->name() + " vs " + o.field_->name() +
                                " (use an explicit FieldEmbedding)");
}

FieldElement FieldElement::operator+(const FieldElement& o) const
{
    check_same_field(o);
    return {*field_, bits_ ^ o.bits_};
}

FieldElement FieldElement::operator*(const FieldElement& o) const
{
    check_same_field(o);
    return {*field_, field_->mul(bits_, o.bits_)};
}

FieldElement FieldElement::operator/(const FieldElement& o) const
{
    check_same_field(o);
    return {*field_, field_->div(bits_, o.bits_)};
}

FieldElement FieldElement::inverse() const { return {*field_, field_->inv(bits_)}; }

std::string FieldElement::to_hex() const { return vfix::to_hex(bits_); }

FieldEmbedding::FieldEmbedding(FieldRef source, FieldRef target, bits_t image_of_generator)
    : source_(std::move(source)), target_(std::move(target)), image_(image_of_generator)
{
    if (target_->degree() % source_->degree() != 0)
        throw PreconditionError("cannot embed " + source_->name() + " into " + target_->name());
    bits_t p = 1;
    for (int i = 0; i < source_->degree(); ++i) {
        basis_images_.push_back(p);
        p = target_->mul(p, image_);
    }
    // Check that the generator image is a root of the source modulus.
    if (p != apply(source_->modulus() ^ (1u << source_->degree())))
        throw PreconditionError(to_hex(image_) + " is not a root of " + to_hex(source_->modulus()) + " in " +
                                target_->name());

    for (int i = 0; i < source_->degree(); ++i) {
        bits_t row = basis_images_[i];
        bits_t combo = 1u << i;
        for (auto& [r, c] : echelon_) {
            if (row & (r & -r)) {
                row ^= r;
                combo ^= c;
            }
        }
        if (row == 0)
            throw InternalError("embedding is not injective");
        const bits_t pivot = row & -row;
        for (auto& [r, c] : echelon_) {
            if (r & pivot) {
                r ^= row;
                c ^= combo;
            }
        }
        echelon_.emplace_back(row, combo);
    }
}

bits_t FieldEmbedding::apply(bits_t a) const
{
    bits_t r = 0;
    for (std::size_t i = 0; a; ++i, a >>= 1) {
        if (a & 1)
            r ^= basis_images_[i];
    }
    return r;
}

FieldElement FieldEmbedding::apply(const FieldElement& a) const
{
    if (!a.field().same_as(*source_))
        throw PreconditionError("element of " + a.field().name() + " passed to embedding from " + source_->name());
    return {*target_, apply(a.bits())};
}

std::optional<bits_t> FieldEmbedding::preimage(bits_t b) const
{
    bits_t combo = 0;
    for (const auto& [r, c] : echelon_) {
        if (b & (r & -r)) {
            b ^= r;
            combo ^= c;
        }
    }
    if (b != 0)
        return std::nullopt;
    return combo;
}

std::optional<FieldElement> FieldEmbedding::preimage(const FieldElement& b) const
{
    if (!b.field().same_as(*target_))
        throw PreconditionError("element of " + b.field().name() + " passed to preimage in " + target_->name());
    auto r = preimage(b.bits());
    if (!r)
        return std::nullopt;
    return FieldElement(*source_, *r);
}

FieldEmbedding embed(const FieldRef& source, const FieldRef& target)
{
    const int e = source->degree();
    const int d = target->degree();
    if (d % e != 0)
        throw PreconditionError("degree " + std::to_string(e) + " does not divide " + std::to_string(d));
    if (source->same_as(*target))
        return FieldEmbedding(source, target, source->x());

    auto is_root = [&](bits_t z) {
        bits_t acc = 0;
        for (int i = gf2x::degree(source->modulus()); i >= 0; --i) {
            acc = target->mul(acc, z);
            if ((source->modulus() >> i) & 1)
                acc ^= 1;
        }
        return acc == 0;
    };
    const std::uint64_t exponent = ((1ull << d) - 1) / ((1ull << e) - 1);
    const bits_t compatible = target->pow(target->x(), exponent);
    if (is_root(compatible))
        return FieldEmbedding(source, target, compatible);
    for (bits_t z = 0; z < target->size(); ++z) {
        if (is_root(z))
            return FieldEmbedding(source, target, z);
    }
    throw InternalError("no root of " + to_hex(source->modulus()) + " in " + target->name());
}

std::map<int, bits_t> parse_modulus_table(std::string_view text)
{
    std::map<int, bits_t> out;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw PreconditionError("modulus table line " + std::to_string(lineno) + ": expected \"d,0xHEX\"");
        const int d = std::stoi(line.substr(0, comma));
        const bits_t m = parse_hex(line.substr(comma + 1));
        if (d < 1 || d > kMaxFieldDegree || gf2x::degree(m) != d)
            throw PreconditionError("modulus table line " + std::to_string(lineno) + ": bad entry");
        if (auto f = gf2x::smallest_factor(m))
            throw ReducibleModulus(m, *f);
        out[d] = m;
    }
    return out;
}

std::map<int, bits_t> load_modulus_table(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw PreconditionError("cannot open modulus table " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_modulus_table(buf.str());
}

std::string_view shipped_modulus_table() { return kShippedTable; }

FieldRef build_field(int degree, std::optional<bits_t> modulus)
{
    if (!modulus)
        return BinaryField::standard(degree);
    auto shipped = BinaryField::standard(std::clamp(degree, 1, kMaxFieldDegree));
    if (shipped->degree() == degree && shipped->modulus() == *modulus)
        return shipped;
    return BinaryField::create(degree, *modulus);
}

std::string to_hex(bits_t v)
{
    std::ostringstream s;
    s << "0x" << std::hex << std::uppercase << v;
    return s.str();
}

bits_t parse_hex(std::string_view s)
{
    std::string t(s);
    auto b = t.find_first_not_of(" \t\r");
    auto e = t.find_last_not_of(" \t\r");
    if (b == std::string::npos)
        throw PreconditionError("empty hex value");
    t = t.substr(b, e - b + 1);
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
        v = std::stoul(t, &pos, 16);
    } catch (const std::exception&) {
        throw PreconditionError("bad hex value \"" + t + "\"");
    }
    if (pos != t.size())
        throw PreconditionError("bad hex value \"" + t + "\"");
    return static_cast<bits_t>(v);
}

}  // namespace vfix

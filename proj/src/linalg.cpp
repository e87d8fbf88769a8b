#include "vfix/linalg.hpp"

#include <algorithm>

namespace vfix {

bool BitVector::is_zero() const
{
    return std::all_of(w_.begin(), w_.end(), [](std::uint64_t x) { return x == 0; });
}

int BitVector::lowest_set() const
{
    for (std::size_t k = 0; k < w_.size(); ++k) {
        if (w_[k])
            return static_cast<int>(k * 64) + __builtin_ctzll(w_[k]);
    }
    return -1;
}

std::optional<Gf2Solution> solve_gf2(const std::vector<BitVector>& columns, const BitVector& rhs)
{
    const int n = static_cast<int>(columns.size());
    // Eliminate on columns: each reduced column remembers which unknowns it combines.
    struct Row {
        BitVector image;
        BitVector combo;
        int pivot;
    };
    std::vector<Row> basis;
    std::vector<BitVector> kernel;
    for (int j = 0; j < n; ++j) {
        BitVector img = columns[j];
        BitVector combo(n);
        combo.set(j);
        for (const auto& r : basis) {
            if (img.get(r.pivot)) {
                img ^= r.image;
                combo ^= r.combo;
            }
        }
        const int p = img.lowest_set();
        if (p < 0) {
            kernel.push_back(std::move(combo));
            continue;
        }
        for (auto& r : basis) {
            if (r.image.get(p)) {
                r.image ^= img;
                r.combo ^= combo;
            }
        }
        basis.push_back({std::move(img), std::move(combo), p});
    }
    BitVector rest = rhs;
    BitVector x(n);
    for (const auto& r : basis) {
        if (rest.get(r.pivot)) {
            rest ^= r.image;
            x ^= r.combo;
        }
    }
    if (!rest.is_zero())
        return std::nullopt;
    return Gf2Solution{std::move(x), std::move(kernel)};
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<int> rref(const BinaryField& f, int rows, int cols, std::vector<bits_t>& a)
{
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i) {
            if (a[static_cast<std::size_t>(i) * cols + c] != 0) {
                piv = i;
                break;
            }
        }
        if (piv < 0)
            continue;
        for (int j = 0; j < cols; ++j)
            std::swap(a[static_cast<std::size_t>(piv) * cols + j], a[static_cast<std::size_t>(r) * cols + j]);
        const bits_t inv = f.inv(a[static_cast<std::size_t>(r) * cols + c]);
        for (int j = 0; j < cols; ++j)
            a[static_cast<std::size_t>(r) * cols + j] = f.mul(a[static_cast<std::size_t>(r) * cols + j], inv);
        for (int i = 0; i < rows; ++i) {
            const bits_t m = a[static_cast<std::size_t>(i) * cols + c];
            if (i == r || m == 0)
                continue;
            for (int j = 0; j < cols; ++j)
                a[static_cast<std::size_t>(i) * cols + j] ^= f.mul(m, a[static_cast<std::size_t>(r) * cols + j]);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

std::vector<std::vector<bits_t>> nullspace(const BinaryField& f, int rows, int cols, std::vector<bits_t> a)
{
    if (static_cast<std::size_t>(rows) * cols != a.size())
        throw PreconditionError("nullspace: entry count does not match shape");
    const auto pivots = rref(f, rows, cols, a);
    std::vector<std::vector<bits_t>> out;
    for (int free = 0; free < cols; ++free) {
        if (std::find(pivots.begin(), pivots.end(), free) != pivots.end())
            continue;
        std::vector<bits_t> v(cols, 0);
        v[free] = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k)
            v[pivots[k]] = a[k * cols + free];  // char 2: -x = x
        out.push_back(std::move(v));
    }
    return out;
}

int rank(const BinaryField& f, int rows, int cols, std::vector<bits_t> a)
{
    return static_cast<int>(rref(f, rows, cols, a).size());
}

}  // namespace vfix

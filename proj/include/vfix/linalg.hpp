#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "vfix/field.hpp"

namespace vfix {

// Dense GF(2) vector packed into 64-bit words.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(int size) : size_(size), w_((size + 63) / 64, 0) {}

    int size() const { return size_; }
    bool get(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(int i, bool v = true)
    {
        if (v)
            w_[i >> 6] |= std::uint64_t{1} << (i & 63);
        else
            w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }
    void flip(int i) { w_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
    BitVector& operator^=(const BitVector& o)
    {
        for (std::size_t k = 0; k < w_.size(); ++k)
            w_[k] ^= o.w_[k];
        return *this;
    }
    bool is_zero() const;
    int lowest_set() const;
    bool operator==(const BitVector& o) const { return size_ == o.size_ && w_ == o.w_; }

private:
    int size_ = 0;
    std::vector<std::uint64_t> w_;
};

// Solution set of a GF(2)-linear system A x = b: particular solution plus a
// kernel basis, or no solution.
struct Gf2Solution {
    BitVector particular;
    std::vector<BitVector> kernel;
};

// columns[j] is the image of the j-th unknown (a vector of length `equations`).
std::optional<Gf2Solution> solve_gf2(const std::vector<BitVector>& columns, const BitVector& rhs);

// Basis of {v : M v = 0} for an m x n matrix over a binary field, row-major
// entries.  Deterministic: reduced row echelon form, one vector per free column.
std::vector<std::vector<bits_t>> nullspace(const BinaryField& f, int rows, int cols, std::vector<bits_t> entries);

// Rank of a matrix over a binary field.
int rank(const BinaryField& f, int rows, int cols, std::vector<bits_t> entries);

}  // namespace vfix

#pragma once

// Dense linear algebra over F_p for mod-p cohomology, Bockstein complexes
// and Cartier maps.

#include <cstdint>
#include <optional>
#include <vector>

#include "drwlab/padic.hpp"

namespace drwlab {

class FpMatrix {
public:
    FpMatrix() = default;
    FpMatrix(long p, std::size_t rows, std::size_t cols) : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    static FpMatrix identity(long p, std::size_t n);
    /// Reduction of an integral matrix; InvalidArgument if an entry is not in Z_p.
    static FpMatrix reduce(const PMatrix& m);

    long p() const { return p_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    long& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    long operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<long> column(std::size_t j) const;
    FpMatrix hcat(const FpMatrix& right) const;

    friend FpMatrix operator*(const FpMatrix& a, const FpMatrix& b);
    friend FpMatrix operator-(const FpMatrix& a, const FpMatrix& b);
    bool is_zero() const;
    bool operator==(const FpMatrix&) const = default;

    std::size_t rank() const;
    /// Columns form a basis of the right kernel.
    FpMatrix kernel() const;
    /// Some x with A x = y.
    std::optional<std::vector<long>> solve(const std::vector<long>& y) const;

private:
    long p_ = 2;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<long> data_;
};

long mod_p(long x, long p);
long inv_mod_p(long x, long p);
long reduce_rat_mod_p(const Rat& q, long p);

/// Subquotient Z/B of F_p^n with chosen representatives: cycles in the
/// kernel of `outgoing`, boundaries the image of `incoming`.
struct FpHomology {
    long p = 2;
    std::size_t ambient = 0;
    FpMatrix boundaries;       // columns span B
    FpMatrix representatives;  // columns are cycles whose classes form a basis of Z/B

    std::size_t dim() const { return representatives.cols(); }
    /// Coordinates of the class of a cycle z in the representative basis.
    std::vector<long> classify(const std::vector<long>& z) const;
    bool is_cycle(const FpMatrix& outgoing, const std::vector<long>& z) const;
};

FpHomology fp_homology(long p, std::size_t ambient, const FpMatrix& incoming, const FpMatrix& outgoing);

}  // namespace drwlab

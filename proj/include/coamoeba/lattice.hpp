// Exact integer matrix routines: determinants, ranks, adjugates and the
// Smith normal form with unimodular transforms. Entries are small (lattice
// directions of Newton polytopes), so 64-bit storage with 128-bit
// intermediates is sufficient; overflow is detected and reported.
#pragma once

#include <cstddef>
#include <vector>

#include "coamoeba/core.hpp"

namespace coamoeba {

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    static IntMatrix identity(std::size_t n);
    /// Matrix whose j-th column is columns[j].
    static IntMatrix from_columns(const std::vector<IntVec>& columns);
    static IntMatrix from_rows(const std::vector<IntVec>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    Int operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& other) const;
    IntVec operator*(std::span<const Int> v) const;
    bool operator==(const IntMatrix& other) const = default;

    IntVec column(std::size_t j) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> data_;
};

/// Fraction-free (Bareiss) determinant of a square matrix.
Int determinant(const IntMatrix& a);

/// Rank over Q.
std::size_t rank(const IntMatrix& a);

/// Indices of pivot columns of the row echelon form, scanning left to right.
/// The submatrix on these columns has full column rank equal to rank(a).
std::vector<std::size_t> pivot_columns(const IntMatrix& a);

/// adj(A) with A * adj(A) = det(A) * I.
IntMatrix adjugate(const IntMatrix& a);

/// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... and
/// every d_i >= 0.
struct SmithForm {
    IntMatrix u;
    IntMatrix d;
    IntMatrix v;
};

SmithForm smith_normal_form(const IntMatrix& a);

/// Inverse of a unimodular matrix (determinant +-1).
IntMatrix unimodular_inverse(const IntMatrix& a);

}  // namespace coamoeba

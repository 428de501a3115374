#include "coamoeba/lattice.hpp"

#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace coamoeba {

namespace {

using Wide = __int128;

Int narrow(Wide x) {
    if (x > std::numeric_limits<Int>::max() || x < std::numeric_limits<Int>::min())
        throw std::overflow_error("integer overflow in lattice computation");
    return static_cast<Int>(x);
}

Int abs_value(Int x) { return x < 0 ? -x : x; }

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
    if (a == b)
        return;
    for (std::size_t j = 0; j < m.cols(); ++j)
        std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
    if (a == b)
        return;
    for (std::size_t i = 0; i < m.rows(); ++i)
        std::swap(m(i, a), m(i, b));
}

// row_dst += factor * row_src
void add_row(IntMatrix& m, std::size_t dst, std::size_t src, Int factor) {
    for (std::size_t j = 0; j < m.cols(); ++j)
        m(dst, j) = narrow(Wide(m(dst, j)) + Wide(factor) * m(src, j));
}

void add_col(IntMatrix& m, std::size_t dst, std::size_t src, Int factor) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        m(i, dst) = narrow(Wide(m(i, dst)) + Wide(factor) * m(i, src));
}

Int floor_div(Int a, Int b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

// Row echelon form over Z with rows divided by their content; returns pivot
// columns.
std::vector<std::size_t> echelon(IntMatrix m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && m(p, col) == 0)
            ++p;
        if (p == m.rows())
            continue;
        swap_rows(m, row, p);
        for (std::size_t i = row + 1; i < m.rows(); ++i) {
            if (m(i, col) == 0)
                continue;
            const Int a = m(row, col);
            const Int b = m(i, col);
            Int g = 0;
            for (std::size_t j = 0; j < m.cols(); ++j) {
                m(i, j) = narrow(Wide(a) * m(i, j) - Wide(b) * m(row, j));
                g = std::gcd(g, m(i, j));
            }
            if (g > 1)
                for (std::size_t j = 0; j < m.cols(); ++j)
                    m(i, j) /= g;
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVec>& columns) {
    const std::size_t r = columns.empty() ? 0 : columns.front().size();
    IntMatrix m(r, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j)
        for (std::size_t i = 0; i < r; ++i)
            m(i, j) = columns[j][i];
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVec>& rows) {
    return from_columns(rows).transpose();
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
    if (cols_ != other.rows_)
        throw std::invalid_argument("matrix dimension mismatch");
    IntMatrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < other.cols_; ++j) {
            Wide s = 0;
            for (std::size_t k = 0; k < cols_; ++k)
                s += Wide((*this)(i, k)) * other(k, j);
            out(i, j) = narrow(s);
        }
    return out;
}

IntVec IntMatrix::operator*(std::span<const Int> v) const {
    IntVec out(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
        Wide s = 0;
        for (std::size_t k = 0; k < cols_; ++k)
            s += Wide((*this)(i, k)) * v[k];
        out[i] = narrow(s);
    }
    return out;
}

IntVec IntMatrix::column(std::size_t j) const {
    IntVec out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        out[i] = (*this)(i, j);
    return out;
}

Int determinant(const IntMatrix& a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("determinant of non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0)
        return 1;
    IntMatrix m = a;
    Int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0)
                ++p;
            if (p == n)
                return 0;
            swap_rows(m, k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = narrow((Wide(m(i, j)) * m(k, k) - Wide(m(i, k)) * m(k, j)) / prev);
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

std::size_t rank(const IntMatrix& a) { return echelon(a).size(); }

std::vector<std::size_t> pivot_columns(const IntMatrix& a) { return echelon(a); }

IntMatrix adjugate(const IntMatrix& a) {
    const std::size_t n = a.rows();
    if (n != a.cols())
        throw std::invalid_argument("adjugate of non-square matrix");
    IntMatrix adj(n, n);
    if (n == 1) {
        adj(0, 0) = 1;
        return adj;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            IntMatrix minor(n - 1, n - 1);
            for (std::size_t r = 0, mr = 0; r < n; ++r) {
                if (r == i)
                    continue;
                for (std::size_t c = 0, mc = 0; c < n; ++c) {
                    if (c == j)
                        continue;
                    minor(mr, mc++) = a(r, c);
                }
                ++mr;
            }
            const Int cof = determinant(minor);
            adj(j, i) = ((i + j) % 2 == 0) ? cof : -cof;
        }
    return adj;
}

SmithForm smith_normal_form(const IntMatrix& a) {
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    IntMatrix d = a;
    IntMatrix u = IntMatrix::identity(rows);
    IntMatrix v = IntMatrix::identity(cols);

    const std::size_t steps = std::min(rows, cols);
    for (std::size_t t = 0; t < steps; ++t) {
        while (true) {
            // Move the smallest nonzero entry of the trailing block to (t, t).
            std::size_t pi = rows, pj = cols;
            Int best = 0;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (d(i, j) != 0 && (best == 0 || abs_value(d(i, j)) < best)) {
                        best = abs_value(d(i, j));
                        pi = i;
                        pj = j;
                    }
            if (best == 0)
                break;
            swap_rows(d, t, pi);
            swap_rows(u, t, pi);
            swap_cols(d, t, pj);
            swap_cols(v, t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (d(i, t) == 0)
                    continue;
                const Int q = floor_div(d(i, t), d(t, t));
                add_row(d, i, t, -q);
                add_row(u, i, t, -q);
                if (d(i, t) != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (d(t, j) == 0)
                    continue;
                const Int q = floor_div(d(t, j), d(t, t));
                add_col(d, j, t, -q);
                add_col(v, j, t, -q);
                if (d(t, j) != 0)
                    clean = false;
            }
            if (!clean)
                continue;

            // Divisibility: pivot must divide the whole trailing block.
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (d(i, j) % d(t, t) != 0) {
                        add_row(d, t, i, 1);
                        add_row(u, t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides)
                break;
        }
        if (d(t, t) < 0) {
            for (std::size_t j = 0; j < cols; ++j)
                d(t, j) = -d(t, j);
            for (std::size_t j = 0; j < rows; ++j)
                u(t, j) = -u(t, j);
        }
    }
    return {std::move(u), std::move(d), std::move(v)};
}

IntMatrix unimodular_inverse(const IntMatrix& a) {
    const Int det = determinant(a);
    if (det != 1 && det != -1)
        throw std::invalid_argument("matrix is not unimodular");
    IntMatrix adj = adjugate(a);
    if (det == -1)
        for (std::size_t i = 0; i < adj.rows(); ++i)
            for (std::size_t j = 0; j < adj.cols(); ++j)
                adj(i, j) = -adj(i, j);
    return adj;
}

}  // namespace coamoeba

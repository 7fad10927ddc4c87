#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace substantial {

// Row-major dense matrix, sized once at construction.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<double> matvec(const std::vector<double>& x) const {
        if (x.size() != cols_)
            throw std::invalid_argument("matvec: dimension mismatch");
        std::vector<double> y(rows_, 0.0);
        for (std::size_t i = 0; i < rows_; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < cols_; ++j)
                acc += data_[i * cols_ + j] * x[j];
            y[i] = acc;
        }
        return y;
    }

    DenseMatrix matmul(const DenseMatrix& other) const {
        if (cols_ != other.rows_)
            throw std::invalid_argument("matmul: dimension mismatch");
        DenseMatrix out(rows_, other.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const double a = data_[i * cols_ + k];
                if (a == 0.0)
                    continue;
                for (std::size_t j = 0; j < other.cols_; ++j)
                    out(i, j) += a * other(k, j);
            }
        return out;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// Solves A x = b by LU with partial pivoting.  A pivot below
// 1e-14 times the row scale of A is treated as singular.
inline std::vector<double> solve(DenseMatrix a, std::vector<double> b) {
    const std::size_t n = a.rows();
    if (a.cols() != n)
        throw std::invalid_argument("solve: matrix must be square");
    if (b.size() != n)
        throw std::invalid_argument("solve: right-hand side has wrong length");

    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            scale = std::max(scale, std::fabs(a(i, j)));
    const double pivot_floor = 1e-14 * scale;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot_row = col;
        double pivot_mag = std::fabs(a(col, col));
        for (std::size_t i = col + 1; i < n; ++i) {
            if (std::fabs(a(i, col)) > pivot_mag) {
                pivot_mag = std::fabs(a(i, col));
                pivot_row = i;
            }
        }
        if (!(pivot_mag > pivot_floor))
            throw std::runtime_error("solve: matrix is singular to working precision");
        if (pivot_row != col) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a(col, j), a(pivot_row, j));
            std::swap(b[col], b[pivot_row]);
        }
        const double inv_pivot = 1.0 / a(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            const double factor = a(i, col) * inv_pivot;
            if (factor == 0.0)
                continue;
            a(i, col) = 0.0;
            for (std::size_t j = col + 1; j < n; ++j)
                a(i, j) -= factor * a(col, j);
            b[i] -= factor * b[col];
        }
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double acc = b[ii];
        for (std::size_t j = ii + 1; j < n; ++j)
            acc -= a(ii, j) * b[j];
        b[ii] = acc / a(ii, ii);
    }
    return b;
}

// 2-norm condition number via one-sided Jacobi: orthogonalize column pairs
// until every pair's inner product is negligible, then the column norms are
// the singular values.  Returns +inf for a numerically singular matrix.
inline double condition_number_2norm(const DenseMatrix& input) {
    const std::size_t n = input.rows();
    if (input.cols() != n)
        throw std::invalid_argument("condition_number_2norm: matrix must be square");
    if (n == 0)
        throw std::invalid_argument("condition_number_2norm: empty matrix");

    DenseMatrix a = input;
    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0, apq = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    app += a(i, p) * a(i, p);
                    aqq += a(i, q) * a(i, q);
                    apq += a(i, p) * a(i, q);
                }
                if (std::fabs(apq) <= 1e-13 * std::sqrt(app) * std::sqrt(aqq) + 1e-300)
                    continue;
                rotated = true;
                const double zeta = (aqq - app) / (2.0 * apq);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t i = 0; i < n; ++i) {
                    const double vp = a(i, p);
                    const double vq = a(i, q);
                    a(i, p) = c * vp - s * vq;
                    a(i, q) = s * vp + c * vq;
                }
            }
        if (!rotated)
            break;
    }

    double sigma_max = 0.0;
    double sigma_min = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
        double norm_sq = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            norm_sq += a(i, j) * a(i, j);
        const double s = std::sqrt(norm_sq);
        sigma_max = std::max(sigma_max, s);
        sigma_min = std::min(sigma_min, s);
    }
    if (!(sigma_min > sigma_max * 1e-300) || sigma_max == 0.0)
        return std::numeric_limits<double>::infinity();
    return sigma_max / sigma_min;
}

}  // namespace substantial

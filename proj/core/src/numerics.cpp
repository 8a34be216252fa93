#include "mprelay/numerics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "mprelay/errors.hpp"

namespace mprelay {

CMat::CMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument("CMat: dimensions must be positive");
    }
}

CMat CMat::identity(std::size_t n) {
    CMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMat herm(const CMat& a) {
    CMat r(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = std::conj(a(i, j));
    }
    return r;
}

CMat matmul(const CMat& a, const CMat& b) {
    if (a.cols() != b.rows()) {
        std::ostringstream os;
        os << "matmul: inner dimensions differ (" << a.rows() << "x" << a.cols() << " times "
           << b.rows() << "x" << b.cols() << ")";
        throw std::invalid_argument(os.str());
    }
    CMat r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
        }
    }
    return r;
}

CMat gram(const CMat& a) {
    const std::size_t n = a.rows();
    const std::size_t k = a.cols();
    CMat g(k, k);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t p = 0; p < k; ++p) {
            const cplx cp = std::conj(a(i, p));
            for (std::size_t q = p; q < k; ++q) g(p, q) += cp * a(i, q);
        }
    }
    for (std::size_t p = 1; p < k; ++p) {
        for (std::size_t q = 0; q < p; ++q) g(p, q) = std::conj(g(q, p));
    }
    return g;
}

CMat inv_hermitian(const CMat& a) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("inv_hermitian: matrix must be square");
    }
    const std::size_t n = a.rows();
    double max_diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(a(i, i)));
    const double threshold = 1e-12 * max_diag;

    CMat w = a;
    CMat inv = CMat::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot_row = col;
        double best = std::abs(w(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double v = std::abs(w(r, col));
            if (v > best) {
                best = v;
                pivot_row = r;
            }
        }
        if (!(best > threshold)) throw SingularMatrixError(best);
        if (pivot_row != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(w(col, j), w(pivot_row, j));
                std::swap(inv(col, j), inv(pivot_row, j));
            }
        }
        const cplx pivot = w(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            w(col, j) /= pivot;
            inv(col, j) /= pivot;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const cplx f = w(r, col);
            if (f == cplx{}) continue;
            for (std::size_t j = 0; j < n; ++j) {
                w(r, j) -= f * w(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }

    // The exact inverse of a Hermitian matrix is Hermitian; average out the
    // elimination's rounding asymmetry.
    CMat sym(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) sym(i, j) = 0.5 * (inv(i, j) + std::conj(inv(j, i)));
    }
    return sym;
}

cplx trace(const CMat& a) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("trace: matrix must be square");
    }
    cplx t = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

CMat cgauss_matrix(std::size_t rows, std::size_t cols, RandomSource rng) {
    CMat m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.complex_gaussian();
    }
    return m;
}

SingularMatrixError::SingularMatrixError(double pivot_magnitude)
    : std::runtime_error([pivot_magnitude] {
          std::ostringstream os;
          os << "matrix is numerically singular (pivot magnitude " << pivot_magnitude << ")";
          return os.str();
      }()),
      pivot_(pivot_magnitude) {}

}  // namespace mprelay

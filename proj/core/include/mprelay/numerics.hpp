#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "mprelay/random.hpp"

namespace mprelay {

using cplx = std::complex<double>;

// Dense row-major complex matrix. Deliberately minimal: the relaying math
// needs products, conjugate transposes, traces and the inversion of small
// K x K Gram matrices, nothing more.
class CMat {
public:
    CMat(std::size_t rows, std::size_t cols);
    static CMat identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    cplx& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const noexcept {
        return data_[r * cols_ + c];
    }

    const std::vector<cplx>& entries() const noexcept { return data_; }

    bool operator==(const CMat&) const = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<cplx> data_;
};

// Conjugate transpose.
CMat herm(const CMat& a);

// Matrix product; mismatched inner dimensions are rejected.
CMat matmul(const CMat& a, const CMat& b);

// herm(a) * a without materialising the transpose; Hermitian positive
// semidefinite by construction.
CMat gram(const CMat& a);

// Inverse of a Hermitian positive definite matrix by Gauss-Jordan
// elimination with partial pivoting, re-symmetrised afterwards. Throws
// SingularMatrixError when a pivot falls below 1e-12 times the largest
// diagonal entry of the input.
CMat inv_hermitian(const CMat& a);

cplx trace(const CMat& a);

// rows x cols matrix of i.i.d. unit-variance circularly symmetric complex
// Gaussian entries, filled in row-major order. The source is taken by
// value, so a given (seed, stream) always produces the same matrix.
CMat cgauss_matrix(std::size_t rows, std::size_t cols, RandomSource rng);

}  // namespace mprelay

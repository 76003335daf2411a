#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qgcl {

using Complex = std::complex<double>;

// Default tolerance for numerical equality and Loewner comparisons.
inline constexpr double kTolEq = 1e-10;
// Tolerance used when a quantity is expected to match to rounding error.
inline constexpr double kTolExact = 1e-12;

/// Dense row-major complex matrix.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols);
    CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data);

    static CMatrix identity(std::size_t n);
    static CMatrix zero(std::size_t rows, std::size_t cols) { return CMatrix(rows, cols); }
    static CMatrix fromRows(std::initializer_list<std::initializer_list<Complex>> rows);
    static CMatrix columnVector(std::span<const Complex> entries);
    static CMatrix basisVector(std::size_t dim, std::size_t index);
    static CMatrix diagonal(std::span<const Complex> entries);
    // |v><v| for a column vector v.
    static CMatrix projector(const CMatrix& column);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool isSquare() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return data_.empty(); }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<Complex> data() noexcept { return data_; }
    std::span<const Complex> data() const noexcept { return data_; }

    CMatrix adjoint() const;
    CMatrix transpose() const;
    Complex trace() const;
    double frobeniusNorm() const;
    double maxAbs() const;
    CMatrix column(std::size_t c) const;

    CMatrix& operator+=(const CMatrix& other);
    CMatrix& operator-=(const CMatrix& other);
    CMatrix& operator*=(Complex scalar);

    friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
    friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
    friend CMatrix operator*(CMatrix a, Complex s) { return a *= s; }
    friend CMatrix operator*(Complex s, CMatrix a) { return a *= s; }
    friend CMatrix operator*(const CMatrix& a, const CMatrix& b);

    // Exact structural equality; use approxEqual for numerical comparison.
    friend bool operator==(const CMatrix& a, const CMatrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

double maxAbsDiff(const CMatrix& a, const CMatrix& b);
bool approxEqual(const CMatrix& a, const CMatrix& b, double tol = kTolEq);

// Kronecker product; the first argument is the more significant factor.
CMatrix tensor(const CMatrix& a, const CMatrix& b);
CMatrix tensorAll(std::span<const CMatrix> factors);

std::size_t product(std::span<const std::size_t> dims);

// Traces out the factors listed in `traced` (indices into `dims`).
CMatrix partialTrace(const CMatrix& m, std::span<const std::size_t> dims,
                     std::span<const std::size_t> traced);

// Rearranges the tensor factors of a square matrix.  `dims` are the factor
// dimensions in the current order; factor k of the result is factor
// order[k] of the input.
CMatrix permuteFactors(const CMatrix& m, std::span<const std::size_t> dims,
                       std::span<const std::size_t> order);

// Rows of K whose digits on the factors `fixed` equal `assignment`.  The
// result maps the full space into the remaining factors, i.e. it equals
// (<assignment| (x) I) K.
CMatrix projectRows(const CMatrix& k, std::span<const std::size_t> dims,
                    std::span<const std::size_t> fixed,
                    std::span<const std::size_t> assignment);

struct HermitianEigen {
    std::vector<double> values; // ascending
    CMatrix vectors;            // columns are eigenvectors
};

// Cyclic complex Jacobi eigensolver for Hermitian matrices.
HermitianEigen eigenHermitian(const CMatrix& h);

bool isHermitian(const CMatrix& m, double tol = kTolEq);
double minEigenvalue(const CMatrix& h);
bool isPSD(const CMatrix& m, double tol = kTolEq);
// A below-or-equal B in the Loewner order, i.e. B - A is PSD.
bool loewnerLeq(const CMatrix& a, const CMatrix& b, double tol = kTolEq);
bool isUnitary(const CMatrix& u, double tol = kTolEq);
bool isDensityOperator(const CMatrix& rho, double tol = kTolEq);

// Choi matrix sum_ij |i><j| (x) E(|i><j|) of the map with the given Kraus
// operators (each dimOut x dimIn).
CMatrix choiOf(std::span<const CMatrix> kraus, std::size_t dimIn, std::size_t dimOut);

// Frobenius norm of the difference of the Choi matrices of two Kraus
// families with matching shapes.  Evaluated in the span of the Kraus
// vectors, so the full Choi matrices are never formed unless that is
// cheaper.  The value bounds the entrywise maximum difference.
double choiDistance(std::span<const CMatrix> krausA, std::span<const CMatrix> krausB,
                    std::size_t dimIn, std::size_t dimOut);

// Upper-triangular factor R (cols x cols) of a Householder QR of a tall
// matrix, so that A^dagger A = R^dagger R.
CMatrix householderR(const CMatrix& a);

} // namespace qgcl

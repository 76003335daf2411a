#pragma once

// Small reference implementations used as oracles.  They follow the
// textbook definitions directly and share no code with the library.

#include "qgcl/linalg.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <vector>

namespace qgcl::test {

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

inline CMatrix mul(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Complex s{};
            for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
            out(i, j) = s;
        }
    return out;
}

inline CMatrix dagger(const CMatrix& a) {
    CMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
    return out;
}

// sum_K K rho K^dagger
inline CMatrix applyKraus(const std::vector<CMatrix>& kraus, const CMatrix& rho) {
    CMatrix out(kraus.front().rows(), kraus.front().rows());
    for (const auto& k : kraus) {
        const CMatrix t = mul(mul(k, rho), dagger(k));
        for (std::size_t i = 0; i < out.rows(); ++i)
            for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) += t(i, j);
    }
    return out;
}

// sum_ij |i><j| (x) E(|i><j|), input factor first.
inline CMatrix choi(const std::vector<CMatrix>& kraus, std::size_t dimIn, std::size_t dimOut) {
    CMatrix out(dimIn * dimOut, dimIn * dimOut);
    for (std::size_t i = 0; i < dimIn; ++i)
        for (std::size_t j = 0; j < dimIn; ++j) {
            CMatrix e(dimIn, dimIn);
            e(i, j) = 1.0;
            const CMatrix img = applyKraus(kraus, e);
            for (std::size_t a = 0; a < dimOut; ++a)
                for (std::size_t b = 0; b < dimOut; ++b) out(i * dimOut + a, j * dimOut + b) = img(a, b);
        }
    return out;
}

inline double maxDiff(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return INFINITY;
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

inline ::testing::AssertionResult matrixNear(const CMatrix& actual, const CMatrix& expected, double tol) {
    const double d = maxDiff(actual, expected);
    if (d <= tol) return ::testing::AssertionSuccess();
    std::ostringstream msg;
    msg << "max entry difference " << d << " exceeds " << tol << " (shapes " << actual.rows() << "x"
        << actual.cols() << " vs " << expected.rows() << "x" << expected.cols() << ")";
    return ::testing::AssertionFailure() << msg.str();
}

inline const Complex kI{0.0, 1.0};
inline const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

} // namespace qgcl::test

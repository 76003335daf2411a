#include "qgcl/linalg.hpp"

#include "qgcl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qgcl {

namespace {

std::string shapeOf(const CMatrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void requireSameShape(const CMatrix& a, const CMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeError(std::string(what) + ": shape mismatch " + shapeOf(a) + " vs " + shapeOf(b));
    }
}

void requireSquare(const CMatrix& m, const char* what) {
    if (!m.isSquare()) {
        throw ShapeError(std::string(what) + ": expected a square matrix, got " + shapeOf(m));
    }
}

// Strides of a row-major multi-index over `dims` (first factor most significant).
std::vector<std::size_t> stridesOf(std::span<const std::size_t> dims) {
    std::vector<std::size_t> strides(dims.size(), 1);
    for (std::size_t k = dims.size(); k-- > 1;) {
        strides[k - 1] = strides[k] * dims[k];
    }
    return strides;
}

// Offsets in the full index space contributed by every multi-index over
// the selected factors, enumerated in the selection order.
std::vector<std::size_t> offsetsOf(std::span<const std::size_t> dims,
                                   std::span<const std::size_t> strides,
                                   std::span<const std::size_t> selected) {
    std::vector<std::size_t> offsets{0};
    for (std::size_t f : selected) {
        std::vector<std::size_t> next;
        next.reserve(offsets.size() * dims[f]);
        for (std::size_t base : offsets) {
            for (std::size_t d = 0; d < dims[f]; ++d) {
                next.push_back(base + d * strides[f]);
            }
        }
        offsets = std::move(next);
    }
    return offsets;
}

std::vector<std::size_t> complementOf(std::size_t n, std::span<const std::size_t> selected) {
    std::vector<bool> used(n, false);
    for (std::size_t f : selected) {
        if (f >= n) {
            throw DimensionError("factor index " + std::to_string(f) + " out of range");
        }
        if (used[f]) {
            throw DimensionError("factor index " + std::to_string(f) + " listed twice");
        }
        used[f] = true;
    }
    std::vector<std::size_t> rest;
    for (std::size_t f = 0; f < n; ++f) {
        if (!used[f]) rest.push_back(f);
    }
    return rest;
}

} // namespace

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
        throw ShapeError("matrix data has " + std::to_string(data_.size()) + " entries, expected " +
                         std::to_string(rows_ * cols_));
    }
    for (const Complex& z : data_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw ShapeError("matrix entries must be finite");
        }
    }
}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::fromRows(std::initializer_list<std::initializer_list<Complex>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    std::vector<Complex> data;
    data.reserve(r * c);
    for (const auto& row : rows) {
        if (row.size() != c) throw ShapeError("ragged matrix literal");
        data.insert(data.end(), row.begin(), row.end());
    }
    return CMatrix(r, c, std::move(data));
}

CMatrix CMatrix::columnVector(std::span<const Complex> entries) {
    return CMatrix(entries.size(), 1, std::vector<Complex>(entries.begin(), entries.end()));
}

CMatrix CMatrix::basisVector(std::size_t dim, std::size_t index) {
    if (index >= dim) throw DimensionError("basis index out of range");
    CMatrix v(dim, 1);
    v(index, 0) = 1.0;
    return v;
}

CMatrix CMatrix::diagonal(std::span<const Complex> entries) {
    CMatrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
}

CMatrix CMatrix::projector(const CMatrix& column) {
    if (column.cols() != 1) throw ShapeError("projector expects a column vector, got " + shapeOf(column));
    return column * column.adjoint();
}

CMatrix CMatrix::adjoint() const {
    CMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

CMatrix CMatrix::transpose() const {
    CMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
}

Complex CMatrix::trace() const {
    requireSquare(*this, "trace");
    Complex t{0.0, 0.0};
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double CMatrix::frobeniusNorm() const {
    double s = 0.0;
    for (const Complex& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

double CMatrix::maxAbs() const {
    double m = 0.0;
    for (const Complex& z : data_) m = std::max(m, std::abs(z));
    return m;
}

CMatrix CMatrix::column(std::size_t c) const {
    if (c >= cols_) throw DimensionError("column index out of range");
    CMatrix v(rows_, 1);
    for (std::size_t r = 0; r < rows_; ++r) v(r, 0) = (*this)(r, c);
    return v;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
    requireSameShape(*this, other, "matrix addition");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
    requireSameShape(*this, other, "matrix subtraction");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

CMatrix& CMatrix::operator*=(Complex scalar) {
    for (Complex& z : data_) z *= scalar;
    return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) {
        throw ShapeError("matrix product: " + shapeOf(a) + " times " + shapeOf(b));
    }
    CMatrix out(a.rows(), b.cols());
    const std::size_t n = b.cols();
    for (std::size_t r = 0; r < a.rows(); ++r) {
        Complex* dst = &out(r, 0);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex s = a(r, k);
            if (s == Complex{0.0, 0.0}) continue;
            const Complex* src = &b(k, 0);
            for (std::size_t c = 0; c < n; ++c) dst[c] += s * src[c];
        }
    }
    return out;
}

double maxAbsDiff(const CMatrix& a, const CMatrix& b) {
    requireSameShape(a, b, "maxAbsDiff");
    double m = 0.0;
    auto da = a.data();
    auto db = b.data();
    for (std::size_t i = 0; i < da.size(); ++i) m = std::max(m, std::abs(da[i] - db[i]));
    return m;
}

bool approxEqual(const CMatrix& a, const CMatrix& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    return maxAbsDiff(a, b) <= tol;
}

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ra = 0; ra < a.rows(); ++ra)
        for (std::size_t ca = 0; ca < a.cols(); ++ca) {
            const Complex s = a(ra, ca);
            if (s == Complex{0.0, 0.0}) continue;
            for (std::size_t rb = 0; rb < b.rows(); ++rb)
                for (std::size_t cb = 0; cb < b.cols(); ++cb)
                    out(ra * b.rows() + rb, ca * b.cols() + cb) = s * b(rb, cb);
        }
    return out;
}

CMatrix tensorAll(std::span<const CMatrix> factors) {
    CMatrix out = CMatrix::identity(1);
    for (const CMatrix& f : factors) out = tensor(out, f);
    return out;
}

std::size_t product(std::span<const std::size_t> dims) {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

CMatrix partialTrace(const CMatrix& m, std::span<const std::size_t> dims,
                     std::span<const std::size_t> traced) {
    requireSquare(m, "partialTrace");
    if (product(dims) != m.rows()) {
        throw DimensionError("partialTrace: factor dimensions multiply to " + std::to_string(product(dims)) +
                             " but matrix is " + shapeOf(m));
    }
    const auto kept = complementOf(dims.size(), traced);
    const auto strides = stridesOf(dims);
    const auto keptOff = offsetsOf(dims, strides, kept);
    const auto tracedOff = offsetsOf(dims, strides, traced);
    CMatrix out(keptOff.size(), keptOff.size());
    for (std::size_t r = 0; r < keptOff.size(); ++r)
        for (std::size_t c = 0; c < keptOff.size(); ++c) {
            Complex s{0.0, 0.0};
            for (std::size_t t : tracedOff) s += m(keptOff[r] + t, keptOff[c] + t);
            out(r, c) = s;
        }
    return out;
}

CMatrix permuteFactors(const CMatrix& m, std::span<const std::size_t> dims,
                       std::span<const std::size_t> order) {
    requireSquare(m, "permuteFactors");
    if (product(dims) != m.rows()) throw DimensionError("permuteFactors: dimension mismatch");
    if (order.size() != dims.size() || !complementOf(dims.size(), order).empty()) {
        throw DimensionError("permuteFactors: order is not a permutation");
    }
    const auto strides = stridesOf(dims);
    // Enumerating the result's multi-index in order gives input offsets.
    const auto map = offsetsOf(dims, strides, order);
    CMatrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < map.size(); ++r)
        for (std::size_t c = 0; c < map.size(); ++c) out(r, c) = m(map[r], map[c]);
    return out;
}

CMatrix projectRows(const CMatrix& k, std::span<const std::size_t> dims,
                    std::span<const std::size_t> fixed,
                    std::span<const std::size_t> assignment) {
    if (product(dims) != k.rows()) throw DimensionError("projectRows: dimension mismatch");
    if (fixed.size() != assignment.size()) throw DimensionError("projectRows: assignment size mismatch");
    const auto strides = stridesOf(dims);
    std::size_t base = 0;
    for (std::size_t j = 0; j < fixed.size(); ++j) {
        if (assignment[j] >= dims[fixed[j]]) throw DimensionError("projectRows: digit out of range");
        base += assignment[j] * strides[fixed[j]];
    }
    const auto rest = complementOf(dims.size(), fixed);
    const auto restOff = offsetsOf(dims, strides, rest);
    CMatrix out(restOff.size(), k.cols());
    for (std::size_t r = 0; r < restOff.size(); ++r)
        for (std::size_t c = 0; c < k.cols(); ++c) out(r, c) = k(base + restOff[r], c);
    return out;
}

HermitianEigen eigenHermitian(const CMatrix& h) {
    requireSquare(h, "eigenHermitian");
    const std::size_t n = h.rows();
    // Work on the Hermitian part so tiny asymmetries from rounding do not
    // disturb the rotations.
    CMatrix a = (h + h.adjoint()) * Complex{0.5, 0.0};
    CMatrix v = CMatrix::identity(n);

    auto offNorm = [&] {
        double s = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) s += std::norm(a(p, q));
        return std::sqrt(2.0 * s);
    };
    const double scale = std::max(a.frobeniusNorm(), 1e-300);

    for (int sweep = 0; sweep < 100; ++sweep) {
        if (offNorm() <= 1e-15 * scale) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double mag = std::abs(a(p, q));
                if (mag <= 1e-300) continue;
                const Complex phase = a(p, q) / mag; // e^{i phi}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * mag);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const Complex phaseConj = std::conj(phase);
                // Columns: A <- A G with G = [[c, s], [-s e^{-i phi}, c e^{-i phi}]].
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = c * akp - s * phaseConj * akq;
                    a(k, q) = s * akp + c * phaseConj * akq;
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = c * vkp - s * phaseConj * vkq;
                    v(k, q) = s * vkp + c * phaseConj * vkq;
                }
                // Rows: A <- G^dagger A.
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = c * apk - s * phase * aqk;
                    a(q, k) = s * apk + c * phase * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
    HermitianEigen out;
    out.values.reserve(n);
    out.vectors = CMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values.push_back(a(idx[j], idx[j]).real());
        for (std::size_t k = 0; k < n; ++k) out.vectors(k, j) = v(k, idx[j]);
    }
    return out;
}

bool isHermitian(const CMatrix& m, double tol) {
    if (!m.isSquare()) return false;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = r; c < m.cols(); ++c)
            if (std::abs(m(r, c) - std::conj(m(c, r))) > tol) return false;
    return true;
}

double minEigenvalue(const CMatrix& h) {
    requireSquare(h, "minEigenvalue");
    if (h.rows() == 0) return 0.0;
    return eigenHermitian(h).values.front();
}

bool isPSD(const CMatrix& m, double tol) {
    if (!isHermitian(m, tol)) return false;
    return minEigenvalue(m) >= -tol;
}

bool loewnerLeq(const CMatrix& a, const CMatrix& b, double tol) {
    requireSameShape(a, b, "loewnerLeq");
    return isPSD(b - a, tol);
}

bool isUnitary(const CMatrix& u, double tol) {
    if (!u.isSquare()) return false;
    return approxEqual(u.adjoint() * u, CMatrix::identity(u.rows()), tol);
}

bool isDensityOperator(const CMatrix& rho, double tol) {
    if (!rho.isSquare()) return false;
    if (std::abs(rho.trace() - Complex{1.0, 0.0}) > tol) return false;
    return isPSD(rho, tol);
}

namespace {

// Column-major vectorisation: index i * dimOut + a holds K(a, i).
void appendVec(CMatrix& cols, std::size_t column, const CMatrix& k) {
    for (std::size_t i = 0; i < k.cols(); ++i)
        for (std::size_t a = 0; a < k.rows(); ++a) cols(i * k.rows() + a, column) = k(a, i);
}

void requireKrausShape(std::span<const CMatrix> kraus, std::size_t dimIn, std::size_t dimOut) {
    for (const CMatrix& k : kraus) {
        if (k.rows() != dimOut || k.cols() != dimIn) {
            throw ShapeError("Kraus operator " + shapeOf(k) + " does not map dimension " +
                             std::to_string(dimIn) + " to " + std::to_string(dimOut));
        }
    }
}

} // namespace

CMatrix choiOf(std::span<const CMatrix> kraus, std::size_t dimIn, std::size_t dimOut) {
    requireKrausShape(kraus, dimIn, dimOut);
    const std::size_t d = dimIn * dimOut;
    CMatrix j(d, d);
    CMatrix vec(d, 1);
    for (const CMatrix& k : kraus) {
        appendVec(vec, 0, k);
        for (std::size_t r = 0; r < d; ++r) {
            const Complex vr = vec(r, 0);
            if (vr == Complex{0.0, 0.0}) continue;
            for (std::size_t c = 0; c < d; ++c) j(r, c) += vr * std::conj(vec(c, 0));
        }
    }
    return j;
}

CMatrix householderR(const CMatrix& input) {
    CMatrix a = input;
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    const std::size_t steps = std::min(m, n);
    std::vector<Complex> v(m);
    for (std::size_t k = 0; k < steps; ++k) {
        double norm2 = 0.0;
        for (std::size_t r = k; r < m; ++r) norm2 += std::norm(a(r, k));
        const double norm = std::sqrt(norm2);
        if (norm == 0.0) continue;
        const Complex x0 = a(k, k);
        const Complex phase = std::abs(x0) > 0 ? x0 / std::abs(x0) : Complex{1.0, 0.0};
        const Complex alpha = -phase * norm;
        for (std::size_t r = k; r < m; ++r) v[r] = a(r, k);
        v[k] -= alpha;
        double vnorm2 = 0.0;
        for (std::size_t r = k; r < m; ++r) vnorm2 += std::norm(v[r]);
        if (vnorm2 == 0.0) continue;
        for (std::size_t c = k; c < n; ++c) {
            Complex s{0.0, 0.0};
            for (std::size_t r = k; r < m; ++r) s += std::conj(v[r]) * a(r, c);
            s *= 2.0 / vnorm2;
            for (std::size_t r = k; r < m; ++r) a(r, c) -= s * v[r];
        }
    }
    CMatrix r(n, n);
    for (std::size_t i = 0; i < std::min(m, n); ++i)
        for (std::size_t j = i; j < n; ++j) r(i, j) = a(i, j);
    return r;
}

double choiDistance(std::span<const CMatrix> krausA, std::span<const CMatrix> krausB,
                    std::size_t dimIn, std::size_t dimOut) {
    requireKrausShape(krausA, dimIn, dimOut);
    requireKrausShape(krausB, dimIn, dimOut);
    const std::size_t d = dimIn * dimOut;
    const std::size_t count = krausA.size() + krausB.size();
    if (count == 0) return 0.0;
    if (count > d) {
        return (choiOf(krausA, dimIn, dimOut) - choiOf(krausB, dimIn, dimOut)).frobeniusNorm();
    }
    CMatrix cols(d, count);
    std::size_t c = 0;
    for (const CMatrix& k : krausA) appendVec(cols, c++, k);
    for (const CMatrix& k : krausB) appendVec(cols, c++, k);
    // With [V_A V_B] = Q R, J_A - J_B = Q (R_A R_A^dagger - R_B R_B^dagger) Q^dagger.
    const CMatrix r = householderR(cols);
    CMatrix diff(count, count);
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < count; ++j) {
            Complex s{0.0, 0.0};
            for (std::size_t t = 0; t < count; ++t) {
                const Complex term = r(i, t) * std::conj(r(j, t));
                s += t < krausA.size() ? term : -term;
            }
            diff(i, j) = s;
        }
    return diff.frobeniusNorm();
}

} // namespace qgcl

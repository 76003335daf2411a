#include "qgcl/random.hpp"

#include "qgcl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qgcl {

namespace {

// Modified Gram-Schmidt on the columns, applied twice for stability.
CMatrix orthonormalColumns(CMatrix a) {
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            for (std::size_t k = 0; k < j; ++k) {
                Complex ip{0.0, 0.0};
                for (std::size_t r = 0; r < a.rows(); ++r) ip += std::conj(a(r, k)) * a(r, j);
                for (std::size_t r = 0; r < a.rows(); ++r) a(r, j) -= ip * a(r, k);
            }
            double norm = 0.0;
            for (std::size_t r = 0; r < a.rows(); ++r) norm += std::norm(a(r, j));
            norm = std::sqrt(norm);
            if (norm < 1e-12) throw Error("degenerate random matrix");
            for (std::size_t r = 0; r < a.rows(); ++r) a(r, j) /= norm;
        }
    }
    return a;
}

} // namespace

CMatrix randomGaussian(std::size_t rows, std::size_t cols, Rng& rng) {
    CMatrix m(rows, cols);
    for (auto& z : m.data()) {
        const double re = rng.normal();
        const double im = rng.normal();
        z = Complex{re, im} / std::sqrt(2.0);
    }
    return m;
}

CMatrix randomUnitary(std::size_t n, Rng& rng) { return orthonormalColumns(randomGaussian(n, n, rng)); }

CMatrix randomIsometry(std::size_t rows, std::size_t cols, Rng& rng) {
    if (rows < cols) throw DimensionError("an isometry needs rows >= cols");
    return orthonormalColumns(randomGaussian(rows, cols, rng));
}

CMatrix randomPureState(std::size_t n, Rng& rng) { return orthonormalColumns(randomGaussian(n, 1, rng)); }

CMatrix randomDensity(std::size_t n, Rng& rng) {
    const CMatrix g = randomGaussian(n, n, rng);
    CMatrix rho = g * g.adjoint();
    return rho * Complex{1.0 / rho.trace().real(), 0.0};
}

CMatrix randomEffect(std::size_t n, Rng& rng) {
    const CMatrix u = randomUnitary(n, rng);
    std::vector<Complex> spectrum;
    for (std::size_t k = 0; k < n; ++k) spectrum.emplace_back(rng.uniform(), 0.0);
    return u * CMatrix::diagonal(spectrum) * u.adjoint();
}

std::vector<CMatrix> randomMeasurement(std::size_t dim, std::size_t outcomes, Rng& rng) {
    const CMatrix v = randomIsometry(dim * outcomes, dim, rng);
    std::vector<CMatrix> ops;
    for (std::size_t m = 0; m < outcomes; ++m) {
        CMatrix op(dim, dim);
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = 0; c < dim; ++c) op(r, c) = v(m * dim + r, c);
        ops.push_back(std::move(op));
    }
    return ops;
}

std::vector<std::size_t> randomPermutation(std::size_t n, Rng& rng) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    for (std::size_t k = n; k > 1; --k) std::swap(p[k - 1], p[rng.index(k)]);
    return p;
}

GateDef ProgramGenerator::gate(const CMatrix& u) {
    return GateDef{prefix_ + std::to_string(++gates_), u, false};
}

GateDef ProgramGenerator::randomGate(std::size_t dim) { return gate(randomUnitary(dim, rng_)); }

MeasDef ProgramGenerator::measurement(std::vector<CMatrix> ops) {
    MeasDef m{"M" + prefix_ + std::to_string(++measurements_), {}, std::move(ops), false};
    for (std::size_t k = 0; k < m.ops.size(); ++k) m.outcomes.push_back(std::to_string(k));
    return m;
}

MeasDef ProgramGenerator::randomMeasurementDef(std::size_t dim, std::size_t outcomes) {
    return measurement(randomMeasurement(dim, outcomes, rng_));
}

ProgramPtr ProgramGenerator::unitaryOnly(const std::string& var, std::size_t dim, std::size_t gates) {
    std::vector<ProgramPtr> parts;
    for (std::size_t k = 0; k < gates; ++k) parts.push_back(Program::unitary(randomGate(dim), {var}));
    return Program::seqAll(parts);
}

ProgramPtr ProgramGenerator::branch(const std::string& var, std::size_t dim, const std::string& cvar, bool measure) {
    ProgramPtr head = Program::unitary(randomGate(dim), {var});
    if (!measure) return head;
    MeasDef meas = randomMeasurementDef(dim, 2);
    std::vector<MeasureBranch> branches;
    for (const auto& o : meas.outcomes) {
        ProgramPtr body = rng_.coin() ? Program::unitary(randomGate(dim), {var}) : Program::skip();
        branches.push_back({o, body});
    }
    return Program::seq(head, Program::measure(std::move(meas), {var}, cvar, std::move(branches)));
}

} // namespace qgcl

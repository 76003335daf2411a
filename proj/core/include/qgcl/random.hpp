#pragma once

#include "qgcl/ast.hpp"
#include "qgcl/linalg.hpp"

#include <cstdint>
#include <random>
#include <string>

namespace qgcl {

/// Seeded source of random matrices and programs.  Everything generated
/// from the same seed is identical across runs.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
    std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_); }
    bool coin() { return index(2) == 1; }
    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
};

// Matrix with independent standard complex Gaussian entries.
CMatrix randomGaussian(std::size_t rows, std::size_t cols, Rng& rng);
// Haar-distributed unitary (QR of a Gaussian matrix with phase fix).
CMatrix randomUnitary(std::size_t n, Rng& rng);
// rows x cols matrix with orthonormal columns (rows >= cols).
CMatrix randomIsometry(std::size_t rows, std::size_t cols, Rng& rng);
CMatrix randomPureState(std::size_t n, Rng& rng); // normalised column vector
CMatrix randomDensity(std::size_t n, Rng& rng);
// Random Hermitian operator with spectrum in [0, 1].
CMatrix randomEffect(std::size_t n, Rng& rng);
// Random complete measurement with `outcomes` Kraus operators.
std::vector<CMatrix> randomMeasurement(std::size_t dim, std::size_t outcomes, Rng& rng);
std::vector<std::size_t> randomPermutation(std::size_t n, Rng& rng);

/// Builds random programs for property tests and law instances.  Gate and
/// measurement names are numbered so that distinct matrices never share
/// a name.
class ProgramGenerator {
public:
    explicit ProgramGenerator(Rng& rng, std::string prefix = "G") : rng_(rng), prefix_(std::move(prefix)) {}

    GateDef gate(const CMatrix& u);
    GateDef randomGate(std::size_t dim);
    MeasDef measurement(std::vector<CMatrix> ops);
    MeasDef randomMeasurementDef(std::size_t dim, std::size_t outcomes);

    // A random unitary on `var`, optionally followed by a measurement into
    // `cvar` whose branches apply further random unitaries or skip.
    ProgramPtr branch(const std::string& var, std::size_t dim, const std::string& cvar, bool measure);
    ProgramPtr unitaryOnly(const std::string& var, std::size_t dim, std::size_t gates = 2);

private:
    Rng& rng_;
    std::string prefix_;
    std::size_t gates_ = 0;
    std::size_t measurements_ = 0;
};

} // namespace qgcl

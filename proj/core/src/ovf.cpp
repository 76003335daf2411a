#include "qgcl/ovf.hpp"

#include "qgcl/errors.hpp"

#include <cmath>
#include <functional>
#include <set>

namespace qgcl {

OperatorValuedFunction::OperatorValuedFunction(VarSet vars, std::size_t dim, std::vector<OvfEntry> entries)
    : vars_(std::move(vars)), dim_(dim), entries_(std::move(entries)) {
    if (entries_.empty()) throw Error("operator-valued function needs a non-empty domain");
    std::set<std::string> seen;
    for (const auto& e : entries_) {
        if (e.op.rows() != dim_ || e.op.cols() != dim_) {
            throw DimensionError("operator at state " + e.state.label() + " is " + std::to_string(e.op.rows()) +
                                 "x" + std::to_string(e.op.cols()) + ", expected dimension " +
                                 std::to_string(dim_));
        }
        if (!seen.insert(e.state.label()).second) {
            throw Error("state " + e.state.label() + " appears twice in an operator-valued function");
        }
    }
}

const CMatrix& OperatorValuedFunction::at(const std::string& label) const {
    for (const auto& e : entries_)
        if (e.state.label() == label) return e.op;
    throw Error("state " + label + " is not in the domain");
}

CMatrix OperatorValuedFunction::gramSum() const {
    CMatrix s(dim_, dim_);
    for (const auto& e : entries_) s += e.op.adjoint() * e.op;
    return s;
}

bool OperatorValuedFunction::isSubNormalized(double tol) const {
    return loewnerLeq(gramSum(), CMatrix::identity(dim_), tol);
}

bool OperatorValuedFunction::isFull(double tol) const {
    return approxEqual(gramSum(), CMatrix::identity(dim_), tol);
}

OperatorValuedFunction OperatorValuedFunction::extendedTo(const VarSet& target, const Registry& registry) const {
    if (target == vars_) return *this;
    std::vector<OvfEntry> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back({e.state, registry.embed(e.op, vars_, target)});
    return OperatorValuedFunction(target, registry.dimOf(target), std::move(out));
}

std::vector<double> lambdaCoeffs(const OVF& f) {
    const std::size_t n = f.size();
    if (n == 1) return {1.0};
    std::vector<double> weights;
    weights.reserve(n);
    double total = 0.0;
    for (const auto& e : f.entries()) {
        const double w = std::pow(e.op.frobeniusNorm(), 2);
        weights.push_back(w);
        total += w;
    }
    std::vector<double> out(n, 1.0 / std::sqrt(static_cast<double>(n)));
    if (total == 0.0) return out;
    for (std::size_t i = 0; i < n; ++i) out[i] = std::sqrt(weights[i] / total);
    return out;
}

double lambdaCoeff(const OVF& f, std::size_t stateIndex) {
    if (stateIndex >= f.size()) throw Error("state index out of range");
    return lambdaCoeffs(f)[stateIndex];
}

AlphaFamily::AlphaFamily(std::vector<std::size_t> domainSizes, std::vector<std::vector<Complex>> coefficients)
    : sizes_(std::move(domainSizes)), coeffs_(std::move(coefficients)) {
    if (coeffs_.size() != sizes_.size()) {
        throw AlphaNormalizationError("coefficient family has " + std::to_string(coeffs_.size()) +
                                      " branches, expected " + std::to_string(sizes_.size()));
    }
    for (std::size_t k = 0; k < sizes_.size(); ++k) {
        std::size_t expected = 1;
        for (std::size_t j = 0; j < sizes_.size(); ++j)
            if (j != k) expected *= sizes_[j];
        if (coeffs_[k].size() != expected) {
            throw AlphaNormalizationError("branch " + std::to_string(k) + " has " +
                                          std::to_string(coeffs_[k].size()) + " coefficients, expected " +
                                          std::to_string(expected));
        }
    }
}

AlphaFamily AlphaFamily::fromLambda(std::span<const OVF> branches) {
    std::vector<std::size_t> sizes;
    std::vector<std::vector<double>> lambdas;
    for (const auto& b : branches) {
        sizes.push_back(b.size());
        lambdas.push_back(lambdaCoeffs(b));
    }
    std::vector<std::vector<Complex>> coeffs(sizes.size());
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        // Enumerate the other-branch tuples mixed-radix, last branch fastest.
        std::vector<Complex> row{1.0};
        for (std::size_t j = 0; j < sizes.size(); ++j) {
            if (j == k) continue;
            std::vector<Complex> next;
            next.reserve(row.size() * sizes[j]);
            for (const Complex& base : row)
                for (std::size_t d = 0; d < sizes[j]; ++d) next.push_back(base * lambdas[j][d]);
            row = std::move(next);
        }
        coeffs[k] = std::move(row);
    }
    return AlphaFamily(std::move(sizes), std::move(coeffs));
}

AlphaFamily AlphaFamily::uniform(std::vector<std::size_t> domainSizes) {
    std::vector<std::vector<Complex>> coeffs(domainSizes.size());
    for (std::size_t k = 0; k < domainSizes.size(); ++k) {
        std::size_t count = 1;
        for (std::size_t j = 0; j < domainSizes.size(); ++j)
            if (j != k) count *= domainSizes[j];
        coeffs[k].assign(count, Complex{1.0 / std::sqrt(static_cast<double>(count)), 0.0});
    }
    return AlphaFamily(std::move(domainSizes), std::move(coeffs));
}

std::size_t AlphaFamily::othersIndex(std::size_t branch, std::span<const std::size_t> fullTuple) const {
    if (fullTuple.size() != sizes_.size()) throw Error("state tuple has the wrong length");
    std::size_t idx = 0;
    for (std::size_t j = 0; j < sizes_.size(); ++j) {
        if (j == branch) continue;
        idx = idx * sizes_[j] + fullTuple[j];
    }
    return idx;
}

Complex AlphaFamily::coefficient(std::size_t branch, std::span<const std::size_t> fullTuple) const {
    return coeffs_.at(branch).at(othersIndex(branch, fullTuple));
}

double AlphaFamily::normalizationDefect(std::size_t branch) const {
    double s = 0.0;
    for (const Complex& a : coeffs_.at(branch)) s += std::norm(a);
    return std::abs(s - 1.0);
}

void AlphaFamily::validate(double tol) const {
    for (std::size_t k = 0; k < sizes_.size(); ++k) {
        const double defect = normalizationDefect(k);
        if (defect > tol) {
            throw AlphaNormalizationError("coefficients of branch " + std::to_string(k) +
                                          " are not normalised (defect " + std::to_string(defect) + ")");
        }
    }
}

void validateGuardBasis(std::span<const CMatrix> guards, std::size_t coinDim, double tol) {
    if (guards.size() != coinDim) {
        throw GuardBasisError(std::to_string(guards.size()) + " guards given for a coin space of dimension " +
                              std::to_string(coinDim));
    }
    for (const auto& g : guards) {
        if (g.rows() != coinDim || g.cols() != 1) {
            throw GuardBasisError("guard is not a vector of dimension " + std::to_string(coinDim));
        }
    }
    for (std::size_t i = 0; i < guards.size(); ++i)
        for (std::size_t j = i; j < guards.size(); ++j) {
            const Complex ip = (guards[i].adjoint() * guards[j])(0, 0);
            const Complex expected = i == j ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
            if (std::abs(ip - expected) > tol) {
                throw GuardBasisError("guards " + std::to_string(i) + " and " + std::to_string(j) +
                                      " are not orthonormal");
            }
        }
}

namespace {

using CoefficientFn = std::function<Complex(std::size_t branch, std::span<const std::size_t> tuple)>;

OVF composeWith(std::span<const std::size_t> coin, std::span<const GuardedBranch> branches,
                const CoefficientFn& coefficient, const Registry& registry, double tol) {
    if (branches.empty()) throw GuardBasisError("quantum alternation needs at least one branch");
    const VarSet coinSet = VarSet::fromIndices({coin.begin(), coin.end()});
    if (coinSet.size() != coin.size()) throw VariableScopeError("coin variables must be distinct");
    const std::size_t coinDim = registry.dimOf(coinSet);

    std::vector<CMatrix> guards;
    for (const auto& b : branches) guards.push_back(b.guard);
    validateGuardBasis(guards, coinDim, tol);

    VarSet inner;
    for (const auto& b : branches) inner = inner.unite(b.fn.vars());
    if (inner.intersects(coinSet)) {
        throw VariableScopeError("coin variable " + registry.namesOf(inner.intersect(coinSet)).front() +
                                 " is also used inside a branch");
    }
    const VarSet full = coinSet.unite(inner);

    std::vector<std::size_t> factorOrder(coin.begin(), coin.end());
    for (std::size_t v : inner.indices()) factorOrder.push_back(v);

    std::vector<CMatrix> projectors;
    std::vector<std::vector<CMatrix>> extended;
    for (const auto& b : branches) {
        projectors.push_back(CMatrix::projector(b.guard));
        std::vector<CMatrix> ops;
        for (const auto& e : b.fn.entries()) ops.push_back(registry.embed(e.op, b.fn.vars(), inner));
        extended.push_back(std::move(ops));
    }

    const std::size_t n = branches.size();
    std::vector<std::size_t> tuple(n, 0);
    std::vector<OvfEntry> out;
    const std::size_t dim = registry.dimOf(full);
    while (true) {
        CMatrix op(dim, dim);
        std::vector<ClassicalState> parts;
        parts.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            parts.push_back(branches[i].fn.entry(tuple[i]).state);
            const Complex c = coefficient(i, tuple);
            if (c == Complex{0.0, 0.0}) continue;
            op += tensor(projectors[i], extended[i][tuple[i]]) * c;
        }
        out.push_back({ClassicalState::superpose(std::move(parts)), registry.embed(op, factorOrder, full)});

        std::size_t k = n;
        while (k > 0) {
            --k;
            if (++tuple[k] < branches[k].fn.size()) break;
            tuple[k] = 0;
            if (k == 0) return OVF(full, dim, std::move(out));
        }
    }
}

} // namespace

OVF guardedCompose(std::span<const std::size_t> coin, std::span<const GuardedBranch> branches,
                   const Registry& registry, double tol) {
    std::vector<std::vector<double>> lambdas;
    for (const auto& b : branches) lambdas.push_back(lambdaCoeffs(b.fn));
    auto coefficient = [&](std::size_t i, std::span<const std::size_t> tuple) {
        double c = 1.0;
        for (std::size_t k = 0; k < tuple.size(); ++k)
            if (k != i) c *= lambdas[k][tuple[k]];
        return Complex{c, 0.0};
    };
    return composeWith(coin, branches, coefficient, registry, tol);
}

OVF alphaGuardedCompose(std::span<const std::size_t> coin, std::span<const GuardedBranch> branches,
                        const AlphaFamily& alpha, const Registry& registry, double tol) {
    if (alpha.branchCount() != branches.size()) {
        throw AlphaNormalizationError("coefficient family covers " + std::to_string(alpha.branchCount()) +
                                      " branches, but " + std::to_string(branches.size()) + " are given");
    }
    for (std::size_t k = 0; k < branches.size(); ++k) {
        if (alpha.domainSizes()[k] != branches[k].fn.size()) {
            throw AlphaNormalizationError("coefficient family expects " +
                                          std::to_string(alpha.domainSizes()[k]) + " states in branch " +
                                          std::to_string(k) + ", found " +
                                          std::to_string(branches[k].fn.size()));
        }
    }
    alpha.validate(tol);
    auto coefficient = [&](std::size_t i, std::span<const std::size_t> tuple) { return alpha.coefficient(i, tuple); };
    return composeWith(coin, branches, coefficient, registry, tol);
}

SuperOp::SuperOp(std::size_t dimIn, std::size_t dimOut, std::vector<CMatrix> kraus)
    : dimIn_(dimIn), dimOut_(dimOut), kraus_(std::move(kraus)) {
    for (const auto& k : kraus_) {
        if (k.rows() != dimOut_ || k.cols() != dimIn_) {
            throw DimensionError("Kraus operator does not map dimension " + std::to_string(dimIn_) + " to " +
                                 std::to_string(dimOut_));
        }
    }
}

SuperOp SuperOp::identity(std::size_t dim) { return SuperOp(dim, dim, {CMatrix::identity(dim)}); }

CMatrix SuperOp::apply(const CMatrix& rho) const {
    if (rho.rows() != dimIn_ || rho.cols() != dimIn_) {
        throw DimensionError("state of shape " + std::to_string(rho.rows()) + "x" + std::to_string(rho.cols()) +
                             " given to an operation on dimension " + std::to_string(dimIn_));
    }
    CMatrix out(dimOut_, dimOut_);
    for (const auto& k : kraus_) out += k * rho * k.adjoint();
    return out;
}

SuperOp SuperOp::adjoint() const {
    std::vector<CMatrix> ks;
    ks.reserve(kraus_.size());
    for (const auto& k : kraus_) ks.push_back(k.adjoint());
    return SuperOp(dimOut_, dimIn_, std::move(ks));
}

SuperOp SuperOp::then(const SuperOp& next) const {
    if (next.dimIn_ != dimOut_) throw DimensionError("cannot compose operations of mismatched dimension");
    std::vector<CMatrix> ks;
    for (const auto& b : next.kraus_)
        for (const auto& a : kraus_) ks.push_back(b * a);
    return SuperOp(dimIn_, next.dimOut_, std::move(ks));
}

SuperOp SuperOp::scaled(double p) const {
    if (p < 0) throw ProbabilityError("cannot scale an operation by a negative weight");
    std::vector<CMatrix> ks;
    for (const auto& k : kraus_) ks.push_back(k * Complex{std::sqrt(p), 0.0});
    return SuperOp(dimIn_, dimOut_, std::move(ks));
}

SuperOp SuperOp::plus(const SuperOp& other) const {
    if (other.dimIn_ != dimIn_ || other.dimOut_ != dimOut_) {
        throw DimensionError("cannot add operations of mismatched dimension");
    }
    std::vector<CMatrix> ks = kraus_;
    ks.insert(ks.end(), other.kraus_.begin(), other.kraus_.end());
    return SuperOp(dimIn_, dimOut_, std::move(ks));
}

CMatrix SuperOp::choi() const { return choiOf(kraus_, dimIn_, dimOut_); }

double SuperOp::distance(const SuperOp& other) const {
    if (other.dimIn_ != dimIn_ || other.dimOut_ != dimOut_) {
        throw DimensionError("cannot compare operations of mismatched dimension");
    }
    return choiDistance(kraus_, other.kraus_, dimIn_, dimOut_);
}

SuperOp toSuperOp(const OVF& f) {
    std::vector<CMatrix> ks;
    ks.reserve(f.size());
    for (const auto& e : f.entries()) ks.push_back(e.op);
    return SuperOp(f.dim(), f.dim(), std::move(ks));
}

CMatrix apply(const SuperOp& e, const CMatrix& rho) { return e.apply(rho); }

} // namespace qgcl

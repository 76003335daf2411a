#pragma once

#include "qgcl/classical_state.hpp"
#include "qgcl/linalg.hpp"
#include "qgcl/registry.hpp"

#include <span>
#include <string>
#include <vector>

namespace qgcl {

struct OvfEntry {
    ClassicalState state;
    CMatrix op;
};

/// Operator-valued function: a finite table from classical states to
/// operators on the space of `vars`.  Entry order is significant; it is
/// the order in which states are enumerated everywhere else.
class OperatorValuedFunction {
public:
    OperatorValuedFunction(VarSet vars, std::size_t dim, std::vector<OvfEntry> entries);

    const VarSet& vars() const noexcept { return vars_; }
    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return entries_.size(); }
    const std::vector<OvfEntry>& entries() const noexcept { return entries_; }
    const OvfEntry& entry(std::size_t i) const { return entries_.at(i); }
    // Operator at the state with the given label; throws if absent.
    const CMatrix& at(const std::string& label) const;

    // Sum of F(d)^dagger F(d) over the domain.
    CMatrix gramSum() const;
    bool isSubNormalized(double tol = kTolEq) const;
    bool isFull(double tol = kTolEq) const;

    OperatorValuedFunction extendedTo(const VarSet& target, const Registry& registry) const;

private:
    VarSet vars_;
    std::size_t dim_;
    std::vector<OvfEntry> entries_;
};

using OVF = OperatorValuedFunction;

// Weight of one state in the guarded composition:
// sqrt(tr F(d)^dagger F(d) / sum_t tr F(t)^dagger F(t)), or 1/sqrt(|domain|)
// when every operator vanishes.
double lambdaCoeff(const OVF& f, std::size_t stateIndex);
std::vector<double> lambdaCoeffs(const OVF& f);

struct GuardedBranch {
    CMatrix guard; // column vector on the coin space
    OVF fn;
};

/// Coefficient family used by the parameterised composition.  Branch k
/// carries one coefficient per tuple of states of the *other* branches,
/// indexed mixed-radix in branch order with branch k skipped.
class AlphaFamily {
public:
    AlphaFamily(std::vector<std::size_t> domainSizes, std::vector<std::vector<Complex>> coefficients);

    // The default weights (products of lambda coefficients).
    static AlphaFamily fromLambda(std::span<const OVF> branches);
    // 1/sqrt(prod_{k != i} |domain_k|) for every tuple.
    static AlphaFamily uniform(std::vector<std::size_t> domainSizes);

    std::size_t branchCount() const noexcept { return sizes_.size(); }
    const std::vector<std::size_t>& domainSizes() const noexcept { return sizes_; }
    const std::vector<Complex>& coefficients(std::size_t branch) const { return coeffs_.at(branch); }

    // Index of the other-branch tuple for `branch` within a full tuple.
    std::size_t othersIndex(std::size_t branch, std::span<const std::size_t> fullTuple) const;
    Complex coefficient(std::size_t branch, std::span<const std::size_t> fullTuple) const;
    // |sum |alpha|^2 - 1| for one branch.
    double normalizationDefect(std::size_t branch) const;
    // Throws AlphaNormalizationError when a branch is not normalised.
    void validate(double tol = kTolEq) const;

private:
    std::vector<std::size_t> sizes_;
    std::vector<std::vector<Complex>> coeffs_;
};

// Guarded composition with the lambda weights.  `coin` lists the coin
// variables in the order the guard vectors refer to.  The result acts on
// coin + all branch variables in canonical order; its states are the
// superpositions of one state per branch, enumerated lexicographically.
OVF guardedCompose(std::span<const std::size_t> coin, std::span<const GuardedBranch> branches,
                   const Registry& registry, double tol = kTolEq);

OVF alphaGuardedCompose(std::span<const std::size_t> coin, std::span<const GuardedBranch> branches,
                        const AlphaFamily& alpha, const Registry& registry, double tol = kTolEq);

// Checks that the guards form an orthonormal basis of the coin space.
void validateGuardBasis(std::span<const CMatrix> guards, std::size_t coinDim, double tol = kTolEq);

/// Quantum operation in Kraus form.
class SuperOp {
public:
    SuperOp(std::size_t dimIn, std::size_t dimOut, std::vector<CMatrix> kraus);

    static SuperOp identity(std::size_t dim);

    std::size_t dimIn() const noexcept { return dimIn_; }
    std::size_t dimOut() const noexcept { return dimOut_; }
    const std::vector<CMatrix>& kraus() const noexcept { return kraus_; }

    // Throws DimensionError when rho does not match dimIn.
    CMatrix apply(const CMatrix& rho) const;
    // Heisenberg-picture dual: X -> sum K^dagger X K.
    SuperOp adjoint() const;
    // `next` applied after this operation.
    SuperOp then(const SuperOp& next) const;
    SuperOp scaled(double p) const;
    SuperOp plus(const SuperOp& other) const;

    CMatrix choi() const;
    // Frobenius distance between the Choi matrices.
    double distance(const SuperOp& other) const;

private:
    std::size_t dimIn_;
    std::size_t dimOut_;
    std::vector<CMatrix> kraus_;
};

SuperOp toSuperOp(const OVF& f);
CMatrix apply(const SuperOp& e, const CMatrix& rho);

} // namespace qgcl

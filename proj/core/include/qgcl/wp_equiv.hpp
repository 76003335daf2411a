#pragma once

#include "qgcl/ast.hpp"
#include "qgcl/ovf.hpp"

#include <cstdint>
#include <optional>

namespace qgcl {

/// Positive operator on the quantum variables `vars` (canonical order),
/// used as a quantum predicate.  Construction checks that the matrix is
/// Hermitian and positive semidefinite.
class Observable {
public:
    Observable(VarSet vars, CMatrix matrix, const Registry& registry, double tol = kTolEq);

    const VarSet& vars() const noexcept { return vars_; }
    const CMatrix& matrix() const noexcept { return matrix_; }

private:
    VarSet vars_;
    CMatrix matrix_;
};

// Weakest-precondition transformer of p: the dual of its channel, acting
// on observables over qvar(p).
SuperOp wp(const ProgramPtr& p, const Registry& registry);

struct HoareVerdict {
    bool satisfied = false;
    // Smallest eigenvalue of wp(p)(post) - pre; negative when violated.
    double margin = 0.0;
    CMatrix weakestPre;
};

// Decides {pre} p {post} exactly through pre <= wp(p)(post).  Both
// observables are lifted to qvar(p) united with their own variables.
HoareVerdict checkHoare(const Observable& pre, const ProgramPtr& p, const Observable& post,
                        const Registry& registry, double tol = kTolEq);

struct EquivalenceVerdict {
    bool equivalent = false;
    // Frobenius norm of the Choi difference (bounds the entrywise one).
    double residual = 0.0;
};

EquivalenceVerdict equivalent(const ProgramPtr& p, const ProgramPtr& q, const Registry& registry,
                              double tol = kTolEq);

// Compares the channels after tracing out every coin variable of p and q.
EquivalenceVerdict coinFreeEquivalent(const ProgramPtr& p, const ProgramPtr& q, const Registry& registry,
                                      double tol = kTolEq);

// tr_coins after the channel on `space`.  The output space is `space`
// minus `coins`.
SuperOp traceOutAfter(const SuperOp& e, const VarSet& space, const VarSet& coins, const Registry& registry);

struct RefinementVerdict {
    bool refuted = false;
    std::size_t samplesChecked = 0;
    std::optional<CMatrix> witness;
    std::string witnessKind; // "identity", "basis <k>", "pure", "mixed"
};

// Searches for an observable N with wp(p)(N) not below wp(q)(N).  The
// samples are the identity, computational-basis projectors, random pure
// state projectors and random positive operators, in that order.
RefinementVerdict refines(const ProgramPtr& p, const ProgramPtr& q, const Registry& registry,
                          std::size_t samples, std::uint64_t seed, double tol = kTolEq);

} // namespace qgcl

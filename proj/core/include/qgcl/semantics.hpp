#pragma once

#include "qgcl/ast.hpp"
#include "qgcl/ovf.hpp"

#include <utility>
#include <vector>

namespace qgcl {

/// Result of evaluating a program: its quantum variables (canonical
/// order) and its semi-classical semantics over the classical states.
struct SemResult {
    ProgramPtr program;
    VarSet vars;
    OVF semi;

    std::vector<ClassicalState> deltas() const;
    SuperOp channel() const { return toSuperOp(semi); }
};

/// Structural evaluator.  Blocks and probabilistic choices have only a
/// channel semantics; they evaluate to a Kraus family whose entries carry
/// synthetic classical variables ("#blk<n>", "#pc<n>") so they can sit
/// inside sequences and measurement branches.
class Evaluator {
public:
    explicit Evaluator(const Registry& registry, double tol = kTolEq);

    SemResult semiClassical(const ProgramPtr& p);
    SuperOp channelOf(const ProgramPtr& p);
    // Channel cylindrically extended to `space`, which must contain qvar(p).
    SuperOp channelOn(const ProgramPtr& p, const VarSet& space);

    const Registry& registry() const noexcept { return registry_; }

private:
    OVF eval(const ProgramPtr& p);
    OVF evalMeasure(const MeasureStmt& s);
    OVF evalQif(const std::vector<std::string>& coins, const std::vector<CMatrix>& guards,
                const std::vector<ProgramPtr>& branches, const std::optional<AlphaSpec>& alpha);
    OVF evalSeq(const SeqStmt& s);
    OVF evalBlock(const BlockStmt& s);
    OVF evalProbChoice(const ProbChoiceStmt& s);
    OVF evalSubspaceQif(const SubspaceQIfStmt& s);
    std::string freshName(const char* prefix);

    const Registry& registry_;
    double tol_;
    std::size_t counter_ = 0;
};

SemResult semiClassical(const ProgramPtr& p, const Registry& registry);
SuperOp channelOf(const ProgramPtr& p, const Registry& registry);

// Cylindrical extension of an operation on `from` to the larger set `to`.
SuperOp extendChannel(const SuperOp& e, const VarSet& from, const VarSet& to, const Registry& registry);

// tr_locals(channel(body)(sigma (x) rho)).  rho is given on `locals` in the
// listed order; sigma on qvar(body) minus the locals in canonical order.
// Throws StateError when rho is not a density operator.
CMatrix evalBlock(const std::vector<std::string>& locals, const CMatrix& rho, const ProgramPtr& body,
                  const CMatrix& sigma, const Registry& registry, double tol = kTolEq);

// sum_i p_i channel(P_i), extended to the union of the branch variables.
// Throws ProbabilityError unless p_i > 0 and sum p_i <= 1.
SuperOp evalProbChoice(const std::vector<std::pair<ProgramPtr, double>>& branches, const Registry& registry,
                       double tol = kTolEq);

// Alternation guarded by subspaces, realised along the supplied bases:
// every branch is repeated once per basis vector of its subspace.
SuperOp subspaceQif(const std::vector<std::string>& coins, const std::vector<std::vector<CMatrix>>& subspaces,
                    const std::vector<ProgramPtr>& branches, const Registry& registry, double tol = kTolEq);

// Coefficient family described by `spec` for branches with the given
// semi-classical semantics.
AlphaFamily resolveAlpha(const AlphaSpec& spec, std::span<const OVF> branches);

} // namespace qgcl

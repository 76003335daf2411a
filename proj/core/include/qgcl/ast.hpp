#pragma once

#include "qgcl/linalg.hpp"
#include "qgcl/registry.hpp"

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qgcl {

struct SourceLoc {
    int line = 0;
    int column = 0;
};

struct GateDef {
    std::string name;   // printed form, e.g. "H", "PERM(1,0)" or a declared name
    CMatrix matrix;
    bool builtin = false;
};

struct MeasDef {
    std::string name;
    std::vector<std::string> outcomes;
    std::vector<CMatrix> ops;
    bool builtin = false;

    std::size_t dim() const { return ops.empty() ? 0 : ops.front().rows(); }
};

// How the coefficients of a parameterised alternation are chosen.
struct AlphaLambda {};
struct AlphaUniform {};
struct AlphaPhases {
    std::vector<double> angles; // one per branch
};
struct AlphaTable {
    std::vector<std::vector<Complex>> coefficients; // one row per branch
};
using AlphaSpec = std::variant<AlphaLambda, AlphaUniform, AlphaPhases, AlphaTable>;

class Program;
using ProgramPtr = std::shared_ptr<const Program>;

struct AbortStmt {};
struct SkipStmt {};

struct UnitaryStmt {
    GateDef gate;
    std::vector<std::string> qvars;
};

struct MeasureBranch {
    std::string outcome;
    ProgramPtr body;
};

struct MeasureStmt {
    MeasDef meas;
    std::vector<std::string> qvars;
    std::string cvar;
    std::vector<MeasureBranch> branches; // in outcome order
};

struct QIfStmt {
    std::vector<std::string> coins;
    std::vector<CMatrix> guards;
    std::vector<ProgramPtr> branches;
    std::optional<AlphaSpec> alpha;
};

struct SeqStmt {
    ProgramPtr first;
    ProgramPtr second;
};

struct BlockStmt {
    std::vector<std::string> locals;
    CMatrix init;
    ProgramPtr body;
};

struct ProbChoiceStmt {
    std::vector<std::pair<ProgramPtr, double>> branches;
};

// [coinProgram] (+) guards -> branches, sugar for coinProgram; qif.
struct QChoiceStmt {
    ProgramPtr coinProgram;
    std::vector<CMatrix> guards;
    std::vector<ProgramPtr> branches;
    std::optional<AlphaSpec> alpha;
};

// Alternation guarded by mutually orthogonal subspaces, each given by an
// orthonormal basis.
struct SubspaceQIfStmt {
    std::vector<std::string> coins;
    std::vector<std::vector<CMatrix>> subspaces;
    std::vector<ProgramPtr> branches;
};

/// Immutable program node.  Variable sets are computed once at
/// construction: `vars` are the classical variables, `qvars` the quantum
/// variables and `coinVars` the quantum variables used as coins.
class Program {
public:
    using Node = std::variant<AbortStmt, SkipStmt, UnitaryStmt, MeasureStmt, QIfStmt, SeqStmt, BlockStmt,
                              ProbChoiceStmt, QChoiceStmt, SubspaceQIfStmt>;

    static ProgramPtr abort(SourceLoc loc = {});
    static ProgramPtr skip(SourceLoc loc = {});
    static ProgramPtr unitary(GateDef gate, std::vector<std::string> qvars, SourceLoc loc = {});
    static ProgramPtr measure(MeasDef meas, std::vector<std::string> qvars, std::string cvar,
                              std::vector<MeasureBranch> branches, SourceLoc loc = {});
    static ProgramPtr qif(std::vector<std::string> coins, std::vector<CMatrix> guards,
                          std::vector<ProgramPtr> branches, std::optional<AlphaSpec> alpha = std::nullopt,
                          SourceLoc loc = {});
    // Sequential composition, kept left-nested.
    static ProgramPtr seq(ProgramPtr first, ProgramPtr second, SourceLoc loc = {});
    static ProgramPtr seqAll(const std::vector<ProgramPtr>& parts);
    static ProgramPtr block(std::vector<std::string> locals, CMatrix init, ProgramPtr body, SourceLoc loc = {});
    static ProgramPtr probChoice(std::vector<std::pair<ProgramPtr, double>> branches, SourceLoc loc = {});
    static ProgramPtr qchoice(ProgramPtr coinProgram, std::vector<CMatrix> guards, std::vector<ProgramPtr> branches,
                              std::optional<AlphaSpec> alpha = std::nullopt, SourceLoc loc = {});
    static ProgramPtr subspaceQif(std::vector<std::string> coins, std::vector<std::vector<CMatrix>> subspaces,
                                  std::vector<ProgramPtr> branches, SourceLoc loc = {});

    const Node& node() const noexcept { return node_; }
    SourceLoc loc() const noexcept { return loc_; }

    const std::set<std::string>& vars() const noexcept { return vars_; }
    const std::set<std::string>& qvars() const noexcept { return qvars_; }
    const std::set<std::string>& coinVars() const noexcept { return coinVars_; }

    template <class T>
    const T* as() const noexcept {
        return std::get_if<T>(&node_);
    }

private:
    Program(Node node, SourceLoc loc);
    void computeVariableSets();

    Node node_;
    SourceLoc loc_;
    std::set<std::string> vars_;
    std::set<std::string> qvars_;
    std::set<std::string> coinVars_;
};

/// A parsed source file: declarations plus the program body.
struct ProgramFile {
    Registry registry;
    std::vector<GateDef> gates;
    std::vector<MeasDef> measurements;
    ProgramPtr body;

    const GateDef* findGate(const std::string& name) const;
    const MeasDef* findMeasurement(const std::string& name) const;
};

// Names of the quantum variables of a program in canonical order.
VarSet qvarSet(const Program& p, const Registry& registry);
VarSet namesToSet(const std::set<std::string>& names, const Registry& registry);

/// Built-in gates and measurements.
namespace gatelib {

// Builds a built-in gate for `dim`; throws Error for unknown names or
// unsupported dimensions.  Names: I, X, Y, Z, H, S, T, CNOT, SWAP, TL, TR
// and the parameterised PERM(t0,...) and PHASE(theta).
GateDef builtin(const std::string& name, std::size_t dim, const std::vector<double>& args = {});
bool isBuiltinGate(const std::string& name);

// Cyclic shifts on a position register of dimension n.
CMatrix shiftLeft(std::size_t n);
CMatrix shiftRight(std::size_t n);
// Permutation unitary |i> -> |perm[i]>.
CMatrix permutation(const std::vector<std::size_t>& perm);

// MZ (computational basis, any dimension) and MX (qubit, outcomes + and -).
MeasDef builtinMeasurement(const std::string& name, std::size_t dim);
bool isBuiltinMeasurement(const std::string& name);

} // namespace gatelib

} // namespace qgcl

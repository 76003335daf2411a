#include "qgcl/ast.hpp"

#include "qgcl/errors.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace qgcl {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void addAll(std::set<std::string>& into, const std::set<std::string>& from) { into.insert(from.begin(), from.end()); }

void addBranches(std::set<std::string>& vars, std::set<std::string>& qvars, std::set<std::string>& coins,
                 const ProgramPtr& p) {
    addAll(vars, p->vars());
    addAll(qvars, p->qvars());
    addAll(coins, p->coinVars());
}

} // namespace

Program::Program(Node node, SourceLoc loc) : node_(std::move(node)), loc_(loc) { computeVariableSets(); }

void Program::computeVariableSets() {
    std::visit(Overloaded{
                   [](const AbortStmt&) {},
                   [](const SkipStmt&) {},
                   [&](const UnitaryStmt& s) { qvars_.insert(s.qvars.begin(), s.qvars.end()); },
                   [&](const MeasureStmt& s) {
                       vars_.insert(s.cvar);
                       qvars_.insert(s.qvars.begin(), s.qvars.end());
                       for (const auto& b : s.branches) addBranches(vars_, qvars_, coinVars_, b.body);
                   },
                   [&](const QIfStmt& s) {
                       qvars_.insert(s.coins.begin(), s.coins.end());
                       coinVars_.insert(s.coins.begin(), s.coins.end());
                       for (const auto& b : s.branches) addBranches(vars_, qvars_, coinVars_, b);
                   },
                   [&](const SeqStmt& s) {
                       addBranches(vars_, qvars_, coinVars_, s.first);
                       addBranches(vars_, qvars_, coinVars_, s.second);
                   },
                   [&](const BlockStmt& s) {
                       addBranches(vars_, qvars_, coinVars_, s.body);
                       for (const auto& l : s.locals) {
                           qvars_.erase(l);
                           coinVars_.erase(l);
                       }
                   },
                   [&](const ProbChoiceStmt& s) {
                       for (const auto& [b, p] : s.branches) addBranches(vars_, qvars_, coinVars_, b);
                   },
                   [&](const QChoiceStmt& s) {
                       addBranches(vars_, qvars_, coinVars_, s.coinProgram);
                       addAll(coinVars_, s.coinProgram->qvars());
                       for (const auto& b : s.branches) addBranches(vars_, qvars_, coinVars_, b);
                   },
                   [&](const SubspaceQIfStmt& s) {
                       qvars_.insert(s.coins.begin(), s.coins.end());
                       coinVars_.insert(s.coins.begin(), s.coins.end());
                       for (const auto& b : s.branches) addBranches(vars_, qvars_, coinVars_, b);
                   },
               },
               node_);
}

ProgramPtr Program::abort(SourceLoc loc) { return ProgramPtr(new Program(AbortStmt{}, loc)); }
ProgramPtr Program::skip(SourceLoc loc) { return ProgramPtr(new Program(SkipStmt{}, loc)); }

ProgramPtr Program::unitary(GateDef gate, std::vector<std::string> qvars, SourceLoc loc) {
    return ProgramPtr(new Program(UnitaryStmt{std::move(gate), std::move(qvars)}, loc));
}

ProgramPtr Program::measure(MeasDef meas, std::vector<std::string> qvars, std::string cvar,
                            std::vector<MeasureBranch> branches, SourceLoc loc) {
    return ProgramPtr(
        new Program(MeasureStmt{std::move(meas), std::move(qvars), std::move(cvar), std::move(branches)}, loc));
}

ProgramPtr Program::qif(std::vector<std::string> coins, std::vector<CMatrix> guards, std::vector<ProgramPtr> branches,
                        std::optional<AlphaSpec> alpha, SourceLoc loc) {
    if (guards.size() != branches.size()) throw Error("qif needs one guard per branch");
    return ProgramPtr(
        new Program(QIfStmt{std::move(coins), std::move(guards), std::move(branches), std::move(alpha)}, loc));
}

ProgramPtr Program::seq(ProgramPtr first, ProgramPtr second, SourceLoc loc) {
    if (const auto* s = second->as<SeqStmt>()) {
        return seq(seq(std::move(first), s->first, loc), s->second, loc);
    }
    return ProgramPtr(new Program(SeqStmt{std::move(first), std::move(second)}, loc));
}

ProgramPtr Program::seqAll(const std::vector<ProgramPtr>& parts) {
    if (parts.empty()) return skip();
    ProgramPtr acc = parts.front();
    for (std::size_t k = 1; k < parts.size(); ++k) acc = seq(acc, parts[k]);
    return acc;
}

ProgramPtr Program::block(std::vector<std::string> locals, CMatrix init, ProgramPtr body, SourceLoc loc) {
    return ProgramPtr(new Program(BlockStmt{std::move(locals), std::move(init), std::move(body)}, loc));
}

ProgramPtr Program::probChoice(std::vector<std::pair<ProgramPtr, double>> branches, SourceLoc loc) {
    return ProgramPtr(new Program(ProbChoiceStmt{std::move(branches)}, loc));
}

ProgramPtr Program::qchoice(ProgramPtr coinProgram, std::vector<CMatrix> guards, std::vector<ProgramPtr> branches,
                            std::optional<AlphaSpec> alpha, SourceLoc loc) {
    if (guards.size() != branches.size()) throw Error("quantum choice needs one guard per branch");
    return ProgramPtr(new Program(
        QChoiceStmt{std::move(coinProgram), std::move(guards), std::move(branches), std::move(alpha)}, loc));
}

ProgramPtr Program::subspaceQif(std::vector<std::string> coins, std::vector<std::vector<CMatrix>> subspaces,
                                std::vector<ProgramPtr> branches, SourceLoc loc) {
    if (subspaces.size() != branches.size()) throw Error("qif needs one subspace per branch");
    return ProgramPtr(
        new Program(SubspaceQIfStmt{std::move(coins), std::move(subspaces), std::move(branches)}, loc));
}

const GateDef* ProgramFile::findGate(const std::string& name) const {
    for (const auto& g : gates)
        if (g.name == name) return &g;
    return nullptr;
}

const MeasDef* ProgramFile::findMeasurement(const std::string& name) const {
    for (const auto& m : measurements)
        if (m.name == name) return &m;
    return nullptr;
}

VarSet namesToSet(const std::set<std::string>& names, const Registry& registry) {
    std::vector<std::string> list(names.begin(), names.end());
    return registry.makeSet(list);
}

VarSet qvarSet(const Program& p, const Registry& registry) { return namesToSet(p.qvars(), registry); }

namespace gatelib {

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

void requireDim(const std::string& name, std::size_t dim, std::size_t expected) {
    if (dim != expected) {
        throw DimensionError("gate " + name + " acts on dimension " + std::to_string(expected) + ", not " +
                             std::to_string(dim));
    }
}

} // namespace

CMatrix shiftLeft(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m((k + n - 1) % n, k) = 1.0;
    return m;
}

CMatrix shiftRight(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m((k + 1) % n, k) = 1.0;
    return m;
}

CMatrix permutation(const std::vector<std::size_t>& perm) {
    const std::size_t n = perm.size();
    std::vector<bool> hit(n, false);
    CMatrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        if (perm[k] >= n || hit[perm[k]]) throw Error("PERM arguments are not a permutation");
        hit[perm[k]] = true;
        m(perm[k], k) = 1.0;
    }
    return m;
}

bool isBuiltinGate(const std::string& name) {
    static const std::set<std::string> names{"I", "X", "Y", "Z", "H", "S", "T", "CNOT", "SWAP", "TL", "TR", "PERM",
                                             "PHASE"};
    return names.count(name) > 0;
}

GateDef builtin(const std::string& name, std::size_t dim, const std::vector<double>& args) {
    const Complex i{0.0, 1.0};
    GateDef g{name, {}, true};
    const bool parameterised = name == "PERM" || name == "PHASE";
    if (!parameterised && !args.empty()) throw Error("gate " + name + " takes no arguments");
    if (name == "I") {
        g.matrix = CMatrix::identity(dim);
    } else if (name == "X") {
        requireDim(name, dim, 2);
        g.matrix = CMatrix::fromRows({{0, 1}, {1, 0}});
    } else if (name == "Y") {
        requireDim(name, dim, 2);
        g.matrix = CMatrix::fromRows({{0, -i}, {i, 0}});
    } else if (name == "Z") {
        requireDim(name, dim, 2);
        g.matrix = CMatrix::fromRows({{1, 0}, {0, -1}});
    } else if (name == "H") {
        requireDim(name, dim, 2);
        g.matrix = CMatrix::fromRows({{kInvSqrt2, kInvSqrt2}, {kInvSqrt2, -kInvSqrt2}});
    } else if (name == "S") {
        requireDim(name, dim, 2);
        g.matrix = CMatrix::fromRows({{1, 0}, {0, i}});
    } else if (name == "T") {
        requireDim(name, dim, 2);
        g.matrix = CMatrix::fromRows({{1, 0}, {0, std::polar(1.0, std::numbers::pi / 4)}});
    } else if (name == "CNOT") {
        requireDim(name, dim, 4);
        g.matrix = CMatrix::fromRows({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
    } else if (name == "SWAP") {
        const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(dim))));
        if (d * d != dim) throw DimensionError("SWAP needs two registers of equal dimension");
        CMatrix m(dim, dim);
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b) m(b * d + a, a * d + b) = 1.0;
        g.matrix = m;
    } else if (name == "TL") {
        g.matrix = shiftLeft(dim);
    } else if (name == "TR") {
        g.matrix = shiftRight(dim);
    } else if (name == "PERM") {
        std::vector<std::size_t> perm;
        std::string printed = "PERM(";
        for (std::size_t k = 0; k < args.size(); ++k) {
            if (args[k] < 0 || args[k] != std::floor(args[k])) throw Error("PERM arguments must be indices");
            perm.push_back(static_cast<std::size_t>(args[k]));
            printed += (k ? "," : "") + std::to_string(perm.back());
        }
        requireDim(name, dim, perm.size());
        g.matrix = permutation(perm);
        g.name = printed + ")";
    } else if (name == "PHASE") {
        if (args.size() != 1) throw Error("PHASE takes one angle");
        requireDim(name, dim, 2);
        g.matrix = CMatrix::fromRows({{1, 0}, {0, std::polar(1.0, args[0])}});
        char buf[64];
        std::snprintf(buf, sizeof buf, "PHASE(%.17g)", args[0]);
        g.name = buf;
    } else {
        throw Error("unknown gate '" + name + "'");
    }
    return g;
}

bool isBuiltinMeasurement(const std::string& name) { return name == "MZ" || name == "MX"; }

MeasDef builtinMeasurement(const std::string& name, std::size_t dim) {
    MeasDef m{name, {}, {}, true};
    if (name == "MZ") {
        for (std::size_t k = 0; k < dim; ++k) {
            m.outcomes.push_back(std::to_string(k));
            m.ops.push_back(CMatrix::projector(CMatrix::basisVector(dim, k)));
        }
    } else if (name == "MX") {
        if (dim != 2) throw DimensionError("MX measures a qubit, not dimension " + std::to_string(dim));
        const CMatrix plus = CMatrix::fromRows({{kInvSqrt2}, {kInvSqrt2}});
        const CMatrix minus = CMatrix::fromRows({{kInvSqrt2}, {-kInvSqrt2}});
        m.outcomes = {"+", "-"};
        m.ops = {CMatrix::projector(plus), CMatrix::projector(minus)};
    } else {
        throw Error("unknown measurement '" + name + "'");
    }
    return m;
}

} // namespace gatelib

} // namespace qgcl

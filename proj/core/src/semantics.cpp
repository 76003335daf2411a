#include "qgcl/semantics.hpp"

#include "qgcl/errors.hpp"
#include "qgcl/parser.hpp"

#include <cmath>

namespace qgcl {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

OVF constant(const CMatrix& op) {
    return OVF(VarSet{}, 1, {{ClassicalState::empty(), op}});
}

// Positions of the variables of `sub` inside the canonical list of `set`.
std::vector<std::size_t> positionsIn(const VarSet& sub, const VarSet& set) {
    std::vector<std::size_t> out;
    const auto all = set.indices();
    for (std::size_t v : sub.indices()) {
        for (std::size_t k = 0; k < all.size(); ++k)
            if (all[k] == v) out.push_back(k);
    }
    return out;
}

// Mixed-radix digits of `index` over `dims` (first most significant).
std::vector<std::size_t> digitsOf(std::size_t index, const std::vector<std::size_t>& dims) {
    std::vector<std::size_t> out(dims.size());
    for (std::size_t k = dims.size(); k-- > 0;) {
        out[k] = index % dims[k];
        index /= dims[k];
    }
    return out;
}

// Block (row digits `a`, column digits `b` on the factors `fixed`) of a
// square matrix on `dims`, as an operator on the remaining factors.
CMatrix subBlock(const CMatrix& m, std::span<const std::size_t> dims, std::span<const std::size_t> fixed,
                 std::span<const std::size_t> a, std::span<const std::size_t> b) {
    const CMatrix rows = projectRows(m, dims, fixed, a);
    return projectRows(rows.adjoint(), dims, fixed, b).adjoint();
}

void validateState(const CMatrix& rho, std::size_t dim, double tol) {
    if (rho.rows() != dim || rho.cols() != dim) {
        throw StateError("initial state must be a " + std::to_string(dim) + "x" + std::to_string(dim) + " matrix");
    }
    if (std::abs(rho.trace() - Complex{1.0, 0.0}) > tol) throw StateError("initial state does not have unit trace");
    if (!isPSD(rho, tol)) throw StateError("initial state is not positive semidefinite");
}

void validateWeights(const std::vector<double>& weights, double tol) {
    double total = 0.0;
    for (double w : weights) {
        if (!(w > 0.0)) throw ProbabilityError("probabilities must be positive");
        total += w;
    }
    if (total > 1.0 + tol) throw ProbabilityError("probabilities sum to " + std::to_string(total) + " > 1");
}

} // namespace

std::vector<ClassicalState> SemResult::deltas() const {
    std::vector<ClassicalState> out;
    for (const auto& e : semi.entries()) out.push_back(e.state);
    return out;
}

Evaluator::Evaluator(const Registry& registry, double tol) : registry_(registry), tol_(tol) {}

SemResult Evaluator::semiClassical(const ProgramPtr& p) {
    OVF f = eval(p);
    VarSet vars = f.vars();
    return {p, std::move(vars), std::move(f)};
}

SuperOp Evaluator::channelOf(const ProgramPtr& p) { return toSuperOp(eval(p)); }

SuperOp Evaluator::channelOn(const ProgramPtr& p, const VarSet& space) {
    OVF f = eval(p);
    return extendChannel(toSuperOp(f), f.vars(), space, registry_);
}

std::string Evaluator::freshName(const char* prefix) { return std::string(prefix) + std::to_string(++counter_); }

OVF Evaluator::eval(const ProgramPtr& p) {
    return std::visit(
        Overloaded{
            [&](const AbortStmt&) { return constant(CMatrix::zero(1, 1)); },
            [&](const SkipStmt&) { return constant(CMatrix::identity(1)); },
            [&](const UnitaryStmt& s) {
                const auto order = registry_.indicesOf(s.qvars);
                const VarSet vars = VarSet::fromIndices(order);
                if (vars.size() != order.size()) throw VariableScopeError("gate applied to a repeated variable");
                return OVF(vars, registry_.dimOf(vars),
                           {{ClassicalState::empty(), registry_.embed(s.gate.matrix, order, vars)}});
            },
            [&](const MeasureStmt& s) { return evalMeasure(s); },
            [&](const QIfStmt& s) { return evalQif(s.coins, s.guards, s.branches, s.alpha); },
            [&](const SeqStmt& s) { return evalSeq(s); },
            [&](const BlockStmt& s) { return evalBlock(s); },
            [&](const ProbChoiceStmt& s) { return evalProbChoice(s); },
            [&](const QChoiceStmt&) { return eval(desugarQChoice(p, registry_)); },
            [&](const SubspaceQIfStmt& s) { return evalSubspaceQif(s); },
        },
        p->node());
}

OVF Evaluator::evalMeasure(const MeasureStmt& s) {
    const auto order = registry_.indicesOf(s.qvars);
    VarSet vars = VarSet::fromIndices(order);
    if (vars.size() != order.size()) throw VariableScopeError("measurement of a repeated variable");

    std::vector<OVF> branches;
    for (const auto& outcome : s.meas.outcomes) {
        const MeasureBranch* found = nullptr;
        for (const auto& b : s.branches)
            if (b.outcome == outcome) found = &b;
        if (!found) throw Error("measurement " + s.meas.name + " has no branch for outcome '" + outcome + "'");
        branches.push_back(eval(found->body));
        vars = vars.unite(branches.back().vars());
    }

    std::vector<OvfEntry> out;
    for (std::size_t k = 0; k < branches.size(); ++k) {
        const CMatrix m = registry_.embed(s.meas.ops[k], order, vars);
        const auto mark = ClassicalState::assign(s.cvar, s.meas.outcomes[k]);
        for (const auto& e : branches[k].entries()) {
            out.push_back({ClassicalState::concat(e.state, mark), registry_.embed(e.op, branches[k].vars(), vars) * m});
        }
    }
    return OVF(vars, registry_.dimOf(vars), std::move(out));
}

AlphaFamily resolveAlpha(const AlphaSpec& spec, std::span<const OVF> branches) {
    std::vector<std::size_t> sizes;
    for (const auto& b : branches) sizes.push_back(b.size());
    return std::visit(Overloaded{
                          [&](const AlphaLambda&) { return AlphaFamily::fromLambda(branches); },
                          [&](const AlphaUniform&) { return AlphaFamily::uniform(sizes); },
                          [&](const AlphaPhases& ph) {
                              if (ph.angles.size() != branches.size()) {
                                  throw AlphaNormalizationError("phase family needs one angle per branch");
                              }
                              const AlphaFamily base = AlphaFamily::fromLambda(branches);
                              std::vector<std::vector<Complex>> coeffs;
                              for (std::size_t k = 0; k < branches.size(); ++k) {
                                  auto row = base.coefficients(k);
                                  for (auto& c : row) c *= std::polar(1.0, ph.angles[k]);
                                  coeffs.push_back(std::move(row));
                              }
                              return AlphaFamily(sizes, std::move(coeffs));
                          },
                          [&](const AlphaTable& t) { return AlphaFamily(sizes, t.coefficients); },
                      },
                      spec);
}

OVF Evaluator::evalQif(const std::vector<std::string>& coins, const std::vector<CMatrix>& guards,
                       const std::vector<ProgramPtr>& branches, const std::optional<AlphaSpec>& alpha) {
    const auto coinOrder = registry_.indicesOf(coins);
    std::vector<GuardedBranch> gb;
    std::vector<OVF> fns;
    for (std::size_t k = 0; k < branches.size(); ++k) {
        fns.push_back(eval(branches[k]));
        gb.push_back({guards.at(k), fns.back()});
    }
    if (alpha) return alphaGuardedCompose(coinOrder, gb, resolveAlpha(*alpha, fns), registry_, tol_);
    return guardedCompose(coinOrder, gb, registry_, tol_);
}

OVF Evaluator::evalSeq(const SeqStmt& s) {
    const OVF first = eval(s.first);
    const OVF second = eval(s.second);
    const VarSet vars = first.vars().unite(second.vars());
    std::vector<CMatrix> a;
    for (const auto& e : first.entries()) a.push_back(registry_.embed(e.op, first.vars(), vars));
    std::vector<CMatrix> b;
    for (const auto& e : second.entries()) b.push_back(registry_.embed(e.op, second.vars(), vars));
    std::vector<OvfEntry> out;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out.push_back({ClassicalState::concat(first.entry(i).state, second.entry(j).state), b[j] * a[i]});
    return OVF(vars, registry_.dimOf(vars), std::move(out));
}

OVF Evaluator::evalBlock(const BlockStmt& s) {
    const OVF body = eval(s.body);
    const auto localOrder = registry_.indicesOf(s.locals);
    const VarSet locals = VarSet::fromIndices(localOrder);
    if (locals.size() != localOrder.size()) throw VariableScopeError("repeated local variable");
    if (!locals.isSubsetOf(body.vars())) {
        throw VariableScopeError("local variables must be quantum variables of the block body");
    }
    const std::size_t localDim = registry_.dimOf(locals);
    validateState(s.init, localDim, tol_);

    const VarSet& full = body.vars();
    const VarSet outer = full.minus(locals);
    const auto dims = registry_.dimsOf(full);
    const auto localPos = positionsIn(locals, full);
    const auto localDims = registry_.dimsOf(locals);

    // rho = sum_b s_b |phi_b><phi_b| in canonical local order.
    const CMatrix rho = registry_.embed(s.init, localOrder, locals);
    const HermitianEigen eig = eigenHermitian(rho);
    const std::string name = freshName("#blk");
    const std::vector<std::size_t> zero(localPos.size(), 0);

    std::vector<OvfEntry> out;
    for (std::size_t b = 0; b < eig.values.size(); ++b) {
        const double weight = eig.values[b];
        if (weight <= 1e-14) continue;
        // |phi_b><0| on the locals, lifted to the body space.
        CMatrix prep(localDim, localDim);
        for (std::size_t r = 0; r < localDim; ++r) prep(r, 0) = eig.vectors(r, b) * std::sqrt(weight);
        const CMatrix lift = registry_.embed(prep, locals, full);
        for (const auto& e : body.entries()) {
            const CMatrix m = e.op * lift;
            for (std::size_t a = 0; a < localDim; ++a) {
                const auto digits = digitsOf(a, localDims);
                const std::string value = std::to_string(a) + ":" + std::to_string(b);
                out.push_back({ClassicalState::concat(e.state, ClassicalState::assign(name, value)),
                               subBlock(m, dims, localPos, digits, zero)});
            }
        }
    }
    if (out.empty()) throw StateError("initial state has no support");
    return OVF(outer, registry_.dimOf(outer), std::move(out));
}

OVF Evaluator::evalProbChoice(const ProbChoiceStmt& s) {
    std::vector<double> weights;
    for (const auto& [b, w] : s.branches) weights.push_back(w);
    validateWeights(weights, tol_);
    std::vector<OVF> fns;
    VarSet vars;
    for (const auto& [b, w] : s.branches) {
        fns.push_back(eval(b));
        vars = vars.unite(fns.back().vars());
    }
    const std::string name = freshName("#pc");
    std::vector<OvfEntry> out;
    for (std::size_t k = 0; k < fns.size(); ++k) {
        const auto mark = ClassicalState::assign(name, std::to_string(k));
        const Complex scale{std::sqrt(weights[k]), 0.0};
        for (const auto& e : fns[k].entries()) {
            out.push_back({ClassicalState::concat(e.state, mark), registry_.embed(e.op, fns[k].vars(), vars) * scale});
        }
    }
    return OVF(vars, registry_.dimOf(vars), std::move(out));
}

OVF Evaluator::evalSubspaceQif(const SubspaceQIfStmt& s) {
    std::vector<CMatrix> guards;
    std::vector<ProgramPtr> branches;
    for (std::size_t k = 0; k < s.subspaces.size(); ++k) {
        if (s.subspaces[k].empty()) throw GuardBasisError("guard subspace " + std::to_string(k) + " is empty");
        for (const auto& v : s.subspaces[k]) {
            guards.push_back(v);
            branches.push_back(s.branches.at(k));
        }
    }
    return evalQif(s.coins, guards, branches, std::nullopt);
}

SemResult semiClassical(const ProgramPtr& p, const Registry& registry) { return Evaluator(registry).semiClassical(p); }

SuperOp channelOf(const ProgramPtr& p, const Registry& registry) { return Evaluator(registry).channelOf(p); }

SuperOp extendChannel(const SuperOp& e, const VarSet& from, const VarSet& to, const Registry& registry) {
    if (!from.isSubsetOf(to)) throw VariableScopeError("cannot extend an operation to a smaller space");
    if (from == to) return e;
    std::vector<CMatrix> ks;
    ks.reserve(e.kraus().size());
    for (const auto& k : e.kraus()) ks.push_back(registry.embed(k, from, to));
    const std::size_t d = registry.dimOf(to);
    return SuperOp(d, d, std::move(ks));
}

CMatrix evalBlock(const std::vector<std::string>& locals, const CMatrix& rho, const ProgramPtr& body,
                  const CMatrix& sigma, const Registry& registry, double tol) {
    const auto localOrder = registry.indicesOf(locals);
    const VarSet localSet = VarSet::fromIndices(localOrder);
    Evaluator ev(registry, tol);
    const OVF f = ev.semiClassical(body).semi;
    if (!localSet.isSubsetOf(f.vars())) {
        throw VariableScopeError("local variables must be quantum variables of the block body");
    }
    validateState(rho, registry.dimOf(localOrder), tol);
    const VarSet outer = f.vars().minus(localSet);
    if (sigma.rows() != registry.dimOf(outer) || sigma.cols() != registry.dimOf(outer)) {
        throw DimensionError("input state does not match the non-local variables of the block");
    }
    std::vector<std::size_t> order(outer.indices().begin(), outer.indices().end());
    order.insert(order.end(), localOrder.begin(), localOrder.end());
    const CMatrix joint = registry.embed(tensor(sigma, rho), order, f.vars());
    const CMatrix after = toSuperOp(f).apply(joint);
    const auto traced = positionsIn(localSet, f.vars());
    return partialTrace(after, registry.dimsOf(f.vars()), traced);
}

SuperOp evalProbChoice(const std::vector<std::pair<ProgramPtr, double>>& branches, const Registry& registry,
                       double tol) {
    std::vector<double> weights;
    for (const auto& [b, w] : branches) weights.push_back(w);
    validateWeights(weights, tol);
    Evaluator ev(registry, tol);
    VarSet vars;
    std::vector<SemResult> results;
    for (const auto& [b, w] : branches) {
        results.push_back(ev.semiClassical(b));
        vars = vars.unite(results.back().vars);
    }
    const std::size_t d = registry.dimOf(vars);
    SuperOp acc(d, d, {});
    for (std::size_t k = 0; k < results.size(); ++k) {
        acc = acc.plus(extendChannel(results[k].channel(), results[k].vars, vars, registry).scaled(weights[k]));
    }
    return acc;
}

SuperOp subspaceQif(const std::vector<std::string>& coins, const std::vector<std::vector<CMatrix>>& subspaces,
                    const std::vector<ProgramPtr>& branches, const Registry& registry, double tol) {
    Evaluator ev(registry, tol);
    return ev.channelOf(Program::subspaceQif(coins, subspaces, branches));
}

} // namespace qgcl

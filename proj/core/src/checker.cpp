#include "qgcl/errors.hpp"
#include "qgcl/ovf.hpp"
#include "qgcl/parser.hpp"

#include <algorithm>
#include <cmath>

namespace qgcl {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool hasDuplicates(std::vector<std::string> xs) {
    std::sort(xs.begin(), xs.end());
    return std::adjacent_find(xs.begin(), xs.end()) != xs.end();
}

std::string joinNames(const std::set<std::string>& xs) {
    std::string out;
    for (const auto& x : xs) out += (out.empty() ? "" : ", ") + x;
    return out;
}

std::set<std::string> overlap(const std::set<std::string>& a, const std::set<std::string>& b) {
    std::set<std::string> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.begin()));
    return out;
}

// Number of classical states of a program, used to validate coefficient
// tables without evaluating operators.
std::size_t stateCount(const ProgramPtr& p) {
    return std::visit(Overloaded{
                          [](const MeasureStmt& s) {
                              std::size_t n = 0;
                              for (const auto& b : s.branches) n += stateCount(b.body);
                              return n;
                          },
                          [](const QIfStmt& s) {
                              std::size_t n = 1;
                              for (const auto& b : s.branches) n *= stateCount(b);
                              return n;
                          },
                          [](const SeqStmt& s) { return stateCount(s.first) * stateCount(s.second); },
                          [](const QChoiceStmt& s) {
                              std::size_t n = 1;
                              for (const auto& b : s.branches) n *= stateCount(b);
                              return stateCount(s.coinProgram) * n;
                          },
                          [](const SubspaceQIfStmt& s) {
                              std::size_t n = 1;
                              for (std::size_t k = 0; k < s.branches.size(); ++k) {
                                  for (std::size_t j = 0; j < s.subspaces[k].size(); ++j) n *= stateCount(s.branches[k]);
                              }
                              return n;
                          },
                          [](const auto&) { return std::size_t{1}; },
                      },
                      p->node());
}

bool isChannelOnly(const ProgramPtr& p) {
    return std::visit(Overloaded{
                          [](const BlockStmt&) { return true; },
                          [](const ProbChoiceStmt&) { return true; },
                          [](const MeasureStmt& s) {
                              return std::any_of(s.branches.begin(), s.branches.end(),
                                                 [](const MeasureBranch& b) { return isChannelOnly(b.body); });
                          },
                          [](const QIfStmt& s) {
                              return std::any_of(s.branches.begin(), s.branches.end(), isChannelOnly);
                          },
                          [](const SeqStmt& s) { return isChannelOnly(s.first) || isChannelOnly(s.second); },
                          [](const QChoiceStmt& s) {
                              return isChannelOnly(s.coinProgram) ||
                                     std::any_of(s.branches.begin(), s.branches.end(), isChannelOnly);
                          },
                          [](const SubspaceQIfStmt& s) {
                              return std::any_of(s.branches.begin(), s.branches.end(), isChannelOnly);
                          },
                          [](const auto&) { return false; },
                      },
                      p->node());
}

class Checker {
public:
    Checker(const Registry& registry, double tol) : registry_(registry), tol_(tol) {}

    std::vector<Diagnostic> run(const ProgramPtr& p) {
        visit(p);
        return std::move(out_);
    }

private:
    void report(const ProgramPtr& p, std::string clause, std::string message) {
        out_.push_back({std::move(clause), std::move(message), p->loc()});
    }

    bool knownVars(const ProgramPtr& p, const std::vector<std::string>& names, const std::string& clause) {
        bool ok = true;
        for (const auto& n : names) {
            if (!registry_.hasQVar(n)) {
                report(p, clause, "unknown quantum variable '" + n + "'");
                ok = false;
            }
        }
        return ok;
    }

    std::size_t dimOf(const std::vector<std::string>& names) const {
        std::size_t d = 1;
        for (const auto& n : names) d *= registry_.qvar(registry_.qvarIndex(n)).dim;
        return d;
    }

    void checkGuards(const ProgramPtr& p, const std::vector<CMatrix>& guards, std::size_t dim,
                     const std::string& clause) {
        try {
            validateGuardBasis(guards, dim, tol_);
        } catch (const GuardBasisError& e) {
            report(p, clause, std::string("guards must form an orthonormal basis of the coin space: ") + e.what());
        }
    }

    void checkBranchesSemiClassical(const ProgramPtr& p, const std::vector<ProgramPtr>& branches,
                                    const std::string& clause) {
        for (const auto& b : branches) {
            if (isChannelOnly(b)) {
                report(p, clause,
                       "blocks and probabilistic choices have no operator-valued semantics and cannot appear "
                       "inside a quantum alternation");
            }
        }
    }

    void checkAlpha(const ProgramPtr& p, const std::optional<AlphaSpec>& alpha, const std::vector<ProgramPtr>& branches,
                    const std::string& clause) {
        if (!alpha) return;
        std::vector<std::size_t> sizes;
        for (const auto& b : branches) sizes.push_back(stateCount(b));
        if (const auto* ph = std::get_if<AlphaPhases>(&*alpha)) {
            if (ph->angles.size() != branches.size()) {
                report(p, clause, "phase family needs one angle per branch");
            }
        } else if (const auto* tab = std::get_if<AlphaTable>(&*alpha)) {
            try {
                AlphaFamily(sizes, tab->coefficients).validate(tol_);
            } catch (const AlphaNormalizationError& e) {
                report(p, clause, std::string("coefficient table: ") + e.what());
            }
        }
    }

    void visit(const ProgramPtr& p) {
        std::visit(
            Overloaded{
                [](const AbortStmt&) {},
                [](const SkipStmt&) {},
                [&](const UnitaryStmt& s) {
                    if (!knownVars(p, s.qvars, "clause-2")) return;
                    if (hasDuplicates(s.qvars)) report(p, "clause-2", "gate applied to a repeated variable");
                    if (s.gate.matrix.rows() != dimOf(s.qvars) || !s.gate.matrix.isSquare()) {
                        report(p, "clause-2", "gate " + s.gate.name + " does not match the register dimension");
                    } else if (!isUnitary(s.gate.matrix, tol_)) {
                        report(p, "clause-2", "gate " + s.gate.name + " is not unitary");
                    }
                },
                [&](const MeasureStmt& s) {
                    for (const auto& b : s.branches) visit(b.body);
                    if (!knownVars(p, s.qvars, "clause-3")) return;
                    if (hasDuplicates(s.qvars)) report(p, "clause-3", "measurement of a repeated variable");
                    const std::size_t dim = dimOf(s.qvars);
                    CMatrix sum(dim, dim);
                    bool shapesOk = true;
                    for (const auto& m : s.meas.ops) {
                        if (m.rows() != dim || m.cols() != dim) {
                            shapesOk = false;
                        } else {
                            sum += m.adjoint() * m;
                        }
                    }
                    if (!shapesOk) {
                        report(p, "clause-3", "measurement " + s.meas.name + " does not match the register dimension");
                    } else if (!approxEqual(sum, CMatrix::identity(dim), tol_)) {
                        report(p, "clause-3", "measurement " + s.meas.name + " is not complete");
                    }
                    for (const auto& b : s.branches) {
                        if (b.body->vars().count(s.cvar)) {
                            report(p, "clause-3", "classical variable '" + s.cvar + "' is reused inside a branch");
                            break;
                        }
                    }
                    for (const auto& o : s.meas.outcomes) {
                        const auto n = std::count_if(s.branches.begin(), s.branches.end(),
                                                     [&](const MeasureBranch& b) { return b.outcome == o; });
                        if (n != 1) {
                            report(p, "clause-3", "outcome '" + o + "' needs exactly one branch, found " + std::to_string(n));
                        }
                    }
                    if (const CVarDecl* decl = registry_.findCVar(s.cvar)) {
                        for (const auto& o : s.meas.outcomes) {
                            if (std::find(decl->domain.begin(), decl->domain.end(), o) == decl->domain.end()) {
                                report(p, "clause-3", "outcome '" + o + "' is not in the domain of '" + s.cvar + "'");
                            }
                        }
                    } else if (registry_.hasQVar(s.cvar)) {
                        report(p, "clause-3", "'" + s.cvar + "' is a quantum variable");
                    }
                },
                [&](const QIfStmt& s) {
                    for (const auto& b : s.branches) visit(b);
                    if (!knownVars(p, s.coins, "clause-4")) return;
                    if (hasDuplicates(s.coins)) report(p, "clause-4", "repeated coin variable");
                    std::set<std::string> inner;
                    for (const auto& b : s.branches) inner.insert(b->qvars().begin(), b->qvars().end());
                    const auto clash = overlap({s.coins.begin(), s.coins.end()}, inner);
                    if (!clash.empty()) report(p, "clause-4", "coin variable used inside a branch: " + joinNames(clash));
                    checkGuards(p, s.guards, dimOf(s.coins), "clause-4");
                    checkBranchesSemiClassical(p, s.branches, "clause-4");
                    checkAlpha(p, s.alpha, s.branches, "clause-4");
                },
                [&](const SeqStmt& s) {
                    visit(s.first);
                    visit(s.second);
                    const auto clash = overlap(s.first->vars(), s.second->vars());
                    if (!clash.empty()) {
                        report(p, "clause-5", "classical variables shared by both parts: " + joinNames(clash));
                    }
                },
                [&](const BlockStmt& s) {
                    visit(s.body);
                    if (!knownVars(p, s.locals, "block")) return;
                    if (hasDuplicates(s.locals)) report(p, "block", "repeated local variable");
                    for (const auto& l : s.locals) {
                        if (!s.body->qvars().count(l)) report(p, "block", "local variable '" + l + "' is not used by the body");
                    }
                    if (s.init.rows() != dimOf(s.locals) || !isDensityOperator(s.init, tol_)) {
                        report(p, "block", "initial state is not a density operator on the local variables");
                    }
                },
                [&](const ProbChoiceStmt& s) {
                    double total = 0.0;
                    for (const auto& [b, w] : s.branches) {
                        visit(b);
                        if (!(w > 0.0)) report(p, "pchoice", "probabilities must be positive");
                        total += w;
                    }
                    if (total > 1.0 + tol_) report(p, "pchoice", "probabilities sum to more than 1");
                },
                [&](const QChoiceStmt& s) {
                    visit(s.coinProgram);
                    for (const auto& b : s.branches) visit(b);
                    const auto& coin = s.coinProgram->qvars();
                    if (coin.empty()) {
                        report(p, "choice", "the coin program acts on no quantum variable");
                        return;
                    }
                    std::set<std::string> inner;
                    for (const auto& b : s.branches) inner.insert(b->qvars().begin(), b->qvars().end());
                    const auto clash = overlap(coin, inner);
                    if (!clash.empty()) report(p, "clause-4", "coin variable used inside a branch: " + joinNames(clash));
                    for (const auto& b : s.branches) {
                        const auto shared = overlap(s.coinProgram->vars(), b->vars());
                        if (!shared.empty()) {
                            report(p, "clause-5", "classical variables shared by the coin program and a branch: " +
                                                      joinNames(shared));
                        }
                    }
                    checkGuards(p, s.guards, dimOf({coin.begin(), coin.end()}), "clause-4");
                    checkBranchesSemiClassical(p, s.branches, "clause-4");
                    checkAlpha(p, s.alpha, s.branches, "clause-4");
                },
                [&](const SubspaceQIfStmt& s) {
                    for (const auto& b : s.branches) visit(b);
                    if (!knownVars(p, s.coins, "subspace")) return;
                    std::set<std::string> inner;
                    for (const auto& b : s.branches) inner.insert(b->qvars().begin(), b->qvars().end());
                    const auto clash = overlap({s.coins.begin(), s.coins.end()}, inner);
                    if (!clash.empty()) report(p, "clause-4", "coin variable used inside a branch: " + joinNames(clash));
                    std::vector<CMatrix> all;
                    for (const auto& sub : s.subspaces) all.insert(all.end(), sub.begin(), sub.end());
                    checkGuards(p, all, dimOf(s.coins), "subspace");
                    checkBranchesSemiClassical(p, s.branches, "clause-4");
                },
            },
            p->node());
    }

    const Registry& registry_;
    double tol_;
    std::vector<Diagnostic> out_;
};

} // namespace

std::string formatDiagnostic(const Diagnostic& d) {
    return std::to_string(d.loc.line) + ":" + std::to_string(d.loc.column) + ": " + d.clause + ": " + d.message;
}

std::vector<Diagnostic> check(const ProgramPtr& program, const Registry& registry, double tol) {
    return Checker(registry, tol).run(program);
}

std::vector<Diagnostic> check(const ProgramFile& file, double tol) {
    std::vector<Diagnostic> out;
    for (const auto& g : file.gates) {
        if (!isUnitary(g.matrix, tol)) out.push_back({"clause-2", "gate " + g.name + " is not unitary", {}});
    }
    for (const auto& m : file.measurements) {
        CMatrix sum(m.dim(), m.dim());
        for (const auto& op : m.ops) sum += op.adjoint() * op;
        if (!approxEqual(sum, CMatrix::identity(m.dim()), tol)) {
            out.push_back({"clause-3", "measurement " + m.name + " is not complete", {}});
        }
    }
    auto body = check(file.body, file.registry, tol);
    out.insert(out.end(), body.begin(), body.end());
    return out;
}

ProgramPtr desugarQChoice(const ProgramPtr& p, const Registry& registry) {
    auto rec = [&](const ProgramPtr& q) { return desugarQChoice(q, registry); };
    auto recAll = [&](const std::vector<ProgramPtr>& qs) {
        std::vector<ProgramPtr> out;
        for (const auto& q : qs) out.push_back(rec(q));
        return out;
    };
    return std::visit(
        Overloaded{
            [&](const AbortStmt&) { return p; },
            [&](const SkipStmt&) { return p; },
            [&](const UnitaryStmt&) { return p; },
            [&](const MeasureStmt& s) {
                std::vector<MeasureBranch> branches;
                for (const auto& b : s.branches) branches.push_back({b.outcome, rec(b.body)});
                return Program::measure(s.meas, s.qvars, s.cvar, std::move(branches), p->loc());
            },
            [&](const QIfStmt& s) { return Program::qif(s.coins, s.guards, recAll(s.branches), s.alpha, p->loc()); },
            [&](const SeqStmt& s) { return Program::seq(rec(s.first), rec(s.second), p->loc()); },
            [&](const BlockStmt& s) { return Program::block(s.locals, s.init, rec(s.body), p->loc()); },
            [&](const ProbChoiceStmt& s) {
                std::vector<std::pair<ProgramPtr, double>> branches;
                for (const auto& [b, w] : s.branches) branches.emplace_back(rec(b), w);
                return Program::probChoice(std::move(branches), p->loc());
            },
            [&](const QChoiceStmt& s) {
                const auto coinSet = qvarSet(*s.coinProgram, registry);
                auto coins = registry.namesOf(coinSet);
                auto alt = Program::qif(std::move(coins), s.guards, recAll(s.branches), s.alpha, p->loc());
                return Program::seq(rec(s.coinProgram), alt, p->loc());
            },
            [&](const SubspaceQIfStmt& s) {
                return Program::subspaceQif(s.coins, s.subspaces, recAll(s.branches), p->loc());
            },
        },
        p->node());
}

} // namespace qgcl

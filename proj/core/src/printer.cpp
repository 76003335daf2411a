#include "qgcl/errors.hpp"
#include "qgcl/parser.hpp"

#include <cstdio>
#include <map>

namespace qgcl {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string real17(double x) {
    if (x == 0.0) x = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// Scalars print exactly so that parsing the text restores the same bits.
std::string scalar(Complex z) {
    if (z.imag() == 0.0) return real17(z.real());
    std::string im = real17(std::abs(z.imag())) + "i";
    if (z.real() == 0.0) return (z.imag() < 0 ? "-" : "") + im;
    return real17(z.real()) + (z.imag() < 0 ? "-" : "+") + im;
}

std::string joinScalars(const std::vector<Complex>& xs) {
    std::string out;
    for (std::size_t k = 0; k < xs.size(); ++k) out += (k ? ", " : "") + scalar(xs[k]);
    return out;
}

std::string matrixText(const CMatrix& m) {
    std::string out = "[";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out += r ? ", [" : "[";
        for (std::size_t c = 0; c < m.cols(); ++c) out += (c ? ", " : "") + scalar(m(r, c));
        out += "]";
    }
    return out + "]";
}

std::string names(const std::vector<std::string>& xs) {
    std::string out;
    for (std::size_t k = 0; k < xs.size(); ++k) out += (k ? ", " : "") + xs[k];
    return out;
}

std::string ketText(const CMatrix& v) {
    std::size_t ones = 0;
    std::size_t at = 0;
    bool basis = true;
    for (std::size_t r = 0; r < v.rows(); ++r) {
        if (v(r, 0) == Complex{1.0, 0.0}) {
            ++ones;
            at = r;
        } else if (v(r, 0) != Complex{0.0, 0.0}) {
            basis = false;
        }
    }
    if (basis && ones == 1) return "|" + std::to_string(at) + ">";
    std::vector<Complex> amps(v.data().begin(), v.data().end());
    return "|(" + joinScalars(amps) + ")>";
}

std::string initText(const CMatrix& rho) {
    for (std::size_t k = 0; k < rho.rows(); ++k) {
        if (rho == CMatrix::projector(CMatrix::basisVector(rho.rows(), k))) return "|" + std::to_string(k) + ">";
    }
    return matrixText(rho);
}

std::string alphaText(const std::optional<AlphaSpec>& alpha) {
    if (!alpha) return "";
    return std::visit(Overloaded{
                          [](const AlphaLambda&) { return std::string(" (alpha lambda)"); },
                          [](const AlphaUniform&) { return std::string(" (alpha uniform)"); },
                          [](const AlphaPhases& p) {
                              std::string out = " (alpha phases ";
                              for (std::size_t k = 0; k < p.angles.size(); ++k)
                                  out += (k ? ", " : "") + real17(p.angles[k]);
                              return out + ")";
                          },
                          [](const AlphaTable& t) {
                              std::string out = " (alpha table ";
                              for (std::size_t k = 0; k < t.coefficients.size(); ++k)
                                  out += (k ? ", [" : "[") + joinScalars(t.coefficients[k]) + "]";
                              return out + ")";
                          },
                      },
                      *alpha);
}

class Printer {
public:
    std::string prog(const ProgramPtr& p, int indent) {
        if (const auto* s = p->as<SeqStmt>()) return prog(s->first, indent) + ";\n" + pad(indent) + stmt(s->second, indent);
        return stmt(p, indent);
    }

private:
    static std::string pad(int indent) { return std::string(static_cast<std::size_t>(indent) * 2, ' '); }

    std::string branchBody(const ProgramPtr& p, int indent) {
        return "\n" + pad(indent + 2) + prog(p, indent + 2);
    }

    std::string stmt(const ProgramPtr& p, int indent) {
        return std::visit(
            Overloaded{
                [](const AbortStmt&) { return std::string("abort"); },
                [](const SkipStmt&) { return std::string("skip"); },
                [](const UnitaryStmt& s) { return s.gate.name + "[" + names(s.qvars) + "]"; },
                [&](const MeasureStmt& s) {
                    std::string out = "measure " + s.meas.name + "[" + names(s.qvars) + " : " + s.cvar + "]";
                    bool first = true;
                    for (const auto& b : s.branches) {
                        out += "\n" + pad(indent + 1) + (first ? "= " : "[] ") + b.outcome + " ->" +
                               branchBody(b.body, indent);
                        first = false;
                    }
                    return out + "\n" + pad(indent) + "end";
                },
                [&](const QIfStmt& s) {
                    std::string out = "qif" + alphaText(s.alpha) + " [" + names(s.coins) + "]";
                    for (std::size_t k = 0; k < s.branches.size(); ++k) {
                        out += "\n" + pad(indent + 1) + (k ? "[] " : "") + ketText(s.guards[k]) + " ->" +
                               branchBody(s.branches[k], indent);
                    }
                    return out + "\n" + pad(indent) + "fiq";
                },
                [&](const SeqStmt&) { return "(" + prog(p, indent) + ")"; },
                [&](const BlockStmt& s) {
                    return "begin local " + names(s.locals) + " := " + initText(s.init) + ";\n" + pad(indent + 1) +
                           prog(s.body, indent + 1) + "\n" + pad(indent) + "end";
                },
                [&](const ProbChoiceStmt& s) {
                    std::string out = "pchoice";
                    for (std::size_t k = 0; k < s.branches.size(); ++k) {
                        out += "\n" + pad(indent + 1) + (k ? "[] " : "") + prog(s.branches[k].first, indent + 2) +
                               " @ " + real17(s.branches[k].second);
                    }
                    return out + "\n" + pad(indent) + "end";
                },
                [&](const QChoiceStmt& s) {
                    std::string out = "[" + prog(s.coinProgram, indent + 1) + "] (+)" + alphaText(s.alpha);
                    for (std::size_t k = 0; k < s.branches.size(); ++k) {
                        out += "\n" + pad(indent + 1) + (k ? "[] " : "") + ketText(s.guards[k]) + " ->" +
                               branchBody(s.branches[k], indent);
                    }
                    return out + "\n" + pad(indent) + "end";
                },
                [&](const SubspaceQIfStmt& s) {
                    std::string out = "qif [" + names(s.coins) + "]";
                    for (std::size_t k = 0; k < s.branches.size(); ++k) {
                        std::string guard = "{";
                        for (std::size_t j = 0; j < s.subspaces[k].size(); ++j)
                            guard += (j ? ", " : "") + ketText(s.subspaces[k][j]);
                        out += "\n" + pad(indent + 1) + (k ? "[] " : "") + guard + "} ->" +
                               branchBody(s.branches[k], indent);
                    }
                    return out + "\n" + pad(indent) + "fiq";
                },
            },
            p->node());
    }
};

void collectDefinitions(const ProgramPtr& p, std::map<std::string, CMatrix>& gates, std::vector<GateDef>& gateOrder,
                        std::map<std::string, const MeasDef*>& meas, std::vector<const MeasDef*>& measOrder) {
    auto recurse = [&](const ProgramPtr& q) { collectDefinitions(q, gates, gateOrder, meas, measOrder); };
    std::visit(Overloaded{
                   [](const AbortStmt&) {},
                   [](const SkipStmt&) {},
                   [&](const UnitaryStmt& s) {
                       if (s.gate.builtin) return;
                       auto [it, fresh] = gates.emplace(s.gate.name, s.gate.matrix);
                       if (fresh) {
                           gateOrder.push_back(s.gate);
                       } else if (!(it->second == s.gate.matrix)) {
                           throw Error("two different gates are both named '" + s.gate.name + "'");
                       }
                   },
                   [&](const MeasureStmt& s) {
                       if (!s.meas.builtin) {
                           auto [it, fresh] = meas.emplace(s.meas.name, &s.meas);
                           if (fresh) {
                               measOrder.push_back(&s.meas);
                           } else if (it->second->ops != s.meas.ops || it->second->outcomes != s.meas.outcomes) {
                               throw Error("two different measurements are both named '" + s.meas.name + "'");
                           }
                       }
                       for (const auto& b : s.branches) recurse(b.body);
                   },
                   [&](const QIfStmt& s) {
                       for (const auto& b : s.branches) recurse(b);
                   },
                   [&](const SeqStmt& s) {
                       recurse(s.first);
                       recurse(s.second);
                   },
                   [&](const BlockStmt& s) { recurse(s.body); },
                   [&](const ProbChoiceStmt& s) {
                       for (const auto& b : s.branches) recurse(b.first);
                   },
                   [&](const QChoiceStmt& s) {
                       recurse(s.coinProgram);
                       for (const auto& b : s.branches) recurse(b);
                   },
                   [&](const SubspaceQIfStmt& s) {
                       for (const auto& b : s.branches) recurse(b);
                   },
               },
               p->node());
}

bool sameAlpha(const std::optional<AlphaSpec>& a, const std::optional<AlphaSpec>& b) {
    if (a.has_value() != b.has_value()) return false;
    if (!a) return true;
    if (a->index() != b->index()) return false;
    if (const auto* pa = std::get_if<AlphaPhases>(&*a)) return pa->angles == std::get<AlphaPhases>(*b).angles;
    if (const auto* ta = std::get_if<AlphaTable>(&*a)) return ta->coefficients == std::get<AlphaTable>(*b).coefficients;
    return true;
}

} // namespace

std::string printProgram(const ProgramPtr& program) { return Printer().prog(program, 0) + "\n"; }

std::string print(const ProgramFile& file) {
    std::string out;
    for (const auto& q : file.registry.qvars()) out += "qvar " + q.name + " : " + std::to_string(q.dim) + ";\n";
    for (const auto& c : file.registry.cvars()) out += "cvar " + c.name + " : {" + names(c.domain) + "};\n";

    std::map<std::string, CMatrix> gates;
    std::vector<GateDef> gateOrder;
    std::map<std::string, const MeasDef*> meas;
    std::vector<const MeasDef*> measOrder;
    for (const auto& g : file.gates) {
        gates.emplace(g.name, g.matrix);
        gateOrder.push_back(g);
    }
    for (const auto& m : file.measurements) {
        meas.emplace(m.name, &m);
        measOrder.push_back(&m);
    }
    if (file.body) collectDefinitions(file.body, gates, gateOrder, meas, measOrder);

    for (const auto& g : gateOrder) out += "gate " + g.name + " = " + matrixText(g.matrix) + ";\n";
    for (const MeasDef* m : measOrder) {
        out += "meas " + m->name + " = {";
        for (std::size_t k = 0; k < m->ops.size(); ++k) {
            out += (k ? ", " : "") + m->outcomes[k] + " : " + matrixText(m->ops[k]);
        }
        out += "};\n";
    }
    if (!out.empty()) out += "\n";
    if (file.body) out += printProgram(file.body);
    return out;
}

bool sameProgram(const ProgramPtr& a, const ProgramPtr& b) {
    if (a == b) return true;
    if (!a || !b || a->node().index() != b->node().index()) return false;
    auto sameList = [](const std::vector<ProgramPtr>& x, const std::vector<ProgramPtr>& y) {
        if (x.size() != y.size()) return false;
        for (std::size_t k = 0; k < x.size(); ++k)
            if (!sameProgram(x[k], y[k])) return false;
        return true;
    };
    return std::visit(
        Overloaded{
            [](const AbortStmt&) { return true; },
            [](const SkipStmt&) { return true; },
            [&](const UnitaryStmt& s) {
                const auto& t = *b->as<UnitaryStmt>();
                return s.gate.name == t.gate.name && s.gate.matrix == t.gate.matrix && s.qvars == t.qvars;
            },
            [&](const MeasureStmt& s) {
                const auto& t = *b->as<MeasureStmt>();
                if (s.meas.name != t.meas.name || s.meas.ops != t.meas.ops || s.meas.outcomes != t.meas.outcomes ||
                    s.qvars != t.qvars || s.cvar != t.cvar || s.branches.size() != t.branches.size()) {
                    return false;
                }
                for (std::size_t k = 0; k < s.branches.size(); ++k) {
                    if (s.branches[k].outcome != t.branches[k].outcome ||
                        !sameProgram(s.branches[k].body, t.branches[k].body)) {
                        return false;
                    }
                }
                return true;
            },
            [&](const QIfStmt& s) {
                const auto& t = *b->as<QIfStmt>();
                return s.coins == t.coins && s.guards == t.guards && sameAlpha(s.alpha, t.alpha) &&
                       sameList(s.branches, t.branches);
            },
            [&](const SeqStmt& s) {
                const auto& t = *b->as<SeqStmt>();
                return sameProgram(s.first, t.first) && sameProgram(s.second, t.second);
            },
            [&](const BlockStmt& s) {
                const auto& t = *b->as<BlockStmt>();
                return s.locals == t.locals && s.init == t.init && sameProgram(s.body, t.body);
            },
            [&](const ProbChoiceStmt& s) {
                const auto& t = *b->as<ProbChoiceStmt>();
                if (s.branches.size() != t.branches.size()) return false;
                for (std::size_t k = 0; k < s.branches.size(); ++k) {
                    if (s.branches[k].second != t.branches[k].second ||
                        !sameProgram(s.branches[k].first, t.branches[k].first)) {
                        return false;
                    }
                }
                return true;
            },
            [&](const QChoiceStmt& s) {
                const auto& t = *b->as<QChoiceStmt>();
                return sameProgram(s.coinProgram, t.coinProgram) && s.guards == t.guards &&
                       sameAlpha(s.alpha, t.alpha) && sameList(s.branches, t.branches);
            },
            [&](const SubspaceQIfStmt& s) {
                const auto& t = *b->as<SubspaceQIfStmt>();
                return s.coins == t.coins && s.subspaces == t.subspaces && sameList(s.branches, t.branches);
            },
        },
        a->node());
}

} // namespace qgcl

#include "qgcl/laws.hpp"

#include "qgcl/errors.hpp"
#include "qgcl/parser.hpp"
#include "qgcl/random.hpp"
#include "qgcl/semantics.hpp"
#include "qgcl/wp_equiv.hpp"

#include <cmath>
#include <functional>

namespace qgcl {

namespace {

constexpr const char* kNames[] = {"ALT_IDEM",   "ALT_COMM",    "ALT_ASSOC",   "ALT_DIST",      "CHOICE_IDEM",
                                  "CHOICE_COMM", "CHOICE_ASSOC", "CHOICE_DIST", "COIN_LOCALIZE", "PROB_IMPL"};

std::vector<double> weightsToLambda(const std::vector<double>& w) {
    double total = 0.0;
    for (double x : w) total += x;
    std::vector<double> out(w.size());
    for (std::size_t k = 0; k < w.size(); ++k)
        out[k] = total > 0.0 ? std::sqrt(w[k] / total) : 1.0 / std::sqrt(static_cast<double>(w.size()));
    return out;
}

// Builds a coefficient family by evaluating `coeff(k, tuple)` on every
// other-branch tuple of branch k; the entry of branch k in `tuple` is 0.
AlphaFamily tabulate(const std::vector<std::size_t>& sizes,
                     const std::function<Complex(std::size_t, const std::vector<std::size_t>&)>& coeff) {
    std::vector<std::vector<Complex>> table(sizes.size());
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        std::size_t count = 1;
        for (std::size_t j = 0; j < sizes.size(); ++j)
            if (j != k) count *= sizes[j];
        std::vector<std::size_t> tuple(sizes.size(), 0);
        for (std::size_t idx = 0; idx < count; ++idx) {
            std::size_t rest = idx;
            for (std::size_t j = sizes.size(); j-- > 0;) {
                if (j == k) continue;
                tuple[j] = rest % sizes[j];
                rest /= sizes[j];
            }
            table[k].push_back(coeff(k, tuple));
        }
    }
    return AlphaFamily(sizes, std::move(table));
}

std::vector<CMatrix> basisGuards(std::size_t dim) {
    std::vector<CMatrix> g;
    for (std::size_t k = 0; k < dim; ++k) g.push_back(CMatrix::basisVector(dim, k));
    return g;
}

std::vector<double> permutationArgs(const std::vector<std::size_t>& perm) {
    return {perm.begin(), perm.end()};
}

std::string permutationText(const std::vector<std::size_t>& perm) {
    std::string s = "(";
    for (std::size_t k = 0; k < perm.size(); ++k) s += (k ? "," : "") + std::to_string(perm[k]);
    return s + ")";
}

std::vector<std::size_t> nonIdentityPermutation(std::size_t n, Rng& rng) {
    for (;;) {
        auto p = randomPermutation(n, rng);
        for (std::size_t k = 0; k < n; ++k)
            if (p[k] != k) return p;
    }
}

std::vector<std::size_t> inverse(const std::vector<std::size_t>& perm) {
    std::vector<std::size_t> inv(perm.size());
    for (std::size_t k = 0; k < perm.size(); ++k) inv[perm[k]] = k;
    return inv;
}

Registry makeRegistry(std::size_t coinDim, bool innerCoin, bool second) {
    Registry r;
    r.declareQVar("c", coinDim);
    if (innerCoin) r.declareQVar("d", 2);
    r.declareQVar("q", 2);
    if (second) r.declareQVar("r", 2);
    return r;
}

// Context shared by the generators of one instance.
struct Builder {
    Rng& rng;
    ProgramGenerator gen;

    Builder(Rng& r) : rng(r), gen(r, "U") {}

    // Random branch on q, measuring into x when `measure` is set.
    ProgramPtr branch(bool measure, const std::string& var = "q") { return gen.branch(var, 2, "x", measure); }

    // A program equivalent to p: p preceded by a unitary and its inverse.
    ProgramPtr padded(const ProgramPtr& p) {
        const GateDef u = gen.randomGate(2);
        const GateDef uInv = gen.gate(u.matrix.adjoint());
        return Program::seqAll({Program::unitary(u, {"q"}), Program::unitary(uInv, {"q"}), p});
    }

    // Coin-tossing program on c: a unitary, optionally followed by a
    // measurement into z with unitary or skip branches.
    ProgramPtr coinProgram(std::size_t dim, bool measure) { return gen.branch("c", dim, "z", measure); }
};

std::vector<OVF> semanticsOf(const std::vector<ProgramPtr>& ps, const Registry& registry) {
    Evaluator ev(registry);
    std::vector<OVF> out;
    for (const auto& p : ps) out.push_back(ev.semiClassical(p).semi);
    return out;
}

LawInstance altIdem(std::size_t k, Rng& rng) {
    Builder b(rng);
    const std::size_t n = 2 + k % 2;
    LawInstance inst{LawId::AltIdem, "", makeRegistry(n, false, false), nullptr, nullptr, Relation::Equiv, {}};
    const ProgramPtr p = b.gen.unitaryOnly("q", 2, 1 + k % 3);
    std::vector<ProgramPtr> branches;
    for (std::size_t i = 0; i < n; ++i) branches.push_back(i % 2 == 0 ? p : b.padded(p));
    inst.lhs = Program::qif({"c"}, basisGuards(n), branches);
    inst.rhs = p;
    inst.description = "coin dim " + std::to_string(n);
    return inst;
}

LawInstance altComm(std::size_t k, Rng& rng) {
    Builder b(rng);
    const std::size_t n = 2 + k % 2;
    LawInstance inst{LawId::AltComm, "", makeRegistry(n, false, false), nullptr, nullptr, Relation::Equiv, {}};
    const auto tau = nonIdentityPermutation(n, rng);
    std::vector<ProgramPtr> ps;
    for (std::size_t i = 0; i < n; ++i) ps.push_back(b.branch(i == 0 ? k % 2 == 1 : rng.coin()));
    std::vector<ProgramPtr> permuted;
    for (std::size_t i = 0; i < n; ++i) permuted.push_back(ps[tau[i]]);
    const auto guards = basisGuards(n);
    inst.lhs = Program::qif({"c"}, guards, permuted);
    inst.rhs = Program::seqAll({Program::unitary(gatelib::builtin("PERM", n, permutationArgs(tau)), {"c"}),
                                Program::qif({"c"}, guards, ps),
                                Program::unitary(gatelib::builtin("PERM", n, permutationArgs(inverse(tau))), {"c"})});
    inst.description = "coin dim " + std::to_string(n) + " tau " + permutationText(tau);
    return inst;
}

// Inner branches R_{il} of a two-level nest with inner coin d (dim 2).
std::vector<std::vector<ProgramPtr>> nestedBranches(std::size_t m, std::size_t k, Builder& b) {
    std::vector<std::vector<ProgramPtr>> r(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t l = 0; l < 2; ++l) {
            const bool measure = (i == 0 && l == 0) ? k % 2 == 1 : b.rng.index(3) == 0;
            r[i].push_back(b.branch(measure, b.rng.coin() ? "q" : "r"));
        }
    return r;
}

std::vector<CMatrix> flatGuards(std::size_t m) { return basisGuards(2 * m); }

std::vector<ProgramPtr> flatten(const std::vector<std::vector<ProgramPtr>>& r) {
    std::vector<ProgramPtr> out;
    for (const auto& row : r) out.insert(out.end(), row.begin(), row.end());
    return out;
}

AlphaFamily assocAlpha(const std::vector<std::vector<ProgramPtr>>& r, const Registry& registry) {
    std::vector<std::vector<OVF>> sem;
    for (const auto& row : r) sem.push_back(semanticsOf(row, registry));
    return synthAlphaAssoc(sem, registry);
}

AlphaTable asTable(const AlphaFamily& a) {
    AlphaTable t;
    for (std::size_t k = 0; k < a.branchCount(); ++k) t.coefficients.push_back(a.coefficients(k));
    return t;
}

LawInstance altAssoc(std::size_t k, Rng& rng) {
    Builder b(rng);
    const std::size_t m = 2 + k % 2;
    LawInstance inst{LawId::AltAssoc, "", makeRegistry(m, true, true), nullptr, nullptr, Relation::Equiv, {}};
    const auto r = nestedBranches(m, k, b);
    std::vector<ProgramPtr> outer;
    for (const auto& row : r) outer.push_back(Program::qif({"d"}, basisGuards(2), row));
    inst.lhs = Program::qif({"c"}, basisGuards(m), outer);
    inst.alpha = assocAlpha(r, inst.registry);
    inst.rhs = Program::qif({"c", "d"}, flatGuards(m), flatten(r), asTable(*inst.alpha));
    inst.description = "outer coin dim " + std::to_string(m) + ", inner coin dim 2";
    return inst;
}

LawInstance choiceAssoc(std::size_t k, Rng& rng) {
    Builder b(rng);
    const std::size_t m = 2 + k % 2;
    LawInstance inst{LawId::ChoiceAssoc, "", makeRegistry(m, true, true), nullptr, nullptr, Relation::Equiv, {}};
    const ProgramPtr p = b.coinProgram(m, k % 3 == 2);
    std::vector<ProgramPtr> qs;
    for (std::size_t i = 0; i < m; ++i) qs.push_back(b.gen.unitaryOnly("d", 2, 1));
    const auto r = nestedBranches(m, k, b);
    std::vector<ProgramPtr> outer;
    for (std::size_t i = 0; i < m; ++i) outer.push_back(Program::qchoice(qs[i], basisGuards(2), r[i]));
    inst.lhs = Program::qchoice(p, basisGuards(m), outer);
    inst.alpha = assocAlpha(r, inst.registry);
    const ProgramPtr coin = Program::qchoice(p, basisGuards(m), qs);
    inst.rhs = Program::qchoice(coin, flatGuards(m), flatten(r), asTable(*inst.alpha));
    inst.description = "outer coin dim " + std::to_string(m) + ", inner coin dim 2";
    return inst;
}

struct DistParts {
    std::vector<ProgramPtr> branches;
    ProgramPtr tail;
    bool tailMeasures;
};

DistParts distParts(std::size_t n, std::size_t k, Builder& b) {
    DistParts d;
    for (std::size_t i = 0; i < n; ++i) d.branches.push_back(b.branch(b.rng.coin()));
    d.tailMeasures = k % 2 == 1;
    d.tail = b.gen.branch("q", 2, "y", d.tailMeasures);
    return d;
}

std::vector<ProgramPtr> withTail(const DistParts& d) {
    std::vector<ProgramPtr> out;
    for (const auto& p : d.branches) out.push_back(Program::seq(p, d.tail));
    return out;
}

std::optional<AlphaFamily> distAlpha(const DistParts& d, const Registry& registry) {
    if (!d.tailMeasures) return std::nullopt;
    const auto sem = semanticsOf(d.branches, registry);
    const std::size_t qSize = semanticsOf({d.tail}, registry).front().size();
    return synthAlphaDist(sem, qSize);
}

LawInstance altDist(std::size_t k, Rng& rng) {
    Builder b(rng);
    const std::size_t n = 2 + (k / 2) % 2;
    LawInstance inst{LawId::AltDist, "", makeRegistry(n, false, false), nullptr, nullptr, Relation::Equiv, {}};
    const DistParts d = distParts(n, k, b);
    inst.lhs = Program::seq(Program::qif({"c"}, basisGuards(n), d.branches), d.tail);
    inst.alpha = distAlpha(d, inst.registry);
    std::optional<AlphaSpec> spec;
    if (inst.alpha) spec = asTable(*inst.alpha);
    inst.rhs = Program::qif({"c"}, basisGuards(n), withTail(d), spec);
    inst.relation = d.tailMeasures ? Relation::EquivCoinFree : Relation::Equiv;
    inst.description = "coin dim " + std::to_string(n) + (d.tailMeasures ? ", measuring tail" : ", unitary tail");
    return inst;
}

LawInstance choiceDist(std::size_t k, Rng& rng) {
    Builder b(rng);
    const std::size_t n = 2 + (k / 2) % 2;
    LawInstance inst{LawId::ChoiceDist, "", makeRegistry(n, false, false), nullptr, nullptr, Relation::Equiv, {}};
    const ProgramPtr coin = b.coinProgram(n, k % 3 == 2);
    const DistParts d = distParts(n, k, b);
    inst.lhs = Program::seq(Program::qchoice(coin, basisGuards(n), d.branches), d.tail);
    inst.alpha = distAlpha(d, inst.registry);
    std::optional<AlphaSpec> spec;
    if (inst.alpha) spec = asTable(*inst.alpha);
    inst.rhs = Program::qchoice(coin, basisGuards(n), withTail(d), spec);
    inst.relation = d.tailMeasures ? Relation::EquivCoinFree : Relation::Equiv;
    inst.description = "coin dim " + std::to_string(n) + (d.tailMeasures ? ", measuring tail" : ", unitary tail");
    return inst;
}

LawInstance choiceIdem(std::size_t k, Rng& rng) {
    Builder b(rng);
    const std::size_t n = 2 + k % 2;
    LawInstance inst{LawId::ChoiceIdem, "", makeRegistry(n, false, false), nullptr, nullptr, Relation::Equiv, {}};
    const ProgramPtr coin = b.coinProgram(n, k % 3 == 1);
    const CMatrix rho = randomDensity(n, rng);
    const CMatrix out = channelOf(coin, inst.registry).apply(rho);
    if (std::abs(out.trace().real() - 1.0) > kTolEq) throw Error("coin program does not preserve the trace");
    const ProgramPtr p = b.branch(k % 2 == 1);
    std::vector<ProgramPtr> branches;
    for (std::size_t i = 0; i < n; ++i) branches.push_back(i % 2 == 0 ? p : b.padded(p));
    inst.lhs = Program::block({"c"}, rho, Program::qchoice(coin, basisGuards(n), branches));
    inst.rhs = p;
    inst.description = "coin dim " + std::to_string(n) + ", tr of coin output 1";
    return inst;
}

LawInstance choiceComm(std::size_t k, Rng& rng) {
    Builder b(rng);
    const std::size_t n = 2 + k % 2;
    LawInstance inst{LawId::ChoiceComm, "", makeRegistry(n, false, false), nullptr, nullptr, Relation::Equiv, {}};
    const auto tau = nonIdentityPermutation(n, rng);
    const ProgramPtr coin = b.coinProgram(n, k % 3 == 2);
    std::vector<ProgramPtr> ps;
    for (std::size_t i = 0; i < n; ++i) ps.push_back(b.branch(i == 0 ? k % 2 == 1 : rng.coin()));
    std::vector<ProgramPtr> permuted;
    for (std::size_t i = 0; i < n; ++i) permuted.push_back(ps[tau[i]]);
    const auto guards = basisGuards(n);
    inst.lhs = Program::qchoice(coin, guards, permuted);
    const ProgramPtr shuffled =
        Program::seq(coin, Program::unitary(gatelib::builtin("PERM", n, permutationArgs(tau)), {"c"}));
    inst.rhs = Program::seq(Program::qchoice(shuffled, guards, ps),
                            Program::unitary(gatelib::builtin("PERM", n, permutationArgs(inverse(tau))), {"c"}));
    inst.description = "coin dim " + std::to_string(n) + " tau " + permutationText(tau);
    return inst;
}

LawInstance coinLocalize(std::size_t k, Rng& rng) {
    Builder b(rng);
    const std::size_t n = 2 + k % 2;
    LawInstance inst{LawId::CoinLocalize, "", makeRegistry(n, false, false), nullptr, nullptr, Relation::Equiv, {}};
    const GateDef u = b.gen.randomGate(n);
    std::vector<ProgramPtr> ps;
    for (std::size_t i = 0; i < n; ++i) ps.push_back(b.branch(i == 0 ? k % 2 == 1 : rng.coin()));
    inst.lhs = Program::qchoice(Program::unitary(u, {"c"}), basisGuards(n), ps);
    std::vector<CMatrix> guards;
    for (std::size_t i = 0; i < n; ++i) guards.push_back(u.matrix.adjoint() * CMatrix::basisVector(n, i));
    inst.rhs = Program::seq(Program::qif({"c"}, guards, ps), Program::unitary(u, {"c"}));
    inst.description = "coin dim " + std::to_string(n);
    return inst;
}

LawInstance probImpl(std::size_t k, Rng& rng) {
    Builder b(rng);
    const std::size_t n = 2 + k % 2;
    LawInstance inst{LawId::ProbImpl, "", makeRegistry(n, false, false), nullptr, nullptr, Relation::Equiv, {}};
    const ProgramPtr coin = b.coinProgram(n, k % 2 == 1);
    const CMatrix rho = randomDensity(n, rng);
    const CMatrix out = channelOf(coin, inst.registry).apply(rho);
    std::vector<ProgramPtr> ps;
    std::vector<std::pair<ProgramPtr, double>> weighted;
    for (std::size_t i = 0; i < n; ++i) {
        ps.push_back(b.branch(rng.coin()));
        weighted.emplace_back(ps.back(), out(i, i).real());
    }
    inst.lhs = Program::block({"c"}, rho, Program::qchoice(coin, basisGuards(n), ps));
    inst.rhs = Program::probChoice(weighted);
    inst.description = "coin dim " + std::to_string(n);
    return inst;
}

} // namespace

std::string_view lawName(LawId law) { return kNames[static_cast<std::size_t>(law)]; }

std::optional<LawId> lawFromName(std::string_view name) {
    for (LawId law : kAllLaws)
        if (lawName(law) == name) return law;
    return std::nullopt;
}

std::string_view relationName(Relation r) { return r == Relation::Equiv ? "EQUIV" : "EQUIV_CF"; }

LawVerdict checkLaw(const LawInstance& instance, double tol) {
    LawVerdict v;
    for (const auto* side : {&instance.lhs, &instance.rhs})
        for (const auto& d : check(*side, instance.registry, tol)) v.problems.push_back(formatDiagnostic(d));
    if (!v.problems.empty()) return v;
    const EquivalenceVerdict e = instance.relation == Relation::Equiv
                                     ? equivalent(instance.lhs, instance.rhs, instance.registry, tol)
                                     : coinFreeEquivalent(instance.lhs, instance.rhs, instance.registry, tol);
    v.pass = e.equivalent;
    v.residual = e.residual;
    return v;
}

std::vector<double> innerAlternationWeights(const std::vector<OVF>& branches, const Registry& registry) {
    VarSet space;
    for (const auto& f : branches) space = space.unite(f.vars());
    std::vector<std::size_t> sizes;
    std::vector<std::vector<double>> traces;
    std::vector<std::vector<double>> lambdas;
    for (const auto& f : branches) {
        const double pad = static_cast<double>(registry.dimOf(space.minus(f.vars())));
        std::vector<double> t;
        for (const auto& e : f.entries()) {
            const double fro = e.op.frobeniusNorm();
            t.push_back(fro * fro * pad);
        }
        sizes.push_back(f.size());
        traces.push_back(std::move(t));
        lambdas.push_back(lambdaCoeffs(f));
    }
    std::size_t total = 1;
    for (std::size_t s : sizes) total *= s;
    std::vector<double> weights;
    std::vector<std::size_t> tuple(sizes.size());
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rest = idx;
        for (std::size_t j = sizes.size(); j-- > 0;) {
            tuple[j] = rest % sizes[j];
            rest /= sizes[j];
        }
        double w = 0.0;
        for (std::size_t l = 0; l < sizes.size(); ++l) {
            double others = 1.0;
            for (std::size_t j = 0; j < sizes.size(); ++j)
                if (j != l) others *= lambdas[j][tuple[j]];
            w += others * others * traces[l][tuple[l]];
        }
        weights.push_back(w);
    }
    return weights;
}

AlphaFamily synthAlphaAssoc(const std::vector<std::vector<OVF>>& inner, const Registry& registry) {
    std::vector<std::size_t> sizes;
    std::vector<std::size_t> groupOf;
    std::vector<std::size_t> offset;
    std::vector<std::vector<double>> lambdas;
    std::vector<std::vector<double>> gammas;
    for (std::size_t i = 0; i < inner.size(); ++i) {
        offset.push_back(sizes.size());
        for (const auto& f : inner[i]) {
            sizes.push_back(f.size());
            groupOf.push_back(i);
            lambdas.push_back(lambdaCoeffs(f));
        }
        gammas.push_back(weightsToLambda(innerAlternationWeights(inner[i], registry)));
    }

    return tabulate(sizes, [&](std::size_t k, const std::vector<std::size_t>& tuple) {
        const std::size_t i = groupOf[k];
        double coeff = 1.0;
        // Gamma_i: the outer weights of every other group's inner state.
        for (std::size_t h = 0; h < inner.size(); ++h) {
            if (h == i) continue;
            std::size_t idx = 0;
            for (std::size_t l = 0; l < inner[h].size(); ++l) idx = idx * sizes[offset[h] + l] + tuple[offset[h] + l];
            coeff *= gammas[h][idx];
        }
        // Lambda_{il}: inner weights of the sibling branches.
        for (std::size_t l = 0; l < inner[i].size(); ++l) {
            const std::size_t j = offset[i] + l;
            if (j != k) coeff *= lambdas[j][tuple[j]];
        }
        return Complex{coeff, 0.0};
    });
}

AlphaFamily synthAlphaDist(std::span<const OVF> branches, std::size_t qDomainSize) {
    if (qDomainSize == 0) throw Error("the trailing program has an empty state domain");
    std::vector<std::size_t> sizes;
    std::vector<std::vector<double>> lambdas;
    for (const auto& f : branches) {
        sizes.push_back(f.size() * qDomainSize);
        lambdas.push_back(lambdaCoeffs(f));
    }
    const double scale = 1.0 / std::sqrt(std::pow(static_cast<double>(qDomainSize),
                                                  static_cast<double>(branches.size()) - 1.0));
    return tabulate(sizes, [&](std::size_t k, const std::vector<std::size_t>& tuple) {
        double coeff = scale;
        for (std::size_t j = 0; j < sizes.size(); ++j)
            if (j != k) coeff *= lambdas[j][tuple[j] / qDomainSize];
        return Complex{coeff, 0.0};
    });
}

LawInstance mixtureInstance(double p) {
    if (p < 0.0 || p > 1.0) throw ProbabilityError("mixture weight must lie in [0, 1]");
    const double r = 1.0 - p;
    Registry registry;
    registry.declareQVar("qc", 2);
    registry.declareQVar("q", 2);
    const GateDef coin{"Umix", CMatrix::fromRows({{std::sqrt(p), std::sqrt(r)}, {std::sqrt(r), -std::sqrt(p)}}), false};
    auto skipAll = [](const MeasDef& m) {
        std::vector<MeasureBranch> bs;
        for (const auto& o : m.outcomes) bs.push_back({o, Program::skip()});
        return bs;
    };
    const MeasDef mz = gatelib::builtinMeasurement("MZ", 2);
    const MeasDef mx = gatelib::builtinMeasurement("MX", 2);
    const ProgramPtr p0 = Program::measure(mz, {"q"}, "x", skipAll(mz));
    const ProgramPtr p1 = Program::measure(mx, {"q"}, "x", skipAll(mx));
    LawInstance inst{LawId::ProbImpl, "mixture of measurements, p = " + std::to_string(p), std::move(registry),
                     nullptr, nullptr, Relation::Equiv, {}};
    inst.lhs = Program::block({"qc"}, CMatrix::projector(CMatrix::basisVector(2, 0)),
                              Program::qchoice(Program::unitary(coin, {"qc"}), basisGuards(2), {p0, p1}));
    std::vector<std::pair<ProgramPtr, double>> weighted{{p0, p}, {p1, r}};
    if (p == 0.0) weighted.erase(weighted.begin());
    if (r == 0.0) weighted.pop_back();
    inst.rhs = Program::probChoice(weighted);
    return inst;
}

std::vector<LawInstance> generateLawInstances(LawId law, std::size_t count, std::uint64_t seed) {
    Rng rng(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(law) + 1);
    std::vector<LawInstance> out;
    for (std::size_t k = 0; k < count; ++k) {
        switch (law) {
        case LawId::AltIdem: out.push_back(altIdem(k, rng)); break;
        case LawId::AltComm: out.push_back(altComm(k, rng)); break;
        case LawId::AltAssoc: out.push_back(altAssoc(k, rng)); break;
        case LawId::AltDist: out.push_back(altDist(k, rng)); break;
        case LawId::ChoiceIdem: out.push_back(choiceIdem(k, rng)); break;
        case LawId::ChoiceComm: out.push_back(choiceComm(k, rng)); break;
        case LawId::ChoiceAssoc: out.push_back(choiceAssoc(k, rng)); break;
        case LawId::ChoiceDist: out.push_back(choiceDist(k, rng)); break;
        case LawId::CoinLocalize: out.push_back(coinLocalize(k, rng)); break;
        case LawId::ProbImpl:
            out.push_back(k == 0 ? mixtureInstance(1.0 / 3.0) : probImpl(k, rng));
            break;
        }
    }
    return out;
}

std::vector<LawSummary> runLawSuite(std::span<const LawId> laws, std::size_t count, std::uint64_t seed,
                                    double tol) {
    std::vector<LawSummary> out;
    for (LawId law : laws) {
        LawSummary s{law};
        for (const auto& inst : generateLawInstances(law, count, seed)) {
            const LawVerdict v = checkLaw(inst, tol);
            ++s.instances;
            if (!v.pass) ++s.failures;
            s.maxResidual = std::max(s.maxResidual, v.residual);
        }
        out.push_back(s);
    }
    return out;
}

} // namespace qgcl

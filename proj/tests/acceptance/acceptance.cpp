// Acceptance suite: one PASS/FAIL line per criterion.  Tolerances and time
// budgets are fixed here and are not configurable.

#include "qgcl/laws.hpp"
#include "qgcl/parser.hpp"
#include "qgcl/random.hpp"
#include "qgcl/semantics.hpp"
#include "qgcl/walks.hpp"
#include "qgcl/wp_equiv.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace qgcl;

constexpr double kMatrixTol = 1e-12;   // worked-example and lambda regression
constexpr double kPropertyTol = 1e-10; // property checks
constexpr double kWalkChoiTol = 1e-12; // walk step channels
constexpr std::uint64_t kSeed = 20240917;

const Complex kI{0.0, 1.0};
const double kR2 = 1.0 / std::sqrt(2.0);

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    std::string title;
    double budgetSeconds;
    std::function<Outcome()> run;
};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", x);
    return buf;
}

const char* const kWorkedExample = R"(
qvar c : 2;
qvar q : 2;
qif [c]
    |0> -> H[q];
           measure MZ[q : x] = 0 -> X[q] [] 1 -> Y[q] end
 [] |1> -> S[q];
           measure MX[q : x] = 0 -> Y[q] [] 1 -> Z[q] end;
           X[q];
           measure MZ[q : y] = 0 -> Z[q] [] 1 -> X[q] end
fiq
)";

// ---- 1: worked example, matrices as printed ----------------------------

CMatrix scaled(std::initializer_list<std::initializer_list<Complex>> rows, Complex s) {
    return CMatrix::fromRows(rows) * s;
}

Outcome workedExampleMatrices() {
    const ProgramFile f = parse(kWorkedExample);
    const SemResult all = semiClassical(f.body, f.registry);
    const auto* qif = f.body->as<QIfStmt>();
    const SemResult p0 = semiClassical(qif->branches[0], f.registry);
    const SemResult p1 = semiClassical(qif->branches[1], f.registry);

    const std::map<std::string, CMatrix> printedP0{
        {"x<-0", scaled({{0, 0}, {1, 1}}, kR2)},
        {"x<-1", scaled({{-1, 1}, {0, 0}}, kI * kR2)},
    };
    const std::map<std::string, CMatrix> printedP1{
        {"(x<-+.y<-0)", scaled({{kI, -1}, {0, 0}}, 0.5)},
        {"(x<-+.y<-1)", scaled({{-kI, 1}, {0, 0}}, 0.5)},
        {"(x<--.y<-0)", scaled({{1, -kI}, {0, 0}}, 0.5)},
        {"(x<--.y<-1)", scaled({{1, -kI}, {0, 0}}, 0.5)},
    };
    const double s = 1.0 / (2.0 * std::sqrt(2.0));
    const CMatrix plus0 = scaled({{0, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, kI, 0}, {0, 0, -1, 0}}, s);
    const CMatrix plus1 = scaled({{0, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, -kI, 0}, {0, 0, 1, 0}}, s);
    const CMatrix minus = scaled({{0, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, -kI, 0}}, s);
    const CMatrix onePlus0 = scaled({{-1, 0, 0, 0}, {1, 0, 0, 0}, {0, 0, kI, 0}, {0, 0, -1, 0}}, s);
    const CMatrix onePlus1 = scaled({{-1, 0, 0, 0}, {1, 0, 0, 0}, {0, 0, -kI, 0}, {0, 0, 1, 0}}, s);
    const CMatrix oneMinus = scaled({{1, 0, 0, 0}, {1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, -kI, 0}}, s);
    const std::vector<std::pair<std::string, CMatrix>> printedComposed{
        {"(x<-0(+)(x<-+.y<-0))", plus0},    {"(x<-0(+)(x<-+.y<-1))", plus1},
        {"(x<-0(+)(x<--.y<-0))", minus},    {"(x<-0(+)(x<--.y<-1))", minus},
        {"(x<-1(+)(x<-+.y<-0))", onePlus0}, {"(x<-1(+)(x<-+.y<-1))", onePlus1},
        {"(x<-1(+)(x<--.y<-0))", oneMinus}, {"(x<-1(+)(x<--.y<-1))", oneMinus},
    };

    int subOk = 0;
    for (const auto& [label, m] : printedP0) subOk += maxAbsDiff(p0.semi.at(label), m) <= kMatrixTol;
    for (const auto& [label, m] : printedP1) subOk += maxAbsDiff(p1.semi.at(label), m) <= kMatrixTol;

    // Composition of the printed sub-results by the definition, for the
    // diagnostic line: lambda_1 |0><0| (x) P0(a) + lambda_0 |1><1| (x) P1(bc).
    const CMatrix k0 = CMatrix::projector(CMatrix::basisVector(2, 0));
    const CMatrix k1 = CMatrix::projector(CMatrix::basisVector(2, 1));
    int asPrinted = 0, asTranspose = 0, fromSubResults = 0;
    double worst = 0.0;
    std::string firstMismatch;
    for (const auto& [label, printed] : printedComposed) {
        const CMatrix& ours = all.semi.at(label);
        const double d = maxAbsDiff(ours, printed);
        worst = std::max(worst, d);
        if (d <= kMatrixTol) ++asPrinted;
        else if (firstMismatch.empty()) firstMismatch = label;
        asTranspose += maxAbsDiff(ours, printed.transpose()) <= kMatrixTol;
        const std::string a = label.substr(1, 4);
        const std::string bc = label.substr(8, label.size() - 9);
        const CMatrix byDefinition = tensor(k0, printedP0.at(a)) * 0.5 + tensor(k1, printedP1.at(bc)) * kR2;
        fromSubResults += maxAbsDiff(ours, byDefinition) <= kMatrixTol;
    }

    std::ostringstream d;
    d << "sub-results " << subOk << "/6 as printed; composed " << asPrinted << "/8 as printed (max diff "
      << fmt(worst) << (firstMismatch.empty() ? "" : ", first mismatch " + firstMismatch) << "); "
      << asTranspose << "/8 equal the printed transpose; " << fromSubResults
      << "/8 equal the definition applied to the printed sub-results";
    return {subOk == 6 && asPrinted == 8, d.str()};
}

// ---- 2: lambda coefficients --------------------------------------------

Outcome lambdaRegression() {
    const ProgramFile f = parse(kWorkedExample);
    const auto* qif = f.body->as<QIfStmt>();
    const auto l0 = lambdaCoeffs(semiClassical(qif->branches[0], f.registry).semi);
    const auto l1 = lambdaCoeffs(semiClassical(qif->branches[1], f.registry).semi);
    double err = 0.0;
    for (double l : l0) err = std::max(err, std::abs(l - kR2));
    for (double l : l1) err = std::max(err, std::abs(l - 0.5));
    std::ostringstream d;
    d << l0.size() << " values 1/sqrt2, " << l1.size() << " values 1/2, max error " << fmt(err);
    return {l0.size() == 2 && l1.size() == 4 && err <= kMatrixTol, d.str()};
}

// ---- 3, 4: guarded composition properties ------------------------------

// Coins k2 (2) and k3 (3); principal variables a (2) and b (3).
Registry compositionRegistry() {
    Registry r;
    r.declareQVar("k2", 2);
    r.declareQVar("k3", 3);
    r.declareQVar("a", 2);
    r.declareQVar("b", 3);
    return r;
}

OVF randomBranch(const std::string& cvar, std::size_t var, std::size_t dim, std::size_t domain, double shrink,
                 Rng& rng) {
    std::vector<CMatrix> ops =
        domain == 1 ? std::vector<CMatrix>{randomUnitary(dim, rng)} : randomMeasurement(dim, domain, rng);
    std::vector<OvfEntry> entries;
    for (std::size_t k = 0; k < ops.size(); ++k) {
        const double scale = k == 0 ? shrink : 1.0;
        entries.push_back({ClassicalState::assign(cvar, std::to_string(k)), ops[k] * scale});
    }
    return OVF(VarSet::fromIndices({var}), dim, std::move(entries));
}

struct RandomComposition {
    std::vector<std::size_t> coin;
    std::vector<GuardedBranch> branches;
    std::size_t coinDim;
};

RandomComposition randomComposition(const Registry& reg, Rng& rng, double shrink, bool computational) {
    const std::size_t n = 2 + rng.index(2);
    RandomComposition rc;
    rc.coin = {n == 2 ? std::size_t{0} : std::size_t{1}};
    rc.coinDim = n;
    const CMatrix u = computational ? CMatrix::identity(n) : randomUnitary(n, rng);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t var = 2 + rng.index(2);
        const std::size_t dim = reg.qvar(var).dim;
        const double factor = i == 0 ? shrink : 1.0;
        rc.branches.push_back(
            {u.column(i), randomBranch("x" + std::to_string(i), var, dim, 1 + rng.index(3), factor, rng)});
    }
    return rc;
}

Outcome fullness() {
    const Registry reg = compositionRegistry();
    Rng rng(kSeed + 3);
    int fullOk = 0, subOk = 0;
    double worst = 0.0;
    constexpr int kInstances = 200;
    for (int k = 0; k < kInstances; ++k) {
        const RandomComposition full = randomComposition(reg, rng, 1.0, false);
        const OVF g = guardedCompose(full.coin, full.branches, reg);
        const double d = maxAbsDiff(g.gramSum(), CMatrix::identity(g.dim()));
        worst = std::max(worst, d);
        fullOk += d <= kPropertyTol;

        const RandomComposition sub = randomComposition(reg, rng, 0.2 + 0.7 * rng.uniform(), false);
        subOk += guardedCompose(sub.coin, sub.branches, reg).isSubNormalized(kPropertyTol);
    }
    std::ostringstream d;
    d << fullOk << "/" << kInstances << " full (max |sum F^dag F - I| " << fmt(worst) << "), " << subOk << "/"
      << kInstances << " sub-normalised";
    return {fullOk == kInstances && subOk == kInstances, d.str()};
}

Outcome basisCovariance() {
    const Registry reg = compositionRegistry();
    Rng rng(kSeed + 4);
    constexpr int kInstances = 50;
    int ok = 0;
    double worst = 0.0;
    for (int k = 0; k < kInstances; ++k) {
        const RandomComposition plain = randomComposition(reg, rng, 1.0, true);
        const CMatrix u = randomUnitary(plain.coinDim, rng);
        std::vector<GuardedBranch> rotated = plain.branches;
        for (std::size_t i = 0; i < rotated.size(); ++i) rotated[i].guard = u * plain.branches[i].guard;
        const OVF a = guardedCompose(plain.coin, plain.branches, reg);
        const OVF b = guardedCompose(plain.coin, rotated, reg);
        const CMatrix lift = reg.embed(u, plain.coin, a.vars());
        double d = 0.0;
        for (std::size_t s = 0; s < a.size(); ++s)
            d = std::max(d, maxAbsDiff(b.entry(s).op, lift * a.entry(s).op * lift.adjoint()));
        worst = std::max(worst, d);
        ok += d <= kPropertyTol;
    }
    std::ostringstream d;
    d << ok << "/" << kInstances << " instances, max per-state difference " << fmt(worst);
    return {ok == kInstances, d.str()};
}

// ---- 5: wp duality ------------------------------------------------------

Registry corpusRegistry() {
    Registry r;
    r.declareQVar("c", 2);
    r.declareQVar("q", 2);
    r.declareQVar("p", 3);
    return r;
}

// Random program over c, q, p: sequences of gates, measurements and
// alternations (coin c) whose branches measure or not.
ProgramPtr corpusProgram(ProgramGenerator& gen, Rng& rng, int& fresh) {
    std::vector<ProgramPtr> parts;
    const std::size_t length = 1 + rng.index(3);
    for (std::size_t k = 0; k < length; ++k) {
        const std::string name = "m" + std::to_string(fresh++);
        switch (rng.index(3)) {
        case 0:
            parts.push_back(gen.branch(rng.coin() ? "q" : "p", rng.coin() ? 2 : 3, name, rng.coin()));
            if (parts.back()->qvars().count("p") && !parts.back()->qvars().count("q")) break;
            break;
        case 1: {
            const bool onQ = rng.coin();
            parts.push_back(gen.branch(onQ ? "q" : "p", onQ ? 2 : 3, name, true));
            break;
        }
        default: {
            const std::vector<CMatrix> guards{CMatrix::basisVector(2, 0), CMatrix::basisVector(2, 1)};
            const ProgramPtr b0 = gen.branch("q", 2, name + "a", rng.coin());
            const ProgramPtr b1 = gen.branch("p", 3, name + "b", rng.coin());
            parts.push_back(Program::qif({"c"}, guards, {b0, b1}));
            break;
        }
        }
    }
    return Program::seqAll(parts);
}

Outcome wpDuality() {
    const Registry reg = corpusRegistry();
    Rng rng(kSeed + 5);
    ProgramGenerator gen(rng, "W");
    constexpr int kTriples = 100;
    int ok = 0, fresh = 0;
    double worst = 0.0;
    for (int k = 0; k < kTriples; ++k) {
        ProgramPtr p;
        // gen.branch picks the dimension from the variable; keep them consistent.
        do {
            p = corpusProgram(gen, rng, fresh);
        } while (!check(p, reg).empty());
        const SuperOp e = channelOf(p, reg);
        const SuperOp w = wp(p, reg);
        const CMatrix rho = randomDensity(e.dimIn(), rng);
        const CMatrix n = randomEffect(e.dimOut(), rng);
        const double d = std::abs((n * e.apply(rho)).trace() - (w.apply(n) * rho).trace());
        worst = std::max(worst, d);
        ok += d < kPropertyTol;
    }
    std::ostringstream d;
    d << ok << "/" << kTriples << " triples, max |tr(N E(rho)) - tr(wp(N) rho)| " << fmt(worst);
    return {ok == kTriples, d.str()};
}

// ---- 6: probabilistic choice through a quantum coin ---------------------

Outcome probabilisticChoice() {
    const auto instances = generateLawInstances(LawId::ProbImpl, 20, kSeed + 6);
    int ok = 0;
    double worst = 0.0;
    for (const auto& inst : instances) {
        const LawVerdict v = checkLaw(inst, kPropertyTol);
        worst = std::max(worst, v.residual);
        ok += v.pass && v.problems.empty();
    }
    // Mixture example with p = 1/3 on random pure inputs.
    const double p = 1.0 / 3.0;
    const LawInstance mix = mixtureInstance(p);
    const SuperOp e = channelOf(mix.lhs, mix.registry);
    Rng rng(kSeed + 60);
    const CMatrix plus = CMatrix::projector(CMatrix::columnVector(std::vector<Complex>{kR2, kR2}));
    const CMatrix minus = CMatrix::projector(CMatrix::columnVector(std::vector<Complex>{kR2, -kR2}));
    const CMatrix z0 = CMatrix::projector(CMatrix::basisVector(2, 0));
    const CMatrix z1 = CMatrix::projector(CMatrix::basisVector(2, 1));
    double mixErr = 0.0;
    for (int k = 0; k < 10; ++k) {
        const CMatrix rho = CMatrix::projector(randomPureState(2, rng));
        const CMatrix rho0 = z0 * rho * z0 + z1 * rho * z1;
        const CMatrix rho1 = plus * rho * plus + minus * rho * minus;
        mixErr = std::max(mixErr, maxAbsDiff(e.apply(rho), rho0 * p + rho1 * (1.0 - p)));
    }
    const LawVerdict mixVerdict = checkLaw(mix, kPropertyTol);
    std::ostringstream d;
    d << ok << "/" << instances.size() << " coin programs (max residual " << fmt(worst)
      << "); mixture p=1/3: residual " << fmt(mixVerdict.residual) << ", |out - (p rho0 + r rho1)| "
      << fmt(mixErr);
    return {ok == static_cast<int>(instances.size()) && mixVerdict.pass && mixErr < kPropertyTol, d.str()};
}

// ---- 7: law suite -------------------------------------------------------

Outcome lawSuite() {
    constexpr std::size_t kPerLaw = 10;
    const auto summary = runLawSuite(kAllLaws, kPerLaw, kSeed + 7, kPropertyTol);
    bool pass = true;
    std::ostringstream d;
    double worst = 0.0;
    std::size_t total = 0;
    std::string failing;
    for (const auto& s : summary) {
        total += s.instances;
        worst = std::max(worst, s.maxResidual);
        if (s.failures != 0 || s.instances < kPerLaw || s.maxResidual >= kPropertyTol) {
            pass = false;
            failing += " " + std::string(lawName(s.law)) + "(" + std::to_string(s.failures) + " failed)";
        }
    }
    // The distributive laws must exercise both relations.
    std::size_t cf = 0, plain = 0;
    for (LawId law : {LawId::AltDist, LawId::ChoiceDist})
        for (const auto& inst : generateLawInstances(law, kPerLaw, kSeed + 7))
            (inst.relation == Relation::EquivCoinFree ? cf : plain) += 1;
    pass = pass && cf > 0 && plain > 0;
    d << summary.size() << " laws, " << total << " instances, max residual " << fmt(worst)
      << "; distributive instances " << plain << " EQUIV / " << cf << " EQUIV_CF";
    if (!failing.empty()) d << "; failing:" << failing;
    return {pass, d.str()};
}

// ---- 8: walks -----------------------------------------------------------

Outcome walks() {
    const WalkVariant variants[] = {WalkVariant::Hadamard,   WalkVariant::Unidirectional,
                                    WalkVariant::PositionTimeCoin, WalkVariant::ThreeState,
                                    WalkVariant::MultiCoin,  WalkVariant::TwoWalkerShared};
    bool pass = true;
    double worstChoi = 0.0, worstDist = 0.0;
    std::string failing;
    for (WalkVariant v : variants) {
        WalkSpec spec;
        spec.variant = v;
        spec.cycleSize = 8;
        const Registry reg = walkRegistry(spec);
        std::vector<std::size_t> all(reg.qvars().size());
        for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
        const VarSet space = VarSet::fromIndices(all);
        double choi = 0.0;
        for (std::size_t t = 1; t <= 3; ++t) {
            Evaluator ev(reg);
            const CMatrix u = stepOracle(spec, t);
            choi = std::max(choi, ev.channelOn(walkStepProgram(spec, t), space).distance(SuperOp(u.rows(), u.rows(), {u})));
        }
        double dist = 0.0;
        for (std::size_t steps = 0; steps <= 3; ++steps) {
            spec.steps = steps;
            const auto a = positionDistribution(spec);
            const auto b = oracleDistribution(spec);
            for (std::size_t k = 0; k < a.size(); ++k) dist = std::max(dist, std::abs(a[k].probability - b[k].probability));
        }
        worstChoi = std::max(worstChoi, choi);
        worstDist = std::max(worstDist, dist);
        if (choi >= kWalkChoiTol || dist >= kPropertyTol) {
            pass = false;
            failing += " " + std::string(variantName(v));
        }
    }
    WalkSpec h;
    h.steps = 1;
    h.initialState = walkBasisState(h, {{"c", "L"}, {"p", "0"}});
    const auto d1 = positionDistribution(h);
    double split = 0.0;
    for (std::size_t k = 0; k < d1.size(); ++k)
        split = std::max(split, std::abs(d1[k].probability - ((k == 1 || k == 7) ? 0.5 : 0.0)));
    pass = pass && split < kPropertyTol;
    std::ostringstream d;
    d << "6 variants at N=8: max step Choi residual " << fmt(worstChoi) << ", max distribution difference (T<=3) "
      << fmt(worstDist) << "; Hadamard T=1 split error " << fmt(split);
    if (!failing.empty()) d << "; failing:" << failing;
    return {pass, d.str()};
}

// ---- 9: guarded measurement probabilities -------------------------------

Outcome guardedMeasurement() {
    const ProgramFile f = parse("qvar c : 2; qvar q : 2; qif [c] |0> -> measure MZ[q : x] = 0 -> skip [] 1 -> skip end"
                                " [] |1> -> measure MX[q : y] = + -> skip [] - -> skip end fiq");
    const SemResult r = semiClassical(f.body, f.registry);
    const std::vector<CMatrix> m0{CMatrix::projector(CMatrix::basisVector(2, 0)),
                                  CMatrix::projector(CMatrix::basisVector(2, 1))};
    const std::vector<CMatrix> m1{CMatrix::projector(CMatrix::columnVector(std::vector<Complex>{kR2, kR2})),
                                  CMatrix::projector(CMatrix::columnVector(std::vector<Complex>{kR2, -kR2}))};
    Rng rng(kSeed + 9);
    constexpr int kStates = 20;
    int ok = 0;
    double worst = 0.0;
    for (int k = 0; k < kStates; ++k) {
        const CMatrix psi = randomPureState(4, rng);
        const CMatrix psi0 = CMatrix::columnVector(std::vector<Complex>{psi(0, 0), psi(1, 0)});
        const CMatrix psi1 = CMatrix::columnVector(std::vector<Complex>{psi(2, 0), psi(3, 0)});
        double d = 0.0;
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
                const CMatrix& op = r.semi.entry(i * 2 + j).op;
                const double p = std::pow((op * psi).frobeniusNorm(), 2);
                const double expected =
                    0.5 * (std::pow((m0[i] * psi0).frobeniusNorm(), 2) + std::pow((m1[j] * psi1).frobeniusNorm(), 2));
                d = std::max(d, std::abs(p - expected));
            }
        worst = std::max(worst, d);
        ok += d < kPropertyTol;
    }
    std::ostringstream d;
    d << ok << "/" << kStates << " states, max probability difference " << fmt(worst);
    return {ok == kStates, d.str()};
}

// ---- 10: subspace-guarded alternation -----------------------------------

Outcome subspaceAlternation() {
    Registry reg;
    reg.declareQVar("c", 4);
    reg.declareQVar("q", 2);
    reg.declareQVar("p", 3);
    Rng rng(kSeed + 10);
    ProgramGenerator gen(rng, "B");
    const std::vector<std::string> coins{"c"};

    // Lines: every subspace one-dimensional, branches may measure.
    double lines = 0.0;
    for (int k = 0; k < 5; ++k) {
        const CMatrix w = randomUnitary(4, rng);
        std::vector<ProgramPtr> branches;
        std::vector<std::vector<CMatrix>> subspaces;
        std::vector<CMatrix> guards;
        for (std::size_t i = 0; i < 4; ++i) {
            const bool onQ = rng.coin();
            branches.push_back(gen.branch(onQ ? "q" : "p", onQ ? 2 : 3, "x" + std::to_string(i), rng.coin()));
            subspaces.push_back({w.column(i)});
            guards.push_back(w.column(i));
        }
        const SuperOp viaSubspaces = subspaceQif(coins, subspaces, branches, reg);
        const SuperOp ordinary = channelOf(Program::qif(coins, guards, branches), reg);
        lines = std::max(lines, viaSubspaces.distance(ordinary));
    }

    // Two planes, measurement-free branches, two bases per plane.
    double planes = 0.0;
    for (int k = 0; k < 5; ++k) {
        const CMatrix w = randomUnitary(4, rng);
        const std::vector<ProgramPtr> branches{gen.unitaryOnly("q", 2), gen.unitaryOnly("p", 3)};
        std::vector<std::vector<CMatrix>> first{{w.column(0), w.column(1)}, {w.column(2), w.column(3)}};
        std::vector<std::vector<CMatrix>> second;
        for (const auto& plane : first) {
            const CMatrix v = randomUnitary(2, rng);
            second.push_back({plane[0] * v(0, 0) + plane[1] * v(1, 0), plane[0] * v(0, 1) + plane[1] * v(1, 1)});
        }
        planes = std::max(planes, subspaceQif(coins, first, branches, reg).distance(subspaceQif(coins, second, branches, reg)));
    }
    std::ostringstream d;
    d << "1-dim subspaces vs ordinary: max residual " << fmt(lines) << "; 5 basis pairs: max residual " << fmt(planes);
    return {lines < kMatrixTol && planes < kPropertyTol, d.str()};
}

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "worked example: sub-results and composed matrices as printed", 1.0, workedExampleMatrices},
        {2, "worked example: lambda coefficients", 1.0, lambdaRegression},
        {3, "fullness of guarded composition (200 instances)", 10.0, fullness},
        {4, "basis-change covariance (50 instances)", 10.0, basisCovariance},
        {5, "wp duality (100 triples)", 30.0, wpDuality},
        {6, "probabilistic choice via quantum choice (20 + mixture)", 30.0, probabilisticChoice},
        {7, "algebraic law suite (10 per law)", 60.0, lawSuite},
        {8, "walk programs vs step oracles (N=8)", 60.0, walks},
        {9, "guarded measurement probabilities (20 states)", 5.0, guardedMeasurement},
        {10, "subspace-guarded alternation", 10.0, subspaceAlternation},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > c.budgetSeconds) {
            o.pass = false;
            o.detail += "; over time budget";
        }
        failures += !o.pass;
        std::printf("%s %2d  %s: %s [%.3fs / %.0fs]\n", o.pass ? "PASS" : "FAIL", c.id, c.title.c_str(),
                    o.detail.c_str(), secs, c.budgetSeconds);
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}

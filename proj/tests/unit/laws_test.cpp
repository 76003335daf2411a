#include "support.hpp"

#include "qgcl/laws.hpp"
#include "qgcl/parser.hpp"
#include "qgcl/random.hpp"
#include "qgcl/semantics.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace qgcl {
namespace {

Registry coinAndQubits() {
    Registry r;
    r.declareQVar("c", 2);
    r.declareQVar("d", 2);
    r.declareQVar("q", 2);
    r.declareQVar("r", 2);
    return r;
}

std::vector<CMatrix> basis(std::size_t n) {
    std::vector<CMatrix> out;
    for (std::size_t k = 0; k < n; ++k) out.push_back(CMatrix::basisVector(n, k));
    return out;
}

TEST(Laws, NamesRoundTrip) {
    for (LawId law : kAllLaws) EXPECT_EQ(lawFromName(lawName(law)), law);
    EXPECT_EQ(lawName(LawId::CoinLocalize), "COIN_LOCALIZE");
    EXPECT_EQ(lawFromName("NOPE"), std::nullopt);
    EXPECT_EQ(relationName(Relation::EquivCoinFree), "EQUIV_CF");
}

TEST(Laws, InnerWeightsAreSquaredLambdaOfTheComposedAlternation) {
    const Registry reg = coinAndQubits();
    Rng rng(401);
    ProgramGenerator gen(rng);
    for (int trial = 0; trial < 5; ++trial) {
        // Branches on different variables so the padding factor matters.
        const std::vector<ProgramPtr> branches{gen.branch("q", 2, "x", true), gen.branch("r", 2, "y", true),
                                               gen.branch("q", 2, "z", trial % 2 == 0)};
        Registry wide = reg;
        wide.declareQVar("e", 3);
        std::vector<OVF> fns;
        std::vector<GuardedBranch> gb;
        for (std::size_t k = 0; k < 3; ++k) {
            fns.push_back(semiClassical(branches[k], wide).semi);
            gb.push_back({CMatrix::basisVector(3, k), fns.back()});
        }
        const std::vector<std::size_t> coin{wide.qvarIndex("e")};
        const OVF composed = guardedCompose(coin, gb, wide);
        const auto weights = innerAlternationWeights(fns, wide);
        const auto lambdas = lambdaCoeffs(composed);
        ASSERT_EQ(weights.size(), lambdas.size());
        double total = 0.0;
        for (double w : weights) total += w;
        for (std::size_t s = 0; s < weights.size(); ++s)
            EXPECT_NEAR(weights[s] / total, lambdas[s] * lambdas[s], 1e-12);
    }
}

TEST(Laws, AssociativeAlphaIsOneForUnitaryBranches) {
    const Registry reg = coinAndQubits();
    Rng rng(403);
    ProgramGenerator gen(rng);
    std::vector<std::vector<OVF>> inner(2);
    for (auto& row : inner)
        for (int l = 0; l < 2; ++l) row.push_back(semiClassical(gen.unitaryOnly("q", 2), reg).semi);
    const AlphaFamily a = synthAlphaAssoc(inner, reg);
    ASSERT_EQ(a.branchCount(), 4u);
    for (std::size_t k = 0; k < 4; ++k)
        for (const Complex& c : a.coefficients(k)) EXPECT_NEAR(std::abs(c - Complex(1.0)), 0.0, 1e-14);
}

TEST(Laws, SynthesisedFamiliesAreNormalised) {
    const Registry reg = coinAndQubits();
    Rng rng(405);
    ProgramGenerator gen(rng);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<std::vector<OVF>> inner(2 + trial % 2);
        int counter = 0;
        for (auto& row : inner)
            for (int l = 0; l < 2; ++l)
                row.push_back(
                    semiClassical(gen.branch(l ? "r" : "q", 2, "m" + std::to_string(counter++), rng.coin()), reg).semi);
        const AlphaFamily assoc = synthAlphaAssoc(inner, reg);
        for (std::size_t k = 0; k < assoc.branchCount(); ++k) EXPECT_LT(assoc.normalizationDefect(k), 1e-10);

        std::vector<OVF> withTail;
        for (int i = 0; i < 3; ++i) withTail.push_back(semiClassical(gen.branch("q", 2, "x", true), reg).semi);
        // Each of these has |Delta| = |Delta(P_i)| * 2 for a two-outcome tail.
        std::vector<OVF> tailed;
        for (const auto& f : withTail) {
            std::vector<OvfEntry> entries;
            for (const auto& e : f.entries()) {
                entries.push_back({ClassicalState::concat(e.state, ClassicalState::assign("t", "0")), e.op * 0.6});
                entries.push_back({ClassicalState::concat(e.state, ClassicalState::assign("t", "1")), e.op * 0.8});
            }
            tailed.push_back(OVF(f.vars(), f.dim(), std::move(entries)));
        }
        const AlphaFamily dist = synthAlphaDist(tailed, 2);
        for (std::size_t k = 0; k < dist.branchCount(); ++k) EXPECT_LT(dist.normalizationDefect(k), 1e-10);
    }
}

TEST(Laws, DistributiveAlphaWithUnitaryTailIsLambdaProduct) {
    const Registry reg = coinAndQubits();
    Rng rng(407);
    ProgramGenerator gen(rng);
    std::vector<OVF> fns;
    for (int i = 0; i < 2; ++i) fns.push_back(semiClassical(gen.branch("q", 2, "x", true), reg).semi);
    const AlphaFamily dist = synthAlphaDist(fns, 1);
    const AlphaFamily lambda = AlphaFamily::fromLambda(fns);
    for (std::size_t k = 0; k < 2; ++k) {
        ASSERT_EQ(dist.coefficients(k).size(), lambda.coefficients(k).size());
        for (std::size_t t = 0; t < dist.coefficients(k).size(); ++t)
            EXPECT_NEAR(std::abs(dist.coefficients(k)[t] - lambda.coefficients(k)[t]), 0.0, 1e-14);
    }
}

TEST(Laws, IdempotenceWithHadamard) {
    const ProgramFile lhs = parse("qvar c : 2; qvar q : 2; qif [c] |0> -> H[q] [] |1> -> H[q] fiq");
    const ProgramFile rhs = parse("qvar c : 2; qvar q : 2; H[q]");
    LawInstance inst{LawId::AltIdem, "H", lhs.registry, lhs.body, rhs.body, Relation::Equiv, {}};
    const LawVerdict v = checkLaw(inst);
    EXPECT_TRUE(v.pass) << v.residual;
    EXPECT_TRUE(v.problems.empty());
}

TEST(Laws, CommutativityOnTheWorkedAlternation) {
    const ProgramFile f = parseFile(QGCL_TEST_DATA_DIR "/alternation.qgcl");
    const auto* qif = f.body->as<QIfStmt>();
    const GateDef swap = gatelib::builtin("PERM", 2, {1, 0});
    const ProgramPtr swapped = Program::qif({"c"}, basis(2), {qif->branches[1], qif->branches[0]});
    const ProgramPtr rhs = Program::seqAll(
        {Program::unitary(swap, {"c"}), swapped, Program::unitary(swap, {"c"})});
    LawInstance inst{LawId::AltComm, "swap", f.registry, f.body, rhs, Relation::Equiv, {}};
    const LawVerdict v = checkLaw(inst);
    EXPECT_TRUE(v.pass) << v.residual;
    // Without the coin permutation the alternation is a different program.
    LawInstance plain{LawId::AltComm, "no swap", f.registry, f.body, swapped, Relation::Equiv, {}};
    EXPECT_FALSE(checkLaw(plain).pass);
}

TEST(Laws, MixtureInstanceGivesWeightedDephasing) {
    const double p = 0.3;
    const LawInstance inst = mixtureInstance(p);
    EXPECT_TRUE(checkLaw(inst).pass);
    // p * rho0 + r * rho1 for a random pure input.
    Rng rng(409);
    const CMatrix psi = randomPureState(2, rng);
    const CMatrix rho = CMatrix::projector(psi);
    const SuperOp e = channelOf(inst.lhs, inst.registry);
    const double s = test::kInvSqrt2;
    const CMatrix plus = CMatrix::projector(CMatrix::columnVector(std::vector<Complex>{s, s}));
    const CMatrix minus = CMatrix::projector(CMatrix::columnVector(std::vector<Complex>{s, -s}));
    const CMatrix z0 = CMatrix::projector(CMatrix::basisVector(2, 0));
    const CMatrix z1 = CMatrix::projector(CMatrix::basisVector(2, 1));
    const CMatrix rho0 = z0 * rho * z0 + z1 * rho * z1;
    const CMatrix rho1 = plus * rho * plus + minus * rho * minus;
    EXPECT_TRUE(test::matrixNear(e.apply(rho), rho0 * p + rho1 * (1.0 - p), 1e-12));
}

class EveryLaw : public ::testing::TestWithParam<LawId> {};

TEST_P(EveryLaw, SmallCorpusPasses) {
    const auto instances = generateLawInstances(GetParam(), 4, 11);
    ASSERT_EQ(instances.size(), 4u);
    for (const auto& inst : instances) {
        const LawVerdict v = checkLaw(inst);
        EXPECT_TRUE(v.problems.empty()) << inst.description;
        EXPECT_TRUE(v.pass) << inst.description << " residual " << v.residual;
    }
}

TEST_P(EveryLaw, GenerationIsDeterministic) {
    const auto a = generateLawInstances(GetParam(), 2, 5);
    const auto b = generateLawInstances(GetParam(), 2, 5);
    for (std::size_t k = 0; k < a.size(); ++k) {
        EXPECT_EQ(printProgram(a[k].lhs), printProgram(b[k].lhs));
        EXPECT_EQ(printProgram(a[k].rhs), printProgram(b[k].rhs));
    }
}

INSTANTIATE_TEST_SUITE_P(Laws, EveryLaw, ::testing::ValuesIn(kAllLaws),
                         [](const ::testing::TestParamInfo<LawId>& info) {
                             std::string name(lawName(info.param));
                             std::erase(name, '_');
                             return name;
                         });

TEST(Laws, ViolatedLawIsReported) {
    const ProgramFile lhs = parse("qvar c : 2; qvar q : 2; qif [c] |0> -> H[q] [] |1> -> X[q] fiq");
    const ProgramFile rhs = parse("qvar c : 2; qvar q : 2; H[q]");
    LawInstance inst{LawId::AltIdem, "", lhs.registry, lhs.body, rhs.body, Relation::Equiv, {}};
    const LawVerdict v = checkLaw(inst);
    EXPECT_FALSE(v.pass);
    EXPECT_GT(v.residual, 0.1);
}

} // namespace
} // namespace qgcl

#include "support.hpp"

#include "qgcl/errors.hpp"
#include "qgcl/parser.hpp"
#include "qgcl/random.hpp"
#include "qgcl/semantics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

namespace qgcl {
namespace {

using test::kI;
using test::kInvSqrt2;
using test::matrixNear;

const CMatrix kH = CMatrix::fromRows({{kInvSqrt2, kInvSqrt2}, {kInvSqrt2, -kInvSqrt2}});
const CMatrix kX = CMatrix::fromRows({{0, 1}, {1, 0}});
const CMatrix kY = CMatrix::fromRows({{0, -kI}, {kI, 0}});
const CMatrix kZ = CMatrix::fromRows({{1, 0}, {0, -1}});
const CMatrix kS = CMatrix::fromRows({{1, 0}, {0, kI}});

CMatrix ket(Complex a, Complex b) { return CMatrix::columnVector(std::vector<Complex>{a, b}); }
CMatrix proj(const CMatrix& v) { return test::mul(v, test::dagger(v)); }

// Kraus operators of the two subprograms of the worked alternation,
// written out from the gate and projector matrices.
std::map<std::string, CMatrix> firstBranchOracle() {
    const CMatrix p0 = proj(ket(1, 0));
    const CMatrix p1 = proj(ket(0, 1));
    return {{"x<-0", test::mul(kX, test::mul(p0, kH))}, {"x<-1", test::mul(kY, test::mul(p1, kH))}};
}

std::map<std::string, CMatrix> secondBranchOracle() {
    const std::map<std::string, CMatrix> mx{{"+", proj(ket(kInvSqrt2, kInvSqrt2))},
                                            {"-", proj(ket(kInvSqrt2, -kInvSqrt2))}};
    const std::map<std::string, CMatrix> after{{"+", kY}, {"-", kZ}};
    const std::map<std::string, CMatrix> mz{{"0", proj(ket(1, 0))}, {"1", proj(ket(0, 1))}};
    const std::map<std::string, CMatrix> last{{"0", kZ}, {"1", kX}};
    std::map<std::string, CMatrix> out;
    for (const auto& a : {"+", "-"})
        for (const auto& b : {"0", "1"}) {
            CMatrix k = test::mul(after.at(a), test::mul(mx.at(a), kS));
            k = test::mul(last.at(b), test::mul(mz.at(b), test::mul(kX, k)));
            out[std::string("(x<-") + a + ".y<-" + b + ")"] = k;
        }
    return out;
}

double weight(const std::map<std::string, CMatrix>& f, const std::string& label) {
    double total = 0.0;
    for (const auto& [l, k] : f) total += std::pow(k.frobeniusNorm(), 2);
    return std::sqrt(std::pow(f.at(label).frobeniusNorm(), 2) / total);
}

class WorkedExample : public ::testing::Test {
protected:
    void SetUp() override {
        file_ = parseFile(QGCL_TEST_DATA_DIR "/alternation.qgcl");
        result_ = semiClassical(file_.body, file_.registry);
    }
    ProgramFile file_;
    std::optional<SemResult> result_;
};

TEST_F(WorkedExample, SubprogramOperatorsMatchPrintedValues) {
    const auto* qif = file_.body->as<QIfStmt>();
    const SemResult p0 = semiClassical(qif->branches[0], file_.registry);
    const SemResult p1 = semiClassical(qif->branches[1], file_.registry);
    EXPECT_TRUE(matrixNear(p0.semi.at("x<-0"), CMatrix::fromRows({{0, 0}, {1, 1}}) * kInvSqrt2, 1e-12));
    EXPECT_TRUE(matrixNear(p0.semi.at("x<-1"), CMatrix::fromRows({{-1, 1}, {0, 0}}) * (kI * kInvSqrt2), 1e-12));
    EXPECT_TRUE(matrixNear(p1.semi.at("(x<-+.y<-0)"), CMatrix::fromRows({{kI, -1}, {0, 0}}) * 0.5, 1e-12));
    EXPECT_TRUE(matrixNear(p1.semi.at("(x<-+.y<-1)"), CMatrix::fromRows({{-kI, 1}, {0, 0}}) * 0.5, 1e-12));
    const CMatrix minus = CMatrix::fromRows({{1, -kI}, {0, 0}}) * 0.5;
    EXPECT_TRUE(matrixNear(p1.semi.at("(x<--.y<-0)"), minus, 1e-12));
    EXPECT_TRUE(matrixNear(p1.semi.at("(x<--.y<-1)"), minus, 1e-12));

    for (double l : lambdaCoeffs(p0.semi)) EXPECT_NEAR(l, kInvSqrt2, 1e-12);
    for (double l : lambdaCoeffs(p1.semi)) EXPECT_NEAR(l, 0.5, 1e-12);
}

TEST_F(WorkedExample, ComposedOperatorsMatchOracle) {
    const auto f0 = firstBranchOracle();
    const auto f1 = secondBranchOracle();
    ASSERT_EQ(result_->semi.size(), 8u);
    std::size_t index = 0;
    for (const auto& a : {"x<-0", "x<-1"})
        for (const auto& bc : {"(x<-+.y<-0)", "(x<-+.y<-1)", "(x<--.y<-0)", "(x<--.y<-1)"}) {
            const std::string label = std::string("(") + a + "(+)" + bc + ")";
            const CMatrix expected = test::kron(proj(ket(1, 0)), f0.at(a)) * weight(f1, bc) +
                                     test::kron(proj(ket(0, 1)), f1.at(bc)) * weight(f0, a);
            EXPECT_EQ(result_->semi.entry(index++).state.label(), label);
            EXPECT_TRUE(matrixNear(result_->semi.at(label), expected, 1e-12)) << label;
        }
    EXPECT_TRUE(result_->semi.isFull());
}

TEST_F(WorkedExample, ComposedOperatorEntries) {
    // Entry-level values of one composed operator: coin block 0 carries
    // lambda_1 * F_0, coin block 1 carries lambda_0 * F_1.
    const double s = 1.0 / (2.0 * std::sqrt(2.0));
    const CMatrix expected =
        CMatrix::fromRows({{0, 0, 0, 0}, {s, s, 0, 0}, {0, 0, kI * s, -s}, {0, 0, 0, 0}});
    EXPECT_TRUE(matrixNear(result_->semi.at("(x<-0(+)(x<-+.y<-0))"), expected, 1e-12));
}

TEST_F(WorkedExample, ChannelHasEightKrausOperators) {
    const SuperOp e = result_->channel();
    EXPECT_EQ(e.kraus().size(), 8u);
    Rng rng(5);
    const CMatrix rho = randomDensity(4, rng);
    EXPECT_NEAR(e.apply(rho).trace().real(), 1.0, 1e-12);
}

Registry smallRegistry() {
    Registry r;
    r.declareQVar("c", 2);
    r.declareQVar("q", 2);
    r.declareQVar("p", 3);
    return r;
}

// Random programs over q and p built from gates and measurements.
ProgramPtr randomProgram(ProgramGenerator& gen, Rng& rng, int depth, int& counter) {
    const std::string var = rng.coin() ? "q" : "p";
    const std::size_t dim = var == "q" ? 2 : 3;
    if (depth == 0) return gen.branch(var, dim, "m" + std::to_string(counter++), rng.coin());
    return Program::seq(randomProgram(gen, rng, depth - 1, counter), randomProgram(gen, rng, depth - 1, counter));
}

TEST(Semantics, SequenceIsChannelComposition) {
    const Registry reg = smallRegistry();
    Rng rng(201);
    ProgramGenerator gen(rng);
    int counter = 0;
    for (int trial = 0; trial < 10; ++trial) {
        const ProgramPtr a = randomProgram(gen, rng, 1, counter);
        const ProgramPtr b = randomProgram(gen, rng, 1, counter);
        const VarSet all = VarSet::fromIndices({1, 2});
        Evaluator ev(reg);
        const SuperOp seq = ev.channelOn(Program::seq(a, b), all);
        const SuperOp composed = ev.channelOn(a, all).then(ev.channelOn(b, all));
        EXPECT_LT(seq.distance(composed), 1e-10);
    }
}

TEST(Semantics, SequenceStatesAreConcatenations) {
    const ProgramFile f = parse("qvar q : 2; measure MZ[q : x] = 0 -> skip [] 1 -> X[q] end; "
                                "H[q]; measure MX[q : y] = + -> skip [] - -> Z[q] end");
    const SemResult r = semiClassical(f.body, f.registry);
    std::set<std::string> labels;
    for (const auto& d : r.deltas()) labels.insert(d.label());
    EXPECT_EQ(labels, (std::set<std::string>{"(x<-0.y<-+)", "(x<-0.y<--)", "(x<-1.y<-+)", "(x<-1.y<--)"}));
}

TEST(Semantics, UnitaryAndMeasurementClauses) {
    const Registry reg = smallRegistry();
    Rng rng(203);
    ProgramGenerator gen(rng);
    for (int trial = 0; trial < 5; ++trial) {
        const GateDef g = gen.randomGate(3);
        const SuperOp e = channelOf(Program::unitary(g, {"p"}), reg);
        ASSERT_EQ(e.kraus().size(), 1u);
        EXPECT_LT(e.distance(SuperOp(3, 3, {g.matrix})), 1e-12);

        const MeasDef m = gen.randomMeasurementDef(3, 2);
        const ProgramPtr b0 = gen.unitaryOnly("p", 3);
        const ProgramPtr b1 = gen.unitaryOnly("p", 3);
        const ProgramPtr prog = Program::measure(m, {"p"}, "x", {{m.outcomes[0], b0}, {m.outcomes[1], b1}});
        const SuperOp direct = SuperOp(3, 3, {m.ops[0]}).then(channelOf(b0, reg))
                                   .plus(SuperOp(3, 3, {m.ops[1]}).then(channelOf(b1, reg)));
        EXPECT_LT(channelOf(prog, reg).distance(direct), 1e-10);
    }
}

TEST(Semantics, MeasurementWithSkipBranchesDephases) {
    const ProgramFile f = parse("qvar q : 2; measure MZ[q : x] = 0 -> skip [] 1 -> skip end");
    const CMatrix plus = proj(ket(kInvSqrt2, kInvSqrt2));
    EXPECT_TRUE(matrixNear(channelOf(f.body, f.registry).apply(plus), CMatrix::identity(2) * 0.5, 1e-14));
}

TEST(Semantics, TracePreservationForAbortFreePrograms) {
    const Registry reg = smallRegistry();
    Rng rng(207);
    ProgramGenerator gen(rng);
    int counter = 0;
    for (int trial = 0; trial < 10; ++trial) {
        const ProgramPtr body = randomProgram(gen, rng, 2, counter);
        const ProgramPtr alt = Program::qif({"c"}, {CMatrix::basisVector(2, 0), CMatrix::basisVector(2, 1)},
                                            {body, randomProgram(gen, rng, 1, counter)});
        Evaluator ev(reg);
        const SuperOp e = ev.channelOn(alt, VarSet::fromIndices({0, 1, 2}));
        const CMatrix rho = randomDensity(12, rng);
        EXPECT_NEAR(e.apply(rho).trace().real(), 1.0, 1e-10);
    }
}

TEST(Semantics, AbortAndSkip) {
    const Registry reg = smallRegistry();
    const SuperOp a = channelOf(Program::abort(), reg);
    const SuperOp s = channelOf(Program::skip(), reg);
    EXPECT_EQ(a.dimIn(), 1u);
    EXPECT_EQ(a.apply(CMatrix::identity(1))(0, 0), Complex(0.0));
    EXPECT_EQ(s.apply(CMatrix::identity(1))(0, 0), Complex(1.0));
    Evaluator ev(reg);
    EXPECT_LT(ev.channelOn(Program::skip(), VarSet::fromIndices({1})).distance(SuperOp::identity(2)), 1e-15);
}

TEST(Semantics, AlternationOverAbortIsWellDefined) {
    const ProgramFile f = parse("qvar c : 2; qvar q : 2; qif [c] |0> -> abort [] |1> -> X[q] fiq");
    const SemResult r = semiClassical(f.body, f.registry);
    ASSERT_EQ(r.semi.size(), 1u);
    const CMatrix expected = test::kron(proj(ket(0, 1)), kX);
    EXPECT_TRUE(matrixNear(r.semi.entry(0).op, expected, 1e-15));
}

TEST(Semantics, BlockTracesOutLocalVariables) {
    const ProgramFile f = parse("qvar c : 2; qvar q : 2; begin local c := |1>; CNOT[c, q] end");
    const SuperOp e = channelOf(f.body, f.registry);
    EXPECT_EQ(e.dimIn(), 2u);
    EXPECT_LT(e.distance(SuperOp(2, 2, {kX})), 1e-12);

    Rng rng(211);
    const CMatrix sigma = randomDensity(2, rng);
    const CMatrix local = randomDensity(2, rng);
    const auto* blk = f.body->as<BlockStmt>();
    // tr_c(CNOT (rho_c (x) sigma) CNOT), computed by hand.
    const CMatrix cnot = CMatrix::fromRows({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
    const CMatrix joint = test::mul(test::mul(cnot, test::kron(local, sigma)), test::dagger(cnot));
    CMatrix expected(2, 2);
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) expected(i, j) += joint(a * 2 + i, a * 2 + j);
    EXPECT_TRUE(matrixNear(evalBlock(blk->locals, local, blk->body, sigma, f.registry), expected, 1e-13));
    EXPECT_THROW(evalBlock(blk->locals, CMatrix::identity(2), blk->body, sigma, f.registry), StateError);
}

TEST(Semantics, ProbabilisticChoiceMixesChannels) {
    const ProgramFile f = parse("qvar q : 2; qvar p : 3; pchoice X[q] @ 0.25 [] TR[p] @ 0.5 end");
    const SuperOp e = channelOf(f.body, f.registry);
    EXPECT_EQ(e.dimIn(), 6u);
    const CMatrix rho = test::kron(proj(ket(1, 0)), CMatrix::projector(CMatrix::basisVector(3, 0)));
    const CMatrix out = e.apply(rho);
    EXPECT_NEAR(out(3, 3).real(), 0.25, 1e-14); // |1>|0>
    EXPECT_NEAR(out(1, 1).real(), 0.5, 1e-14);  // |0>|1>
    EXPECT_NEAR(out.trace().real(), 0.75, 1e-14);

    const Registry& reg = f.registry;
    const std::vector<std::pair<ProgramPtr, double>> bad{{Program::skip(), 0.75}, {Program::skip(), 0.5}};
    EXPECT_THROW(evalProbChoice(bad, reg), ProbabilityError);
    const std::vector<std::pair<ProgramPtr, double>> zero{{Program::skip(), 0.0}};
    EXPECT_THROW(evalProbChoice(zero, reg), ProbabilityError);
}

TEST(Semantics, QuantumChoiceIsCoinThenAlternation) {
    const ProgramFile f = parse("qvar c : 2; qvar q : 2; [H[c]] (+) |0> -> X[q] [] |1> -> "
                                "measure MZ[q : x] = 0 -> skip [] 1 -> skip end end");
    const ProgramFile g = parse("qvar c : 2; qvar q : 2; H[c]; qif [c] |0> -> X[q] [] |1> -> "
                                "measure MZ[q : x] = 0 -> skip [] 1 -> skip end fiq");
    EXPECT_LT(channelOf(f.body, f.registry).distance(channelOf(g.body, g.registry)), 1e-14);
}

TEST(Semantics, GuardedMeasurementComposition) {
    // M_ij (|0>psi0 + |1>psi1) = (1/sqrt 2)(|0> M_i psi0 + |1> M_j psi1)
    const ProgramFile f = parse("qvar c : 2; qvar q : 2; qif [c] |0> -> measure MZ[q : x] = 0 -> skip [] 1 -> skip end"
                                " [] |1> -> measure MX[q : y] = + -> skip [] - -> skip end fiq");
    const SemResult r = semiClassical(f.body, f.registry);
    ASSERT_EQ(r.semi.size(), 4u);
    Rng rng(213);
    const CMatrix psi0 = randomGaussian(2, 1, rng);
    const CMatrix psi1 = randomGaussian(2, 1, rng);
    const CMatrix psi = test::kron(ket(1, 0), psi0) + test::kron(ket(0, 1), psi1);
    const std::vector<CMatrix> mz{proj(ket(1, 0)), proj(ket(0, 1))};
    const std::vector<CMatrix> mx{proj(ket(kInvSqrt2, kInvSqrt2)), proj(ket(kInvSqrt2, -kInvSqrt2))};
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            const CMatrix expected =
                (test::kron(ket(1, 0), test::mul(mz[i], psi0)) + test::kron(ket(0, 1), test::mul(mx[j], psi1))) *
                kInvSqrt2;
            EXPECT_TRUE(matrixNear(r.semi.entry(i * 2 + j).op * psi, expected, 1e-13));
        }
}

TEST(Semantics, SubspaceAlternationWithLinesIsOrdinaryAlternation) {
    const ProgramFile a = parse("qvar c : 2; qvar q : 2; qif [c] {|0>} -> H[q] [] {|1>} -> "
                                "measure MZ[q : x] = 0 -> skip [] 1 -> X[q] end fiq");
    const ProgramFile b = parse("qvar c : 2; qvar q : 2; qif [c] |0> -> H[q] [] |1> -> "
                                "measure MZ[q : x] = 0 -> skip [] 1 -> X[q] end fiq");
    EXPECT_LT(channelOf(a.body, a.registry).distance(channelOf(b.body, b.registry)), 1e-12);
}

TEST(Semantics, SubspaceAlternationIgnoresBasisForUnitaryBranches) {
    Registry reg;
    reg.declareQVar("c", 3);
    reg.declareQVar("q", 2);
    Rng rng(217);
    ProgramGenerator gen(rng);
    const ProgramPtr p0 = gen.unitaryOnly("q", 2);
    const ProgramPtr p1 = gen.unitaryOnly("q", 2);
    const std::vector<ProgramPtr> branches{p0, p1};
    const CMatrix u = randomUnitary(2, rng);
    auto lift = [](const CMatrix& v) {
        return CMatrix::columnVector(std::vector<Complex>{0.0, v(0, 0), v(1, 0)});
    };
    const std::vector<std::vector<CMatrix>> basisA{{CMatrix::basisVector(3, 0)},
                                                   {CMatrix::basisVector(3, 1), CMatrix::basisVector(3, 2)}};
    const std::vector<std::vector<CMatrix>> basisB{{CMatrix::basisVector(3, 0)}, {lift(u.column(0)), lift(u.column(1))}};
    const std::vector<std::string> coins{"c"};
    const SuperOp ea = subspaceQif(coins, basisA, branches, reg);
    const SuperOp eb = subspaceQif(coins, basisB, branches, reg);
    EXPECT_LT(ea.distance(eb), 1e-10);
}

} // namespace
} // namespace qgcl

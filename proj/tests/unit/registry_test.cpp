#include "support.hpp"

#include "qgcl/errors.hpp"
#include "qgcl/random.hpp"
#include "qgcl/registry.hpp"

#include <gtest/gtest.h>

namespace qgcl {
namespace {

Registry threeVars() {
    Registry r;
    r.declareQVar("c", 2);
    r.declareQVar("q", 3);
    r.declareQVar("r", 2);
    return r;
}

TEST(Registry, DeclarationOrderIsCanonical) {
    const Registry reg = threeVars();
    const std::vector<std::string> names{"r", "c"};
    const VarSet s = reg.makeSet(names);
    EXPECT_EQ(reg.namesOf(s), (std::vector<std::string>{"c", "r"}));
    EXPECT_EQ(reg.dimOf(s), 4u);
    EXPECT_EQ(reg.dimsOf(s), (std::vector<std::size_t>{2, 2}));
}

TEST(Registry, RejectsBadDeclarations) {
    Registry reg = threeVars();
    EXPECT_THROW(reg.declareQVar("q", 2), Error);
    EXPECT_THROW(reg.declareQVar("z", 0), DimensionError);
    EXPECT_THROW(reg.declareCVar("c", {"0", "1"}), Error);
    EXPECT_THROW(reg.qvarIndex("nope"), UnknownVariableError);
}

TEST(Registry, VarSetAlgebra) {
    const VarSet a = VarSet::fromIndices({2, 0});
    const VarSet b = VarSet::fromIndices({1, 2});
    EXPECT_EQ(a.unite(b), VarSet::fromIndices({0, 1, 2}));
    EXPECT_EQ(a.intersect(b), VarSet::fromIndices({2}));
    EXPECT_EQ(a.minus(b), VarSet::fromIndices({0}));
    EXPECT_TRUE(a.intersects(b));
    EXPECT_TRUE(VarSet::fromIndices({2}).isSubsetOf(a));
    EXPECT_FALSE(b.isSubsetOf(a));
}

TEST(Registry, EmbedPadsWithIdentity) {
    const Registry reg = threeVars();
    Rng rng(5);
    const CMatrix u = randomUnitary(3, rng);
    const std::vector<std::size_t> from{1};
    const CMatrix lifted = reg.embed(u, from, VarSet::fromIndices({0, 1, 2}));
    const CMatrix expected = test::kron(test::kron(CMatrix::identity(2), u), CMatrix::identity(2));
    EXPECT_TRUE(test::matrixNear(lifted, expected, 0.0));
}

TEST(Registry, EmbedReordersListedVariables) {
    const Registry reg = threeVars();
    Rng rng(7);
    const CMatrix a = randomUnitary(2, rng);
    const CMatrix b = randomUnitary(2, rng);
    // a (x) b given on (r, c) must land as b (x) a on (c, r).
    const std::vector<std::size_t> from{2, 0};
    const CMatrix lifted = reg.embed(test::kron(a, b), from, VarSet::fromIndices({0, 2}));
    EXPECT_TRUE(test::matrixNear(lifted, test::kron(b, a), 1e-15));
}

TEST(Registry, EmbedIsFunctorialAndMultiplicative) {
    const Registry reg = threeVars();
    Rng rng(9);
    const VarSet a = VarSet::fromIndices({1});
    const VarSet b = VarSet::fromIndices({0, 1});
    const VarSet c = VarSet::fromIndices({0, 1, 2});
    for (int trial = 0; trial < 5; ++trial) {
        const CMatrix x = randomGaussian(3, 3, rng);
        const CMatrix y = randomGaussian(3, 3, rng);
        EXPECT_TRUE(test::matrixNear(reg.embed(reg.embed(x, a, b), b, c), reg.embed(x, a, c), 1e-12));
        EXPECT_TRUE(test::matrixNear(reg.embed(x * y, a, c), reg.embed(x, a, c) * reg.embed(y, a, c), 1e-12));
        const CMatrix u = randomUnitary(3, rng);
        EXPECT_TRUE(isUnitary(reg.embed(u, a, c)));
    }
}

TEST(Registry, EmbedErrors) {
    const Registry reg = threeVars();
    const std::vector<std::size_t> from{1};
    EXPECT_THROW(reg.embed(CMatrix::identity(2), from, VarSet::fromIndices({1})), DimensionError);
    EXPECT_THROW(reg.embed(CMatrix::identity(3), from, VarSet::fromIndices({0})), VariableScopeError);
}

TEST(Registry, EmptySetIsScalar) {
    const Registry reg = threeVars();
    EXPECT_EQ(reg.dimOf(VarSet{}), 1u);
    const CMatrix lifted = reg.embed(CMatrix::identity(1), VarSet{}, VarSet::fromIndices({0}));
    EXPECT_EQ(lifted, CMatrix::identity(2));
}

TEST(Registry, MergeAppendsAndChecksConsistency) {
    Registry a = threeVars();
    Registry b;
    b.declareQVar("q", 3);
    b.declareQVar("z", 4);
    a.merge(b);
    EXPECT_EQ(a.qvarIndex("z"), 3u);
    Registry clash;
    clash.declareQVar("q", 2);
    EXPECT_THROW(a.merge(clash), DimensionError);
}

} // namespace
} // namespace qgcl

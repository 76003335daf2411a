#include "qgcl/wp_equiv.hpp"

#include "qgcl/errors.hpp"
#include "qgcl/random.hpp"
#include "qgcl/semantics.hpp"

namespace qgcl {

namespace {

std::vector<std::size_t> positionsIn(const VarSet& sub, const VarSet& set) {
    std::vector<std::size_t> out;
    const auto all = set.indices();
    for (std::size_t v : sub.indices())
        for (std::size_t k = 0; k < all.size(); ++k)
            if (all[k] == v) out.push_back(k);
    return out;
}

VarSet unionSpace(const ProgramPtr& p, const ProgramPtr& q, const Registry& registry) {
    return qvarSet(*p, registry).unite(qvarSet(*q, registry));
}

} // namespace

Observable::Observable(VarSet vars, CMatrix matrix, const Registry& registry, double tol)
    : vars_(std::move(vars)), matrix_(std::move(matrix)) {
    const std::size_t d = registry.dimOf(vars_);
    if (matrix_.rows() != d || matrix_.cols() != d) {
        throw DimensionError("observable is " + std::to_string(matrix_.rows()) + "x" +
                             std::to_string(matrix_.cols()) + " but its variables have dimension " +
                             std::to_string(d));
    }
    if (!isHermitian(matrix_, tol)) throw Error("observable is not Hermitian");
    if (!isPSD(matrix_, tol)) throw Error("observable is not positive semidefinite");
}

SuperOp wp(const ProgramPtr& p, const Registry& registry) { return channelOf(p, registry).adjoint(); }

HoareVerdict checkHoare(const Observable& pre, const ProgramPtr& p, const Observable& post,
                        const Registry& registry, double tol) {
    const VarSet space = qvarSet(*p, registry).unite(pre.vars()).unite(post.vars());
    Evaluator ev(registry, tol);
    const SuperOp dual = ev.channelOn(p, space).adjoint();
    HoareVerdict v;
    v.weakestPre = dual.apply(registry.embed(post.matrix(), post.vars(), space));
    const CMatrix gap = v.weakestPre - registry.embed(pre.matrix(), pre.vars(), space);
    v.margin = minEigenvalue(gap);
    v.satisfied = v.margin >= -tol;
    return v;
}

EquivalenceVerdict equivalent(const ProgramPtr& p, const ProgramPtr& q, const Registry& registry, double tol) {
    const VarSet space = unionSpace(p, q, registry);
    Evaluator ev(registry, tol);
    const SuperOp a = ev.channelOn(p, space);
    const SuperOp b = ev.channelOn(q, space);
    EquivalenceVerdict v;
    v.residual = a.distance(b);
    v.equivalent = v.residual <= tol;
    return v;
}

SuperOp traceOutAfter(const SuperOp& e, const VarSet& space, const VarSet& coins, const Registry& registry) {
    const VarSet traced = coins.intersect(space);
    if (traced.empty()) return e;
    const auto dims = registry.dimsOf(space);
    const auto fixed = positionsIn(traced, space);
    const auto coinDims = registry.dimsOf(traced);
    const std::size_t assignments = product(coinDims);
    std::vector<CMatrix> ks;
    ks.reserve(e.kraus().size() * assignments);
    std::vector<std::size_t> digits(coinDims.size());
    for (const auto& k : e.kraus()) {
        for (std::size_t a = 0; a < assignments; ++a) {
            std::size_t rest = a;
            for (std::size_t j = coinDims.size(); j-- > 0;) {
                digits[j] = rest % coinDims[j];
                rest /= coinDims[j];
            }
            ks.push_back(projectRows(k, dims, fixed, digits));
        }
    }
    return SuperOp(e.dimIn(), registry.dimOf(space.minus(traced)), std::move(ks));
}

EquivalenceVerdict coinFreeEquivalent(const ProgramPtr& p, const ProgramPtr& q, const Registry& registry,
                                      double tol) {
    const VarSet space = unionSpace(p, q, registry);
    const VarSet coins = namesToSet(p->coinVars(), registry).unite(namesToSet(q->coinVars(), registry));
    Evaluator ev(registry, tol);
    const SuperOp a = traceOutAfter(ev.channelOn(p, space), space, coins, registry);
    const SuperOp b = traceOutAfter(ev.channelOn(q, space), space, coins, registry);
    EquivalenceVerdict v;
    v.residual = a.distance(b);
    v.equivalent = v.residual <= tol;
    return v;
}

RefinementVerdict refines(const ProgramPtr& p, const ProgramPtr& q, const Registry& registry,
                          std::size_t samples, std::uint64_t seed, double tol) {
    const VarSet space = unionSpace(p, q, registry);
    const std::size_t d = registry.dimOf(space);
    Evaluator ev(registry, tol);
    const SuperOp wpP = ev.channelOn(p, space).adjoint();
    const SuperOp wpQ = ev.channelOn(q, space).adjoint();
    Rng rng(seed);

    RefinementVerdict v;
    auto test = [&](const CMatrix& n, std::string kind) {
        ++v.samplesChecked;
        if (loewnerLeq(wpP.apply(n), wpQ.apply(n), tol)) return false;
        v.refuted = true;
        v.witness = n;
        v.witnessKind = std::move(kind);
        return true;
    };

    for (std::size_t s = 0; s < samples; ++s) {
        bool hit = false;
        if (s == 0) {
            hit = test(CMatrix::identity(d), "identity");
        } else if (s <= d) {
            hit = test(CMatrix::projector(CMatrix::basisVector(d, s - 1)), "basis " + std::to_string(s - 1));
        } else if ((s - d) % 2 == 1) {
            hit = test(CMatrix::projector(randomPureState(d, rng)), "pure");
        } else {
            hit = test(randomEffect(d, rng), "mixed");
        }
        if (hit) break;
    }
    return v;
}

} // namespace qgcl

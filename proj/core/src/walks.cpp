#include "qgcl/walks.hpp"

#include "qgcl/errors.hpp"
#include "qgcl/semantics.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

namespace qgcl {

namespace {

constexpr const char* kVariantNames[] = {"hadamard",     "unidirectional", "position-time-coin",
                                         "three-state", "multi-coin",     "two-walker-shared"};

CMatrix hadamard() {
    const double h = 1.0 / std::sqrt(2.0);
    return CMatrix::fromRows({{h, h}, {h, -h}});
}

CMatrix threeStateCoin() {
    const double a = -1.0 / 3.0;
    const double b = 2.0 / 3.0;
    return CMatrix::fromRows({{a, b, b}, {b, a, b}, {b, b, a}});
}

CMatrix cnot() {
    return CMatrix::fromRows({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
}

// Cyclic shift by `delta` built entry by entry.
CMatrix cyclicShift(std::size_t n, long delta) {
    CMatrix m(n, n);
    const long ln = static_cast<long>(n);
    for (long k = 0; k < ln; ++k) m(static_cast<std::size_t>(((k + delta) % ln + ln) % ln), static_cast<std::size_t>(k)) = 1.0;
    return m;
}

CMatrix ketbra(std::size_t dim, std::size_t k) { return CMatrix::projector(CMatrix::basisVector(dim, k)); }

// |L><L| (x) TL + |R><R| (x) TR on coin (x) position.
CMatrix controlledShift(std::size_t n) {
    return tensor(ketbra(2, 0), cyclicShift(n, -1)) + tensor(ketbra(2, 1), cyclicShift(n, 1));
}

bool singleWalker(const WalkSpec& spec) { return spec.variant != WalkVariant::TwoWalkerShared; }

std::size_t coinDim(const WalkSpec& spec) { return spec.variant == WalkVariant::ThreeState ? 3 : 2; }

CMatrix sharedCoinOf(const WalkSpec& spec) { return spec.sharedCoin.empty() ? cnot() : spec.sharedCoin; }

CoinHook hookOf(const WalkSpec& spec) { return spec.coinHook ? spec.coinHook : defaultCoinHook(spec.cycleSize); }

std::string coinName(std::size_t m) { return "c" + std::to_string(m); }

// Coin used at step t (1-based) of the multi-coin walk.
std::size_t multiCoinIndex(const WalkSpec& spec, std::size_t t) { return (t - 1) % spec.coinCount + 1; }

ProgramPtr shiftChoice(const std::string& coin, const std::string& pos, std::size_t n) {
    return Program::qchoice(Program::unitary(gatelib::builtin("H", 2), {coin}),
                            {CMatrix::basisVector(2, 0), CMatrix::basisVector(2, 1)},
                            {Program::unitary(gatelib::builtin("TL", n), {pos}),
                             Program::unitary(gatelib::builtin("TR", n), {pos})});
}

std::size_t totalDim(const Registry& r) {
    std::size_t d = 1;
    for (const auto& v : r.qvars()) d *= v.dim;
    return d;
}

VarSet allVars(const Registry& r) {
    std::vector<std::size_t> all(r.qvars().size());
    for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
    return VarSet::fromIndices(std::move(all));
}

} // namespace

std::string_view variantName(WalkVariant v) { return kVariantNames[static_cast<std::size_t>(v)]; }

std::optional<WalkVariant> variantFromName(std::string_view name) {
    for (std::size_t k = 0; k < std::size(kVariantNames); ++k)
        if (name == kVariantNames[k]) return static_cast<WalkVariant>(k);
    return std::nullopt;
}

CoinHook defaultCoinHook(std::size_t cycleSize) {
    return [cycleSize](std::size_t n, std::size_t t) {
        const double angle = std::numbers::pi * static_cast<double>(n + t) / static_cast<double>(cycleSize);
        return CoinParams{Complex{1.0, 0.0}, std::polar(1.0, angle), 0.0};
    };
}

CMatrix positionTimeCoin(const CoinParams& k) {
    const double h = 1.0 / std::sqrt(2.0);
    const Complex phase = std::polar(1.0, k.theta);
    return CMatrix::fromRows({{h * k.c, h * k.s}, {h * std::conj(k.s), -h * phase * k.c}});
}

Registry walkRegistry(const WalkSpec& spec) {
    Registry r;
    switch (spec.variant) {
    case WalkVariant::MultiCoin:
        for (std::size_t m = 1; m <= spec.coinCount; ++m) r.declareQVar(coinName(m), 2);
        r.declareQVar("p", spec.cycleSize);
        break;
    case WalkVariant::TwoWalkerShared:
        r.declareQVar("q1", spec.cycleSize);
        r.declareQVar("q2", spec.cycleSize);
        r.declareQVar("c1", 2);
        r.declareQVar("c2", 2);
        break;
    default:
        r.declareQVar("c", coinDim(spec));
        r.declareQVar("p", spec.cycleSize);
        break;
    }
    return r;
}

void validateWalkSpec(const WalkSpec& spec) {
    if (spec.cycleSize < 2) throw Error("walk cycle size must be at least 2");
    if (spec.variant == WalkVariant::MultiCoin && spec.coinCount < 1) throw Error("multi-coin walk needs a coin");
    if (spec.variant == WalkVariant::TwoWalkerShared) {
        const CMatrix u = sharedCoinOf(spec);
        if (u.rows() != 4 || u.cols() != 4) throw DimensionError("shared coin must be a 4x4 matrix");
        if (!isUnitary(u)) throw Error("shared coin is not unitary");
    }
    if (!spec.initialState.empty()) {
        const std::size_t d = totalDim(walkRegistry(spec));
        if (spec.initialState.rows() != d || spec.initialState.cols() != 1)
            throw DimensionError("initial state must be a column vector of dimension " + std::to_string(d));
        const double norm = spec.initialState.frobeniusNorm();
        if (std::abs(norm - 1.0) > kTolEq) throw StateError("initial state is not normalised");
    }
}

CMatrix walkBasisState(const WalkSpec& spec, const std::map<std::string, std::string>& assignment) {
    const Registry reg = walkRegistry(spec);
    std::vector<CMatrix> factors;
    for (const auto& v : reg.qvars()) factors.push_back(CMatrix::basisVector(v.dim, 0));
    for (const auto& [name, value] : assignment) {
        const std::size_t idx = reg.qvarIndex(name);
        const std::size_t dim = reg.qvar(idx).dim;
        std::size_t k = 0;
        const bool isCoin = name[0] == 'c';
        if (isCoin) {
            if (value == "L") k = 0;
            else if (value == "R") k = dim - 1;
            else if (value == "0" && dim == 3) k = 1;
            else throw Error("coin value '" + value + "' is not one of L, R" + (dim == 3 ? ", 0" : ""));
        } else {
            long pos = 0;
            const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), pos);
            if (ec != std::errc{} || ptr != value.data() + value.size())
                throw Error("position '" + value + "' is not an integer");
            const long n = static_cast<long>(dim);
            k = static_cast<std::size_t>((pos % n + n) % n);
        }
        factors[idx] = CMatrix::basisVector(dim, k);
    }
    return tensorAll(factors);
}

ProgramPtr walkStepProgram(const WalkSpec& spec, std::size_t t) {
    const std::size_t n = spec.cycleSize;
    const auto tl = [&](const std::string& p) { return Program::unitary(gatelib::builtin("TL", n), {p}); };
    const auto tr = [&](const std::string& p) { return Program::unitary(gatelib::builtin("TR", n), {p}); };
    const std::vector<CMatrix> lr{CMatrix::basisVector(2, 0), CMatrix::basisVector(2, 1)};
    switch (spec.variant) {
    case WalkVariant::Hadamard:
        return shiftChoice("c", "p", n);
    case WalkVariant::Unidirectional:
        return Program::qchoice(Program::unitary(gatelib::builtin("H", 2), {"c"}), lr, {Program::skip(), tr("p")});
    case WalkVariant::PositionTimeCoin: {
        const CoinHook hook = hookOf(spec);
        std::vector<CMatrix> guards;
        std::vector<ProgramPtr> coins;
        for (std::size_t pos = 0; pos < n; ++pos) {
            const CMatrix c = positionTimeCoin(hook(pos, t));
            if (!isUnitary(c)) {
                throw Error("coin at position " + std::to_string(pos) + ", time " + std::to_string(t) +
                            " is not unitary");
            }
            guards.push_back(CMatrix::basisVector(n, pos));
            coins.push_back(Program::unitary(
                GateDef{"C" + std::to_string(pos) + "t" + std::to_string(t), c, false},
                {"c"}));
        }
        return Program::seq(Program::qif({"p"}, guards, coins), Program::qif({"c"}, lr, {tl("p"), tr("p")}));
    }
    case WalkVariant::ThreeState:
        return Program::qchoice(Program::unitary(GateDef{"U3", threeStateCoin(), false}, {"c"}),
                                {CMatrix::basisVector(3, 0), CMatrix::basisVector(3, 1), CMatrix::basisVector(3, 2)},
                                {tl("p"), Program::skip(), tr("p")});
    case WalkVariant::MultiCoin:
        return shiftChoice(coinName(multiCoinIndex(spec, t)), "p", n);
    case WalkVariant::TwoWalkerShared:
        return Program::seqAll({Program::unitary(GateDef{"Ushared", sharedCoinOf(spec), false}, {"c1", "c2"}),
                                shiftChoice("c1", "q1", n), shiftChoice("c2", "q2", n)});
    }
    throw Error("unknown walk variant");
}

ProgramFile buildWalkProgram(const WalkSpec& spec) {
    validateWalkSpec(spec);
    ProgramFile file;
    file.registry = walkRegistry(spec);
    std::vector<ProgramPtr> steps;
    for (std::size_t t = 1; t <= spec.steps; ++t) steps.push_back(walkStepProgram(spec, t));
    file.body = steps.empty() ? Program::skip() : Program::seqAll(steps);
    return file;
}

CMatrix stepOracle(const WalkSpec& spec, std::size_t t) {
    validateWalkSpec(spec);
    const std::size_t n = spec.cycleSize;
    const CMatrix idP = CMatrix::identity(n);
    switch (spec.variant) {
    case WalkVariant::Hadamard:
        return controlledShift(n) * tensor(hadamard(), idP);
    case WalkVariant::Unidirectional:
        return (tensor(ketbra(2, 0), idP) + tensor(ketbra(2, 1), cyclicShift(n, 1))) * tensor(hadamard(), idP);
    case WalkVariant::PositionTimeCoin: {
        const CoinHook hook = hookOf(spec);
        CMatrix coin(2 * n, 2 * n);
        for (std::size_t pos = 0; pos < n; ++pos) coin += tensor(positionTimeCoin(hook(pos, t)), ketbra(n, pos));
        return controlledShift(n) * coin;
    }
    case WalkVariant::ThreeState: {
        const CMatrix shift = tensor(ketbra(3, 0), cyclicShift(n, -1)) + tensor(ketbra(3, 1), idP) +
                              tensor(ketbra(3, 2), cyclicShift(n, 1));
        return shift * tensor(threeStateCoin(), idP);
    }
    case WalkVariant::MultiCoin: {
        const std::size_t m = multiCoinIndex(spec, t) - 1;
        const std::size_t before = std::size_t{1} << m;
        const std::size_t after = std::size_t{1} << (spec.coinCount - 1 - m);
        const CMatrix idB = CMatrix::identity(before);
        const CMatrix idA = CMatrix::identity(after);
        const CMatrix shift = tensorAll(std::vector<CMatrix>{idB, ketbra(2, 0), idA, cyclicShift(n, -1)}) +
                              tensorAll(std::vector<CMatrix>{idB, ketbra(2, 1), idA, cyclicShift(n, 1)});
        return shift * tensorAll(std::vector<CMatrix>{idB, hadamard(), idA, idP});
    }
    case WalkVariant::TwoWalkerShared: {
        // Order q1, q2, c1, c2.
        const CMatrix id2 = CMatrix::identity(2);
        const CMatrix coins = tensorAll(std::vector<CMatrix>{idP, idP, sharedCoinOf(spec)});
        const CMatrix h1 = tensorAll(std::vector<CMatrix>{idP, idP, hadamard(), id2});
        const CMatrix h2 = tensorAll(std::vector<CMatrix>{idP, idP, id2, hadamard()});
        const CMatrix s1 = tensorAll(std::vector<CMatrix>{cyclicShift(n, -1), idP, ketbra(2, 0), id2}) +
                           tensorAll(std::vector<CMatrix>{cyclicShift(n, 1), idP, ketbra(2, 1), id2});
        const CMatrix s2 = tensorAll(std::vector<CMatrix>{idP, cyclicShift(n, -1), id2, ketbra(2, 0)}) +
                           tensorAll(std::vector<CMatrix>{idP, cyclicShift(n, 1), id2, ketbra(2, 1)});
        return s2 * h2 * s1 * h1 * coins;
    }
    }
    throw Error("unknown walk variant");
}

namespace {

CMatrix initialOf(const WalkSpec& spec) {
    return spec.initialState.empty() ? walkBasisState(spec, {}) : spec.initialState;
}

std::vector<PositionProb> positionsFromState(const WalkSpec& spec, const CMatrix& rho) {
    const Registry reg = walkRegistry(spec);
    std::vector<std::size_t> dims;
    std::vector<std::size_t> traced;
    for (std::size_t k = 0; k < reg.qvars().size(); ++k) {
        dims.push_back(reg.qvar(k).dim);
        if (reg.qvar(k).name[0] == 'c') traced.push_back(k);
    }
    const CMatrix reduced = partialTrace(rho, dims, traced);
    const std::size_t n = spec.cycleSize;
    std::vector<PositionProb> out;
    for (std::size_t k = 0; k < reduced.rows(); ++k) {
        PositionProb pp;
        if (singleWalker(spec)) pp.position = {k};
        else pp.position = {k / n, k % n};
        pp.probability = reduced(k, k).real();
        out.push_back(std::move(pp));
    }
    return out;
}

} // namespace

std::vector<PositionProb> positionDistribution(const WalkSpec& spec) {
    validateWalkSpec(spec);
    const Registry reg = walkRegistry(spec);
    const CMatrix psi = initialOf(spec);
    CMatrix rho = psi * psi.adjoint();
    for (std::size_t t = 1; t <= spec.steps; ++t) {
        const ProgramPtr step = walkStepProgram(spec, t);
        Evaluator ev(reg);
        rho = ev.channelOn(step, allVars(reg)).apply(rho);
    }
    return positionsFromState(spec, rho);
}

std::vector<PositionProb> oracleDistribution(const WalkSpec& spec) {
    validateWalkSpec(spec);
    CMatrix psi = initialOf(spec);
    for (std::size_t t = 1; t <= spec.steps; ++t) psi = stepOracle(spec, t) * psi;
    return positionsFromState(spec, psi * psi.adjoint());
}

} // namespace qgcl

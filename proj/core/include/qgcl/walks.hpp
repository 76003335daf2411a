#pragma once

#include "qgcl/ast.hpp"
#include "qgcl/ovf.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qgcl {

// Coined walks on the cycle Z_N.  TL|n> = |n-1 mod N>, TR|n> = |n+1 mod N>.
// Coin basis: L = 0, R = 1; the three-state coin uses L = 0, stay = 1, R = 2.
enum class WalkVariant { Hadamard, Unidirectional, PositionTimeCoin, ThreeState, MultiCoin, TwoWalkerShared };

std::string_view variantName(WalkVariant v); // "hadamard", "unidirectional", ...
std::optional<WalkVariant> variantFromName(std::string_view name);

// Entries of the position- and time-dependent coin
// (1/sqrt 2) [[c, s], [conj(s), -exp(i theta) c]].
struct CoinParams {
    Complex c;
    Complex s;
    double theta = 0.0;
};

using CoinHook = std::function<CoinParams(std::size_t position, std::size_t time)>;

// c = 1, s = exp(i pi (n + t) / N), theta = 0.
CoinHook defaultCoinHook(std::size_t cycleSize);
CMatrix positionTimeCoin(const CoinParams& params);

struct WalkSpec {
    WalkVariant variant = WalkVariant::Hadamard;
    std::size_t cycleSize = 8;
    std::size_t steps = 1;
    std::size_t coinCount = 2;  // number of coins for MultiCoin
    CMatrix sharedCoin;         // two-qubit coin unitary for TwoWalkerShared; CNOT when empty
    CoinHook coinHook;          // PositionTimeCoin; defaultCoinHook when empty
    CMatrix initialState;       // column vector over walkRegistry; |L>|0> when empty
};

// Variables in tensor order: (c, p); (c1, ..., cM, p) for MultiCoin;
// (q1, q2, c1, c2) for TwoWalkerShared.
Registry walkRegistry(const WalkSpec& spec);

// Throws Error when the spec is inconsistent.
void validateWalkSpec(const WalkSpec& spec);

// Basis state from assignments like {"c": "L", "p": "3"}.  Coin values are
// L and R (and 0 for the stay state of the three-state coin); positions
// are integers taken modulo N.  Unassigned variables start in |0>.
CMatrix walkBasisState(const WalkSpec& spec, const std::map<std::string, std::string>& assignment);

// Program for step t (1-based).
ProgramPtr walkStepProgram(const WalkSpec& spec, std::size_t t);
// W_1; ...; W_T, or skip when T = 0.
ProgramFile buildWalkProgram(const WalkSpec& spec);

// Step unitary for step t, assembled directly from the shifts and coins.
CMatrix stepOracle(const WalkSpec& spec, std::size_t t = 1);

struct PositionProb {
    std::vector<std::size_t> position; // one entry per walker
    double probability = 0.0;
};

// Runs the step channels from the initial state, traces out the coins and
// returns the diagonal in the position basis (row-major over walkers).
std::vector<PositionProb> positionDistribution(const WalkSpec& spec);
// Same distribution from repeated application of stepOracle.
std::vector<PositionProb> oracleDistribution(const WalkSpec& spec);

} // namespace qgcl

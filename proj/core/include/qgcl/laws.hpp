#pragma once

#include "qgcl/ast.hpp"
#include "qgcl/ovf.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qgcl {

enum class LawId {
    AltIdem,
    AltComm,
    AltAssoc,
    AltDist,
    ChoiceIdem,
    ChoiceComm,
    ChoiceAssoc,
    ChoiceDist,
    CoinLocalize,
    ProbImpl,
};

inline constexpr LawId kAllLaws[] = {LawId::AltIdem,    LawId::AltComm,    LawId::AltAssoc,    LawId::AltDist,
                                     LawId::ChoiceIdem, LawId::ChoiceComm, LawId::ChoiceAssoc, LawId::ChoiceDist,
                                     LawId::CoinLocalize, LawId::ProbImpl};

std::string_view lawName(LawId law); // "ALT_IDEM", ...
std::optional<LawId> lawFromName(std::string_view name);

enum class Relation { Equiv, EquivCoinFree };

std::string_view relationName(Relation r); // "EQUIV" or "EQUIV_CF"

struct LawInstance {
    LawId law;
    std::string description;
    Registry registry;
    ProgramPtr lhs;
    ProgramPtr rhs;
    Relation relation = Relation::Equiv;
    std::optional<AlphaFamily> alpha;
};

struct LawVerdict {
    bool pass = false;
    double residual = 0.0;
    std::vector<std::string> problems; // static-check findings on either side
};

LawVerdict checkLaw(const LawInstance& instance, double tol = kTolEq);

// Coefficients that flatten a two-level alternation.  inner[i][l] is the
// semantics of the l-th branch of the inner alternation sitting in outer
// branch i; all inner alternations share one coin with inner[i].size()
// basis states.  Flattened branch (i, l) has index i * inner[i].size() + l.
AlphaFamily synthAlphaAssoc(const std::vector<std::vector<OVF>>& inner, const Registry& registry);

// Squared weight of each state of the inner alternation in outer branch
// `outer`, computed from the branch traces without forming the composed
// operators.  Entry order follows the inner alternation's state order.
std::vector<double> innerAlternationWeights(const std::vector<OVF>& branches, const Registry& registry);

// Coefficients for moving a trailing program Q into every branch: branch
// i gets prod_{k != i} lambda_k divided by sqrt(|Delta(Q)|^(n-1)), indexed
// over the states (sigma_k, delta_k) of P_k; Q.
AlphaFamily synthAlphaDist(std::span<const OVF> branches, std::size_t qDomainSize);

// `count` seeded instances of one law.
std::vector<LawInstance> generateLawInstances(LawId law, std::size_t count, std::uint64_t seed);

// The mixture-of-measurements instance: a local coin qubit prepared in
// |0>, rotated by [[sqrt p, sqrt r], [sqrt r, -sqrt p]], choosing between a
// computational-basis and a +/- basis measurement of q.
LawInstance mixtureInstance(double p);

struct LawSummary {
    LawId law;
    std::size_t instances = 0;
    std::size_t failures = 0;
    double maxResidual = 0.0;
};

std::vector<LawSummary> runLawSuite(std::span<const LawId> laws, std::size_t count, std::uint64_t seed,
                                    double tol = kTolEq);

} // namespace qgcl

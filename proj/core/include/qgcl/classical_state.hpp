#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace qgcl {

/// Classical state: the empty state, a single assignment x <- a, a
/// concatenation, or a formal superposition (direct sum) of states.
///
/// Values are immutable and kept in canonical form: concatenations are
/// right-associated and never contain the empty state, so structurally
/// equal states have equal labels.
class ClassicalState {
public:
    enum class Kind { Empty, Assign, Concat, Superpose };

    ClassicalState();

    static ClassicalState empty() { return ClassicalState(); }
    static ClassicalState assign(std::string var, std::string value);
    // Throws DomainClashError when the two domains overlap.
    static ClassicalState concat(const ClassicalState& first, const ClassicalState& second);
    static ClassicalState superpose(std::vector<ClassicalState> parts);

    Kind kind() const noexcept;
    const std::set<std::string>& domain() const noexcept;

    // Value of x in a state built from assignments only.  Returns nullopt
    // when x is not assigned; throws Error on superposed states.
    std::optional<std::string> evalAt(const std::string& var) const;

    // Canonical serialisation, e.g. "eps", "x<-0", "(x<-0.y<-1)",
    // "(x<-0(+)eps)".
    const std::string& label() const noexcept;

    // Children: the two halves of a concatenation or the summands of a
    // superposition.
    const std::vector<ClassicalState>& parts() const noexcept;
    const std::string& var() const noexcept;
    const std::string& value() const noexcept;

    friend bool operator==(const ClassicalState& a, const ClassicalState& b) { return a.label() == b.label(); }
    friend bool operator<(const ClassicalState& a, const ClassicalState& b) { return a.label() < b.label(); }

private:
    struct Node;
    explicit ClassicalState(std::shared_ptr<const Node> node);
    std::shared_ptr<const Node> node_;
};

} // namespace qgcl

#include "qgcl/classical_state.hpp"

#include "qgcl/errors.hpp"

namespace qgcl {

struct ClassicalState::Node {
    Kind kind = Kind::Empty;
    std::string var;
    std::string value;
    std::vector<ClassicalState> parts;
    std::set<std::string> domain;
    std::string label;
};

namespace {

void collectAtoms(const ClassicalState& s, std::vector<ClassicalState>& out) {
    switch (s.kind()) {
    case ClassicalState::Kind::Empty:
        return;
    case ClassicalState::Kind::Concat:
        for (const auto& p : s.parts()) collectAtoms(p, out);
        return;
    default:
        out.push_back(s);
    }
}

} // namespace

ClassicalState::ClassicalState() {
    static const auto emptyNode = [] {
        auto n = std::make_shared<Node>();
        n->label = "eps";
        return std::shared_ptr<const Node>(n);
    }();
    node_ = emptyNode;
}

ClassicalState::ClassicalState(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

ClassicalState ClassicalState::assign(std::string var, std::string value) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Assign;
    n->label = var + "<-" + value;
    n->domain.insert(var);
    n->var = std::move(var);
    n->value = std::move(value);
    return ClassicalState(std::move(n));
}

ClassicalState ClassicalState::concat(const ClassicalState& first, const ClassicalState& second) {
    for (const auto& v : second.domain()) {
        if (first.domain().count(v)) {
            throw DomainClashError("classical variable '" + v + "' assigned in both " + first.label() + " and " +
                                   second.label());
        }
    }
    std::vector<ClassicalState> atoms;
    collectAtoms(first, atoms);
    collectAtoms(second, atoms);
    if (atoms.empty()) return ClassicalState();
    ClassicalState acc = atoms.back();
    for (std::size_t k = atoms.size() - 1; k-- > 0;) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::Concat;
        n->parts = {atoms[k], acc};
        n->domain = atoms[k].domain();
        n->domain.insert(acc.domain().begin(), acc.domain().end());
        n->label = "(" + atoms[k].label() + "." + acc.label() + ")";
        acc = ClassicalState(std::move(n));
    }
    return acc;
}

ClassicalState ClassicalState::superpose(std::vector<ClassicalState> parts) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Superpose;
    n->label = "(";
    for (std::size_t k = 0; k < parts.size(); ++k) {
        if (k) n->label += "(+)";
        n->label += parts[k].label();
        n->domain.insert(parts[k].domain().begin(), parts[k].domain().end());
    }
    n->label += ")";
    n->parts = std::move(parts);
    return ClassicalState(std::move(n));
}

ClassicalState::Kind ClassicalState::kind() const noexcept { return node_->kind; }
const std::set<std::string>& ClassicalState::domain() const noexcept { return node_->domain; }
const std::string& ClassicalState::label() const noexcept { return node_->label; }
const std::vector<ClassicalState>& ClassicalState::parts() const noexcept { return node_->parts; }
const std::string& ClassicalState::var() const noexcept { return node_->var; }
const std::string& ClassicalState::value() const noexcept { return node_->value; }

std::optional<std::string> ClassicalState::evalAt(const std::string& var) const {
    switch (node_->kind) {
    case Kind::Empty:
        return std::nullopt;
    case Kind::Assign:
        if (node_->var == var) return node_->value;
        return std::nullopt;
    case Kind::Concat:
        for (const auto& p : node_->parts)
            if (auto v = p.evalAt(var)) return v;
        return std::nullopt;
    case Kind::Superpose:
        break;
    }
    throw Error("evalAt is not defined on the superposed state " + node_->label);
}

} // namespace qgcl

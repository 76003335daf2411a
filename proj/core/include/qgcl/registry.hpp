#pragma once

#include "qgcl/linalg.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qgcl {

class Registry;

/// A set of quantum variables, stored as sorted registry indices so that
/// iteration follows the canonical declaration order.
class VarSet {
public:
    VarSet() = default;
    static VarSet fromIndices(std::vector<std::size_t> indices);

    std::span<const std::size_t> indices() const noexcept { return indices_; }
    std::size_t size() const noexcept { return indices_.size(); }
    bool empty() const noexcept { return indices_.empty(); }
    bool contains(std::size_t index) const;
    bool isSubsetOf(const VarSet& other) const;
    bool intersects(const VarSet& other) const;

    VarSet unite(const VarSet& other) const;
    VarSet intersect(const VarSet& other) const;
    VarSet minus(const VarSet& other) const;

    friend bool operator==(const VarSet&, const VarSet&) = default;

private:
    std::vector<std::size_t> indices_;
};

struct QVarDecl {
    std::string name;
    std::size_t dim;
};

struct CVarDecl {
    std::string name;
    std::vector<std::string> domain;
};

/// Declared quantum and classical variables.  The declaration order of
/// quantum variables fixes the tensor-factor order of every operator.
class Registry {
public:
    std::size_t declareQVar(const std::string& name, std::size_t dim);
    void declareCVar(const std::string& name, std::vector<std::string> domain);

    bool hasQVar(const std::string& name) const;
    bool hasCVar(const std::string& name) const;
    std::size_t qvarIndex(const std::string& name) const;
    const QVarDecl& qvar(std::size_t index) const { return qvars_.at(index); }
    const std::vector<QVarDecl>& qvars() const noexcept { return qvars_; }
    const std::vector<CVarDecl>& cvars() const noexcept { return cvars_; }
    const CVarDecl* findCVar(const std::string& name) const;

    VarSet makeSet(std::span<const std::string> names) const;
    std::vector<std::size_t> indicesOf(std::span<const std::string> names) const;
    std::vector<std::string> namesOf(const VarSet& set) const;

    std::size_t dimOf(const VarSet& set) const;
    std::size_t dimOf(std::span<const std::size_t> orderedIndices) const;
    std::vector<std::size_t> dimsOf(const VarSet& set) const;

    // Lifts an operator acting on the variables `from` (in the listed
    // order) to the canonical tensor order of `to`, padding the remaining
    // variables with the identity.
    CMatrix embed(const CMatrix& op, std::span<const std::size_t> from, const VarSet& to) const;
    CMatrix embed(const CMatrix& op, const VarSet& from, const VarSet& to) const;

    // Merges another registry into this one.  Variables with the same name
    // must agree on dimension (or domain); new ones are appended.
    void merge(const Registry& other);

private:
    std::vector<QVarDecl> qvars_;
    std::vector<CVarDecl> cvars_;
};

} // namespace qgcl

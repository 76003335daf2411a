#include "qgcl/registry.hpp"

#include "qgcl/errors.hpp"

#include <algorithm>
#include <iterator>

namespace qgcl {

VarSet VarSet::fromIndices(std::vector<std::size_t> indices) {
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    VarSet s;
    s.indices_ = std::move(indices);
    return s;
}

bool VarSet::contains(std::size_t index) const {
    return std::binary_search(indices_.begin(), indices_.end(), index);
}

bool VarSet::isSubsetOf(const VarSet& other) const {
    return std::includes(other.indices_.begin(), other.indices_.end(), indices_.begin(), indices_.end());
}

bool VarSet::intersects(const VarSet& other) const { return !intersect(other).empty(); }

VarSet VarSet::unite(const VarSet& other) const {
    VarSet out;
    std::set_union(indices_.begin(), indices_.end(), other.indices_.begin(), other.indices_.end(),
                   std::back_inserter(out.indices_));
    return out;
}

VarSet VarSet::intersect(const VarSet& other) const {
    VarSet out;
    std::set_intersection(indices_.begin(), indices_.end(), other.indices_.begin(), other.indices_.end(),
                          std::back_inserter(out.indices_));
    return out;
}

VarSet VarSet::minus(const VarSet& other) const {
    VarSet out;
    std::set_difference(indices_.begin(), indices_.end(), other.indices_.begin(), other.indices_.end(),
                        std::back_inserter(out.indices_));
    return out;
}

std::size_t Registry::declareQVar(const std::string& name, std::size_t dim) {
    if (dim < 1) throw DimensionError("quantum variable '" + name + "' must have dimension >= 1");
    if (hasQVar(name) || hasCVar(name)) throw Error("variable '" + name + "' declared twice");
    qvars_.push_back({name, dim});
    return qvars_.size() - 1;
}

void Registry::declareCVar(const std::string& name, std::vector<std::string> domain) {
    if (hasQVar(name) || hasCVar(name)) throw Error("variable '" + name + "' declared twice");
    cvars_.push_back({name, std::move(domain)});
}

bool Registry::hasQVar(const std::string& name) const {
    return std::any_of(qvars_.begin(), qvars_.end(), [&](const QVarDecl& d) { return d.name == name; });
}

bool Registry::hasCVar(const std::string& name) const { return findCVar(name) != nullptr; }

const CVarDecl* Registry::findCVar(const std::string& name) const {
    auto it = std::find_if(cvars_.begin(), cvars_.end(), [&](const CVarDecl& d) { return d.name == name; });
    return it == cvars_.end() ? nullptr : &*it;
}

std::size_t Registry::qvarIndex(const std::string& name) const {
    for (std::size_t i = 0; i < qvars_.size(); ++i)
        if (qvars_[i].name == name) return i;
    throw UnknownVariableError("unknown quantum variable '" + name + "'");
}

std::vector<std::size_t> Registry::indicesOf(std::span<const std::string> names) const {
    std::vector<std::size_t> out;
    out.reserve(names.size());
    for (const auto& n : names) out.push_back(qvarIndex(n));
    return out;
}

VarSet Registry::makeSet(std::span<const std::string> names) const {
    return VarSet::fromIndices(indicesOf(names));
}

std::vector<std::string> Registry::namesOf(const VarSet& set) const {
    std::vector<std::string> out;
    for (std::size_t i : set.indices()) out.push_back(qvars_.at(i).name);
    return out;
}

std::size_t Registry::dimOf(const VarSet& set) const { return dimOf(set.indices()); }

std::size_t Registry::dimOf(std::span<const std::size_t> orderedIndices) const {
    std::size_t d = 1;
    for (std::size_t i : orderedIndices) d *= qvars_.at(i).dim;
    return d;
}

std::vector<std::size_t> Registry::dimsOf(const VarSet& set) const {
    std::vector<std::size_t> out;
    for (std::size_t i : set.indices()) out.push_back(qvars_.at(i).dim);
    return out;
}

CMatrix Registry::embed(const CMatrix& op, std::span<const std::size_t> from, const VarSet& to) const {
    const std::size_t dFrom = dimOf(from);
    if (op.rows() != dFrom || op.cols() != dFrom) {
        throw DimensionError("operator of shape " + std::to_string(op.rows()) + "x" + std::to_string(op.cols()) +
                             " does not act on a space of dimension " + std::to_string(dFrom));
    }
    // Position of every canonical variable of `to` and its stride.
    const auto toIdx = to.indices();
    std::vector<std::size_t> strides(toIdx.size(), 1);
    for (std::size_t k = toIdx.size(); k-- > 1;) strides[k - 1] = strides[k] * qvars_[toIdx[k]].dim;
    auto posOf = [&](std::size_t var) -> std::size_t {
        auto it = std::lower_bound(toIdx.begin(), toIdx.end(), var);
        if (it == toIdx.end() || *it != var) {
            throw VariableScopeError("variable '" + qvars_.at(var).name + "' is outside the target space");
        }
        return static_cast<std::size_t>(it - toIdx.begin());
    };

    std::vector<bool> used(toIdx.size(), false);
    std::vector<std::size_t> fromOff{0};
    for (std::size_t var : from) {
        const std::size_t pos = posOf(var);
        if (used[pos]) throw VariableScopeError("variable '" + qvars_[var].name + "' listed twice");
        used[pos] = true;
        std::vector<std::size_t> next;
        for (std::size_t base : fromOff)
            for (std::size_t d = 0; d < qvars_[var].dim; ++d) next.push_back(base + d * strides[pos]);
        fromOff = std::move(next);
    }
    std::vector<std::size_t> restOff{0};
    for (std::size_t pos = 0; pos < toIdx.size(); ++pos) {
        if (used[pos]) continue;
        std::vector<std::size_t> next;
        for (std::size_t base : restOff)
            for (std::size_t d = 0; d < qvars_[toIdx[pos]].dim; ++d) next.push_back(base + d * strides[pos]);
        restOff = std::move(next);
    }

    const std::size_t dTo = dimOf(to);
    CMatrix out(dTo, dTo);
    for (std::size_t a = 0; a < fromOff.size(); ++a)
        for (std::size_t b = 0; b < fromOff.size(); ++b) {
            const Complex v = op(a, b);
            if (v == Complex{0.0, 0.0}) continue;
            for (std::size_t r : restOff) out(fromOff[a] + r, fromOff[b] + r) = v;
        }
    return out;
}

CMatrix Registry::embed(const CMatrix& op, const VarSet& from, const VarSet& to) const {
    return embed(op, from.indices(), to);
}

void Registry::merge(const Registry& other) {
    for (const auto& q : other.qvars_) {
        auto it = std::find_if(qvars_.begin(), qvars_.end(), [&](const QVarDecl& d) { return d.name == q.name; });
        if (it == qvars_.end()) {
            declareQVar(q.name, q.dim);
        } else if (it->dim != q.dim) {
            throw DimensionError("quantum variable '" + q.name + "' declared with dimensions " +
                                 std::to_string(it->dim) + " and " + std::to_string(q.dim));
        }
    }
    for (const auto& c : other.cvars_) {
        const CVarDecl* mine = findCVar(c.name);
        if (!mine) {
            declareCVar(c.name, c.domain);
        } else if (mine->domain != c.domain) {
            throw Error("classical variable '" + c.name + "' declared with different domains");
        }
    }
}

} // namespace qgcl

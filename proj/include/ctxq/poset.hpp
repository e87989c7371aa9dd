#pragma once

// Exact engine for finite partial orders: up/down sets, directed subsets,
// suprema, the way-below (approximation) relation, order-theoretic bases and
// the extension of way-below along the order.
//
// Everything that quantifies over directed subsets enumerates them literally,
// which is exponential in the number of elements. Those entry points take an
// enumeration cap and throw SizeLimitError past it.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ctxq/errors.hpp"

namespace ctxq {

using Label = std::string;

inline constexpr std::size_t kDefaultEnumerationCap = 15;
/// Hard ceiling for the cap: subsets are encoded as 32-bit masks.
inline constexpr std::size_t kMaxEnumerationCap = 24;

/// A set of element labels. Membership in a particular poset is checked by the
/// operations that consume it.
class ElementSubset {
public:
    ElementSubset() = default;
    ElementSubset(std::initializer_list<Label> labels) : members_(labels) {}
    explicit ElementSubset(std::set<Label> labels) : members_(std::move(labels)) {}

    bool contains(const Label& x) const { return members_.count(x) != 0; }
    bool empty() const { return members_.empty(); }
    std::size_t size() const { return members_.size(); }
    void insert(Label x) { members_.insert(std::move(x)); }

    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }
    const std::set<Label>& members() const { return members_; }

    friend bool operator==(const ElementSubset&, const ElementSubset&) = default;

private:
    std::set<Label> members_;
};

/// Finite poset over uniquely labeled elements. Immutable once built; the
/// order is always reflexive, antisymmetric and transitive.
class FinitePoset {
public:
    /// Builds the reflexive-transitive closure of `covers`. Pairs need not be
    /// actual covers; any generating relation is accepted.
    static FinitePoset from_cover_relations(std::vector<Label> elements,
                                            const std::vector<std::pair<Label, Label>>& covers);

    std::size_t size() const { return elements_.size(); }
    const std::vector<Label>& elements() const { return elements_; }
    const Label& label(std::size_t i) const { return elements_.at(i); }

    bool has(const Label& x) const;
    /// Throws UnknownLabelError.
    std::size_t index_of(const Label& x) const;

    bool leq(std::size_t i, std::size_t j) const { return leq_[i * size() + j] != 0; }
    bool leq(const Label& x, const Label& y) const { return leq(index_of(x), index_of(y)); }

    /// Hasse diagram edges (transitive reduction), in element order.
    std::vector<std::pair<Label, Label>> covers() const;

    /// Graphviz digraph of the Hasse diagram.
    std::string to_dot(const std::string& graph_name = "hasse") const;

private:
    FinitePoset() = default;

    std::vector<Label> elements_;
    std::vector<std::uint8_t> leq_;
};

ElementSubset up_set(const FinitePoset& p, const Label& x);
ElementSubset down_set(const FinitePoset& p, const Label& x);

/// True iff every pair of `s` has an upper bound inside `s`. Throws EmptySubsetError.
bool is_directed(const FinitePoset& p, const ElementSubset& s);

/// Least upper bound of `s`, if one exists. Throws EmptySubsetError.
std::optional<Label> supremum(const FinitePoset& p, const ElementSubset& s);

ElementSubset maximal_elements(const FinitePoset& p);

struct DcpoVerdict {
    bool is_dcpo = true;
    /// A directed subset without supremum, when is_dcpo is false.
    std::optional<ElementSubset> witness;
    std::size_t directed_subsets_checked = 0;
};

/// Enumerates every nonempty directed subset and checks it has a supremum.
DcpoVerdict is_dcpo(const FinitePoset& p, std::size_t cap = kDefaultEnumerationCap);

/// The approximation relation evaluated from its definition: x is way below y
/// iff every directed D whose supremum dominates y meets the up-set of x.
/// Row i holds the elements way above element i.
class ApproximationRelation {
public:
    static ApproximationRelation compute(const FinitePoset& p, std::size_t cap = kDefaultEnumerationCap);

    bool way_below(std::size_t i, std::size_t j) const { return ((rows_[i] >> j) & 1u) != 0; }
    std::size_t size() const { return rows_.size(); }

private:
    std::vector<std::uint32_t> rows_;
};

bool way_below(const FinitePoset& p, const Label& x, const Label& y,
               std::size_t cap = kDefaultEnumerationCap);
ElementSubset wayup_set(const FinitePoset& p, const Label& x, std::size_t cap = kDefaultEnumerationCap);
ElementSubset waydown_set(const FinitePoset& p, const Label& x, std::size_t cap = kDefaultEnumerationCap);

/// Elements with x way below x.
ElementSubset compact_elements(const FinitePoset& p, std::size_t cap = kDefaultEnumerationCap);

/// m is a basis iff for every element r, m ∩ waydown(r) is directed with supremum r.
bool is_basis(const FinitePoset& p, const ElementSubset& m, std::size_t cap = kDefaultEnumerationCap);

struct Triple {
    Label rho;
    Label sigma;
    Label tau;
    friend bool operator==(const Triple&, const Triple&) = default;
};

struct ExtensionVerdict {
    bool holds = true;
    std::optional<Triple> counterexample;
    std::size_t premises_checked = 0;
};

/// Exhaustive check of: rho ⪯ sigma ⊑ tau and wayup(tau) nonempty implies rho ⪯ tau.
ExtensionVerdict check_way_below_extension(const FinitePoset& p, std::size_t cap = kDefaultEnumerationCap);

struct PosetReport {
    bool is_dcpo = false;
    ElementSubset maximal_elements;
    ElementSubset compact_elements;
    bool extension_holds = false;
    std::optional<Triple> counterexample;
};

PosetReport analyze(const FinitePoset& p, std::size_t cap = kDefaultEnumerationCap);

} // namespace ctxq

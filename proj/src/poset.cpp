#include "ctxq/poset.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <unordered_map>

namespace ctxq {

namespace {

using Mask = std::uint32_t;

void require_within_cap(const FinitePoset& p, std::size_t cap) {
    if (cap > kMaxEnumerationCap) {
        throw ParameterOutOfRange("enumeration cap " + std::to_string(cap) + " exceeds the hard limit of " +
                                  std::to_string(kMaxEnumerationCap));
    }
    if (p.size() > cap) {
        throw SizeLimitError("poset has " + std::to_string(p.size()) + " elements; enumeration cap is " +
                             std::to_string(cap));
    }
}

// Bit-mask view of a poset small enough to enumerate.
struct MaskView {
    std::size_t n = 0;
    std::vector<Mask> up;
    std::vector<Mask> down;

    explicit MaskView(const FinitePoset& p) : n(p.size()), up(n, 0), down(n, 0) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (p.leq(i, j)) {
                    up[i] |= Mask{1} << j;
                    down[j] |= Mask{1} << i;
                }
            }
        }
    }

    Mask full() const { return n == 32 ? ~Mask{0} : (Mask{1} << n) - 1; }

    bool directed(Mask s) const {
        if (s == 0) return false;
        for (Mask a = s; a != 0; a &= a - 1) {
            const auto i = static_cast<std::size_t>(std::countr_zero(a));
            for (Mask b = a; b != 0; b &= b - 1) {
                const auto j = static_cast<std::size_t>(std::countr_zero(b));
                if ((up[i] & up[j] & s) == 0) return false;
            }
        }
        return true;
    }

    std::optional<std::size_t> supremum(Mask s) const {
        Mask bounds = full();
        for (Mask a = s; a != 0; a &= a - 1) bounds &= up[static_cast<std::size_t>(std::countr_zero(a))];
        for (Mask b = bounds; b != 0; b &= b - 1) {
            const auto u = static_cast<std::size_t>(std::countr_zero(b));
            if ((bounds & ~up[u]) == 0) return u;
        }
        return std::nullopt;
    }

    template <class Fn>
    void for_each_directed(Fn&& fn) const {
        const Mask last = full();
        for (Mask s = 1; s != 0 && s <= last; ++s) {
            if (directed(s)) fn(s);
            if (s == last) break;
        }
    }
};

ElementSubset subset_of(const FinitePoset& p, Mask m) {
    ElementSubset out;
    for (; m != 0; m &= m - 1) out.insert(p.label(static_cast<std::size_t>(std::countr_zero(m))));
    return out;
}

Mask mask_of(const FinitePoset& p, const ElementSubset& s) {
    Mask m = 0;
    for (const auto& x : s) m |= Mask{1} << p.index_of(x);
    return m;
}

void require_nonempty(const ElementSubset& s) {
    if (s.empty()) throw EmptySubsetError("subset must be nonempty");
}

} // namespace

FinitePoset FinitePoset::from_cover_relations(std::vector<Label> elements,
                                              const std::vector<std::pair<Label, Label>>& covers) {
    FinitePoset p;
    const std::size_t n = elements.size();
    std::unordered_map<Label, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) {
        if (!index.emplace(elements[i], i).second) {
            throw DuplicateLabelError("duplicate element label '" + elements[i] + "'");
        }
    }
    p.elements_ = std::move(elements);
    p.leq_.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) p.leq_[i * n + i] = 1;
    for (const auto& [a, b] : covers) {
        const auto ia = index.find(a);
        const auto ib = index.find(b);
        if (ia == index.end()) throw UnknownLabelError("unknown label '" + a + "' in cover relation");
        if (ib == index.end()) throw UnknownLabelError("unknown label '" + b + "' in cover relation");
        p.leq_[ia->second * n + ib->second] = 1;
    }
    // Warshall closure.
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!p.leq_[i * n + k]) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (p.leq_[k * n + j]) p.leq_[i * n + j] = 1;
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (p.leq_[i * n + j] && p.leq_[j * n + i]) {
                throw CycleError("cover relations form a cycle through '" + p.elements_[i] + "' and '" +
                                 p.elements_[j] + "'");
            }
        }
    }
    return p;
}

bool FinitePoset::has(const Label& x) const {
    return std::find(elements_.begin(), elements_.end(), x) != elements_.end();
}

std::size_t FinitePoset::index_of(const Label& x) const {
    const auto it = std::find(elements_.begin(), elements_.end(), x);
    if (it == elements_.end()) throw UnknownLabelError("unknown label '" + x + "'");
    return static_cast<std::size_t>(it - elements_.begin());
}

std::vector<std::pair<Label, Label>> FinitePoset::covers() const {
    std::vector<std::pair<Label, Label>> out;
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j || !leq(i, j)) continue;
            bool direct = true;
            for (std::size_t k = 0; k < n && direct; ++k) {
                if (k != i && k != j && leq(i, k) && leq(k, j)) direct = false;
            }
            if (direct) out.emplace_back(elements_[i], elements_[j]);
        }
    }
    return out;
}

std::string FinitePoset::to_dot(const std::string& graph_name) const {
    const auto quote = [](const std::string& s) {
        std::string q = "\"";
        for (char c : s) {
            if (c == '"' || c == '\\') q += '\\';
            q += c;
        }
        return q + "\"";
    };
    std::ostringstream os;
    os << "digraph " << quote(graph_name) << " {\n";
    os << "  rankdir=TB;\n";
    for (const auto& e : elements_) os << "  " << quote(e) << ";\n";
    for (const auto& [a, b] : covers()) os << "  " << quote(a) << " -> " << quote(b) << ";\n";
    os << "}\n";
    return os.str();
}

ElementSubset up_set(const FinitePoset& p, const Label& x) {
    const auto i = p.index_of(x);
    ElementSubset out;
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (p.leq(i, j)) out.insert(p.label(j));
    }
    return out;
}

ElementSubset down_set(const FinitePoset& p, const Label& x) {
    const auto i = p.index_of(x);
    ElementSubset out;
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (p.leq(j, i)) out.insert(p.label(j));
    }
    return out;
}

bool is_directed(const FinitePoset& p, const ElementSubset& s) {
    require_nonempty(s);
    std::vector<std::size_t> idx;
    for (const auto& x : s) idx.push_back(p.index_of(x));
    for (std::size_t a = 0; a < idx.size(); ++a) {
        for (std::size_t b = a; b < idx.size(); ++b) {
            const bool bounded = std::any_of(idx.begin(), idx.end(), [&](std::size_t z) {
                return p.leq(idx[a], z) && p.leq(idx[b], z);
            });
            if (!bounded) return false;
        }
    }
    return true;
}

std::optional<Label> supremum(const FinitePoset& p, const ElementSubset& s) {
    require_nonempty(s);
    std::vector<std::size_t> idx;
    for (const auto& x : s) idx.push_back(p.index_of(x));
    std::vector<std::size_t> bounds;
    for (std::size_t u = 0; u < p.size(); ++u) {
        if (std::all_of(idx.begin(), idx.end(), [&](std::size_t i) { return p.leq(i, u); })) bounds.push_back(u);
    }
    for (auto u : bounds) {
        if (std::all_of(bounds.begin(), bounds.end(), [&](std::size_t v) { return p.leq(u, v); })) {
            return p.label(u);
        }
    }
    return std::nullopt;
}

ElementSubset maximal_elements(const FinitePoset& p) {
    ElementSubset out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        bool maximal = true;
        for (std::size_t j = 0; j < p.size() && maximal; ++j) {
            if (j != i && p.leq(i, j)) maximal = false;
        }
        if (maximal) out.insert(p.label(i));
    }
    return out;
}

DcpoVerdict is_dcpo(const FinitePoset& p, std::size_t cap) {
    require_within_cap(p, cap);
    const MaskView view(p);
    DcpoVerdict verdict;
    view.for_each_directed([&](Mask s) {
        ++verdict.directed_subsets_checked;
        if (verdict.is_dcpo && !view.supremum(s)) {
            verdict.is_dcpo = false;
            verdict.witness = subset_of(p, s);
        }
    });
    return verdict;
}

ApproximationRelation ApproximationRelation::compute(const FinitePoset& p, std::size_t cap) {
    require_within_cap(p, cap);
    const MaskView view(p);
    ApproximationRelation rel;
    rel.rows_.assign(view.n, view.full());
    view.for_each_directed([&](Mask d) {
        const auto sup = view.supremum(d);
        if (!sup) return;
        // Every y below sup(d) loses every x whose up-set misses d.
        for (std::size_t x = 0; x < view.n; ++x) {
            if ((view.up[x] & d) == 0) rel.rows_[x] &= ~view.down[*sup];
        }
    });
    return rel;
}

bool way_below(const FinitePoset& p, const Label& x, const Label& y, std::size_t cap) {
    const auto i = p.index_of(x);
    const auto j = p.index_of(y);
    return ApproximationRelation::compute(p, cap).way_below(i, j);
}

ElementSubset wayup_set(const FinitePoset& p, const Label& x, std::size_t cap) {
    const auto i = p.index_of(x);
    const auto rel = ApproximationRelation::compute(p, cap);
    ElementSubset out;
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (rel.way_below(i, j)) out.insert(p.label(j));
    }
    return out;
}

ElementSubset waydown_set(const FinitePoset& p, const Label& x, std::size_t cap) {
    const auto i = p.index_of(x);
    const auto rel = ApproximationRelation::compute(p, cap);
    ElementSubset out;
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (rel.way_below(j, i)) out.insert(p.label(j));
    }
    return out;
}

ElementSubset compact_elements(const FinitePoset& p, std::size_t cap) {
    const auto rel = ApproximationRelation::compute(p, cap);
    ElementSubset out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (rel.way_below(i, i)) out.insert(p.label(i));
    }
    return out;
}

bool is_basis(const FinitePoset& p, const ElementSubset& m, std::size_t cap) {
    require_nonempty(m);
    const auto rel = ApproximationRelation::compute(p, cap);
    const MaskView view(p);
    const Mask basis = mask_of(p, m);
    for (std::size_t r = 0; r < p.size(); ++r) {
        Mask approximants = 0;
        for (std::size_t s = 0; s < p.size(); ++s) {
            if (rel.way_below(s, r)) approximants |= Mask{1} << s;
        }
        const Mask part = basis & approximants;
        if (!view.directed(part)) return false;
        const auto sup = view.supremum(part);
        if (!sup || *sup != r) return false;
    }
    return true;
}

ExtensionVerdict check_way_below_extension(const FinitePoset& p, std::size_t cap) {
    const auto rel = ApproximationRelation::compute(p, cap);
    const std::size_t n = p.size();
    ExtensionVerdict verdict;
    for (std::size_t tau = 0; tau < n; ++tau) {
        bool wayup_nonempty = false;
        for (std::size_t k = 0; k < n; ++k) wayup_nonempty = wayup_nonempty || rel.way_below(tau, k);
        if (!wayup_nonempty) continue;
        for (std::size_t sigma = 0; sigma < n; ++sigma) {
            if (!p.leq(sigma, tau)) continue;
            for (std::size_t rho = 0; rho < n; ++rho) {
                if (!rel.way_below(rho, sigma)) continue;
                ++verdict.premises_checked;
                if (!rel.way_below(rho, tau) && verdict.holds) {
                    verdict.holds = false;
                    verdict.counterexample = Triple{p.label(rho), p.label(sigma), p.label(tau)};
                }
            }
        }
    }
    return verdict;
}

PosetReport analyze(const FinitePoset& p, std::size_t cap) {
    PosetReport report;
    report.is_dcpo = is_dcpo(p, cap).is_dcpo;
    report.maximal_elements = maximal_elements(p);
    report.compact_elements = compact_elements(p, cap);
    const auto prop = check_way_below_extension(p, cap);
    report.extension_holds = prop.holds;
    report.counterexample = prop.counterexample;
    return report;
}

} // namespace ctxq

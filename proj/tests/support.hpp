#pragma once

// Shared helpers for the unit tests: a random poset generator and a few
// reference implementations that do not share code with the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "ctxq/classical.hpp"
#include "ctxq/poset.hpp"
#include "ctxq/rng.hpp"

namespace testsupport {

inline ctxq::FinitePoset chain(std::vector<std::string> labels) {
    std::vector<std::pair<std::string, std::string>> covers;
    for (std::size_t i = 0; i + 1 < labels.size(); ++i) covers.emplace_back(labels[i], labels[i + 1]);
    return ctxq::FinitePoset::from_cover_relations(std::move(labels), covers);
}

inline ctxq::FinitePoset antichain(std::vector<std::string> labels) {
    return ctxq::FinitePoset::from_cover_relations(std::move(labels), {});
}

inline ctxq::FinitePoset diamond() {
    return ctxq::FinitePoset::from_cover_relations({"bot", "x", "y", "top"},
                                                   {{"bot", "x"}, {"bot", "y"}, {"x", "top"}, {"y", "top"}});
}

// Random DAG over a shuffled labeling: edges only go from lower to higher
// position, so the closure is always a partial order.
inline ctxq::FinitePoset random_poset(std::size_t n, ctxq::CounterRng& rng) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i));
    const auto order = rng.permutation(n);
    const double density = 0.1 + 0.5 * rng.uniform();
    std::vector<std::pair<std::string, std::string>> covers;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (rng.uniform() < density) covers.emplace_back(labels[order[a]], labels[order[b]]);
    return ctxq::FinitePoset::from_cover_relations(labels, covers);
}

// Every nonempty subset of the poset as a set of indices.
inline std::vector<std::vector<std::size_t>> all_subsets(std::size_t n) {
    std::vector<std::vector<std::size_t>> out;
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < n; ++i)
            if ((m >> i) & 1) s.push_back(i);
        out.push_back(std::move(s));
    }
    return out;
}

inline bool directed_ref(const ctxq::FinitePoset& p, const std::vector<std::size_t>& s) {
    for (auto a : s)
        for (auto b : s) {
            bool bounded = false;
            for (auto c : s) bounded = bounded || (p.leq(a, c) && p.leq(b, c));
            if (!bounded) return false;
        }
    return !s.empty();
}

inline int sup_ref(const ctxq::FinitePoset& p, const std::vector<std::size_t>& s) {
    std::vector<std::size_t> ub;
    for (std::size_t u = 0; u < p.size(); ++u)
        if (std::all_of(s.begin(), s.end(), [&](auto a) { return p.leq(a, u); })) ub.push_back(u);
    for (auto u : ub)
        if (std::all_of(ub.begin(), ub.end(), [&](auto v) { return p.leq(u, v); })) return static_cast<int>(u);
    return -1;
}

// Way-below from its definition, over index vectors rather than bit masks.
inline std::vector<std::vector<bool>> way_below_ref(const ctxq::FinitePoset& p) {
    const auto n = p.size();
    std::vector<std::vector<bool>> wb(n, std::vector<bool>(n, true));
    for (const auto& d : all_subsets(n)) {
        if (!directed_ref(p, d)) continue;
        const int s = sup_ref(p, d);
        if (s < 0) continue;
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) {
                if (!p.leq(y, static_cast<std::size_t>(s))) continue;
                const bool meets = std::any_of(d.begin(), d.end(), [&](auto t) { return p.leq(x, t); });
                if (!meets) wb[x][y] = false;
            }
    }
    return wb;
}

// Bayesian order by trying every permutation that sorts both vectors.
inline bool bayesian_leq_exhaustive(const std::vector<double>& x, const std::vector<double>& y,
                                    double slack = ctxq::kOrderTolerance) {
    std::vector<std::size_t> perm(x.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    do {
        bool ok = true;
        for (std::size_t k = 0; ok && k + 1 < perm.size(); ++k) {
            const auto i = perm[k];
            const auto j = perm[k + 1];
            ok = x[i] >= x[j] - slack && y[i] >= y[j] - slack && x[i] * y[j] <= x[j] * y[i] + slack;
        }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

// Entropy in long double with a different accumulation order, as a check on
// the library's double evaluation.
inline double entropy_ref(const std::vector<double>& p) {
    long double h = 0.0L;
    for (double v : p)
        if (v > 0.0) h -= static_cast<long double>(v) * std::log2(static_cast<long double>(v));
    return static_cast<double>(h);
}

inline std::vector<double> vec(const ctxq::ClassicalState& s) { return {s.probs().begin(), s.probs().end()}; }

// H(3/4, 1/4) = 2 - (3/4) log2 3.
inline const double kH34 = 2.0 - 0.75 * std::log2(3.0);

} // namespace testsupport

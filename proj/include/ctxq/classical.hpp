#pragma once

// Classical states: probability vectors on n outcomes, ordered by the
// Bayesian information order.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ctxq/errors.hpp"
#include "ctxq/rng.hpp"

namespace ctxq {

/// Simplex membership tolerance on the component sum.
inline constexpr double kSimplexTolerance = 1e-9;
/// Slack for the products compared by the Bayesian order.
inline constexpr double kOrderTolerance = 1e-12;

class ClassicalState {
public:
    /// Throws InvalidDimension for an empty vector, InvalidState for negative,
    /// non-finite or non-normalized input.
    static ClassicalState from_probabilities(std::vector<double> probs);

    std::size_t dim() const { return probs_.size(); }
    std::span<const double> probs() const { return probs_; }
    double operator[](std::size_t i) const { return probs_[i]; }

    std::size_t support_size() const;
    /// Exactly one nonzero component.
    bool is_pure() const { return support_size() == 1; }

    bool approx_equal(const ClassicalState& other, double tol = kSimplexTolerance) const;

    friend bool operator==(const ClassicalState&, const ClassicalState&) = default;

private:
    explicit ClassicalState(std::vector<double> probs) : probs_(std::move(probs)) {}
    std::vector<double> probs_;
};

/// The completely mixed (uniform) state: least element of the order.
ClassicalState mixed(std::size_t n);

/// Standard basis vector e_i: a maximal element.
ClassicalState pure(std::size_t n, std::size_t i);

/// Bayesian order. x ⊑ y iff some permutation sorts both vectors into
/// non-increasing order and x[k] * y[k+1] <= x[k+1] * y[k] along it.
///
/// Only ties in x leave the permutation free, and inside a tie run the y
/// values must themselves be sorted, so co-sorting by (x desc, y desc) finds a
/// witness whenever one exists.
bool bayesian_leq(const ClassicalState& x, const ClassicalState& y);

/// Convex combination (1 - t) x + t y.
ClassicalState mixing_path(const ClassicalState& x, const ClassicalState& y, double t);

/// Bayesian update after learning outcome i did not occur.
ClassicalState eliminate(const ClassicalState& x, std::size_t i);

/// Random state with positive components; with `allow_zeros` roughly a
/// quarter of the draws also get a random set of zeroed outcomes.
ClassicalState random_state(std::size_t n, CounterRng& rng, bool allow_zeros = true);

/// A pair x ⊑ y drawn from one of two order-preserving segments: the ray from
/// the mixed state through a random state, or the segment from a random state
/// towards the pure state at its largest component. The two mixing weights are
/// at least 1e-3 apart.
std::pair<ClassicalState, ClassicalState> random_ordered_pair(std::size_t n, CounterRng& rng);

/// "(0.5, 0.25, 0.25)" with 12 significant digits.
std::string to_string(const ClassicalState& x);

} // namespace ctxq

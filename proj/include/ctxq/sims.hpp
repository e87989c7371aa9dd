#pragma once

// The two experiments: a classical search for a ball hidden in one of n boxes,
// and chains of spin-1/2 measurements along changing axes.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ctxq/classical.hpp"
#include "ctxq/poset.hpp"
#include "ctxq/quantum.hpp"

namespace ctxq {

struct BoxStep {
    /// Empty for the initial row (nothing opened yet).
    std::optional<std::size_t> opened_box;
    bool found = false;
    ClassicalState state;
    double entropy_bits = 0.0;
};

struct ClassicalTrace {
    std::vector<BoxStep> steps;
    std::size_t n_boxes = 0;
    std::size_t ball_index = 0;
};

/// Starts from the uniform state and opens boxes in `opening_order`, applying a
/// Bayesian elimination for each empty box. Stops when the ball is found or
/// only one box remains possible.
ClassicalTrace boxes_experiment(std::size_t n_boxes, std::size_t ball_index,
                                std::span<const std::size_t> opening_order);

struct QuantumAggregate {
    std::vector<BlochAxis> axes;
    /// Entropy of the exact predictive distribution of each step given the
    /// state entering it.
    std::vector<double> per_step_entropy_bits;
    /// Distinct post-measurement states seen over all trials and steps.
    std::size_t distinct_maximal_states = 0;
    /// {plus, minus} counts per step.
    std::vector<std::array<std::uint64_t, 2>> empirical_frequencies;
    /// Consecutive steps along the identical axis, and how many of those
    /// repeated the previous outcome.
    std::uint64_t same_axis_pairs = 0;
    std::uint64_t same_axis_repeats = 0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
};

/// Predictive entropies along an axis chain, computed from the Bloch geometry.
std::vector<double> analytic_step_entropies(const QubitState& input, std::span<const BlochAxis> axes);

/// Trial t uses CounterRng(seed).split(t), so results do not depend on the
/// order trials are run in.
QuantumAggregate qubit_experiment(const QubitState& input, std::span<const BlochAxis> axes, std::size_t trials,
                                  std::uint64_t seed);

/// Fraction of trials (random input states) in which a second measurement
/// along `axis` repeats the first outcome.
double fixed_basis_repeat(const BlochAxis& axis, std::size_t trials, std::uint64_t seed);

inline constexpr double kDefaultEpsilon = 0.01;

struct DeterminismVerdict {
    bool physically_deterministic = false;
    /// Entropy dropped below epsilon without reaching exactly zero.
    bool approximately_deterministic = false;
    /// Measurements performed before the outcome is certain.
    std::optional<std::size_t> steps_to_certainty;
    double epsilon = kDefaultEpsilon;
};

/// Deterministic iff the entropy reaches exactly zero at a finite step.
DeterminismVerdict determinism_check(const ClassicalTrace& trace, double epsilon = kDefaultEpsilon);

/// Deterministic iff the axes never leave one basis (parallel or
/// anti-parallel) and the predictive entropy stays zero from some step on.
DeterminismVerdict determinism_check(const QuantumAggregate& aggregate, double epsilon = kDefaultEpsilon);

/// The knowledge states of the box search: for every nonempty set S of boxes
/// that may still hold the ball, the uniform distribution on S, labeled by the
/// box letters in S ("ABC", "BC", "C", ...). Ordered by bayesian_leq.
struct BoxesDomain {
    FinitePoset poset;
    std::vector<std::pair<Label, ClassicalState>> states;

    const ClassicalState& state(const Label& label) const;
};

/// Throws ParameterOutOfRange unless 1 <= n <= 26.
BoxesDomain boxes_domain(std::size_t n);

} // namespace ctxq

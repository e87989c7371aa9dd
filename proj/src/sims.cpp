#include "ctxq/sims.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "ctxq/measures.hpp"

namespace ctxq {

namespace {

bool same_basis(const BlochAxis& a, const BlochAxis& b) {
    return std::abs(a.direction().dot(b.direction())) >= 1.0 - kAlignmentTolerance;
}

QubitState random_pure_state(CounterRng& rng) {
    const double z = 2.0 * rng.uniform() - 1.0;
    const double phi = 2.0 * std::numbers::pi * rng.uniform();
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return QubitState::from_bloch({r * std::cos(phi), r * std::sin(phi), z});
}

} // namespace

ClassicalTrace boxes_experiment(std::size_t n_boxes, std::size_t ball_index,
                                std::span<const std::size_t> opening_order) {
    if (n_boxes < 2) throw ParameterOutOfRange("the box search needs at least two boxes");
    if (ball_index >= n_boxes) throw IndexOutOfRange("ball index out of range");
    if (opening_order.size() != n_boxes) throw InvalidPermutation("opening order must list every box once");
    std::vector<bool> seen(n_boxes, false);
    for (auto b : opening_order) {
        if (b >= n_boxes || seen[b]) throw InvalidPermutation("opening order must list every box once");
        seen[b] = true;
    }

    const auto shannon = MeasurementFn::shannon();
    ClassicalTrace trace;
    trace.n_boxes = n_boxes;
    trace.ball_index = ball_index;
    auto state = mixed(n_boxes);
    trace.steps.push_back({std::nullopt, false, state, evaluate(shannon, state)});
    for (auto box : opening_order) {
        if (state.is_pure()) break;
        const bool found = box == ball_index;
        state = found ? pure(n_boxes, ball_index) : eliminate(state, box);
        trace.steps.push_back({box, found, state, evaluate(shannon, state)});
        if (found) break;
    }
    return trace;
}

std::vector<double> analytic_step_entropies(const QubitState& input, std::span<const BlochAxis> axes) {
    std::vector<double> out;
    out.reserve(axes.size());
    QubitState entering = input;
    for (const auto& axis : axes) {
        const auto p = transition_probs(entering, axis);
        const double probs[2] = {p.plus, p.minus};
        out.push_back(shannon_entropy(probs));
        // Either outcome leaves the state on this axis; the entropy of the next
        // step does not depend on which.
        entering = QubitState::aligned(axis);
    }
    return out;
}

QuantumAggregate qubit_experiment(const QubitState& input, std::span<const BlochAxis> axes, std::size_t trials,
                                  std::uint64_t seed) {
    if (trials == 0) throw ParameterOutOfRange("qubit_experiment needs at least one trial");
    if (axes.empty()) throw ParameterOutOfRange("qubit_experiment needs at least one axis");
    QuantumAggregate agg;
    agg.axes.assign(axes.begin(), axes.end());
    agg.per_step_entropy_bits = analytic_step_entropies(input, axes);
    agg.empirical_frequencies.assign(axes.size(), {0, 0});
    agg.trials = trials;
    agg.seed = seed;

    const CounterRng root(seed);
    std::set<std::array<double, 3>> maximal;
    for (std::size_t t = 0; t < trials; ++t) {
        auto rng = root.split(t);
        const auto trace = run_sequence(input, axes, rng);
        for (std::size_t k = 0; k < trace.steps.size(); ++k) {
            const auto& step = trace.steps[k];
            ++agg.empirical_frequencies[k][step.outcome > 0 ? 0 : 1];
            const auto& b = step.post.bloch();
            maximal.insert({b.x, b.y, b.z});
            if (k > 0 && step.axis == trace.steps[k - 1].axis) {
                ++agg.same_axis_pairs;
                if (step.outcome == trace.steps[k - 1].outcome) ++agg.same_axis_repeats;
            }
        }
    }
    agg.distinct_maximal_states = maximal.size();
    return agg;
}

double fixed_basis_repeat(const BlochAxis& axis, std::size_t trials, std::uint64_t seed) {
    if (trials == 0) throw ParameterOutOfRange("fixed_basis_repeat needs at least one trial");
    const CounterRng root(seed);
    std::size_t repeats = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        auto rng = root.split(t);
        const auto input = random_pure_state(rng);
        const auto first = measure(input, axis, rng);
        const auto second = measure(first.post, axis, rng);
        if (first.outcome == second.outcome) ++repeats;
    }
    return static_cast<double>(repeats) / static_cast<double>(trials);
}

DeterminismVerdict determinism_check(const ClassicalTrace& trace, double epsilon) {
    if (!(epsilon >= 0.0)) throw ParameterOutOfRange("epsilon must be non-negative");
    DeterminismVerdict v;
    v.epsilon = epsilon;
    bool below_epsilon = false;
    for (std::size_t k = 0; k < trace.steps.size(); ++k) {
        const double h = trace.steps[k].entropy_bits;
        if (h == 0.0) {
            v.physically_deterministic = true;
            v.steps_to_certainty = k;
            break;
        }
        below_epsilon = below_epsilon || h < epsilon;
    }
    v.approximately_deterministic = !v.physically_deterministic && below_epsilon;
    return v;
}

DeterminismVerdict determinism_check(const QuantumAggregate& aggregate, double epsilon) {
    if (!(epsilon >= 0.0)) throw ParameterOutOfRange("epsilon must be non-negative");
    DeterminismVerdict v;
    v.epsilon = epsilon;
    const auto& h = aggregate.per_step_entropy_bits;
    const auto& axes = aggregate.axes;
    const bool fixed_basis =
        std::all_of(axes.begin(), axes.end(), [&](const BlochAxis& a) { return same_basis(a, axes.front()); });
    // Number of leading steps before the entropy is zero for good.
    std::size_t certain_after = h.size();
    while (certain_after > 0 && h[certain_after - 1] == 0.0) --certain_after;
    const bool settles = certain_after < h.size();
    if (fixed_basis && settles) {
        v.physically_deterministic = true;
        v.steps_to_certainty = certain_after;
    } else {
        v.approximately_deterministic = !h.empty() && h.back() < epsilon;
    }
    return v;
}

const ClassicalState& BoxesDomain::state(const Label& label) const {
    for (const auto& [l, s] : states) {
        if (l == label) return s;
    }
    throw UnknownLabelError("no boxes state labeled '" + label + "'");
}

BoxesDomain boxes_domain(std::size_t n) {
    if (n < 1 || n > 26) throw ParameterOutOfRange("boxes domain supports 1 to 26 boxes");
    std::vector<std::pair<Label, ClassicalState>> states;
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
        Label label;
        const auto support = static_cast<double>(std::popcount(mask));
        std::vector<double> probs(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            if ((mask >> i) & 1u) {
                label += static_cast<char>('A' + i);
                probs[i] = 1.0 / support;
            }
        }
        states.emplace_back(std::move(label), ClassicalState::from_probabilities(std::move(probs)));
    }
    // Larger supports first, then alphabetical: bottom of the order comes first.
    std::sort(states.begin(), states.end(), [](const auto& a, const auto& b) {
        return a.first.size() != b.first.size() ? a.first.size() > b.first.size() : a.first < b.first;
    });
    std::vector<Label> labels;
    std::vector<std::pair<Label, Label>> relation;
    for (const auto& [la, sa] : states) {
        labels.push_back(la);
        for (const auto& [lb, sb] : states) {
            if (la != lb && bayesian_leq(sa, sb)) relation.emplace_back(la, lb);
        }
    }
    return BoxesDomain{FinitePoset::from_cover_relations(std::move(labels), relation), std::move(states)};
}

} // namespace ctxq

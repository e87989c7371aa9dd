#include "ctxq/measures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace ctxq {

namespace {

constexpr std::uint64_t kStreamExpansibility = 1;
constexpr std::uint64_t kStreamSymmetry = 2;
constexpr std::uint64_t kStreamAdditivity = 3;
constexpr std::uint64_t kStreamSubadditivity = 4;
constexpr std::uint64_t kStreamMonotone = 5;

CounterRng stream(std::uint64_t seed, std::uint64_t axiom, std::size_t sample) {
    return CounterRng(seed).split((axiom << 40) ^ static_cast<std::uint64_t>(sample));
}

std::size_t small_dim(CounterRng& rng, std::size_t max_dim) {
    return 1 + static_cast<std::size_t>(rng.below(max_dim));
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<double> joint_grid(std::size_t rows, std::size_t cols, std::size_t sample, CounterRng& rng) {
    std::vector<double> joint(rows * cols, 0.0);
    switch (sample % 10) {
    case 0: {  // independent
        const auto p = random_state(rows, rng);
        const auto q = random_state(cols, rng);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) joint[i * cols + j] = p[i] * q[j];
        break;
    }
    case 1: {  // perfectly correlated
        const auto d = std::min(rows, cols);
        const auto p = random_state(d, rng);
        for (std::size_t i = 0; i < d; ++i) joint[i * cols + i] = p[i];
        break;
    }
    default: {
        for (auto& v : joint) v = rng.below(5) == 0 ? 0.0 : rng.uniform();
        joint[static_cast<std::size_t>(rng.below(joint.size()))] += 1e-3;
        const double total = std::accumulate(joint.begin(), joint.end(), 0.0);
        for (auto& v : joint) v /= total;
    }
    }
    return joint;
}

} // namespace

MeasurementFn MeasurementFn::linear_combo(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b) || a < 0.0 || b < 0.0) {
        throw ParameterOutOfRange("linear combination weights must be finite and non-negative");
    }
    if (a == 0.0 && b == 0.0) throw ParameterOutOfRange("linear combination weights must not both be zero");
    return MeasurementFn(Kind::LinearCombo, a, b);
}

std::string MeasurementFn::name() const {
    switch (kind_) {
    case Kind::Shannon: return "shannon";
    case Kind::Hartley: return "hartley";
    case Kind::LinearCombo: return "linear(" + fmt(a_) + "," + fmt(b_) + ")";
    }
    return "unknown";
}

double shannon_entropy(std::span<const double> probs) {
    std::vector<double> sorted(probs.begin(), probs.end());
    std::sort(sorted.begin(), sorted.end());
    double h = 0.0;
    for (double p : sorted) {
        if (p > 0.0) h -= p * std::log2(p);
    }
    // Rounding can leave -0.0 or a few ulps below zero for near-pure input.
    return std::max(h, 0.0);
}

double hartley_entropy(std::span<const double> probs) {
    const auto support = std::count_if(probs.begin(), probs.end(), [](double p) { return p > 0.0; });
    return std::log2(static_cast<double>(support));
}

double evaluate(const MeasurementFn& f, const ClassicalState& x) {
    switch (f.kind()) {
    case MeasurementFn::Kind::Shannon: return shannon_entropy(x.probs());
    case MeasurementFn::Kind::Hartley: return hartley_entropy(x.probs());
    case MeasurementFn::Kind::LinearCombo:
        return f.shannon_weight() * shannon_entropy(x.probs()) + f.hartley_weight() * hartley_entropy(x.probs());
    }
    return 0.0;
}

AxiomReport verify_axioms(const MeasurementFn& f, std::size_t sample_count, std::uint64_t seed) {
    if (sample_count == 0) throw ParameterOutOfRange("verify_axioms needs at least one sample");
    AxiomReport report;
    const auto value = [&](std::vector<double> v) { return evaluate(f, ClassicalState::from_probabilities(std::move(v))); };

    for (std::size_t k = 0; k < sample_count; ++k) {
        // Expansibility: a zero-probability outcome anywhere changes nothing.
        {
            auto rng = stream(seed, kStreamExpansibility, k);
            const auto x = random_state(small_dim(rng, 8), rng);
            std::vector<double> padded(x.probs().begin(), x.probs().end());
            padded.insert(padded.begin() + static_cast<std::ptrdiff_t>(rng.below(padded.size() + 1)), 0.0);
            const double before = evaluate(f, x);
            const double after = value(padded);
            ++report.expansibility.samples;
            if (before != after) {
                report.expansibility.fail(to_string(x) + " -> " + fmt(before) + " but padded -> " + fmt(after));
            }
        }
        // Symmetry: bit-identical under permutation.
        {
            auto rng = stream(seed, kStreamSymmetry, k);
            const auto x = random_state(small_dim(rng, 8), rng);
            const auto perm = rng.permutation(x.dim());
            std::vector<double> shuffled(x.dim());
            for (std::size_t i = 0; i < x.dim(); ++i) shuffled[i] = x[perm[i]];
            const double before = evaluate(f, x);
            const double after = value(shuffled);
            ++report.symmetry.samples;
            if (before != after) {
                report.symmetry.fail(to_string(x) + " -> " + fmt(before) + " but permuted -> " + fmt(after));
            }
        }
        // Additivity on product distributions.
        {
            auto rng = stream(seed, kStreamAdditivity, k);
            const auto p = random_state(small_dim(rng, 6), rng);
            const auto q = random_state(small_dim(rng, 6), rng);
            std::vector<double> product;
            product.reserve(p.dim() * q.dim());
            for (std::size_t i = 0; i < p.dim(); ++i)
                for (std::size_t j = 0; j < q.dim(); ++j) product.push_back(p[i] * q[j]);
            const double joint = value(product);
            const double sum = evaluate(f, p) + evaluate(f, q);
            ++report.additivity.samples;
            if (std::abs(joint - sum) > kAxiomTolerance) {
                report.additivity.fail(to_string(p) + " x " + to_string(q) + ": joint " + fmt(joint) + " vs sum " +
                                       fmt(sum));
            }
        }
        // Subadditivity on arbitrary joints.
        {
            auto rng = stream(seed, kStreamSubadditivity, k);
            const auto rows = small_dim(rng, 6);
            const auto cols = small_dim(rng, 6);
            const auto joint = joint_grid(rows, cols, k, rng);
            std::vector<double> m1(rows, 0.0);
            std::vector<double> m2(cols, 0.0);
            for (std::size_t i = 0; i < rows; ++i) {
                for (std::size_t j = 0; j < cols; ++j) {
                    m1[i] += joint[i * cols + j];
                    m2[j] += joint[i * cols + j];
                }
            }
            const double hj = value(joint);
            const double hm = value(m1) + value(m2);
            ++report.subadditivity.samples;
            if (hj > hm + kAxiomTolerance) {
                report.subadditivity.fail(std::to_string(rows) + "x" + std::to_string(cols) + " joint " + fmt(hj) +
                                          " exceeds marginal sum " + fmt(hm));
            }
        }
        // Monotone along sampled Bayesian-ordered pairs.
        {
            auto rng = stream(seed, kStreamMonotone, k);
            const auto [x, y] = random_ordered_pair(2 + static_cast<std::size_t>(rng.below(5)), rng);
            ++report.monotone_on_bayesian.samples;
            if (!bayesian_leq(x, y)) {
                report.monotone_on_bayesian.fail("sampler produced unordered pair " + to_string(x) + ", " + to_string(y));
            } else if (evaluate(f, x) < evaluate(f, y)) {
                report.monotone_on_bayesian.fail(to_string(x) + " ⊑ " + to_string(y) + " but " + fmt(evaluate(f, x)) +
                                                 " < " + fmt(evaluate(f, y)));
            }
        }
    }

    const double half = value({0.5, 0.5});
    report.normalization.samples = 1;
    if (std::abs(half - 1.0) > kKernelTolerance) report.normalization.fail("value at (1/2, 1/2) is " + fmt(half));
    return report;
}

MonotoneCheck is_monotone_on(const MeasurementFn& f,
                             const std::vector<std::pair<ClassicalState, ClassicalState>>& pairs, double slack) {
    MonotoneCheck check;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto& [x, y] = pairs[k];
        if (!bayesian_leq(x, y)) throw InputError("pair " + std::to_string(k) + " is not Bayesian-ordered");
        ++check.pairs_checked;
        if (check.passed && evaluate(f, x) < evaluate(f, y) - slack) {
            check.passed = false;
            check.witness = pairs[k];
        }
    }
    return check;
}

bool kernel_at_maximal(const MeasurementFn& f, const ClassicalState& x) {
    return (evaluate(f, x) <= kKernelTolerance) == x.is_pure();
}

} // namespace ctxq

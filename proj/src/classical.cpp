#include "ctxq/classical.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>

namespace ctxq {

ClassicalState ClassicalState::from_probabilities(std::vector<double> probs) {
    if (probs.empty()) throw InvalidDimension("a classical state needs at least one outcome");
    double total = 0.0;
    for (double p : probs) {
        if (!std::isfinite(p) || p < 0.0) {
            throw InvalidState("probabilities must be finite and non-negative, got " + std::to_string(p));
        }
        total += p;
    }
    if (std::abs(total - 1.0) > kSimplexTolerance) {
        throw InvalidState("probabilities sum to " + std::to_string(total) + ", expected 1");
    }
    return ClassicalState(std::move(probs));
}

std::size_t ClassicalState::support_size() const {
    return static_cast<std::size_t>(std::count_if(probs_.begin(), probs_.end(), [](double p) { return p > 0.0; }));
}

bool ClassicalState::approx_equal(const ClassicalState& other, double tol) const {
    if (dim() != other.dim()) return false;
    for (std::size_t i = 0; i < dim(); ++i) {
        if (std::abs(probs_[i] - other.probs_[i]) > tol) return false;
    }
    return true;
}

ClassicalState mixed(std::size_t n) {
    if (n == 0) throw InvalidDimension("mixed state needs n >= 1");
    return ClassicalState::from_probabilities(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

ClassicalState pure(std::size_t n, std::size_t i) {
    if (n == 0) throw InvalidDimension("pure state needs n >= 1");
    if (i >= n) throw IndexOutOfRange("pure state index " + std::to_string(i) + " out of range for n=" + std::to_string(n));
    std::vector<double> v(n, 0.0);
    v[i] = 1.0;
    return ClassicalState::from_probabilities(std::move(v));
}

bool bayesian_leq(const ClassicalState& x, const ClassicalState& y) {
    if (x.dim() != y.dim()) {
        throw DimensionMismatch("bayesian_leq on dimensions " + std::to_string(x.dim()) + " and " +
                                std::to_string(y.dim()));
    }
    const std::size_t n = x.dim();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] > x[b]; });
    // Runs of (numerically) tied x values are free; order them by y.
    for (std::size_t start = 0; start < n;) {
        std::size_t end = start + 1;
        while (end < n && x[order[end - 1]] - x[order[end]] <= kOrderTolerance) ++end;
        std::stable_sort(order.begin() + static_cast<std::ptrdiff_t>(start),
                         order.begin() + static_cast<std::ptrdiff_t>(end),
                         [&](std::size_t a, std::size_t b) { return y[a] > y[b]; });
        start = end;
    }
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const std::size_t hi = order[k];
        const std::size_t lo = order[k + 1];
        if (y[lo] > y[hi] + kOrderTolerance) return false;
        if (x[hi] * y[lo] > x[lo] * y[hi] + kOrderTolerance) return false;
    }
    return true;
}

ClassicalState mixing_path(const ClassicalState& x, const ClassicalState& y, double t) {
    if (x.dim() != y.dim()) throw DimensionMismatch("mixing_path needs states of equal dimension");
    if (!(t >= 0.0 && t <= 1.0)) throw ParameterOutOfRange("mixing parameter must lie in [0, 1]");
    std::vector<double> v(x.dim());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = (1.0 - t) * x[i] + t * y[i];
    return ClassicalState::from_probabilities(std::move(v));
}

ClassicalState eliminate(const ClassicalState& x, std::size_t i) {
    if (i >= x.dim()) throw IndexOutOfRange("eliminate index " + std::to_string(i) + " out of range");
    if (x[i] >= 1.0 - kSimplexTolerance) throw CertainOutcomeError("cannot eliminate a certain outcome");
    double rest = 0.0;
    for (std::size_t k = 0; k < x.dim(); ++k) {
        if (k != i) rest += x[k];
    }
    std::vector<double> v(x.dim());
    for (std::size_t k = 0; k < x.dim(); ++k) v[k] = k == i ? 0.0 : x[k] / rest;
    return ClassicalState::from_probabilities(std::move(v));
}

ClassicalState random_state(std::size_t n, CounterRng& rng, bool allow_zeros) {
    if (n == 0) throw InvalidDimension("random_state needs n >= 1");
    std::vector<double> v(n);
    for (auto& p : v) p = 1e-3 + rng.uniform();
    if (allow_zeros && n > 1 && rng.below(4) == 0) {
        const auto keep = rng.below(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (i != keep && rng.below(2) == 0) v[i] = 0.0;
        }
    }
    const double total = std::accumulate(v.begin(), v.end(), 0.0);
    for (auto& p : v) p /= total;
    return ClassicalState::from_probabilities(std::move(v));
}

std::pair<ClassicalState, ClassicalState> random_ordered_pair(std::size_t n, CounterRng& rng) {
    constexpr double kGap = 1e-3;
    const double s = rng.uniform() * (1.0 - kGap);
    const double t = std::min(1.0, s + kGap + rng.uniform() * (1.0 - s - kGap));
    if (rng.below(2) == 0) {
        const auto y = random_state(n, rng, true);
        const auto bottom = mixed(n);
        return {mixing_path(bottom, y, s), mixing_path(bottom, y, t)};
    }
    const auto x = random_state(n, rng, false);
    const auto top = static_cast<std::size_t>(std::max_element(x.probs().begin(), x.probs().end()) - x.probs().begin());
    const auto target = pure(n, top);
    return {mixing_path(x, target, s), mixing_path(x, target, t)};
}

std::string to_string(const ClassicalState& x) {
    std::string out = "(";
    char buf[32];
    for (std::size_t i = 0; i < x.dim(); ++i) {
        std::snprintf(buf, sizeof buf, "%.12g", x[i]);
        if (i) out += ", ";
        out += buf;
    }
    return out + ")";
}

} // namespace ctxq

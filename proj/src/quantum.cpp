#include "ctxq/quantum.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace ctxq {

namespace {

constexpr double kSnap = 1e-15;
constexpr double kUnitTolerance = 1e-9;

double snap(double v) { return std::abs(v) < kSnap ? 0.0 : v; }

std::complex<double> inner(const std::vector<Amplitude>& a, const std::vector<Amplitude>& b) {
    std::complex<double> s{0.0, 0.0};
    for (std::size_t k = 0; k < a.size(); ++k) s += std::conj(a[k]) * b[k];
    return s;
}

double parse_double(const std::string& text) {
    double v = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || text.empty()) throw InputError("not a number: '" + text + "'");
    return v;
}

} // namespace

double Vec3::norm() const { return std::sqrt(dot(*this)); }

double angle_between(const Vec3& a, const Vec3& b) {
    return std::atan2(a.cross(b).norm(), a.dot(b));
}

BlochAxis BlochAxis::from_angles(double theta, double phi) {
    if (!std::isfinite(theta) || !std::isfinite(phi)) throw ParameterOutOfRange("axis angles must be finite");
    const double s = std::sin(theta);
    return BlochAxis({snap(s * std::cos(phi)), snap(s * std::sin(phi)), snap(std::cos(theta))});
}

BlochAxis BlochAxis::from_vector(const Vec3& v) {
    const double n = v.norm();
    if (!std::isfinite(n) || n == 0.0) throw ParameterOutOfRange("axis vector must be nonzero and finite");
    return BlochAxis({v.x / n, v.y / n, v.z / n});
}

double BlochAxis::theta() const { return std::atan2(std::hypot(dir_.x, dir_.y), dir_.z); }

double BlochAxis::phi() const {
    if (dir_.x == 0.0 && dir_.y == 0.0) return 0.0;
    double p = std::atan2(dir_.y, dir_.x);
    if (p < 0.0) p += 2.0 * std::numbers::pi;
    return p >= 2.0 * std::numbers::pi ? 0.0 : p;
}

double angle_between(const BlochAxis& a, const BlochAxis& b) { return angle_between(a.direction(), b.direction()); }

QubitState QubitState::from_bloch(const Vec3& v) {
    if (!(std::abs(v.norm() - 1.0) <= kUnitTolerance)) throw InvalidState("Bloch vector of a pure state must have norm 1");
    return QubitState(v);
}

OutcomeProbabilities transition_probs(const QubitState& state, const BlochAxis& axis) {
    const double d = state.bloch().dot(axis.direction());
    if (d >= 1.0 - kAlignmentTolerance) return {1.0, 0.0};
    if (d <= -1.0 + kAlignmentTolerance) return {0.0, 1.0};
    const double plus = std::clamp((1.0 + d) / 2.0, 0.0, 1.0);
    return {plus, 1.0 - plus};
}

MeasurementResult measure(const QubitState& state, const BlochAxis& axis, CounterRng& rng) {
    const auto probs = transition_probs(state, axis);
    // Always draw, so the stream position does not depend on the branch.
    const double u = rng.uniform();
    if (u < probs.plus) return {+1, QubitState::aligned(axis)};
    return {-1, QubitState::anti_aligned(axis)};
}

QuantumTrace run_sequence(const QubitState& input, std::span<const BlochAxis> axes, CounterRng& rng) {
    if (axes.empty()) throw ParameterOutOfRange("run_sequence needs at least one axis");
    QuantumTrace trace;
    trace.seed = rng.key();
    trace.steps.reserve(axes.size());
    QubitState current = input;
    for (const auto& axis : axes) {
        const auto predictive = transition_probs(current, axis);
        auto result = measure(current, axis, rng);
        trace.steps.push_back({axis, result.outcome, predictive, result.post});
        current = result.post;
    }
    return trace;
}

QuantumTrace run_sequence(const QubitState& input, std::span<const BlochAxis> axes, std::uint64_t seed) {
    CounterRng rng(seed);
    auto trace = run_sequence(input, axes, rng);
    trace.seed = seed;
    return trace;
}

NBasis NBasis::from_columns(std::vector<std::vector<Amplitude>> columns) {
    const std::size_t n = columns.size();
    if (n == 0) throw InvalidDimension("a basis needs at least one column");
    for (const auto& c : columns) {
        if (c.size() != n) throw InvalidDimension("basis columns must have length " + std::to_string(n));
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const auto g = inner(columns[i], columns[j]);
            const double expected = i == j ? 1.0 : 0.0;
            if (std::abs(g - expected) > kUnitTolerance) {
                throw InvalidState("basis columns " + std::to_string(i) + " and " + std::to_string(j) +
                                   " are not orthonormal");
            }
        }
    }
    return NBasis(std::move(columns));
}

NBasis NBasis::computational(std::size_t n) {
    if (n == 0) throw InvalidDimension("a basis needs n >= 1");
    std::vector<std::vector<Amplitude>> cols(n, std::vector<Amplitude>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) cols[i][i] = 1.0;
    return NBasis(std::move(cols));
}

NBasis NBasis::fourier(std::size_t n) {
    if (n == 0) throw InvalidDimension("a basis needs n >= 1");
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<std::vector<Amplitude>> cols(n, std::vector<Amplitude>(n));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * k) % n) / static_cast<double>(n);
            cols[j][k] = std::polar(scale, angle);
        }
    }
    return NBasis::from_columns(std::move(cols));
}

NBasis NBasis::from_qubit_axis(const BlochAxis& axis) {
    const double half = axis.theta() / 2.0;
    const Amplitude phase = std::polar(1.0, axis.phi());
    std::vector<std::vector<Amplitude>> cols{
        {std::cos(half), phase * std::sin(half)},
        {std::sin(half), -phase * std::cos(half)},
    };
    return NBasis::from_columns(std::move(cols));
}

NBasis NBasis::random(std::size_t n, CounterRng& rng) {
    if (n == 0) throw InvalidDimension("a basis needs n >= 1");
    const auto gaussian = [&rng] {
        // Box–Muller; 1 - u keeps the log argument in (0, 1].
        const double r = std::sqrt(-2.0 * std::log(1.0 - rng.uniform()));
        return r * std::cos(2.0 * std::numbers::pi * rng.uniform());
    };
    std::vector<std::vector<Amplitude>> cols;
    while (cols.size() < n) {
        std::vector<Amplitude> v(n);
        for (auto& a : v) a = {gaussian(), gaussian()};
        for (const auto& c : cols) {
            const auto proj = inner(c, v);
            for (std::size_t k = 0; k < n; ++k) v[k] -= proj * c[k];
        }
        double norm = 0.0;
        for (const auto& a : v) norm += std::norm(a);
        norm = std::sqrt(norm);
        if (norm < 1e-6) continue;
        for (auto& a : v) a /= norm;
        cols.push_back(std::move(v));
    }
    return NBasis::from_columns(std::move(cols));
}

NBasis NBasis::permuted(std::span<const std::size_t> perm) const {
    if (perm.size() != dim()) throw InvalidPermutation("permutation length does not match the basis dimension");
    std::vector<bool> seen(dim(), false);
    std::vector<std::vector<Amplitude>> cols;
    cols.reserve(dim());
    for (auto k : perm) {
        if (k >= dim() || seen[k]) throw InvalidPermutation("not a permutation of the basis columns");
        seen[k] = true;
        cols.push_back(columns_[k]);
    }
    return NBasis(std::move(cols));
}

RealMatrix transition_matrix(const NBasis& a, const NBasis& b) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatch("bases have dimensions " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
    }
    const std::size_t n = a.dim();
    RealMatrix t(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t[i][j] = std::norm(inner(a.columns()[i], b.columns()[j]));
    return t;
}

BlochAxis parse_axis(const std::string& text) {
    if (text.empty()) throw InputError("empty axis");
    if (text == "z") return BlochAxis::z();
    if (text == "x") return BlochAxis::x();
    if (text == "y") return BlochAxis::y();
    if (text == "-z") return BlochAxis::z().opposite();
    if (text == "-x") return BlochAxis::x().opposite();
    if (text == "-y") return BlochAxis::y().opposite();
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw InputError("axis must be z, x, y, -z, -x, -y or theta:phi, got '" + text + "'");
    return BlochAxis::from_angles(parse_double(text.substr(0, colon)), parse_double(text.substr(colon + 1)));
}

std::string axis_label(const BlochAxis& axis) {
    for (const char* name : {"z", "x", "y", "-z", "-x", "-y"}) {
        if (parse_axis(name) == axis) return name;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g:%.12g", axis.theta(), axis.phi());
    return buf;
}

} // namespace ctxq

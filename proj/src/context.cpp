#include "ctxq/context.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ctxq/measures.hpp"

namespace ctxq {

std::string to_string(ContextClass c) {
    switch (c) {
    case ContextClass::IdenticalContext: return "IdenticalContext";
    case ContextClass::PartialContext: return "PartialContext";
    case ContextClass::OrthogonalBases: return "OrthogonalBases";
    }
    return "?";
}

ContextClass classify(double value_bits, double sup_bits, double tol) {
    if (value_bits <= tol) return ContextClass::IdenticalContext;
    if (std::abs(value_bits - sup_bits) <= tol) return ContextClass::OrthogonalBases;
    return ContextClass::PartialContext;
}

ContextReport contextual_distance(const NBasis& a, const NBasis& b) {
    const auto t = transition_matrix(a, b);
    const std::size_t n = t.size();
    if (n < 2) throw InvalidDimension("contextual distance needs dimension >= 2");
    double total = 0.0;
    for (const auto& row : t) total += shannon_entropy(row);
    ContextReport r;
    r.sup_bits = std::log2(static_cast<double>(n));
    r.value_bits = total / static_cast<double>(n);
    r.classification = classify(r.value_bits, r.sup_bits);
    r.normalized = std::clamp(r.value_bits / r.sup_bits, 0.0, 1.0);
    return r;
}

double column_distance_bits(const NBasis& a, const NBasis& b) {
    const auto t = transition_matrix(a, b);
    const std::size_t n = t.size();
    double total = 0.0;
    std::vector<double> col(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) col[i] = t[i][j];
        total += shannon_entropy(col);
    }
    return total / static_cast<double>(n);
}

std::vector<std::pair<double, double>> qubit_distance_curve(const std::vector<double>& theta_grid) {
    std::vector<std::pair<double, double>> curve;
    curve.reserve(theta_grid.size());
    for (double theta : theta_grid) {
        if (!(theta >= 0.0 && theta <= std::numbers::pi / 2.0)) {
            throw ParameterOutOfRange("sweep angles must lie in [0, pi/2]");
        }
        // cos^2(theta/2) written as (1 + cos theta) / 2 is exact at pi/2.
        const double c = std::cos(theta);
        const double probs[2] = {(1.0 + c) / 2.0, (1.0 - c) / 2.0};
        curve.emplace_back(theta, shannon_entropy(probs));
    }
    return curve;
}

bool identical_context_closure(const NBasis& j, const NBasis& k, const NBasis& l) {
    if (j.dim() != k.dim() || k.dim() != l.dim()) throw DimensionMismatch("bases must share a dimension");
    const auto zero = [](const NBasis& a, const NBasis& b) {
        return contextual_distance(a, b).classification == ContextClass::IdenticalContext;
    };
    if (!(zero(j, k) && zero(k, l))) return true;
    return zero(j, l);
}

bool poset_orthogonal(const FinitePoset& p, const PosetMeasure& mu, const Label& x, const Label& y) {
    const auto ux = up_set(p, x);
    const auto uy = up_set(p, y);
    for (const auto& e : ux) {
        if (uy.contains(e) && mu(e) > kKernelTolerance) return false;
    }
    return true;
}

} // namespace ctxq

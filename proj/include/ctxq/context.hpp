#pragma once

// Contextuality quantifier. Between two measurement bases the distance is the
// mean Shannon entropy of the rows of their transition matrix: zero when one
// basis is a relabeling of the other, log2 n when they are mutually unbiased.
// On an abstract poset, orthogonality asks that the common up-set of two
// elements carry no partiality at all.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ctxq/poset.hpp"
#include "ctxq/quantum.hpp"

namespace ctxq {

inline constexpr double kContextTolerance = 1e-9;

enum class ContextClass { IdenticalContext, PartialContext, OrthogonalBases };

std::string to_string(ContextClass c);

struct ContextReport {
    double value_bits = 0.0;
    /// log2 n, the entropy of the completely mixed predictive distribution.
    double sup_bits = 0.0;
    ContextClass classification = ContextClass::IdenticalContext;
    /// value_bits / sup_bits, clamped to [0, 1].
    double normalized = 0.0;
};

ContextClass classify(double value_bits, double sup_bits, double tol = kContextTolerance);

/// Throws DimensionMismatch for unequal dimensions, InvalidDimension below 2.
ContextReport contextual_distance(const NBasis& a, const NBasis& b);

/// Same quantity aggregated over columns instead of rows; equals the row form
/// for qubits and is reported separately in higher dimensions.
double column_distance_bits(const NBasis& a, const NBasis& b);

/// (theta, H(cos^2(theta/2), sin^2(theta/2))) per grid point. Grid points must
/// lie in [0, pi/2]; throws ParameterOutOfRange otherwise.
std::vector<std::pair<double, double>> qubit_distance_curve(const std::vector<double>& theta_grid);

/// Whether d(j,k) = 0 and d(k,l) = 0 imply d(j,l) = 0 for this triple
/// (vacuously true when the premise fails).
bool identical_context_closure(const NBasis& j, const NBasis& k, const NBasis& l);

using PosetMeasure = std::function<double(const Label&)>;

/// True iff every element above both x and y has zero partiality; an empty
/// common up-set counts as orthogonal.
bool poset_orthogonal(const FinitePoset& p, const PosetMeasure& mu, const Label& x, const Label& y);

} // namespace ctxq

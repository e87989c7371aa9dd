#pragma once

// Measurement functions: partiality numbers (in bits) assigned to classical
// states, plus randomized checks of the entropy axioms and of monotonicity
// along the Bayesian order.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ctxq/classical.hpp"

namespace ctxq {

/// Values at or below this count as zero partiality.
inline constexpr double kKernelTolerance = 1e-12;
/// Additivity / subadditivity slack.
inline constexpr double kAxiomTolerance = 1e-9;

class MeasurementFn {
public:
    enum class Kind { Shannon, Hartley, LinearCombo };

    static MeasurementFn shannon() { return MeasurementFn(Kind::Shannon, 1.0, 0.0); }
    static MeasurementFn hartley() { return MeasurementFn(Kind::Hartley, 0.0, 1.0); }
    /// a * Shannon + b * Hartley. Weights must be finite, non-negative and not both zero.
    static MeasurementFn linear_combo(double a, double b);

    Kind kind() const { return kind_; }
    double shannon_weight() const { return a_; }
    double hartley_weight() const { return b_; }
    std::string name() const;

private:
    MeasurementFn(Kind kind, double a, double b) : kind_(kind), a_(a), b_(b) {}
    Kind kind_;
    double a_;
    double b_;
};

/// -sum p log2 p with 0 log 0 = 0. Terms are accumulated in ascending order of
/// p so any permutation of the input yields the identical double.
double shannon_entropy(std::span<const double> probs);
/// log2 of the support size.
double hartley_entropy(std::span<const double> probs);

double evaluate(const MeasurementFn& f, const ClassicalState& x);

struct AxiomCheck {
    bool passed = true;
    /// Human-readable counterexample; present iff the check failed.
    std::optional<std::string> witness;
    std::size_t samples = 0;

    void fail(std::string why) {
        if (passed) witness = std::move(why);
        passed = false;
    }
};

struct AxiomReport {
    AxiomCheck expansibility;
    AxiomCheck symmetry;
    AxiomCheck subadditivity;
    AxiomCheck additivity;
    AxiomCheck normalization;
    AxiomCheck monotone_on_bayesian;

    bool all_passed() const {
        return expansibility.passed && symmetry.passed && subadditivity.passed && additivity.passed &&
               normalization.passed && monotone_on_bayesian.passed;
    }
};

/// Runs `sample_count` seeded samples of each axiom. Expansibility and
/// symmetry are compared bit-exactly; additivity and subadditivity within
/// kAxiomTolerance. Throws ParameterOutOfRange when sample_count is zero.
AxiomReport verify_axioms(const MeasurementFn& f, std::size_t sample_count, std::uint64_t seed);

struct MonotoneCheck {
    bool passed = true;
    std::optional<std::pair<ClassicalState, ClassicalState>> witness;
    std::size_t pairs_checked = 0;
};

/// Checks evaluate(f, x) >= evaluate(f, y) - slack for every pair x ⊑ y.
/// Throws InputError if a pair is not ordered.
MonotoneCheck is_monotone_on(const MeasurementFn& f,
                             const std::vector<std::pair<ClassicalState, ClassicalState>>& pairs,
                             double slack = 0.0);

/// Zero partiality exactly on the pure states.
bool kernel_at_maximal(const MeasurementFn& f, const ClassicalState& x);

} // namespace ctxq

#pragma once

// Sequential projective spin-1/2 measurements on the Bloch sphere, and
// transition matrices between n-dimensional orthonormal bases.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ctxq/errors.hpp"
#include "ctxq/rng.hpp"

namespace ctxq {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const { return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x}; }
    double norm() const;
    Vec3 operator-() const { return {-x, -y, -z}; }
    friend bool operator==(const Vec3&, const Vec3&) = default;
};

/// Angle in [0, pi] between two nonzero vectors.
double angle_between(const Vec3& a, const Vec3& b);

/// Measurement axis. Stored as a unit vector; the polar angle lies in
/// [0, pi] and the azimuth in [0, 2 pi).
class BlochAxis {
public:
    /// Components within 1e-15 of zero are snapped to zero so axes at
    /// multiples of pi/2 are exact.
    static BlochAxis from_angles(double theta, double phi);
    /// Normalizes; throws ParameterOutOfRange for a zero or non-finite vector.
    static BlochAxis from_vector(const Vec3& v);

    static BlochAxis z() { return BlochAxis({0.0, 0.0, 1.0}); }
    static BlochAxis x() { return BlochAxis({1.0, 0.0, 0.0}); }
    static BlochAxis y() { return BlochAxis({0.0, 1.0, 0.0}); }

    double theta() const;
    double phi() const;
    const Vec3& direction() const { return dir_; }
    BlochAxis opposite() const { return BlochAxis(-dir_); }

    friend bool operator==(const BlochAxis&, const BlochAxis&) = default;

private:
    explicit BlochAxis(Vec3 dir) : dir_(dir) {}
    Vec3 dir_;
};

double angle_between(const BlochAxis& a, const BlochAxis& b);

/// Pure qubit state as a unit Bloch vector.
class QubitState {
public:
    /// Throws InvalidState unless the norm is 1 within 1e-9.
    static QubitState from_bloch(const Vec3& v);
    static QubitState aligned(const BlochAxis& axis) { return QubitState(axis.direction()); }
    static QubitState anti_aligned(const BlochAxis& axis) { return QubitState(-axis.direction()); }

    const Vec3& bloch() const { return bloch_; }
    friend bool operator==(const QubitState&, const QubitState&) = default;

private:
    explicit QubitState(Vec3 v) : bloch_(v) {}
    Vec3 bloch_;
};

struct OutcomeProbabilities {
    double plus = 0.0;
    double minus = 0.0;
};

/// Bloch projections this close to +-1 are treated as exactly aligned.
inline constexpr double kAlignmentTolerance = 1e-12;

/// plus = cos^2(angle / 2) = (1 + s.a) / 2, minus = 1 - plus. Exactly (1, 0)
/// or (0, 1) for aligned and anti-aligned input.
OutcomeProbabilities transition_probs(const QubitState& state, const BlochAxis& axis);

struct MeasurementResult {
    int outcome = +1;  // +1 aligned, -1 anti-aligned
    QubitState post;
};

/// Samples the outcome and collapses onto +-axis.
MeasurementResult measure(const QubitState& state, const BlochAxis& axis, CounterRng& rng);

struct TraceStep {
    BlochAxis axis;
    int outcome = +1;
    OutcomeProbabilities predictive;
    QubitState post;
};

struct QuantumTrace {
    std::vector<TraceStep> steps;
    std::uint64_t seed = 0;
};

/// Measures `input` along each axis in turn. Throws ParameterOutOfRange for an
/// empty axis list.
QuantumTrace run_sequence(const QubitState& input, std::span<const BlochAxis> axes, std::uint64_t seed);
QuantumTrace run_sequence(const QubitState& input, std::span<const BlochAxis> axes, CounterRng& rng);

using Amplitude = std::complex<double>;
using RealMatrix = std::vector<std::vector<double>>;

/// Orthonormal basis of C^n, one column per outcome.
class NBasis {
public:
    /// Throws InvalidDimension for ragged or empty input and InvalidState unless
    /// the columns are orthonormal within 1e-9.
    static NBasis from_columns(std::vector<std::vector<Amplitude>> columns);
    static NBasis computational(std::size_t n);
    /// Discrete Fourier basis, unbiased with respect to the computational one.
    static NBasis fourier(std::size_t n);
    /// The |+> and |-> eigenvectors for a spin axis.
    static NBasis from_qubit_axis(const BlochAxis& axis);
    /// Haar-like random basis (Gram–Schmidt on complex Gaussian columns).
    static NBasis random(std::size_t n, CounterRng& rng);

    /// Column k of the result is column perm[k] of this basis.
    NBasis permuted(std::span<const std::size_t> perm) const;

    std::size_t dim() const { return columns_.size(); }
    const std::vector<std::vector<Amplitude>>& columns() const { return columns_; }

private:
    explicit NBasis(std::vector<std::vector<Amplitude>> columns) : columns_(std::move(columns)) {}
    std::vector<std::vector<Amplitude>> columns_;
};

/// T[i][j] = |<a_i|b_j>|^2; doubly stochastic.
RealMatrix transition_matrix(const NBasis& a, const NBasis& b);

/// "z", "x", "y" (optionally prefixed by '-') or "theta:phi" in radians.
/// Throws InputError on malformed text.
BlochAxis parse_axis(const std::string& text);
std::string axis_label(const BlochAxis& axis);

} // namespace ctxq

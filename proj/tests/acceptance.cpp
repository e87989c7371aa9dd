// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "ctxq/classical.hpp"
#include "ctxq/cli.hpp"
#include "ctxq/context.hpp"
#include "ctxq/measures.hpp"
#include "ctxq/poset.hpp"
#include "ctxq/quantum.hpp"
#include "ctxq/sims.hpp"

using namespace ctxq;

namespace {

constexpr std::uint64_t kSeed = 42;
constexpr double kPi = std::numbers::pi;

// Pinned tolerances.
constexpr double kAxiomTol = 1e-9;
constexpr double kAnchorTol = 1e-9;
constexpr double kTraceTol = 1e-12;
constexpr double kThreeSigma = 0.00474;
constexpr double kAxiomBudgetSeconds = 10.0;
constexpr double kPosetBudgetSeconds = 60.0;
constexpr double kQuantumBudgetSeconds = 30.0;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail = what;
        pass = pass && ok;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

Outcome entropy_axioms() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = verify_axioms(MeasurementFn::shannon(), 10000, kSeed);
    const double dt = seconds_since(t0);
    const auto check = [&](const AxiomCheck& c, const char* name) {
        o.require(c.passed, std::string(name) + ": " + c.witness.value_or(""));
        o.require(c.samples >= (std::string(name) == "normalization" ? 1u : 10000u), std::string(name) + " undersampled");
    };
    check(r.expansibility, "expansibility");
    check(r.symmetry, "symmetry");
    check(r.additivity, "additivity");
    check(r.subadditivity, "subadditivity");
    check(r.normalization, "normalization");
    o.require(evaluate(MeasurementFn::shannon(), ClassicalState::from_probabilities({0.5, 0.5})) == 1.0,
              "H(1/2,1/2) != 1");
    o.require(dt < kAxiomBudgetSeconds, "runtime " + fmt("%.2f s", dt));
    if (o.pass) o.detail = "10000 samples, tol " + fmt("%g", kAxiomTol) + ", " + fmt("%.2f s", dt);
    return o;
}

Outcome order_monotonicity() {
    Outcome o;
    const CounterRng root(kSeed);
    std::vector<std::pair<ClassicalState, ClassicalState>> pairs;
    std::vector<std::size_t> per_dim(7, 0);
    for (std::uint64_t k = 0; k < 10000; ++k) {
        auto rng = root.split(k);
        const auto n = 2 + static_cast<std::size_t>(k % 5);
        ++per_dim[n];
        pairs.push_back(random_ordered_pair(n, rng));
    }
    const auto check = is_monotone_on(MeasurementFn::shannon(), pairs);
    o.require(check.pairs_checked == 10000, "pair count");
    o.require(check.passed, check.witness ? to_string(check.witness->first) + " vs " + to_string(check.witness->second)
                                          : "violation");
    for (std::size_t n = 2; n <= 6; ++n) o.require(per_dim[n] > 0, "dimension not covered");
    if (o.pass) o.detail = "10000 pairs in dims 2-6, 0 violations";
    return o;
}

ctxq::FinitePoset random_poset(std::size_t n, CounterRng& rng) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
    const auto order = rng.permutation(n);
    const double density = 0.05 + 0.6 * rng.uniform();
    std::vector<std::pair<std::string, std::string>> covers;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (rng.uniform() < density) covers.emplace_back(labels[order[a]], labels[order[b]]);
    return FinitePoset::from_cover_relations(labels, covers);
}

Outcome way_below_oracle() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const CounterRng root(kSeed + 3);
    constexpr std::size_t kPosets = 250;
    std::size_t largest = 0;
    std::size_t directed = 0;
    for (std::uint64_t k = 0; k < kPosets && o.pass; ++k) {
        auto rng = root.split(k);
        const auto n = 1 + static_cast<std::size_t>(rng.below(10));
        const auto p = random_poset(n, rng);
        const auto rel = ApproximationRelation::compute(p);
        for (std::size_t i = 0; i < n; ++i) {
            o.require(rel.way_below(i, i), "element not compact");
            for (std::size_t j = 0; j < n; ++j) o.require(rel.way_below(i, j) == p.leq(i, j), "way-below differs from order");
        }
        const auto dcpo = is_dcpo(p);
        o.require(dcpo.is_dcpo, "not a dcpo");
        directed += dcpo.directed_subsets_checked;
        largest = std::max(largest, n);
        const auto prop = check_way_below_extension(p);
        o.require(prop.holds && !prop.counterexample, "way-below extension counterexample");
    }
    const double dt = seconds_since(t0);
    o.require(dt < kPosetBudgetSeconds, "runtime " + fmt("%.2f s", dt));
    o.require(largest == 10, "no 10-element poset sampled");
    if (o.pass) {
        o.detail = std::to_string(kPosets) + " posets up to " + std::to_string(largest) + " elements, " +
                   std::to_string(directed) + " directed subsets, " + fmt("%.3f s", dt);
    }
    return o;
}

Outcome probability_values() {
    Outcome o;
    const auto b_minus = QubitState::anti_aligned(BlochAxis::z());
    const auto p = transition_probs(b_minus, BlochAxis::x());
    o.require(p.plus == 0.5 && p.minus == 0.5, "transition probabilities not exactly 1/2");
    constexpr std::size_t kTrials = 100000;
    const CounterRng root(kSeed);
    std::size_t plus = 0;
    for (std::size_t t = 0; t < kTrials; ++t) {
        auto rng = root.split(t);
        plus += measure(b_minus, BlochAxis::x(), rng).outcome > 0;
    }
    const double freq = static_cast<double>(plus) / kTrials;
    o.require(std::abs(freq - 0.5) <= kThreeSigma, "empirical frequency " + fmt("%.5f", freq));
    if (o.pass) o.detail = "exact (0.5, 0.5); empirical " + fmt("%.5f", freq) + " over 100000 trials";
    return o;
}

Outcome fixed_basis() {
    Outcome o;
    CounterRng rng(kSeed + 5);
    for (int k = 0; k < 5; ++k) {
        const auto axis = BlochAxis::from_angles(std::acos(1.0 - 2.0 * rng.uniform()), 2.0 * kPi * rng.uniform());
        const double r = fixed_basis_repeat(axis, 100000, kSeed + static_cast<std::uint64_t>(k));
        o.require(r == 1.0, "axis " + axis_label(axis) + " repeat " + fmt("%.17g", r));
    }
    if (o.pass) o.detail = "repeat probability exactly 1.0 on 5 random axes x 100000 trials";
    return o;
}

Outcome context_anchors() {
    Outcome o;
    const auto q = [](double theta) { return NBasis::from_qubit_axis(BlochAxis::from_angles(theta, 0.0)); };
    const auto zz = contextual_distance(q(0), q(0));
    o.require(zz.value_bits == 0.0 && zz.classification == ContextClass::IdenticalContext, "z,z");
    const auto zx = contextual_distance(q(0), q(kPi / 2));
    o.require(std::abs(zx.value_bits - 1.0) <= kAnchorTol && zx.sup_bits == 1.0 &&
                  zx.classification == ContextClass::OrthogonalBases,
              "z,x");
    const double h34 = 2.0 - 0.75 * std::log2(3.0);
    const auto third = contextual_distance(q(0), q(kPi / 3));
    o.require(std::abs(third.value_bits - h34) <= kAnchorTol && third.classification == ContextClass::PartialContext,
              "pi/3 value " + fmt("%.12f", third.value_bits));
    std::vector<double> grid;
    for (int k = 0; k <= 18; ++k) grid.push_back(std::min(k * kPi / 36, kPi / 2));
    const auto curve = qubit_distance_curve(grid);
    for (std::size_t k = 1; k < curve.size(); ++k) o.require(curve[k].second > curve[k - 1].second, "sweep not increasing");
    if (o.pass) o.detail = "0, 1 bit, " + fmt("%.9f", third.value_bits) + " bits; 19-point sweep increasing";
    return o;
}

Outcome classical_experiment() {
    Outcome o;
    const double expected[3] = {std::log2(3.0), 1.0, 0.0};
    std::vector<std::size_t> order{0, 1, 2};
    std::size_t runs = 0;
    do {
        for (std::size_t ball = 0; ball < 3; ++ball) {
            const auto t = boxes_experiment(3, ball, order);
            ++runs;
            o.require(determinism_check(t).physically_deterministic, "not deterministic");
            o.require(t.steps.back().entropy_bits == 0.0, "final entropy not 0");
            // The full three-value trace appears when the ball is in the last box opened.
            if (ball != order.back()) continue;
            o.require(t.steps.size() == 3, "trace length");
            for (std::size_t k = 0; k < 3 && k < t.steps.size(); ++k)
                o.require(std::abs(t.steps[k].entropy_bits - expected[k]) <= kTraceTol, "entropy trace");
        }
    } while (std::next_permutation(order.begin(), order.end()));
    const std::vector<std::size_t> abc{0, 1, 2};
    const std::vector<std::size_t> bac{1, 0, 2};
    const auto a = boxes_experiment(3, 2, abc);
    const auto b = boxes_experiment(3, 2, bac);
    for (std::size_t k = 0; k < a.steps.size(); ++k) {
        o.require(a.steps[k].entropy_bits == b.steps[k].entropy_bits, "swapped openings differ");
    }
    if (o.pass) o.detail = std::to_string(runs) + " runs deterministic; trace (log2 3, 1, 0); A/B swap identical";
    return o;
}

Outcome quantum_experiment() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<BlochAxis> axes{BlochAxis::z(), BlochAxis::x(), BlochAxis::z(), BlochAxis::x()};
    const auto agg = qubit_experiment(QubitState::aligned(BlochAxis::z()), axes, 10000, kSeed);
    const double dt = seconds_since(t0);
    o.require(agg.per_step_entropy_bits == std::vector<double>{0.0, 1.0, 1.0, 1.0}, "per-step entropies");
    o.require(agg.distinct_maximal_states >= 2, "fewer than two maximal states");
    for (std::size_t k = 0; k < agg.per_step_entropy_bits.size(); ++k) {
        o.require(agg.per_step_entropy_bits[k] >= 0.0, "negative entropy");
        if (k > 0) o.require(agg.per_step_entropy_bits[k] > 0.0, "entropy reached 0 after a basis change");
    }
    o.require(!determinism_check(agg).physically_deterministic, "reported deterministic");
    o.require(dt < kQuantumBudgetSeconds, "runtime " + fmt("%.2f s", dt));
    if (o.pass) {
        o.detail = "entropies (0, 1, 1, 1); " + std::to_string(agg.distinct_maximal_states) +
                   " distinct maximal states; " + fmt("%.2f s", dt);
    }
    return o;
}

Outcome reproducibility() {
    Outcome o;
    const auto dir = std::filesystem::temp_directory_path() / "ctxq_acceptance";
    std::filesystem::create_directories(dir);
    const auto poset = dir / "diamond.json";
    std::ofstream(poset) << R"({"elements":["b","x","y","t"],"covers":[["b","x"],["b","y"],["x","t"],["y","t"]]})";

    const std::vector<std::vector<std::string>> commands{
        {"axioms", "--trials", "2000"},
        {"poset", poset.string()},
        {"context", "--a", "z", "--b", "0.7:1.9"},
        {"sweep"},
        {"sweep", "--format", "json"},
        {"boxes", "--n", "4", "--ball", "1", "--order", "3,0,2,1"},
        {"qubit", "--axes", "z,x,z,x", "--trials", "5000"},
    };
    for (const auto& args : commands) {
        std::ostringstream out1, out2, err;
        const int c1 = cli::run(args, out1, err);
        const int c2 = cli::run(args, out2, err);
        o.require(c1 == 0 && c2 == 0, args.front() + " exit code");
        const bool json_doc = !out1.str().empty() && out1.str().front() == '{';
        const auto f1 = json_doc ? cli::payload_fingerprint(out1.str()) : out1.str();
        const auto f2 = json_doc ? cli::payload_fingerprint(out2.str()) : out2.str();
        o.require(f1 == f2, args.front() + " payload differs");
    }
    if (o.pass) o.detail = std::to_string(commands.size()) + " commands byte-identical across reruns";
    return o;
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"entropy axioms", entropy_axioms},
        {"order monotonicity", order_monotonicity},
        {"way-below oracle equivalence", way_below_oracle},
        {"transition probability values", probability_values},
        {"fixed-basis determinism", fixed_basis},
        {"contextual distance anchors", context_anchors},
        {"classical box experiment", classical_experiment},
        {"quantum sequence experiment", quantum_experiment},
        {"reproducibility", reproducibility},
    };
    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failures += !o.pass;
        std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(), o.detail.c_str());
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}

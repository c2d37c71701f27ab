#include <doctest.h>

#include <cmath>
#include <vector>

#include "test_util.hpp"
#include "wavefuse/optimizer.hpp"

using namespace wavefuse;

namespace {

FeatureVector feature_fixture(std::uint64_t seed, double lo = 0.0, double hi = 1.0) {
    FeatureVector fv;
    testutil::Lcg rng(seed);
    for (double& v : fv.values) v = lo + rng.next() * (hi - lo);
    return fv;
}

double grid_min_gen1(const FeatureVector& a, const FeatureVector& b, const GaConfig& cfg) {
    double best = 1e300;
    for (int t = 0; t < cfg.trials_per_generation; ++t) {
        const double wv = std::clamp(t * cfg.initial_diff, 0.0, 1.0);
        best = std::min(best, fitness_mse(a.view(), b.view(), {wv, 1.0 - wv}));
    }
    return best;
}

} // namespace

TEST_CASE("fitness on a worked two-element example") {
    const std::vector<double> f1 = {2.0, -1.0};
    const std::vector<double> f2 = {1.0, 3.0};
    // composite picks 1.0 (first slot) and 1.5 (second), cost averages
    // (1+6.25)/2 and (0+2.25)/2
    CHECK(fitness_mse(f1, f2, {0.5, 0.5}) == doctest::Approx(2.375).epsilon(1e-14));
}

TEST_CASE("degenerate weights reproduce one input") {
    const std::vector<double> f1 = {3.0, 0.0, -2.0, 5.5};
    const std::vector<double> f2 = {1.0, 4.0, -1.0, 2.5};
    double d2 = 0.0;
    for (std::size_t i = 0; i < f1.size(); ++i) d2 += (f1[i] - f2[i]) * (f1[i] - f2[i]);
    d2 /= static_cast<double>(f1.size());
    // with all weight on one side the composite equals that side, so only
    // the cross term remains
    CHECK(fitness_mse(f1, f2, {1.0, 0.0}) == doctest::Approx(0.5 * d2).epsilon(1e-14));
    CHECK(fitness_mse(f1, f2, {0.0, 1.0}) == doctest::Approx(0.5 * d2).epsilon(1e-14));
}

TEST_CASE("magnitude ties go to the first input") {
    // wv*3 == |wt*(-1)| makes a tie with distinct outcomes per side
    const std::vector<double> f1 = {3.0};
    const std::vector<double> f2 = {-1.0};
    CHECK(fitness_mse(f1, f2, {0.25, 0.75}) == doctest::Approx(4.0625).epsilon(1e-14));
}

TEST_CASE("fitness rejects mismatched spans") {
    const std::vector<double> a = {1.0, 2.0};
    const std::vector<double> b = {1.0};
    const std::vector<double> empty;
    CHECK_THROWS_AS(fitness_mse(a, b, {0.5, 0.5}), LengthMismatch);
    CHECK_THROWS_AS(fitness_mse(empty, empty, {0.5, 0.5}), LengthMismatch);
}

TEST_CASE("optimizer config is validated") {
    const FeatureVector f = feature_fixture(1);
    GaConfig cfg;
    cfg.trials_per_generation = 1;
    CHECK_THROWS_AS(optimize_weights(f, f, cfg), InvalidConfig);
    cfg = {};
    cfg.initial_diff = 0.0;
    CHECK_THROWS_AS(optimize_weights(f, f, cfg), InvalidConfig);
    cfg = {};
    cfg.max_generations = 0;
    CHECK_THROWS_AS(optimize_weights(f, f, cfg), InvalidConfig);
    cfg = {};
    cfg.termination_epsilon = -1.0;
    CHECK_THROWS_AS(optimize_weights(f, f, cfg), InvalidConfig);
}

TEST_CASE("identical features are solved exactly") {
    const FeatureVector f = feature_fixture(9, 0.5, 4.0);
    const OptimizeResult r = optimize_weights(f, f);
    // wv = 0 hands everything to the second input, which equals the first
    // here, so the cost is exactly zero; the refinement pass then clamps
    // several trials onto zero and the epsilon rule fires.
    CHECK(r.mse == 0.0);
    CHECK(r.weights.wv == 0.0);
    CHECK(r.weights.wt == 1.0);
    CHECK(r.trace.generations_run == 2);
    CHECK(r.trace.termination_reason == TerminationReason::epsilon);
}

TEST_CASE("epsilon wins when both stop rules hold at once") {
    // all-zero features make every trial cost zero, so the epsilon rule and
    // the generation budget trigger in the same generation
    FeatureVector z;
    GaConfig cfg;
    cfg.max_generations = 1;
    const OptimizeResult r = optimize_weights(z, z, cfg);
    CHECK(r.trace.termination_reason == TerminationReason::epsilon);
    CHECK(r.trace.generations_run == 1);
}

TEST_CASE("generation budget is honored and reported") {
    const FeatureVector a = feature_fixture(21, 0.0, 3.0);
    const FeatureVector b = feature_fixture(22, 0.0, 3.0);
    GaConfig cfg;
    cfg.max_generations = 3;
    cfg.termination_epsilon = 1e-300; // effectively never
    const OptimizeResult r = optimize_weights(a, b, cfg);
    CHECK(r.trace.generations_run == 3);
    CHECK(static_cast<int>(r.trace.generations.size()) == 3);
    CHECK(r.trace.termination_reason == TerminationReason::max_generations);
}

TEST_CASE("trace records the exact scan schedule") {
    const FeatureVector a = feature_fixture(31, 0.0, 2.0);
    const FeatureVector b = feature_fixture(32, 0.0, 2.0);
    GaConfig cfg;
    cfg.max_generations = 6;
    cfg.termination_epsilon = 1e-300;
    const OptimizeResult r = optimize_weights(a, b, cfg);

    double expected_diff = cfg.initial_diff;
    for (std::size_t g = 0; g < r.trace.generations.size(); ++g) {
        const GaGeneration& gen = r.trace.generations[g];
        CHECK(gen.diff == expected_diff);
        REQUIRE(static_cast<int>(gen.trials.size()) == cfg.trials_per_generation);

        std::size_t arg = 0;
        for (std::size_t i = 0; i < gen.trials.size(); ++i) {
            const GaTrial& t = gen.trials[i];
            CHECK(t.wv == std::clamp(gen.base_wv + double(i) * gen.diff, 0.0, 1.0));
            CHECK(t.mse == fitness_mse(a.view(), b.view(), {t.wv, 1.0 - t.wv}));
            if (t.mse < gen.trials[arg].mse) arg = i;
        }
        CHECK(gen.chosen_wv == gen.trials[arg].wv);
        if (g + 1 < r.trace.generations.size()) {
            // next generation re-centers half of the *current* step below
            // the winner, then shrinks
            CHECK(r.trace.generations[g + 1].base_wv ==
                  doctest::Approx(gen.chosen_wv - gen.diff / 2.0).epsilon(1e-15));
        }
        expected_diff /= 10.0;
    }
}

TEST_CASE("result is the best trial ever evaluated and weights stay valid") {
    for (std::uint64_t seed = 50; seed < 58; ++seed) {
        const FeatureVector a = feature_fixture(seed, 0.0, 5.0);
        const FeatureVector b = feature_fixture(seed + 100, 0.0, 5.0);
        const OptimizeResult r = optimize_weights(a, b);

        double best = 1e300;
        for (const auto& gen : r.trace.generations)
            for (const auto& t : gen.trials) {
                CHECK(t.wv >= 0.0);
                CHECK(t.wv <= 1.0);
                best = std::min(best, t.mse);
            }
        CHECK(r.mse == best);
        CHECK(r.weights.wv + r.weights.wt == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.mse == fitness_mse(a.view(), b.view(), r.weights));
        // refinement never loses to the first coarse sweep
        CHECK(r.mse <= grid_min_gen1(a, b, GaConfig{}) + 1e-15);
    }
}

TEST_CASE("optimization is bit-for-bit deterministic") {
    const FeatureVector a = feature_fixture(77, 0.0, 4.0);
    const FeatureVector b = feature_fixture(78, 0.0, 4.0);
    const OptimizeResult r1 = optimize_weights(a, b);
    const OptimizeResult r2 = optimize_weights(a, b);

    CHECK(r1.weights.wv == r2.weights.wv);
    CHECK(r1.mse == r2.mse);
    REQUIRE(r1.trace.generations.size() == r2.trace.generations.size());
    for (std::size_t g = 0; g < r1.trace.generations.size(); ++g) {
        const auto& g1 = r1.trace.generations[g];
        const auto& g2 = r2.trace.generations[g];
        CHECK(g1.diff == g2.diff);
        CHECK(g1.base_wv == g2.base_wv);
        CHECK(g1.chosen_wv == g2.chosen_wv);
        REQUIRE(g1.trials.size() == g2.trials.size());
        for (std::size_t i = 0; i < g1.trials.size(); ++i) {
            CHECK(g1.trials[i].wv == g2.trials[i].wv);
            CHECK(g1.trials[i].mse == g2.trials[i].mse);
        }
    }
}

TEST_CASE("ties across generations keep the earliest winner") {
    // constant equal features: every wv >= where selection keeps m1... use
    // all-zero features: every composite is zero, every mse is zero, so the
    // very first trial (wv = 0) must be returned.
    FeatureVector z;
    const OptimizeResult r = optimize_weights(z, z);
    CHECK(r.weights.wv == 0.0);
    CHECK(r.mse == 0.0);
    CHECK(r.trace.generations_run == 1);
}

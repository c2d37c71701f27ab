#pragma once

#include <span>
#include <vector>

#include "wavefuse/features.hpp"

namespace wavefuse {

// Fusion weights; wt is always 1 - wv, both in [0,1].
struct WeightPair {
    double wv = 0.5;
    double wt = 0.5;
};

struct GaConfig {
    double initial_diff = 0.1;
    int trials_per_generation = 10;
    int max_generations = 100;
    double termination_epsilon = 1e-4;
};

enum class TerminationReason { epsilon, max_generations };

struct GaTrial {
    double wv = 0.0;
    double mse = 0.0;
};

struct GaGeneration {
    double diff = 0.0;
    double base_wv = 0.0;
    std::vector<GaTrial> trials;
    double chosen_wv = 0.0; // wv of this generation's smallest MSE
};

struct GaTrace {
    std::vector<GaGeneration> generations;
    int generations_run = 0;
    TerminationReason termination_reason = TerminationReason::epsilon;
};

struct OptimizeResult {
    WeightPair weights;
    double mse = 0.0;
    GaTrace trace;
};

// Selection-mask objective: per element, the candidate with the larger
// weighted magnitude wins, and the cost is the mean of the two MSEs between
// the composite and each input. Throws LengthMismatch unless both spans are
// non-empty and equally long.
double fitness_mse(std::span<const double> f1, std::span<const double> f2, WeightPair w);

// Deterministic coarse-to-fine scan. Each generation evaluates
// trials_per_generation weights wv = clamp(base + t*diff, 0, 1); it stops
// when the two smallest MSEs of a generation differ by less than
// termination_epsilon or the generation budget runs out, otherwise the next
// generation re-centers half a step below the winner and shrinks diff
// tenfold. The returned weights are the best over every trial evaluated.
// Throws InvalidConfig for nonsensical settings.
OptimizeResult optimize_weights(const FeatureVector& f1, const FeatureVector& f2,
                                const GaConfig& cfg = {});

const char* termination_reason_name(TerminationReason r);

} // namespace wavefuse

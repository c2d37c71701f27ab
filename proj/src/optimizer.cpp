#include "wavefuse/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wavefuse {

double fitness_mse(std::span<const double> f1, std::span<const double> f2, WeightPair w) {
    if (f1.empty() || f1.size() != f2.size())
        throw LengthMismatch("fitness_mse: feature spans must be non-empty and equally long");
    double e1 = 0.0, e2 = 0.0;
    for (std::size_t i = 0; i < f1.size(); ++i) {
        const double m1 = w.wv * f1[i];
        const double m2 = w.wt * f2[i];
        // per-element selection: the larger weighted magnitude wins, first
        // input on ties
        const double v = std::abs(m1) >= std::abs(m2) ? m1 : m2;
        e1 += (v - f1[i]) * (v - f1[i]);
        e2 += (v - f2[i]) * (v - f2[i]);
    }
    const double n = static_cast<double>(f1.size());
    return 0.5 * (e1 / n + e2 / n);
}

OptimizeResult optimize_weights(const FeatureVector& f1, const FeatureVector& f2,
                                const GaConfig& cfg) {
    if (cfg.trials_per_generation < 2)
        throw InvalidConfig("optimize_weights: need at least 2 trials per generation");
    if (!(cfg.initial_diff > 0.0))
        throw InvalidConfig("optimize_weights: initial_diff must be positive");
    if (cfg.max_generations < 1)
        throw InvalidConfig("optimize_weights: max_generations must be at least 1");
    if (!(cfg.termination_epsilon > 0.0))
        throw InvalidConfig("optimize_weights: termination_epsilon must be positive");

    OptimizeResult result;
    GaTrace& trace = result.trace;
    double base = 0.0;
    double diff = cfg.initial_diff;
    double best_mse = std::numeric_limits<double>::infinity();
    double best_wv = 0.0;

    for (int g = 1; g <= cfg.max_generations; ++g) {
        GaGeneration gen;
        gen.diff = diff;
        gen.base_wv = base;
        gen.trials.reserve(cfg.trials_per_generation);
        for (int t = 0; t < cfg.trials_per_generation; ++t) {
            const double wv = std::clamp(base + t * diff, 0.0, 1.0);
            const double mse = fitness_mse(f1.view(), f2.view(), {wv, 1.0 - wv});
            gen.trials.push_back({wv, mse});
            // strict < keeps the earliest trial on equal cost
            if (mse < best_mse) {
                best_mse = mse;
                best_wv = wv;
            }
        }

        std::size_t arg = 0;
        for (std::size_t i = 1; i < gen.trials.size(); ++i)
            if (gen.trials[i].mse < gen.trials[arg].mse) arg = i;
        gen.chosen_wv = gen.trials[arg].wv;

        std::vector<double> mses;
        mses.reserve(gen.trials.size());
        for (const auto& t : gen.trials) mses.push_back(t.mse);
        std::sort(mses.begin(), mses.end());
        const bool converged = mses[1] - mses[0] < cfg.termination_epsilon;

        trace.generations.push_back(std::move(gen));
        if (converged) {
            trace.termination_reason = TerminationReason::epsilon;
            break;
        }
        if (g == cfg.max_generations) {
            trace.termination_reason = TerminationReason::max_generations;
            break;
        }
        // re-center half a coarse step below the winner, then refine tenfold
        base = trace.generations.back().chosen_wv - diff / 2.0;
        diff /= 10.0;
    }

    trace.generations_run = static_cast<int>(trace.generations.size());
    result.weights = {best_wv, 1.0 - best_wv};
    result.mse = best_mse;
    return result;
}

const char* termination_reason_name(TerminationReason r) {
    return r == TerminationReason::epsilon ? "epsilon" : "max_generations";
}

} // namespace wavefuse

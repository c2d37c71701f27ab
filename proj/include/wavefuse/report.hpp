#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wavefuse/fusion.hpp"
#include "wavefuse/metrics.hpp"

namespace wavefuse {

struct DatasetSpec {
    std::string name;
    std::string source1;
    std::string source2;
};

struct BenchmarkConfig {
    GaConfig ga;
    std::vector<std::string> methods; // canonical order, validated names
    std::vector<DatasetSpec> datasets;
};

// INI-style config:
//   [ga]                  initial_diff / trials_per_generation /
//                         max_generations / termination_epsilon
//   [methods]             use = dwt,udwt,dwt-ga,udwt-ga
//   [dataset NAME]        source1 = ... / source2 = ...   (paths relative to
//                         the config file)
// '#' and ';' start comments. Unknown sections or keys, malformed values and
// duplicate dataset names raise InvalidConfig with the line number.
BenchmarkConfig parse_benchmark_config(const std::string& path);

struct MethodOutcome {
    bool ok = false;
    std::string error; // set when !ok
    MetricReport metrics;
    std::optional<WeightPair> weights;
    std::vector<WeightPair> per_channel_weights;
};

struct DatasetOutcome {
    std::string name;
    std::string source1;
    std::string source2;
    bool loaded = false;
    std::string error;                   // set when !loaded
    std::vector<MethodOutcome> results;  // parallel to BenchmarkConfig::methods
};

struct BenchmarkReport {
    GaConfig ga;
    std::vector<std::string> methods;
    std::vector<DatasetOutcome> datasets;
    bool any_failed = false;
};

// Runs every configured method over every dataset pair. Per-dataset progress
// goes to log (one line each); failures are recorded in the report rather
// than thrown. Output carries no timestamps, so reruns are byte-identical.
BenchmarkReport run_benchmark(const BenchmarkConfig& cfg, std::ostream& log);

// Grid layout, one row per metric x method, one column per dataset; GA
// methods contribute extra wv/wt rows at the bottom.
std::string benchmark_to_csv(const BenchmarkReport& r);
std::string benchmark_to_json(const BenchmarkReport& r);

// Weight estimate plus full optimizer trace for the fuse command.
std::string weights_to_json(const FusionResult& r, const GaConfig& cfg);

} // namespace wavefuse

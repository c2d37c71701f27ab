#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wavefuse/fusion.hpp"
#include "wavefuse/imgio.hpp"
#include "wavefuse/metrics.hpp"
#include "wavefuse/report.hpp"

namespace {

using namespace wavefuse;

// Relative report paths land in WAVEFUSE_REPORT_DIR when it is set; image
// outputs are never redirected.
std::string report_path(const std::string& out) {
    const char* dir = std::getenv("WAVEFUSE_REPORT_DIR");
    if (!dir || !*dir) return out;
    std::filesystem::path p(out);
    if (p.is_absolute()) return out;
    return (std::filesystem::path(dir) / p).string();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path + ": cannot open for writing");
    out << text;
    if (!out) throw IoError(path + ": write failed");
}

void emit_report(const std::string& out, const std::string& text) {
    if (out.empty())
        std::cout << text;
    else
        write_text(report_path(out), text);
}

struct FuseArgs {
    std::string method = "dwt";
    std::string in1, in2, out;
    std::string weights_out;
    GaConfig ga;
};

int cmd_fuse(const FuseArgs& a) {
    const auto method = parse_method(a.method);
    if (!method) {
        std::cerr << "error: unknown method '" << a.method << "'\n";
        return 2;
    }
    if (!a.weights_out.empty() && method->rule != FusionRule::ga_weighted) {
        std::cerr << "error: --weights-out requires a ga method (dwt-ga or udwt-ga)\n";
        return 2;
    }
    auto pair = register_pair(load_image(a.in1), load_image(a.in2));
    FusionResult result = fuse(pair.first, pair.second, *method, a.ga);
    save_image(result.fused, a.out);
    if (!a.weights_out.empty())
        write_text(report_path(a.weights_out), weights_to_json(result, a.ga));
    return 0;
}

struct MetricsArgs {
    std::string src1, src2, fused;
    std::string format = "json";
    std::string out;
};

int cmd_metrics(const MetricsArgs& a) {
    auto pair = register_pair(load_image(a.src1), load_image(a.src2));
    const ImageBuffer fused = load_image(a.fused);
    if (!fused.same_shape(pair.first))
        throw ShapeMismatch(a.fused + ": fused image does not match the registered sources");
    const MetricReport rep = full_report(pair.first, pair.second, fused);
    std::string text = a.format == "csv" ? report_to_csv(rep) : report_to_json(rep) + "\n";
    emit_report(a.out, text);
    return 0;
}

struct BenchmarkArgs {
    std::string config;
    std::string format = "csv";
    std::string out;
    GaConfig ga;
    bool ga_diff_set = false, ga_trials_set = false, ga_maxgen_set = false, ga_eps_set = false;
};

int cmd_benchmark(const BenchmarkArgs& a) {
    BenchmarkConfig cfg = parse_benchmark_config(a.config);
    if (cfg.datasets.empty()) {
        std::cerr << "error: " << a.config << ": no datasets configured\n";
        return 2;
    }
    if (a.ga_diff_set) cfg.ga.initial_diff = a.ga.initial_diff;
    if (a.ga_trials_set) cfg.ga.trials_per_generation = a.ga.trials_per_generation;
    if (a.ga_maxgen_set) cfg.ga.max_generations = a.ga.max_generations;
    if (a.ga_eps_set) cfg.ga.termination_epsilon = a.ga.termination_epsilon;

    const BenchmarkReport rep = run_benchmark(cfg, std::cerr);
    emit_report(a.out, a.format == "json" ? benchmark_to_json(rep) : benchmark_to_csv(rep));
    return rep.any_failed ? 1 : 0;
}

void add_ga_options(CLI::App* cmd, GaConfig& ga) {
    cmd->add_option("--ga-initial-diff", ga.initial_diff, "Initial weight step");
    cmd->add_option("--ga-trials", ga.trials_per_generation, "Trials per generation");
    cmd->add_option("--ga-max-generations", ga.max_generations, "Generation budget");
    cmd->add_option("--ga-epsilon", ga.termination_epsilon, "Termination threshold");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"wavefuse: wavelet-domain image fusion and quality metrics"};
    app.require_subcommand(1);

    FuseArgs fa;
    CLI::App* fuse_cmd = app.add_subcommand("fuse", "Fuse two registered images");
    fuse_cmd->add_option("--method", fa.method, "dwt | udwt | dwt-ga | udwt-ga")->required();
    fuse_cmd->add_option("--in1", fa.in1, "First source image")->required();
    fuse_cmd->add_option("--in2", fa.in2, "Second source image")->required();
    fuse_cmd->add_option("--out", fa.out, "Fused output image (.png or .pgm)")->required();
    fuse_cmd->add_option("--weights-out", fa.weights_out,
                         "Write estimated weights and optimizer trace (ga methods)");
    add_ga_options(fuse_cmd, fa.ga);

    MetricsArgs ma;
    CLI::App* metrics_cmd = app.add_subcommand("metrics", "Score a fused image");
    metrics_cmd->add_option("--src1", ma.src1, "First source image")->required();
    metrics_cmd->add_option("--src2", ma.src2, "Second source image")->required();
    metrics_cmd->add_option("--fused", ma.fused, "Fused image to score")->required();
    metrics_cmd->add_option("--format", ma.format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    metrics_cmd->add_option("--out", ma.out, "Report file (stdout when omitted)");

    BenchmarkArgs ba;
    CLI::App* bench_cmd = app.add_subcommand("benchmark", "Run configured method/dataset grid");
    bench_cmd->add_option("--config", ba.config, "Benchmark config file")->required();
    bench_cmd->add_option("--format", ba.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    bench_cmd->add_option("--out", ba.out, "Report file (stdout when omitted)");
    auto* o1 = bench_cmd->add_option("--ga-initial-diff", ba.ga.initial_diff, "Override config");
    auto* o2 = bench_cmd->add_option("--ga-trials", ba.ga.trials_per_generation, "Override config");
    auto* o3 =
        bench_cmd->add_option("--ga-max-generations", ba.ga.max_generations, "Override config");
    auto* o4 =
        bench_cmd->add_option("--ga-epsilon", ba.ga.termination_epsilon, "Override config");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    ba.ga_diff_set = o1->count() > 0;
    ba.ga_trials_set = o2->count() > 0;
    ba.ga_maxgen_set = o3->count() > 0;
    ba.ga_eps_set = o4->count() > 0;

    try {
        if (app.got_subcommand(fuse_cmd)) return cmd_fuse(fa);
        if (app.got_subcommand(metrics_cmd)) return cmd_metrics(ma);
        if (app.got_subcommand(bench_cmd)) return cmd_benchmark(ba);
    } catch (const InvalidConfig& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

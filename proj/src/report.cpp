#include "wavefuse/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>

#include <json.hpp>

namespace wavefuse {
namespace {

using nlohmann::ordered_json;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void config_error(int line, const std::string& what) {
    throw InvalidConfig("config line " + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& v, int line) {
    std::size_t pos = 0;
    double d = 0.0;
    try {
        d = std::stod(v, &pos);
    } catch (const std::exception&) {
        config_error(line, "expected a number, got '" + v + "'");
    }
    if (pos != v.size()) config_error(line, "trailing characters after number '" + v + "'");
    return d;
}

int parse_int(const std::string& v, int line) {
    std::size_t pos = 0;
    long n = 0;
    try {
        n = std::stol(v, &pos);
    } catch (const std::exception&) {
        config_error(line, "expected an integer, got '" + v + "'");
    }
    if (pos != v.size()) config_error(line, "trailing characters after integer '" + v + "'");
    return static_cast<int>(n);
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= v.size()) {
        const auto comma = v.find(',', start);
        const std::string item =
            trim(comma == std::string::npos ? v.substr(start) : v.substr(start, comma - start));
        if (!item.empty()) out.push_back(item);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

ordered_json metrics_json(const MetricReport& m) {
    ordered_json j;
    j["ie"] = m.ie;
    j["mi"] = m.mi;
    j["rmse"] = m.rmse;
    if (std::isinf(m.psnr))
        j["psnr"] = "inf";
    else
        j["psnr"] = m.psnr;
    if (m.qi_degenerate)
        j["qi"] = "degenerate";
    else
        j["qi"] = m.qi;
    j["sf"] = m.sf;
    return j;
}

ordered_json ga_json(const GaConfig& ga) {
    ordered_json j;
    j["initial_diff"] = ga.initial_diff;
    j["trials_per_generation"] = ga.trials_per_generation;
    j["max_generations"] = ga.max_generations;
    j["termination_epsilon"] = ga.termination_epsilon;
    return j;
}

ordered_json weight_json(const WeightPair& w) {
    ordered_json j;
    j["wv"] = w.wv;
    j["wt"] = w.wt;
    return j;
}

ordered_json trace_json(const GaTrace& t) {
    ordered_json j;
    j["generations_run"] = t.generations_run;
    j["termination_reason"] = termination_reason_name(t.termination_reason);
    ordered_json gens = ordered_json::array();
    for (const auto& g : t.generations) {
        ordered_json gj;
        gj["diff"] = g.diff;
        gj["base_wv"] = g.base_wv;
        ordered_json trials = ordered_json::array();
        for (const auto& tr : g.trials) {
            ordered_json tj;
            tj["wv"] = tr.wv;
            tj["mse"] = tr.mse;
            trials.push_back(std::move(tj));
        }
        gj["trials"] = std::move(trials);
        gj["chosen_wv"] = g.chosen_wv;
        gens.push_back(std::move(gj));
    }
    j["generations"] = std::move(gens);
    return j;
}

std::string fmt_fixed(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

bool is_ga_method(const std::string& name) {
    const auto m = parse_method(name);
    return m && m->rule == FusionRule::ga_weighted;
}

// one CSV cell for metric index k (ie..sf order)
std::string metric_cell(const MethodOutcome& mo, int k) {
    if (!mo.ok) return "error";
    const MetricReport& m = mo.metrics;
    switch (k) {
    case 0: return fmt_fixed(m.ie);
    case 1: return fmt_fixed(m.mi);
    case 2: return fmt_fixed(m.rmse);
    case 3: return std::isinf(m.psnr) ? "inf" : fmt_fixed(m.psnr);
    case 4: return m.qi_degenerate ? "degenerate" : fmt_fixed(m.qi);
    default: return fmt_fixed(m.sf);
    }
}

} // namespace

BenchmarkConfig parse_benchmark_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        if (!std::filesystem::exists(path)) throw FileNotFound(path + ": no such file");
        throw IoError(path + ": cannot open");
    }
    const std::filesystem::path base = std::filesystem::path(path).parent_path();
    auto resolve = [&](const std::string& p) {
        std::filesystem::path fp(p);
        return fp.is_absolute() ? fp.string() : (base / fp).string();
    };

    BenchmarkConfig cfg;
    enum class Section { none, ga, methods, dataset };
    Section section = Section::none;
    DatasetSpec current;
    bool have_dataset = false;
    int auto_name = 0;
    std::set<std::string> seen_names;

    auto flush_dataset = [&](int line) {
        if (!have_dataset) return;
        if (current.source1.empty() || current.source2.empty())
            config_error(line, "dataset '" + current.name + "' needs source1 and source2");
        if (!seen_names.insert(current.name).second)
            config_error(line, "duplicate dataset name '" + current.name + "'");
        cfg.datasets.push_back(current);
        current = {};
        have_dataset = false;
    };

    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto comment = raw.find_first_of("#;");
        std::string line = trim(comment == std::string::npos ? raw : raw.substr(0, comment));
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') config_error(lineno, "unterminated section header");
            const std::string inner = trim(line.substr(1, line.size() - 2));
            if (inner == "ga") {
                flush_dataset(lineno);
                section = Section::ga;
            } else if (inner == "methods") {
                flush_dataset(lineno);
                section = Section::methods;
            } else if (inner == "dataset" || inner.rfind("dataset ", 0) == 0) {
                flush_dataset(lineno);
                section = Section::dataset;
                have_dataset = true;
                const std::string name = inner == "dataset" ? "" : trim(inner.substr(8));
                current.name = name.empty() ? "dataset" + std::to_string(++auto_name) : name;
            } else {
                config_error(lineno, "unknown section [" + inner + "]");
            }
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) config_error(lineno, "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) config_error(lineno, "expected key = value");

        switch (section) {
        case Section::none:
            config_error(lineno, "key '" + key + "' outside any section");
        case Section::ga:
            if (key == "initial_diff")
                cfg.ga.initial_diff = parse_double(value, lineno);
            else if (key == "trials_per_generation")
                cfg.ga.trials_per_generation = parse_int(value, lineno);
            else if (key == "max_generations")
                cfg.ga.max_generations = parse_int(value, lineno);
            else if (key == "termination_epsilon")
                cfg.ga.termination_epsilon = parse_double(value, lineno);
            else
                config_error(lineno, "unknown [ga] key '" + key + "'");
            break;
        case Section::methods:
            if (key != "use") config_error(lineno, "unknown [methods] key '" + key + "'");
            for (const auto& name : split_list(value)) {
                if (!parse_method(name)) config_error(lineno, "unknown method '" + name + "'");
                if (std::count(cfg.methods.begin(), cfg.methods.end(), name))
                    config_error(lineno, "method '" + name + "' listed twice");
                cfg.methods.push_back(name);
            }
            break;
        case Section::dataset:
            if (key == "source1")
                current.source1 = resolve(value);
            else if (key == "source2")
                current.source2 = resolve(value);
            else
                config_error(lineno, "unknown dataset key '" + key + "'");
            break;
        }
    }
    flush_dataset(lineno);

    if (cfg.methods.empty()) cfg.methods = method_names();
    if (!(cfg.ga.initial_diff > 0.0)) config_error(lineno, "initial_diff must be positive");
    if (cfg.ga.trials_per_generation < 2)
        config_error(lineno, "trials_per_generation must be at least 2");
    if (cfg.ga.max_generations < 1) config_error(lineno, "max_generations must be at least 1");
    if (!(cfg.ga.termination_epsilon > 0.0))
        config_error(lineno, "termination_epsilon must be positive");
    return cfg;
}

BenchmarkReport run_benchmark(const BenchmarkConfig& cfg, std::ostream& log) {
    BenchmarkReport rep;
    rep.ga = cfg.ga;
    rep.methods = cfg.methods;

    for (const auto& ds : cfg.datasets) {
        DatasetOutcome out;
        out.name = ds.name;
        out.source1 = ds.source1;
        out.source2 = ds.source2;

        ImageBuffer ra, rb;
        try {
            auto pair = register_pair(load_image(ds.source1), load_image(ds.source2));
            ra = std::move(pair.first);
            rb = std::move(pair.second);
            out.loaded = true;
        } catch (const Error& e) {
            out.error = e.what();
            rep.any_failed = true;
            log << "dataset " << ds.name << ": load failed: " << e.what() << "\n";
            rep.datasets.push_back(std::move(out));
            continue;
        }

        for (const auto& name : cfg.methods) {
            MethodOutcome mo;
            try {
                const auto method = parse_method(name);
                if (!method) throw InvalidConfig("unknown method '" + name + "'");
                FusionResult fr = fuse(ra, rb, *method, cfg.ga);
                mo.metrics = full_report(ra, rb, fr.fused);
                mo.weights = fr.weights;
                mo.per_channel_weights = fr.per_channel_weights;
                mo.ok = true;
            } catch (const Error& e) {
                mo.error = e.what();
                rep.any_failed = true;
            }
            out.results.push_back(std::move(mo));
        }
        log << "dataset " << ds.name << ": " << cfg.methods.size() << " methods done\n";
        rep.datasets.push_back(std::move(out));
    }
    return rep;
}

std::string benchmark_to_csv(const BenchmarkReport& r) {
    std::string csv = "metric,method";
    for (const auto& ds : r.datasets) csv += "," + ds.name;
    csv += "\n";

    const char* metric_names[6] = {"ie", "mi", "rmse", "psnr", "qi", "sf"};
    for (int k = 0; k < 6; ++k)
        for (std::size_t m = 0; m < r.methods.size(); ++m) {
            csv += std::string(metric_names[k]) + "," + r.methods[m];
            for (const auto& ds : r.datasets)
                csv += "," + (ds.loaded ? metric_cell(ds.results[m], k) : std::string("error"));
            csv += "\n";
        }

    for (std::size_t m = 0; m < r.methods.size(); ++m) {
        if (!is_ga_method(r.methods[m])) continue;
        for (const char* which : {"wv", "wt"}) {
            csv += std::string(which) + "," + r.methods[m];
            for (const auto& ds : r.datasets) {
                if (!ds.loaded || !ds.results[m].ok || !ds.results[m].weights) {
                    csv += ",error";
                    continue;
                }
                const WeightPair& w = *ds.results[m].weights;
                csv += "," + fmt_fixed(which[1] == 'v' ? w.wv : w.wt);
            }
            csv += "\n";
        }
    }
    return csv;
}

std::string benchmark_to_json(const BenchmarkReport& r) {
    ordered_json j;
    j["ga"] = ga_json(r.ga);
    j["methods"] = r.methods;
    ordered_json dsets = ordered_json::array();
    for (const auto& ds : r.datasets) {
        ordered_json dj;
        dj["name"] = ds.name;
        dj["source1"] = ds.source1;
        dj["source2"] = ds.source2;
        if (!ds.loaded) {
            dj["error"] = ds.error;
            dsets.push_back(std::move(dj));
            continue;
        }
        ordered_json results;
        for (std::size_t m = 0; m < r.methods.size(); ++m) {
            const MethodOutcome& mo = ds.results[m];
            ordered_json mj;
            if (!mo.ok) {
                mj["error"] = mo.error;
            } else {
                mj["metrics"] = metrics_json(mo.metrics);
                if (mo.weights) {
                    ordered_json wj = weight_json(*mo.weights);
                    ordered_json per = ordered_json::array();
                    for (const auto& w : mo.per_channel_weights) per.push_back(weight_json(w));
                    wj["per_channel"] = std::move(per);
                    mj["weights"] = std::move(wj);
                }
            }
            results[r.methods[m]] = std::move(mj);
        }
        dj["results"] = std::move(results);
        dsets.push_back(std::move(dj));
    }
    j["datasets"] = std::move(dsets);
    j["failed"] = r.any_failed;
    return j.dump(2) + "\n";
}

std::string weights_to_json(const FusionResult& r, const GaConfig& cfg) {
    ordered_json j;
    if (r.weights) {
        j["wv"] = r.weights->wv;
        j["wt"] = r.weights->wt;
    }
    ordered_json per = ordered_json::array();
    for (const auto& w : r.per_channel_weights) per.push_back(weight_json(w));
    j["per_channel"] = std::move(per);
    j["ga"] = ga_json(cfg);
    ordered_json traces = ordered_json::array();
    for (const auto& t : r.traces) traces.push_back(trace_json(t));
    j["traces"] = std::move(traces);
    return j.dump(2) + "\n";
}

} // namespace wavefuse

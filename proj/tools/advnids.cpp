// advnids command-line front end.
//
// Exit codes: 0 success, 2 spec/validation error, 3 data error,
// 4 numeric error.

#include "advnids/detail/binary_io.hpp"
#include "advnids/error.hpp"
#include "advnids/experiment.hpp"
#include "advnids/synthetic.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;
using namespace advnids;

namespace {

enum Exit : int { kOk = 0, kSpec = 2, kData = 3, kNumeric = 4 };

int exit_code(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::spec:
    case ErrorKind::shape:
        return kSpec;
    case ErrorKind::data:
    case ErrorKind::io:
        return kData;
    case ErrorKind::numeric:
        return kNumeric;
    }
    return kData;
}

struct Overrides {
    std::string spec;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::string epsilons;
    std::string scaler_fit;
};

std::vector<double> parse_epsilons(const std::string& text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        std::string item = text.substr(pos, comma - pos);
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        double v = 0;
        const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || ec != std::errc() || end != item.data() + item.size())
            throw SpecError("--epsilons: '" + item + "' is not a number");
        out.push_back(v);
        pos = comma + 1;
    }
    return out;
}

ExperimentSpec effective_spec(const Overrides& o) {
    if (o.spec.empty()) throw SpecError("--spec is required");
    ExperimentSpec spec = load_spec(o.spec);
    if (o.seed) spec.data_seed = *o.seed;
    if (!o.epsilons.empty()) spec.epsilons = parse_epsilons(o.epsilons);
    if (!o.scaler_fit.empty()) spec.scaler_fit = scaler_fit_from_string(o.scaler_fit);
    if (!o.out.empty()) spec.output_dir = o.out;
    spec.validate();
    return spec;
}

void add_common(CLI::App* cmd, Overrides& o, bool spec_required) {
    auto* s = cmd->add_option("--spec", o.spec, "Experiment spec (JSON)");
    if (spec_required) s->required();
    cmd->add_option("--seed", o.seed, "Override the data split seed");
    cmd->add_option("--epsilons", o.epsilons, "Comma-separated epsilon list");
    cmd->add_option("--scaler-fit", o.scaler_fit, "full | train-only")
        ->check(CLI::IsMember({"full", "train-only"}));
}

fs::path require_out(const Overrides& o) {
    if (o.out.empty()) throw SpecError("--out is required");
    fs::create_directories(o.out);
    return o.out;
}


FlowDataset dataset_for(const ExperimentSpec& spec, const std::string& cache_path) {
    if (!cache_path.empty()) return from_cache(read_cache(cache_path));
    return prepare_from_spec(spec);
}

json baseline_line(const ClassificationReport& r) {
    return json{{"accuracy", r.accuracy},
                {"precision", r.weighted.precision},
                {"recall", r.weighted.recall},
                {"f1", r.weighted.f1}};
}

void print_table(const char* title, const DegradationTable& table) {
    std::cout << title << "\n" << degradation_csv(table);
}

// --- subcommands -----------------------------------------------------------

int cmd_prepare(const Overrides& o) {
    const auto spec = effective_spec(o);
    const auto out = require_out(o);
    const auto ds = prepare_from_spec(spec);
    write_cache((out / "dataset.afc").string(), to_cache(ds));
    std::cout << json{{"rows", ds.rows()},
                      {"features", ds.dims()},
                      {"train_rows", ds.split.train.size()},
                      {"test_rows", ds.split.test.size()},
                      {"scaler_fit", std::string(to_string(spec.scaler_fit))},
                      {"cache", (out / "dataset.afc").string()}}
                     .dump(2)
              << "\n";
    return kOk;
}

int cmd_train(const Overrides& o, const std::string& role, const std::string& cache) {
    const auto spec = effective_spec(o);
    const auto out = require_out(o);
    const auto ds = dataset_for(spec, cache);
    const ModelSpec& m = role == "surrogate" ? spec.surrogate : spec.target;
    const auto result = train_model(m, ds);
    save_model((out / (role + ".mlp")).string(), result.model);
    detail::write_file_atomic((out / (role + "_history.csv")).string(), history_csv(result.history));
    const auto summary = summarize(result);
    std::cout << json{{"model", role},
                      {"parameter_count", summary.parameter_count},
                      {"best_epoch", summary.best_epoch},
                      {"best_loss", summary.best_loss},
                      {"monitor", summary.monitor},
                      {"digest", summary.digest}}
                     .dump(2)
              << "\n";
    return kOk;
}

int cmd_attack(const Overrides& o, const std::string& model_path, const std::string& cache) {
    const auto spec = effective_spec(o);
    const auto out = require_out(o);
    const auto ds = dataset_for(spec, cache);
    const auto model = load_model(model_path);
    const Matrix x = ds.test_features();
    const auto y = ds.test_labels();
    AttackConfig cfg;
    cfg.epsilons = spec.epsilons;
    cfg.clip = spec.clip.from_test ? clip_bounds_from(x) : spec.clip.fixed;
    const auto batches = sweep(model, x, y, cfg);
    json files = json::array();
    for (const auto& b : batches) {
        const auto path = out / ("eps_" + format_number(b.epsilon) + ".afc");
        write_cache(path.string(), to_cache(b, y, ds.feature_names, ds.scaler));
        files.push_back(path.string());
    }
    std::cout << json{{"clip", {{"low", cfg.clip.low}, {"high", cfg.clip.high}}}, {"batches", files}}.dump(2)
              << "\n";
    return kOk;
}

int cmd_evaluate(const Overrides& o, const std::string& model_path, const std::string& cache,
                 const std::vector<std::string>& batch_paths) {
    if (cache.empty() && batch_paths.empty())
        throw SpecError("evaluate needs --dataset and/or --batches");
    const BlackBoxTarget model(load_model(model_path));
    json result = json::object();
    if (!cache.empty()) {
        const auto ds = from_cache(read_cache(cache));
        result["clean"] = evaluate(model, ds.test_features(), ds.test_labels());
    }
    DegradationTable table;
    if (!batch_paths.empty()) {
        std::vector<std::pair<double, ClassificationReport>> reports;
        for (const auto& p : batch_paths) {
            const auto c = read_cache(p);
            if (c.kind != FlowCache::Kind::adversarial)
                throw DataError("'" + p + "' is not an adversarial batch");
            reports.emplace_back(c.epsilon, evaluate(model, c.features, c.labels));
        }
        table = degradation_table(std::move(reports));
        result["degradation"] = table;
    }
    if (!o.out.empty()) {
        const auto out = require_out(o);
        detail::write_file_atomic((out / "evaluation.json").string(), result.dump(2) + "\n");
        if (!table.empty()) {
            detail::write_file_atomic((out / "degradation.csv").string(), degradation_csv(table));
            detail::write_file_atomic((out / "degradation_curve.csv").string(), degradation_curve_csv(table));
        }
    }
    std::cout << result.dump(2) << "\n";
    return kOk;
}

int cmd_run(const Overrides& o) {
    const auto spec = effective_spec(o);
    const auto report = run_experiment(spec);
    std::cout << "run written to " << spec.output_dir << "\n";
    std::cout << json{{"surrogate", baseline_line(report.baseline.surrogate)},
                      {"target", baseline_line(report.baseline.target)}}
                     .dump(2)
              << "\n";
    print_table("whitebox (surrogate)", report.whitebox);
    print_table("blackbox (target)", report.blackbox);
    std::cout << "blackbox_dominance=" << (report.checks.blackbox_dominance ? "yes" : "no")
              << " whitebox_monotone=" << (report.checks.whitebox_monotone ? "yes" : "no") << "\n";
    return kOk;
}

int cmd_report(const Overrides& o, const std::string& run_dir) {
    const auto report = load_run_report((fs::path(run_dir) / "run_report.json").string());
    const fs::path out = o.out.empty() ? fs::path(run_dir) : fs::path(o.out);
    emit_tables(report, (out / "tables").string());
    emit_curves(report, (out / "curves").string());
    print_table("whitebox (surrogate)", report.whitebox);
    print_table("blackbox (target)", report.blackbox);
    return kOk;
}

int cmd_synth(const Overrides& o, const SyntheticConfig& cfg) {
    if (o.out.empty()) throw SpecError("--out is required");
    const fs::path out(o.out);
    if (out.has_parent_path()) fs::create_directories(out.parent_path());
    write_flow_csv(out.string(), generate_gaussian_flows(cfg), cfg);
    std::cout << "wrote " << cfg.rows << " rows to " << out.string() << "\n";
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Surrogate/target MLP training and FGSM transfer evaluation for flow data"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    Overrides o;
    std::string role, model_path, cache, run_dir;
    std::vector<std::string> batches;
    SyntheticConfig synth;

    auto* prepare = app.add_subcommand("prepare", "Ingest, clean, scale and split into a dataset cache");
    add_common(prepare, o, true);
    prepare->add_option("--out", o.out, "Output directory")->required();

    auto* train = app.add_subcommand("train", "Train one model from its spec section");
    add_common(train, o, true);
    train->add_option("--out", o.out, "Output directory")->required();
    train->add_option("--model", role, "surrogate | target")
        ->required()
        ->check(CLI::IsMember({"surrogate", "target"}));
    train->add_option("--dataset", cache, "Dataset cache from `prepare` (default: prepare from spec)");

    auto* attack = app.add_subcommand("attack", "FGSM sweep from a saved surrogate");
    add_common(attack, o, true);
    attack->add_option("--out", o.out, "Output directory")->required();
    attack->add_option("--model", model_path, "Surrogate model file")->required()->check(CLI::ExistingFile);
    attack->add_option("--dataset", cache, "Dataset cache (default: prepare from spec)");

    auto* evaluate_cmd = app.add_subcommand("evaluate", "Reports for a saved model on clean data and batches");
    evaluate_cmd->add_option("--out", o.out, "Directory for evaluation.json and CSVs");
    evaluate_cmd->add_option("--model", model_path, "Model file")->required()->check(CLI::ExistingFile);
    evaluate_cmd->add_option("--dataset", cache, "Dataset cache; its test split is evaluated");
    evaluate_cmd->add_option("--batches", batches, "Adversarial batch files")->check(CLI::ExistingFile);

    auto* run = app.add_subcommand("run", "Full pipeline: data, training, baseline, white-box, black-box");
    add_common(run, o, true);
    run->add_option("--out", o.out, "Output directory (overrides the spec)");

    auto* report_cmd = app.add_subcommand("report", "Re-emit tables and curves from a run directory");
    report_cmd->add_option("--run", run_dir, "Run directory holding run_report.json")->required();
    report_cmd->add_option("--out", o.out, "Destination (default: the run directory)");

    auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic two-class flow CSV");
    synth_cmd->add_option("--out", o.out, "CSV path")->required();
    synth_cmd->add_option("--rows", synth.rows, "Row count")->capture_default_str();
    synth_cmd->add_option("--dims", synth.dims, "Feature count")->capture_default_str();
    synth_cmd->add_option("--seed", synth.seed, "Generator seed")->capture_default_str();
    synth_cmd->add_option("--missing-rate", synth.missing_rate, "Share of cells written as missing")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kSpec;
    }

    try {
        if (*prepare) return cmd_prepare(o);
        if (*train) return cmd_train(o, role, cache);
        if (*attack) return cmd_attack(o, model_path, cache);
        if (*evaluate_cmd) return cmd_evaluate(o, model_path, cache, batches);
        if (*run) return cmd_run(o);
        if (*report_cmd) return cmd_report(o, run_dir);
        if (*synth_cmd) return cmd_synth(o, synth);
    } catch (const Error& e) {
        std::cerr << "advnids: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const fs::filesystem_error& e) {
        std::cerr << "advnids: " << e.what() << "\n";
        return kData;
    } catch (const std::exception& e) {
        std::cerr << "advnids: " << e.what() << "\n";
        return kData;
    }
    return kOk;
}

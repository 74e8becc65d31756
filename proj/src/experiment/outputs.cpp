#include "advnids/detail/binary_io.hpp"
#include "advnids/experiment.hpp"

#include <filesystem>
#include <fstream>

namespace fs = std::filesystem;

namespace advnids {

namespace {

json summary_to_json(const ModelSummary& s) {
    return json{{"layers", s.layers},
                {"parameter_count", s.parameter_count},
                {"digest", s.digest},
                {"checkpoint",
                 {{"monitor", s.monitor}, {"best_epoch", s.best_epoch}, {"best_loss", s.best_loss}}},
                {"history", s.history}};
}

ModelSummary summary_from_json(const json& j) {
    ModelSummary s;
    j.at("layers").get_to(s.layers);
    j.at("parameter_count").get_to(s.parameter_count);
    j.at("digest").get_to(s.digest);
    const auto& c = j.at("checkpoint");
    c.at("monitor").get_to(s.monitor);
    c.at("best_epoch").get_to(s.best_epoch);
    c.at("best_loss").get_to(s.best_loss);
    j.at("history").get_to(s.history);
    return s;
}

void write_text(const fs::path& path, const std::string& text) {
    detail::write_file_atomic(path.string(), text);
}

std::string epsilon_tag(double eps) { return format_number(eps); }

} // namespace

json to_json(const RunReport& r) {
    return json{
        {"version", r.version},
        {"environment",
         {{"spec_digest", r.spec_digest},
          {"data_seed", r.data_seed},
          {"surrogate_seed", r.surrogate_seed},
          {"target_seed", r.target_seed}}},
        {"dataset",
         {{"rows", r.dataset.rows},
          {"features", r.dataset.features},
          {"train_rows", r.dataset.train_rows},
          {"test_rows", r.dataset.test_rows},
          {"attack_rows", r.dataset.attack_rows},
          {"flagged_features", r.dataset.flagged_features},
          {"scaler_fit", r.dataset.scaler_fit},
          {"test_digest", r.dataset.test_digest}}},
        {"surrogate", summary_to_json(r.surrogate)},
        {"target", summary_to_json(r.target)},
        {"baseline", {{"surrogate", r.baseline.surrogate}, {"target", r.baseline.target}}},
        {"clip", {{"low", r.clip.low}, {"high", r.clip.high}}},
        {"whitebox", r.whitebox},
        {"blackbox", r.blackbox},
        {"checks",
         {{"blackbox_dominance", r.checks.blackbox_dominance},
          {"dominance_violations", r.checks.dominance_violations},
          {"whitebox_monotone", r.checks.whitebox_monotone},
          {"monotone_tolerance", r.checks.monotone_tolerance}}}};
}

RunReport run_report_from_json(const json& j) {
    try {
        RunReport r;
        j.at("version").get_to(r.version);
        const auto& env = j.at("environment");
        env.at("spec_digest").get_to(r.spec_digest);
        env.at("data_seed").get_to(r.data_seed);
        env.at("surrogate_seed").get_to(r.surrogate_seed);
        env.at("target_seed").get_to(r.target_seed);
        const auto& d = j.at("dataset");
        d.at("rows").get_to(r.dataset.rows);
        d.at("features").get_to(r.dataset.features);
        d.at("train_rows").get_to(r.dataset.train_rows);
        d.at("test_rows").get_to(r.dataset.test_rows);
        d.at("attack_rows").get_to(r.dataset.attack_rows);
        d.at("flagged_features").get_to(r.dataset.flagged_features);
        d.at("scaler_fit").get_to(r.dataset.scaler_fit);
        d.at("test_digest").get_to(r.dataset.test_digest);
        r.surrogate = summary_from_json(j.at("surrogate"));
        r.target = summary_from_json(j.at("target"));
        j.at("baseline").at("surrogate").get_to(r.baseline.surrogate);
        j.at("baseline").at("target").get_to(r.baseline.target);
        j.at("clip").at("low").get_to(r.clip.low);
        j.at("clip").at("high").get_to(r.clip.high);
        j.at("whitebox").get_to(r.whitebox);
        j.at("blackbox").get_to(r.blackbox);
        const auto& c = j.at("checks");
        c.at("blackbox_dominance").get_to(r.checks.blackbox_dominance);
        c.at("dominance_violations").get_to(r.checks.dominance_violations);
        c.at("whitebox_monotone").get_to(r.checks.whitebox_monotone);
        c.at("monotone_tolerance").get_to(r.checks.monotone_tolerance);
        return r;
    } catch (const json::exception& e) {
        throw DataError(std::string("run report: ") + e.what());
    }
}

RunReport load_run_report(const std::string& path) {
    const std::string text = detail::read_file_bytes(path);
    try {
        return run_report_from_json(json::parse(text));
    } catch (const json::parse_error& e) {
        throw DataError("run report '" + path + "': " + e.what());
    }
}

void emit_curves(const RunReport& report, const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create '" + dir + "': " + ec.message());
    const fs::path base(dir);
    write_text(base / "surrogate_history.csv", history_csv(report.surrogate.history));
    write_text(base / "target_history.csv", history_csv(report.target.history));
    write_text(base / "whitebox_curve.csv", degradation_curve_csv(report.whitebox));
    write_text(base / "blackbox_curve.csv", degradation_curve_csv(report.blackbox));
}

void emit_tables(const RunReport& report, const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create '" + dir + "': " + ec.message());
    const fs::path base(dir);
    write_text(base / "baseline.csv",
               baseline_csv({{"surrogate", report.baseline.surrogate},
                             {"target", report.baseline.target}}));
    write_text(base / "whitebox.csv", degradation_csv(report.whitebox));
    write_text(base / "blackbox.csv", degradation_csv(report.blackbox));
}

RunReport run_experiment(const ExperimentSpec& spec) {
    if (spec.output_dir.empty()) throw StageError(ErrorKind::spec, "spec", "output_dir: required");
    const fs::path out = fs::path(spec.output_dir).lexically_normal();
    if (fs::exists(out) && !fs::is_empty(out) && !fs::exists(out / "run_report.json"))
        throw StageError(ErrorKind::io, "output",
                         "refusing to replace non-empty directory '" + out.string() +
                             "' that does not hold a previous run");

    RunArtifacts art = execute(spec);

    const fs::path staging = out.string() + ".partial";
    try {
        fs::remove_all(staging);
        fs::create_directories(staging);
        write_text(staging / "spec.json", to_json(spec).dump(2) + "\n");
        save_model((staging / "surrogate.mlp").string(), art.surrogate);
        save_model((staging / "target.mlp").string(), art.target);
        emit_tables(art.report, (staging / "tables").string());
        emit_curves(art.report, (staging / "curves").string());
        if (spec.export_batches) {
            fs::create_directories(staging / "adversarial");
            for (const auto& b : art.batches)
                write_cache((staging / "adversarial" / ("eps_" + epsilon_tag(b.epsilon) + ".afc")).string(),
                            to_cache(b, art.test_labels, art.feature_names, art.scaler));
        }
        // The report goes last: its presence marks a complete run.
        write_text(staging / "run_report.json", to_json(art.report).dump(2) + "\n");
        fs::remove_all(out);
        if (out.has_parent_path()) fs::create_directories(out.parent_path());
        fs::rename(staging, out);
    } catch (const Error& e) {
        std::error_code ec;
        fs::remove_all(staging, ec);
        throw StageError(e.kind(), "output", e.what());
    } catch (const std::exception& e) {
        std::error_code ec;
        fs::remove_all(staging, ec);
        throw StageError(ErrorKind::io, "output", e.what());
    }
    return art.report;
}

} // namespace advnids

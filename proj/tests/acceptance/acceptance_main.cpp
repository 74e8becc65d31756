// Acceptance gate. Prints one line per criterion and exits non-zero if any
// blocking criterion fails. Criterion 7 needs a real flow CSV
// (ADVNIDS_CICDDOS_CSV) and never blocks.

#include "advnids/experiment.hpp"
#include "advnids/kernels.hpp"
#include "advnids/synthetic.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using namespace advnids;

namespace {

enum class Status { pass, fail, skip, soft_pass, soft_fail };

struct Outcome {
    Status status;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double pct2(double v) { return std::round(v * 10000.0) / 100.0; }

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// --- 1 ----------------------------------------------------------------------

bool same_as_brute(const ClassificationReport& r, const oracle::BruteReport& b) {
    bool ok = r.accuracy == b.accuracy;
    for (int c = 0; c < 2; ++c)
        ok = ok && r.classes[c].precision == b.precision[c] && r.classes[c].recall == b.recall[c] &&
             r.classes[c].f1 == b.f1[c] && static_cast<double>(r.classes[c].support) == b.support[c];
    return ok && r.macro.precision == b.macro_p && r.macro.recall == b.macro_r && r.macro.f1 == b.macro_f1 &&
           r.weighted.precision == b.weighted_p && r.weighted.recall == b.weighted_r &&
           r.weighted.f1 == b.weighted_f1;
}

Outcome metric_oracles() {
    const auto t0 = Clock::now();
    RngStream rng(1001);
    int report_mismatch = 0, auc_mismatch = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + rng.bounded(50);
        std::vector<int> y(n), p(n);
        const double base = rng.uniform01(), noise = rng.uniform01();
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = rng.uniform01() < base;
            p[i] = rng.uniform01() < noise ? static_cast<int>(rng.bounded(2)) : y[i];
        }
        report_mismatch += !same_as_brute(classification_report(y, p), oracle::brute_report(y, p));
    }
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 2 + rng.bounded(199);
        std::vector<int> y(n);
        std::vector<double> s(n);
        const std::uint64_t levels = 1 + rng.bounded(n);
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = static_cast<int>(rng.bounded(2));
            s[i] = static_cast<double>(rng.bounded(levels)) / static_cast<double>(levels);
        }
        if (std::count(y.begin(), y.end(), 0) == 0) y[0] = 0;
        if (std::count(y.begin(), y.end(), 1) == 0) y[n - 1] = 1;
        auc_mismatch += roc_auc(y, s) != oracle::brute_auc(y, s);
    }
    const double secs = seconds_since(t0);
    const bool ok = report_mismatch == 0 && auc_mismatch == 0 && secs < 5.0;
    return {ok ? Status::pass : Status::fail,
            fmt("report mismatches %d/1000, AUC mismatches %d/1000, %.2f s (limit 5 s)", report_mismatch,
                auc_mismatch, secs)};
}

// --- 2 ----------------------------------------------------------------------

Outcome count_reconciliation() {
    const auto t = report(ConfusionMatrix{47185, 1723, 41470, 482});
    const auto s = report(ConfusionMatrix{47512, 745, 42448, 155});
    const bool target_ok = pct2(t.accuracy) == 97.57 && pct2(t.weighted.precision) == 97.61 &&
                           pct2(t.weighted.recall) == 97.57 && pct2(t.weighted.f1) == 97.57;
    const bool surrogate_ok = pct2(s.accuracy) == 99.01;
    return {target_ok && surrogate_ok ? Status::pass : Status::fail,
            fmt("target counts -> acc %.2f P %.2f R %.2f F1 %.2f; surrogate counts -> acc %.2f P %.2f "
                "(note: reported 99.05 / 98.98 do not follow from these counts)",
                pct2(t.accuracy), pct2(t.weighted.precision), pct2(t.weighted.recall), pct2(t.weighted.f1),
                pct2(s.accuracy), pct2(s.weighted.precision))};
}

// --- 3 ----------------------------------------------------------------------

Outcome gradient_checks() {
    const auto t0 = Clock::now();
    RngStream rng(3003);
    double worst_param = 0, worst_input = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto net = oracle::random_net(rng, trial % 2 ? Activation::softmax : Activation::sigmoid);
        const auto bp = backprop(net.model, net.x, net.targets, true, true);
        const auto fd = oracle::fd_params(net.model, net.x, net.targets);
        for (std::size_t t = 0; t < fd.size(); ++t)
            for (std::size_t i = 0; i < fd[t].size(); ++i)
                worst_param = std::max(worst_param, oracle::rel_err(fd[t][i], bp.params.tensors[t].data()[i]));
        const auto fdx = oracle::fd_input(net.model, net.x, net.targets);
        for (std::size_t i = 0; i < fdx.size(); ++i)
            worst_input = std::max(worst_input, oracle::rel_err(fdx.data()[i], bp.input.data()[i]));
    }
    const double secs = seconds_since(t0);
    const bool ok = worst_param < 1e-4 && worst_input < 1e-4 && secs < 30.0;
    return {ok ? Status::pass : Status::fail,
            fmt("100 nets, max rel err params %.2e input %.2e (limit 1e-4), %.2f s (limit 30 s)", worst_param,
                worst_input, secs)};
}

// --- 4 ----------------------------------------------------------------------

Outcome fgsm_invariants() {
    RngStream rng(4004);
    std::size_t coords = 0, bad = 0, mutated = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t dims = 1 + rng.bounded(12);
        std::vector<std::size_t> hidden(rng.bounded(3));
        for (auto& h : hidden) h = 1 + rng.bounded(10);
        const auto head = trial % 2 ? Activation::softmax : Activation::sigmoid;
        const auto hidden_act = rng.bounded(2) ? Activation::relu : Activation::sigmoid;
        const auto model = MlpModel::initialize(MlpModel::architecture(dims, hidden, hidden_act, head), rng);
        const std::size_t rows = 1 + rng.bounded(64);
        Matrix x(rows, dims);
        const double scale = std::pow(10.0, rng.uniform(-2, 2));
        for (double& v : x.data()) v = scale * rng.normal();
        std::vector<int> y(rows);
        for (auto& l : y) l = static_cast<int>(rng.bounded(2));
        const Matrix clean = x;
        ClipBounds clip = clip_bounds_from(x);
        if (trial % 3 == 0) clip = {clip.low - 1.0, clip.high + 1.0};
        const auto grad = grad_input(model, x, one_hot(y));
        AttackConfig cfg;
        cfg.clip = clip;
        cfg.epsilons = {1e-4 * scale, 1e-2 * scale, 0.3 * scale};
        for (const auto& batch : sweep(model, x, y, cfg)) {
            for (std::size_t i = 0; i < x.size(); ++i) {
                ++coords;
                bad += !oracle::fgsm_coordinate_ok(clean.data()[i], batch.features.data()[i], grad.data()[i],
                                                   batch.epsilon, clip.low, clip.high);
            }
        }
        mutated += !(x == clean);
    }
    const bool ok = bad == 0 && mutated == 0;
    return {ok ? Status::pass : Status::fail,
            fmt("%zu coordinates over 200 models: %zu violations, %zu inputs mutated", coords, bad, mutated)};
}

// --- 5, 6, 8 ----------------------------------------------------------------

// Training rows of the full-scale configuration the batch sizes were set for.
constexpr double kReferenceTrainRows = 136288.0;

struct Synthetic {
    ExperimentSpec spec;
    RunReport report;
    double seconds = 0;
    std::string error;
};

Synthetic synthetic_run(const fs::path& work) {
    Synthetic s;
    SyntheticConfig data;
    data.rows = 10000;
    data.dims = 20;
    data.seed = 42;
    const auto csv = work / "synthetic_flows.csv";
    write_flow_csv(csv.string(), generate_gaussian_flows(data), data);

    auto& spec = s.spec;
    spec.data_path = csv.string();
    spec.test_fraction = 0.4;
    spec.data_seed = 42;
    spec.surrogate = ModelSpec::reference_surrogate();
    spec.target = ModelSpec::reference_target();
    spec.surrogate.train.epochs = 15;
    spec.target.train.epochs = 20;
    // Same number of optimizer steps per epoch as at full scale.
    const double train_rows = static_cast<double>(data.rows - test_count(data.rows, spec.test_fraction));
    for (auto* m : {&spec.surrogate, &spec.target})
        m->train.batch_size = static_cast<std::size_t>(
            std::lround(static_cast<double>(m->train.batch_size) * train_rows / kReferenceTrainRows));
    spec.epsilons.clear();
    for (int k = 1; k <= 9; ++k) spec.epsilons.push_back(0.03 * k);
    spec.output_dir = (work / "run_a").string();

    const auto t0 = Clock::now();
    try {
        s.report = run_experiment(spec);
    } catch (const std::exception& e) {
        s.error = e.what();
    }
    s.seconds = seconds_since(t0);
    return s;
}

Outcome synthetic_trend(const Synthetic& s) {
    if (!s.error.empty()) return {Status::fail, "run failed: " + s.error};
    const auto& r = s.report;
    const double clean_s = r.baseline.surrogate.accuracy, clean_t = r.baseline.target.accuracy;
    const bool a = clean_s >= 0.95 && clean_t >= 0.95;
    bool b = r.whitebox.size() == 9;
    for (std::size_t i = 1; i < r.whitebox.size(); ++i)
        b = b && r.whitebox[i].accuracy <= r.whitebox[i - 1].accuracy + 0.01;
    bool c = r.blackbox.size() == r.whitebox.size();
    double worst_gap = 1.0;
    for (std::size_t i = 0; c && i < r.whitebox.size(); ++i) {
        c = c && r.blackbox[i].epsilon == r.whitebox[i].epsilon && r.blackbox[i].accuracy >= r.whitebox[i].accuracy;
        worst_gap = std::min(worst_gap, r.blackbox[i].accuracy - r.whitebox[i].accuracy);
    }
    const double drop = r.whitebox.empty() ? 0.0 : clean_s - r.whitebox.back().accuracy;
    const bool d = drop >= 0.10;
    const bool fast = s.seconds < 120.0;
    std::string sweep;
    for (std::size_t i = 0; i < r.whitebox.size(); ++i)
        sweep += fmt("%s%.2f/%.2f", i ? " " : "", 100 * r.whitebox[i].accuracy, 100 * r.blackbox[i].accuracy);
    return {a && b && c && d && fast ? Status::pass : Status::fail,
            fmt("(a) clean %.2f%%/%.2f%% %s (b) monotone %s (c) min target-surrogate gap %+.2f pts %s "
                "(d) drop %.2f pts %s; %.1f s single-threaded (limit 120 s); wb/bb %%: ",
                100 * clean_s, 100 * clean_t, a ? "ok" : "FAIL", b ? "ok" : "FAIL", 100 * worst_gap,
                c ? "ok" : "FAIL", 100 * drop, d ? "ok" : "FAIL", s.seconds) +
                sweep};
}

Outcome determinism(const Synthetic& s, const fs::path& work) {
    if (!s.error.empty()) return {Status::fail, "first run failed: " + s.error};
    auto spec = s.spec;
    spec.output_dir = (work / "run_b").string();
    try {
        run_experiment(spec);
    } catch (const std::exception& e) {
        return {Status::fail, std::string("second run failed: ") + e.what()};
    }
    const fs::path a = s.spec.output_dir, b = spec.output_dir;
    std::string differing;
    std::size_t compared = 0;
    for (const char* f : {"run_report.json", "surrogate.mlp", "target.mlp", "tables/baseline.csv",
                          "tables/whitebox.csv", "tables/blackbox.csv", "curves/surrogate_history.csv",
                          "curves/target_history.csv", "curves/whitebox_curve.csv", "curves/blackbox_curve.csv"}) {
        ++compared;
        if (!fs::exists(a / f) || slurp(a / f) != slurp(b / f)) differing += std::string(" ") + f;
    }
    return {differing.empty() ? Status::pass : Status::fail,
            differing.empty() ? fmt("%zu artifacts byte-identical across two runs", compared)
                              : "differing:" + differing};
}

Outcome self_transfer(const Synthetic& s) {
    if (!s.error.empty()) return {Status::fail, "run failed: " + s.error};
    try {
        const auto ds = prepare_from_spec(s.spec);
        const Matrix x = ds.test_features();
        const auto y = ds.test_labels();
        TrainResult surrogate{load_model((fs::path(s.spec.output_dir) / "surrogate.mlp").string()), {},
                              s.report.surrogate.history};
        const AttackConfig cfg{s.spec.epsilons, clip_bounds_from(x)};
        const auto white = run_whitebox(surrogate, x, y, cfg);
        const auto black = run_blackbox(surrogate, BlackBoxTarget(surrogate.model), x, y, cfg);
        const bool ok = white == black && json(white).dump() == json(black).dump() && white.size() == 9;
        return {ok ? Status::pass : Status::fail,
                fmt("%zu rows compared, tables %s", white.size(), ok ? "identical" : "DIFFER")};
    } catch (const std::exception& e) {
        return {Status::fail, e.what()};
    }
}

// --- 7 ----------------------------------------------------------------------

Outcome real_data(const fs::path& work) {
    const char* path = std::getenv("ADVNIDS_CICDDOS_CSV");
    if (!path || !*path) return {Status::skip, "set ADVNIDS_CICDDOS_CSV to a flow CSV to enable"};
    ExperimentSpec spec;
    spec.data_path = path;
    spec.output_dir = (work / "real").string();
    try {
        const auto r = run_experiment(spec);
        const double s0 = 100 * r.baseline.surrogate.accuracy, t0 = 100 * r.baseline.target.accuracy;
        const double s9 = 100 * r.whitebox.back().accuracy, t9 = 100 * r.blackbox.back().accuracy;
        const bool ok = std::abs(s0 - 99.05) <= 2 && std::abs(t0 - 97.57) <= 2 && s9 <= 40 && t9 >= 50 && t9 <= 75;
        return {ok ? Status::soft_pass : Status::soft_fail,
                fmt("clean %.2f/%.2f (want 99.05/97.57 +-2), eps 0.0009 surrogate %.2f (<=40) target %.2f "
                    "(50..75)",
                    s0, t0, s9, t9)};
    } catch (const std::exception& e) {
        return {Status::soft_fail, std::string("run failed: ") + e.what()};
    }
}

const char* tag(Status s) {
    switch (s) {
    case Status::pass: return "PASS";
    case Status::fail: return "FAIL";
    case Status::skip: return "SKIP";
    case Status::soft_pass: return "PASS (soft)";
    case Status::soft_fail: return "FAIL (soft, non-blocking)";
    }
    return "?";
}

} // namespace

int main(int argc, char** argv) {
    fs::path work = fs::temp_directory_path() / "advnids-acceptance";
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--work") work = argv[i + 1];
    fs::remove_all(work);
    fs::create_directories(work);

    bool blocking_failure = false;
    auto emit = [&](int id, const char* name, const Outcome& o) {
        std::printf("[%s] %d %s: %s\n", tag(o.status), id, name, o.detail.c_str());
        std::fflush(stdout);
        blocking_failure = blocking_failure || o.status == Status::fail;
    };

    emit(1, "metric oracle equivalence", metric_oracles());
    emit(2, "confusion-count reconciliation", count_reconciliation());
    emit(3, "finite-difference gradient checks", gradient_checks());
    emit(4, "FGSM invariants", fgsm_invariants());

    // The synthetic trend is timed single-threaded.
    const bool parallel = kernels::parallel_enabled();
    kernels::set_parallel_enabled(false);
    const Synthetic synthetic = synthetic_run(work);
    emit(5, "synthetic end-to-end trend", synthetic_trend(synthetic));
    kernels::set_parallel_enabled(parallel);

    emit(6, "run determinism", determinism(synthetic, work));
    emit(7, "real-data soft check", real_data(work));
    emit(8, "self-transfer identity", self_transfer(synthetic));

    std::printf("%s\n", blocking_failure ? "ACCEPTANCE: FAIL" : "ACCEPTANCE: PASS");
    return blocking_failure ? 1 : 0;
}

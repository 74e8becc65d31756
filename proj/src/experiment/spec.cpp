#include "advnids/digest.hpp"
#include "advnids/experiment.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <initializer_list>

namespace advnids {

namespace {

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                const std::string& where) {
    if (!obj.is_object()) throw SpecError(where + ": expected an object");
    for (const auto& [key, _] : obj.items())
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw SpecError(where + ": unknown key '" + key + "'");
}

template <class T>
void read(const json& obj, const char* key, T& out, const std::string& where) {
    if (!obj.contains(key)) return;
    try {
        obj.at(key).get_to(out);
    } catch (const json::exception& e) {
        throw SpecError(where + "." + key + ": " + e.what());
    }
}

json model_to_json(const ModelSpec& m) {
    return json{{"hidden_layers", m.hidden},
                {"hidden_activation", std::string(to_string(m.hidden_activation))},
                {"output_activation", std::string(to_string(m.head))},
                {"learning_rate", m.train.learning_rate},
                {"batch_size", m.train.batch_size},
                {"epochs", m.train.epochs},
                {"validation_fraction", m.train.validation_fraction},
                {"seed", m.train.seed},
                {"adam",
                 {{"beta1", m.train.adam.beta1},
                  {"beta2", m.train.adam.beta2},
                  {"epsilon", m.train.adam.epsilon}}}};
}

ModelSpec model_from_json(const json& j, ModelSpec m, const std::string& where) {
    check_keys(j,
               {"hidden_layers", "hidden_activation", "output_activation", "learning_rate",
                "batch_size", "epochs", "validation_fraction", "seed", "adam"},
               where);
    read(j, "hidden_layers", m.hidden, where);
    std::string act;
    if (j.contains("hidden_activation")) {
        read(j, "hidden_activation", act, where);
        m.hidden_activation = activation_from_string(act);
    }
    if (j.contains("output_activation")) {
        read(j, "output_activation", act, where);
        m.head = activation_from_string(act);
    }
    read(j, "learning_rate", m.train.learning_rate, where);
    read(j, "batch_size", m.train.batch_size, where);
    read(j, "epochs", m.train.epochs, where);
    read(j, "validation_fraction", m.train.validation_fraction, where);
    read(j, "seed", m.train.seed, where);
    if (j.contains("adam")) {
        const auto& a = j.at("adam");
        check_keys(a, {"beta1", "beta2", "epsilon"}, where + ".adam");
        read(a, "beta1", m.train.adam.beta1, where + ".adam");
        read(a, "beta2", m.train.adam.beta2, where + ".adam");
        read(a, "epsilon", m.train.adam.epsilon, where + ".adam");
    }
    return m;
}

void validate_model(const ModelSpec& m, const std::string& where) {
    try {
        m.train.validate();
    } catch (const SpecError& e) {
        throw SpecError(where + ": " + e.what());
    }
    if (std::find(m.hidden.begin(), m.hidden.end(), std::size_t{0}) != m.hidden.end())
        throw SpecError(where + ": hidden layer widths must be positive");
    if (m.hidden_activation == Activation::softmax)
        throw SpecError(where + ": softmax is only allowed on the output layer");
}

} // namespace

ModelSpec ModelSpec::reference_surrogate() {
    ModelSpec m;
    m.hidden = {60, 50, 30};
    m.head = Activation::sigmoid;
    m.train.learning_rate = 1e-4;
    m.train.batch_size = 1024;
    m.train.epochs = 50;
    m.train.validation_fraction = 0.3;
    m.train.seed = 1;
    return m;
}

ModelSpec ModelSpec::reference_target() {
    ModelSpec m;
    m.hidden = {50, 25};
    m.head = Activation::softmax;
    m.train.learning_rate = 1e-3;
    m.train.batch_size = 4048;
    m.train.epochs = 60;
    m.train.validation_fraction = 0.2;
    m.train.seed = 2;
    return m;
}

std::vector<LayerSpec> ModelSpec::layers(std::size_t inputs) const {
    return MlpModel::architecture(inputs, hidden, hidden_activation, head);
}

void ExperimentSpec::validate() const {
    if (data_path.empty()) throw SpecError("data.path: required");
    if (clean.label_column.empty()) throw SpecError("data.label_column: must not be empty");
    clean.labels.validate();
    if (!(test_fraction > 0.0 && test_fraction < 1.0))
        throw SpecError("split.test_fraction: must lie in (0, 1)");
    validate_model(surrogate, "surrogate");
    validate_model(target, "target");
    AttackConfig attack{epsilons, clip.fixed};
    try {
        attack.validate();
    } catch (const SpecError& e) {
        throw SpecError(std::string("attack: ") + e.what());
    }
}

PrepareConfig ExperimentSpec::prepare_config() const {
    return PrepareConfig{clean, test_fraction, data_seed, scaler_fit};
}

std::string ExperimentSpec::digest() const {
    // Where the run is written does not change what it computes.
    json canonical = to_json(*this);
    canonical.erase("output_dir");
    return Digest().text(canonical.dump()).hex();
}

json to_json(const ExperimentSpec& spec) {
    json labels = json::object();
    for (const auto& [name, cls] : spec.clean.labels.classes) labels[name] = cls;
    json clip = spec.clip.from_test
                    ? json("test-range")
                    : json{{"low", spec.clip.fixed.low}, {"high", spec.clip.fixed.high}};
    return json{
        {"schema_version", ExperimentSpec::kSchemaVersion},
        {"data",
         {{"path", spec.data_path},
          {"label_column", spec.clean.label_column},
          {"drop_columns", spec.clean.drop_columns},
          {"label_map", labels},
          {"unlisted_label_class",
           spec.clean.labels.otherwise ? json(*spec.clean.labels.otherwise) : json(nullptr)}}},
        {"split",
         {{"test_fraction", spec.test_fraction},
          {"seed", spec.data_seed},
          {"scaler_fit", std::string(to_string(spec.scaler_fit))}}},
        {"surrogate", model_to_json(spec.surrogate)},
        {"target", model_to_json(spec.target)},
        {"attack", {{"epsilons", spec.epsilons}, {"clip", clip}, {"export_batches", spec.export_batches}}},
        {"output_dir", spec.output_dir}};
}

ExperimentSpec spec_from_json(const json& j, const std::string& base_dir) {
    check_keys(j, {"schema_version", "data", "split", "surrogate", "target", "attack", "output_dir"},
               "spec");
    if (!j.contains("schema_version")) throw SpecError("spec: schema_version is required");
    if (!j.at("schema_version").is_number_integer() ||
        j.at("schema_version").get<int>() != ExperimentSpec::kSchemaVersion)
        throw SpecError("spec: unsupported schema_version (expected 1)");

    ExperimentSpec spec;
    if (!j.contains("data")) throw SpecError("spec: data section is required");
    const auto& d = j.at("data");
    check_keys(d, {"path", "label_column", "drop_columns", "label_map", "unlisted_label_class"},
               "data");
    read(d, "path", spec.data_path, "data");
    read(d, "label_column", spec.clean.label_column, "data");
    read(d, "drop_columns", spec.clean.drop_columns, "data");
    if (d.contains("label_map")) {
        spec.clean.labels.classes.clear();
        const auto& map = d.at("label_map");
        if (!map.is_object()) throw SpecError("data.label_map: expected an object");
        for (const auto& [name, cls] : map.items()) {
            if (!cls.is_number_integer()) throw SpecError("data.label_map: classes must be 0 or 1");
            spec.clean.labels.classes[name] = cls.get<int>();
        }
    }
    if (d.contains("unlisted_label_class")) {
        const auto& v = d.at("unlisted_label_class");
        if (v.is_null())
            spec.clean.labels.otherwise.reset();
        else if (v.is_number_integer())
            spec.clean.labels.otherwise = v.get<int>();
        else
            throw SpecError("data.unlisted_label_class: expected 0, 1 or null");
    }
    if (!spec.data_path.empty() && !base_dir.empty() &&
        std::filesystem::path(spec.data_path).is_relative())
        spec.data_path = (std::filesystem::path(base_dir) / spec.data_path).lexically_normal().string();

    if (j.contains("split")) {
        const auto& s = j.at("split");
        check_keys(s, {"test_fraction", "seed", "scaler_fit"}, "split");
        read(s, "test_fraction", spec.test_fraction, "split");
        read(s, "seed", spec.data_seed, "split");
        if (s.contains("scaler_fit")) {
            std::string fit;
            read(s, "scaler_fit", fit, "split");
            spec.scaler_fit = scaler_fit_from_string(fit);
        }
    }
    if (j.contains("surrogate")) spec.surrogate = model_from_json(j.at("surrogate"), spec.surrogate, "surrogate");
    if (j.contains("target")) spec.target = model_from_json(j.at("target"), spec.target, "target");
    if (j.contains("attack")) {
        const auto& a = j.at("attack");
        check_keys(a, {"epsilons", "clip", "export_batches"}, "attack");
        read(a, "epsilons", spec.epsilons, "attack");
        read(a, "export_batches", spec.export_batches, "attack");
        if (a.contains("clip")) {
            const auto& c = a.at("clip");
            if (c.is_string()) {
                if (c.get<std::string>() != "test-range")
                    throw SpecError("attack.clip: expected \"test-range\" or {low, high}");
                spec.clip.from_test = true;
            } else {
                check_keys(c, {"low", "high"}, "attack.clip");
                if (!c.contains("low") || !c.contains("high"))
                    throw SpecError("attack.clip: both low and high are required");
                spec.clip.from_test = false;
                read(c, "low", spec.clip.fixed.low, "attack.clip");
                read(c, "high", spec.clip.fixed.high, "attack.clip");
            }
        }
    }
    read(j, "output_dir", spec.output_dir, "spec");
    if (!spec.output_dir.empty() && !base_dir.empty() &&
        std::filesystem::path(spec.output_dir).is_relative())
        spec.output_dir = (std::filesystem::path(base_dir) / spec.output_dir).lexically_normal().string();
    spec.validate();
    return spec;
}

ExperimentSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open spec file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw SpecError("spec file '" + path + "': " + e.what());
    }
    return spec_from_json(j, std::filesystem::path(path).parent_path().string());
}

} // namespace advnids

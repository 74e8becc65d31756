#include "advnids/detail/binary_io.hpp"
#include "advnids/digest.hpp"
#include "advnids/error.hpp"
#include "advnids/mlp.hpp"

namespace advnids {

namespace {
constexpr std::string_view kMagic = "ADVMLP\0\0";
constexpr std::uint32_t kVersion = 1;

std::uint8_t activation_tag(Activation a) {
    switch (a) {
    case Activation::relu: return 0;
    case Activation::sigmoid: return 1;
    case Activation::softmax: return 2;
    case Activation::linear: return 3;
    }
    return 255;
}
} // namespace

std::string encode_model(const MlpModel& model) {
    detail::ByteWriter w;
    w.raw(kMagic);
    w.u32(kVersion);
    w.u32(static_cast<std::uint32_t>(model.layers().size()));
    for (const auto& l : model.layers()) {
        w.u64(l.spec.inputs);
        w.u64(l.spec.outputs);
        w.u8(activation_tag(l.spec.activation));
    }
    for (const auto& l : model.layers()) {
        for (double v : l.weights.data()) w.f64(v);
        for (double v : l.bias.data()) w.f64(v);
    }
    return w.bytes();
}

MlpModel decode_model(std::string_view bytes) {
    detail::ByteReader r(bytes, "model file");
    if (r.raw(kMagic.size()) != kMagic) r.fail("bad magic");
    if (const auto v = r.u32(); v != kVersion) r.fail("unsupported version " + std::to_string(v));
    const auto count = r.u32();
    if (count == 0 || count > 1024) r.fail("implausible layer count");
    std::vector<LayerSpec> specs(count);
    for (auto& s : specs) {
        s.inputs = static_cast<std::size_t>(r.u64());
        s.outputs = static_cast<std::size_t>(r.u64());
        const auto tag = r.u8();
        if (tag > 3) r.fail("unknown activation tag");
        static constexpr Activation kActs[] = {Activation::relu, Activation::sigmoid,
                                               Activation::softmax, Activation::linear};
        s.activation = kActs[tag];
        if (s.inputs == 0 || s.outputs == 0 || s.inputs > r.remaining() / 8 / s.outputs)
            r.fail("layer dimensions exceed file size");
    }
    std::vector<Layer> layers;
    for (const auto& s : specs) {
        std::vector<double> w(s.inputs * s.outputs), b(s.outputs);
        for (auto& v : w) v = r.f64();
        for (auto& v : b) v = r.f64();
        layers.push_back({s, Matrix(s.inputs, s.outputs, std::move(w)), Matrix(1, s.outputs, std::move(b))});
    }
    if (!r.at_end()) r.fail("trailing bytes");
    try {
        return MlpModel(std::move(layers));
    } catch (const ShapeError& e) {
        throw DataError(std::string("model file: ") + e.what());
    }
}

void save_model(const std::string& path, const MlpModel& model) {
    detail::write_file_atomic(path, encode_model(model));
}

MlpModel load_model(const std::string& path) { return decode_model(detail::read_file_bytes(path)); }

std::string model_digest(const MlpModel& model) {
    const auto bytes = encode_model(model);
    return Digest().text(bytes).hex();
}

} // namespace advnids

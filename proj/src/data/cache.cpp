#include "advnids/data_pipeline.hpp"
#include "advnids/detail/binary_io.hpp"
#include "advnids/error.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace advnids {

namespace detail {

std::string read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

void write_file_atomic(const std::string& path, std::string_view bytes) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write '" + tmp + "'");
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw IoError("write failed for '" + tmp + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot move '" + tmp + "' to '" + path + "'");
    }
}

} // namespace detail

namespace {

constexpr std::string_view kMagic = "ADVFLOW\0";

void put_indices(detail::ByteWriter& w, const std::vector<std::size_t>& idx) {
    w.u64(idx.size());
    for (auto i : idx) w.u64(i);
}

std::vector<std::size_t> get_indices(detail::ByteReader& r, std::size_t rows) {
    std::vector<std::size_t> idx(r.count(8));
    for (auto& i : idx) {
        i = static_cast<std::size_t>(r.u64());
        if (i >= rows) r.fail("split index out of range");
    }
    return idx;
}

} // namespace

FlowCache to_cache(const FlowDataset& dataset) {
    FlowCache c;
    c.kind = FlowCache::Kind::dataset;
    c.feature_names = dataset.feature_names;
    c.features = dataset.features;
    c.labels = dataset.labels;
    c.split = dataset.split;
    c.scaler = dataset.scaler;
    return c;
}

FlowDataset from_cache(const FlowCache& cache) {
    if (cache.kind != FlowCache::Kind::dataset)
        throw DataError("cache holds an adversarial batch, not a dataset");
    FlowDataset ds;
    ds.feature_names = cache.feature_names;
    ds.features = cache.features;
    ds.labels = cache.labels;
    ds.split = cache.split;
    ds.scaler = cache.scaler;
    return ds;
}

std::string encode_cache(const FlowCache& cache) {
    const std::size_t rows = cache.features.rows(), cols = cache.features.cols();
    if (cache.labels.size() != rows) throw DataError("cache: label count differs from row count");
    if (cache.feature_names.size() != cols) throw DataError("cache: feature name count mismatch");
    detail::ByteWriter w;
    w.raw(kMagic);
    w.u32(FlowCache::kVersion);
    w.u32(static_cast<std::uint32_t>(cache.kind));
    w.u64(rows);
    w.u64(cols);
    for (const auto& name : cache.feature_names) w.str(name);
    for (double v : cache.features.data()) w.f64(v);
    for (int label : cache.labels) w.u8(static_cast<std::uint8_t>(label));
    put_indices(w, cache.split.train);
    put_indices(w, cache.split.test);
    const bool has_scaler = cache.scaler.features() == cols && cols > 0;
    w.u8(has_scaler ? 1 : 0);
    if (has_scaler) {
        for (std::size_t c = 0; c < cols; ++c) {
            w.f64(cache.scaler.mean[c]);
            w.f64(cache.scaler.stddev[c]);
            w.u8(cache.scaler.flagged[c] ? 1 : 0);
        }
    }
    w.f64(cache.epsilon);
    w.str(cache.provenance);
    return w.bytes();
}

FlowCache decode_cache(std::string_view bytes) {
    detail::ByteReader r(bytes, "flow cache");
    if (r.raw(kMagic.size()) != kMagic) r.fail("bad magic");
    const auto version = r.u32();
    if (version != FlowCache::kVersion) r.fail("unsupported version " + std::to_string(version));
    FlowCache c;
    const auto kind = r.u32();
    if (kind > 1) r.fail("unknown record kind");
    c.kind = static_cast<FlowCache::Kind>(kind);
    const auto rows = static_cast<std::size_t>(r.u64());
    const auto cols = static_cast<std::size_t>(r.u64());
    if (cols != 0 && rows > r.remaining() / 8 / cols) r.fail("dimensions exceed file size");
    for (std::size_t i = 0; i < cols; ++i) c.feature_names.push_back(r.str());
    std::vector<double> data(rows * cols);
    for (auto& v : data) v = r.f64();
    c.features = Matrix(rows, cols, std::move(data));
    c.labels.resize(rows);
    for (auto& label : c.labels) {
        label = r.u8();
        if (label > 1) r.fail("label outside {0,1}");
    }
    c.split.train = get_indices(r, rows);
    c.split.test = get_indices(r, rows);
    if (r.u8() == 1) {
        c.scaler.mean.resize(cols);
        c.scaler.stddev.resize(cols);
        c.scaler.flagged.resize(cols);
        for (std::size_t i = 0; i < cols; ++i) {
            c.scaler.mean[i] = r.f64();
            c.scaler.stddev[i] = r.f64();
            c.scaler.flagged[i] = r.u8() != 0;
        }
    }
    c.epsilon = r.f64();
    c.provenance = r.str();
    if (!r.at_end()) r.fail("trailing bytes");
    return c;
}

void write_cache(const std::string& path, const FlowCache& cache) {
    detail::write_file_atomic(path, encode_cache(cache));
}

FlowCache read_cache(const std::string& path) {
    return decode_cache(detail::read_file_bytes(path));
}

} // namespace advnids

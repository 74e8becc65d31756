#include "advnids/data_pipeline.hpp"
#include "advnids/error.hpp"

#include <algorithm>
#include <fstream>
#include <set>

namespace advnids {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

// Reads one record; quoted fields may contain commas, doubled quotes and
// newlines. Returns false at end of input.
bool read_record(std::istream& in, std::vector<std::string>& fields, std::size_t& line_no) {
    fields.clear();
    std::string line;
    if (!std::getline(in, line)) return false;
    ++line_no;
    std::string field;
    bool quoted = false;
    for (;;) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            const char c = line[i];
            if (quoted) {
                if (c == '"') {
                    if (i + 1 < line.size() && line[i + 1] == '"') {
                        field.push_back('"');
                        ++i;
                    } else {
                        quoted = false;
                    }
                } else {
                    field.push_back(c);
                }
            } else if (c == '"') {
                quoted = true;
            } else if (c == ',') {
                fields.push_back(std::move(field));
                field.clear();
            } else {
                field.push_back(c);
            }
        }
        if (!quoted) break;
        if (!std::getline(in, line))
            throw DataError("csv: unterminated quoted field starting before line " +
                            std::to_string(line_no));
        ++line_no;
        field.push_back('\n');
    }
    if (!field.empty() && field.back() == '\r') field.pop_back();
    fields.push_back(std::move(field));
    return true;
}

bool blank(const std::vector<std::string>& fields) {
    return fields.size() == 1 && trim(fields[0]).empty();
}

} // namespace

std::vector<std::string> default_drop_columns() {
    return {"Flow ID",          "Source IP", "Source Port", "Destination IP",
            "Destination Port", "Timestamp", "Unnamed: 0",  "SimillarHTTP"};
}

int LabelMapping::map(std::string_view text) const {
    const auto key = trim(text);
    if (auto it = classes.find(key); it != classes.end()) return it->second;
    if (otherwise) return *otherwise;
    throw DataError("unmappable label value '" + std::string(key) + "'");
}

void LabelMapping::validate() const {
    std::set<int> produced;
    for (const auto& [name, cls] : classes) {
        if (cls != 0 && cls != 1)
            throw SpecError("label mapping: class for '" + name + "' must be 0 or 1");
        produced.insert(cls);
    }
    if (otherwise) {
        if (*otherwise != 0 && *otherwise != 1)
            throw SpecError("label mapping: fallback class must be 0 or 1");
        produced.insert(*otherwise);
    }
    if (produced.size() != 2)
        throw SpecError("label mapping must cover exactly the two classes 0 and 1");
}

RawFlowTable parse_csv(std::istream& in, const CleanConfig& config) {
    config.labels.validate();
    std::size_t line_no = 0;
    std::vector<std::string> header;
    do {
        if (!read_record(in, header, line_no)) throw DataError("csv: empty input, no header row");
    } while (blank(header));

    const std::string label_name(trim(config.label_column));
    std::optional<std::size_t> label_at;
    std::vector<std::size_t> keep;
    RawFlowTable table;
    table.label_column = label_name;
    for (std::size_t i = 0; i < header.size(); ++i) {
        const std::string name(trim(header[i]));
        if (name == label_name) {
            if (label_at) throw DataError("csv: label column '" + name + "' appears twice");
            label_at = i;
            continue;
        }
        const bool dropped = std::any_of(config.drop_columns.begin(), config.drop_columns.end(),
                                         [&](const std::string& d) { return trim(d) == name; });
        if (!dropped) {
            keep.push_back(i);
            table.columns.push_back(name);
        }
    }
    if (!label_at) throw DataError("csv: missing label column '" + label_name + "'");

    std::vector<std::string> fields;
    while (read_record(in, fields, line_no)) {
        if (blank(fields)) continue;
        if (fields.size() != header.size())
            throw DataError("csv: line " + std::to_string(line_no) + " has " +
                            std::to_string(fields.size()) + " cells, header has " +
                            std::to_string(header.size()));
        std::vector<std::string> row;
        row.reserve(keep.size());
        for (std::size_t i : keep) row.push_back(std::move(fields[i]));
        const std::string& label = fields[*label_at];
        try {
            table.labels.push_back(config.labels.map(label));
        } catch (const DataError& e) {
            throw DataError("csv: line " + std::to_string(line_no) + ": " + e.what());
        }
        table.label_text.emplace_back(trim(label));
        table.cells.push_back(std::move(row));
    }
    return table;
}

RawFlowTable load_csv(const std::string& path, const CleanConfig& config) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open data file '" + path + "'");
    return parse_csv(in, config);
}

} // namespace advnids

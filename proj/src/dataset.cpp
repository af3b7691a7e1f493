#include "jzsbf/dataset.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "jzsbf/errors.hpp"
#include "text_util.hpp"

namespace jzsbf {

namespace {

using detail::parse_double;
using detail::parse_int;
using detail::shortest;
using detail::trim;

constexpr std::array<std::string_view, 6> kColumns = {"trial", "arm", "n", "p", "t", "design"};

struct Field {
    std::string text;
    std::size_t column;  // 1-based character offset where the field starts
};

// Splits one CSV line. Fields may be double-quoted with "" escaping a quote.
std::vector<Field> split_csv_line(std::string_view line, std::size_t row) {
    std::vector<Field> fields;
    std::size_t i = 0;
    for (;;) {
        Field f{{}, i + 1};
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        if (i < line.size() && line[i] == '"') {
            ++i;
            bool closed = false;
            while (i < line.size()) {
                if (line[i] == '"') {
                    if (i + 1 < line.size() && line[i + 1] == '"') {
                        f.text.push_back('"');
                        i += 2;
                        continue;
                    }
                    ++i;
                    closed = true;
                    break;
                }
                f.text.push_back(line[i++]);
            }
            if (!closed) throw ParseError("unterminated quoted field", row, f.column);
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
            if (i < line.size() && line[i] != ',') throw ParseError("text after closing quote", row, i + 1);
        } else {
            const std::size_t start = i;
            while (i < line.size() && line[i] != ',') ++i;
            f.text = std::string(trim(line.substr(start, i - start)));
        }
        fields.push_back(std::move(f));
        if (i >= line.size()) break;
        ++i;  // comma
    }
    return fields;
}

std::string csv_escape(std::string_view s) {
    if (s.find_first_of(",\"\n\r") == std::string_view::npos && trim(s) == s) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += '"';
    return out;
}

std::string with_row(const std::string& what, std::size_t row) {
    return "row " + std::to_string(row) + ": " + what;
}

Dataset parse_csv(std::string_view bytes, std::string_view name) {
    if (bytes.substr(0, 3) == "\xEF\xBB\xBF") bytes.remove_prefix(3);

    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos <= bytes.size()) {
        const std::size_t nl = bytes.find('\n', pos);
        std::string_view line = bytes.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }

    std::size_t header_row = 0;
    while (header_row < lines.size() && trim(lines[header_row]).empty()) ++header_row;
    if (header_row == lines.size()) throw ParseError("missing header row", 1, 0);

    const std::vector<Field> header = split_csv_line(lines[header_row], header_row + 1);
    std::array<std::size_t, kColumns.size()> index{};
    index.fill(static_cast<std::size_t>(-1));
    for (std::size_t c = 0; c < header.size(); ++c) {
        const auto it = std::find(kColumns.begin(), kColumns.end(), header[c].text);
        if (it == kColumns.end()) {
            throw ParseError("unknown column '" + header[c].text + "'", header_row + 1, header[c].column);
        }
        const auto k = static_cast<std::size_t>(it - kColumns.begin());
        if (index[k] != static_cast<std::size_t>(-1)) {
            throw ParseError("duplicate column '" + header[c].text + "'", header_row + 1, header[c].column);
        }
        index[k] = c;
    }
    for (std::size_t k = 0; k < kColumns.size(); ++k) {
        if (index[k] == static_cast<std::size_t>(-1)) {
            throw ParseError("missing column '" + std::string(kColumns[k]) + "'", header_row + 1, 0);
        }
    }

    Dataset ds;
    ds.name = std::string(name);
    for (std::size_t r = header_row + 1; r < lines.size(); ++r) {
        if (trim(lines[r]).empty()) continue;
        const std::size_t row = r + 1;
        const std::vector<Field> fields = split_csv_line(lines[r], row);
        if (fields.size() != header.size()) {
            throw ParseError("expected " + std::to_string(header.size()) + " fields, found " +
                                 std::to_string(fields.size()),
                             row, 0);
        }
        const Field& trial = fields[index[0]];
        const Field& arm = fields[index[1]];
        const Field& n = fields[index[2]];
        const Field& p = fields[index[3]];
        const Field& t = fields[index[4]];
        const Field& design = fields[index[5]];

        StudyRecord rec;
        rec.trial = trial.text;
        rec.arm = arm.text;
        if (n.text.empty()) throw ParseError("n is required", row, n.column);
        if (!parse_int(n.text, rec.n)) throw ParseError("n is not an integer: '" + n.text + "'", row, n.column);
        if (!p.text.empty()) {
            double v;
            if (!parse_double(p.text, v)) throw ParseError("p is not a number: '" + p.text + "'", row, p.column);
            rec.p_value = v;
        }
        if (!t.text.empty()) {
            double v;
            if (!parse_double(t.text, v)) throw ParseError("t is not a number: '" + t.text + "'", row, t.column);
            rec.t_value = v;
        }
        try {
            if (!design.text.empty()) rec.design = parse_design(design.text);
            validate(rec);
        } catch (const ValidationError& e) {
            throw ValidationError(with_row(e.what(), row));
        }
        ds.records.push_back(std::move(rec));
    }
    validate(ds);
    return ds;
}

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

Dataset parse_json(std::string_view bytes, std::string_view name) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(bytes.begin(), bytes.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), line_of_offset(bytes, e.byte), 0);
    }

    Dataset ds;
    ds.name = std::string(name);
    try {
        if (!doc.is_object()) throw ValidationError("dataset JSON must be an object");
        if (doc.contains("name")) ds.name = doc.at("name").get<std::string>();
        if (!doc.contains("records") || !doc.at("records").is_array()) {
            throw ValidationError("dataset JSON needs a 'records' array");
        }
        std::size_t i = 0;
        for (const json& item : doc.at("records")) {
            ++i;
            try {
                StudyRecord rec;
                rec.trial = item.at("trial").get<std::string>();
                rec.arm = item.at("arm").get<std::string>();
                rec.n = item.at("n").get<std::int64_t>();
                if (item.contains("n2") && !item.at("n2").is_null()) rec.n2 = item.at("n2").get<std::int64_t>();
                if (item.contains("p") && !item.at("p").is_null()) rec.p_value = item.at("p").get<double>();
                if (item.contains("t") && !item.at("t").is_null()) rec.t_value = item.at("t").get<double>();
                if (item.contains("design") && !item.at("design").is_null()) {
                    rec.design = parse_design(item.at("design").get<std::string>());
                }
                validate(rec);
                ds.records.push_back(std::move(rec));
            } catch (const ValidationError& e) {
                throw ValidationError("record " + std::to_string(i) + ": " + e.what());
            }
        }
    } catch (const json::exception& e) {
        throw ValidationError(std::string("dataset JSON has the wrong shape: ") + e.what());
    }
    validate(ds);
    return ds;
}

}  // namespace

void validate(const Dataset& dataset) {
    if (dataset.records.empty()) throw ValidationError("dataset has no records");
    std::set<std::pair<std::string, std::string>> seen;
    for (const StudyRecord& r : dataset.records) {
        validate(r);
        if (!seen.emplace(r.trial, r.arm).second) {
            throw ValidationError("duplicate (trial, arm) pair " + r.key());
        }
    }
}

Dataset parse_dataset(std::string_view bytes, DataFormat format, std::string_view name) {
    return format == DataFormat::csv ? parse_csv(bytes, name) : parse_json(bytes, name);
}

std::string render_dataset(const Dataset& dataset, DataFormat format) {
    if (format == DataFormat::csv) {
        std::string out = "trial,arm,n,p,t,design\n";
        for (const StudyRecord& r : dataset.records) {
            if (r.n2) throw ValidationError("record " + r.key() + " has unequal arms, which CSV cannot express");
            out += csv_escape(r.trial) + ',' + csv_escape(r.arm) + ',' + std::to_string(r.n) + ',';
            if (r.p_value) out += shortest(*r.p_value);
            out += ',';
            if (r.t_value) out += shortest(*r.t_value);
            out += ',';
            out += to_string(r.design);
            out += '\n';
        }
        return out;
    }

    nlohmann::ordered_json doc;
    doc["name"] = dataset.name;
    doc["records"] = nlohmann::ordered_json::array();
    for (const StudyRecord& r : dataset.records) {
        nlohmann::ordered_json item;
        item["trial"] = r.trial;
        item["arm"] = r.arm;
        item["n"] = r.n;
        if (r.n2) item["n2"] = *r.n2;
        item["p"] = r.p_value ? nlohmann::ordered_json(*r.p_value) : nlohmann::ordered_json(nullptr);
        item["t"] = r.t_value ? nlohmann::ordered_json(*r.t_value) : nlohmann::ordered_json(nullptr);
        item["design"] = std::string(to_string(r.design));
        doc["records"].push_back(std::move(item));
    }
    return doc.dump(2) + "\n";
}

Dataset load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read dataset '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    const DataFormat format = path.extension() == ".json" ? DataFormat::json : DataFormat::csv;
    return parse_dataset(buf.str(), format, path.stem().string());
}

MetaGroup parse_group_spec(std::string_view spec) {
    const std::size_t eq = spec.find('=');
    if (eq == std::string_view::npos) throw ParseError("group spec needs the form name=TRIAL.ARM,...", 0, 0);
    MetaGroup g;
    g.name = std::string(trim(spec.substr(0, eq)));
    if (g.name.empty()) throw ParseError("group spec has an empty name", 0, 0);
    std::string_view rest = spec.substr(eq + 1);
    for (;;) {
        const std::size_t comma = rest.find(',');
        const std::string_view item = trim(rest.substr(0, comma));
        if (item.empty()) throw ParseError("group '" + g.name + "' has an empty member", 0, 0);
        g.members.emplace_back(item);
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    return g;
}

Dataset aducanumab_dataset() { return parse_dataset(aducanumab_csv(), DataFormat::csv, "aducanumab"); }

std::vector<MetaGroup> aducanumab_groups() {
    return {MetaGroup{"low", {"EMERGE.low", "ENGAGE.low"}}, MetaGroup{"high", {"EMERGE.high", "ENGAGE.high"}}};
}

}  // namespace jzsbf

#include "kmernet/features.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "kmernet/error.hpp"
#include "kmernet/kmergraph.hpp"
#include "kmernet/netmeasures.hpp"

namespace kmernet {

FeatureSchema FeatureSchema::standard(bool include_histograms) {
    FeatureSchema schema;
    schema.include_histograms_ = include_histograms;
    for (const auto& config : standard_configs()) {
        const std::string prefix =
            "ws" + std::to_string(config.word_size) + "p" + std::to_string(config.step) + "_";
        const std::string source = "network(WS=" + std::to_string(config.word_size) +
                                   ",P=" + std::to_string(config.step) + ")";
        for (auto field : NetworkMeasures::field_names()) {
            schema.entries_.push_back({prefix + std::string(field), source});
        }
    }
    for (std::size_t k = 1; k <= kMaxHistogramWordSize; ++k) {
        const std::string source = "entropy(k=" + std::to_string(k) + ")";
        for (auto field : EntropyFeatures::field_names()) {
            schema.entries_.push_back({"k" + std::to_string(k) + "_" + std::string(field), source});
        }
    }
    if (include_histograms) {
        for (std::size_t k = 1; k <= kMaxHistogramWordSize; ++k) {
            const std::string source = "histogram(k=" + std::to_string(k) + ")";
            for (const auto& word : KmerHistogram::words(k)) {
                schema.entries_.push_back({"freq_" + word, source});
            }
        }
    }
    schema.version_ = "kmernet-features/1+" + std::to_string(schema.entries_.size());
    return schema;
}

std::vector<std::string> FeatureSchema::names() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.name);
    return out;
}

bool supports_standard_features(const SequenceRecord& record) {
    return record.size() >= kMinFeatureSequenceLength;
}

FeatureVector extract_features(const SequenceRecord& record, const FeatureOptions& options) {
    if (!supports_standard_features(record)) {
        throw Error("sequence too short for standard feature set (record " + record.id +
                    ", length " + std::to_string(record.size()) + ")");
    }
    FeatureVector out{record.id, record.label, {}};
    out.values.reserve(kNetworkFeatureCount + kEntropyFeatureCount +
                       (options.include_histograms ? kHistogramFeatureCount : 0));
    for (const auto& [config, graph] : standard_network_set(record)) {
        const auto values = measure_graph(graph).values();
        out.values.insert(out.values.end(), values.begin(), values.end());
    }
    for (std::size_t k = 1; k <= kMaxHistogramWordSize; ++k) {
        const auto values = entropy_features(record, k, options.window_length).values();
        out.values.insert(out.values.end(), values.begin(), values.end());
    }
    if (options.include_histograms) {
        for (std::size_t k = 1; k <= kMaxHistogramWordSize; ++k) {
            const auto freqs = histogram(record, k).frequencies();
            out.values.insert(out.values.end(), freqs.begin(), freqs.end());
        }
    }
    return out;
}

std::vector<FeatureVector> extract_all(const std::vector<SequenceRecord>& records,
                                       const FeatureOptions& options, unsigned threads) {
    std::vector<FeatureVector> out(records.size());
    std::vector<std::exception_ptr> errors(records.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < records.size(); i = next++) {
            try {
                out[i] = extract_features(records[i], options);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned n_threads = std::max(1u, std::min<unsigned>(threads, records.size()));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

std::string format_value(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    if (ec != std::errc{}) throw Error("cannot format value");
    return std::string(buf, end);
}

namespace {

void check_schema(const std::vector<FeatureVector>& vectors, const FeatureSchema& schema) {
    for (const auto& v : vectors) {
        if (v.values.size() != schema.size()) {
            throw Error("schema mismatch: vector " + v.id + " has " +
                        std::to_string(v.values.size()) + " values, schema has " +
                        std::to_string(schema.size()));
        }
    }
}

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

bool arff_needs_quotes(std::string_view s) {
    if (s.empty()) return true;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '{' || c == '}' ||
            c == '\'' || c == '"' || c == '%' || c == '\\') {
            return true;
        }
    }
    return false;
}

std::string arff_token(std::string_view s) {
    if (!arff_needs_quotes(s)) return std::string(s);
    std::string out = "'";
    for (char c : s) {
        if (c == '\'' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('\'');
    return out;
}

double parse_number(std::string_view text, std::string_view context) {
    double value = 0.0;
    auto first = text.data();
    auto last = text.data() + text.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw Error("invalid numeric value '" + std::string(text) + "' in " + std::string(context));
    }
    return value;
}

// RFC-4180 records: quoted fields may contain commas, doubled quotes and
// newlines. Returns false at end of input.
bool read_csv_record(std::istream& in, std::vector<std::string>& fields) {
    fields.clear();
    if (in.peek() == std::char_traits<char>::eof()) return false;
    std::string field;
    bool quoted = false;
    bool was_quoted = false;
    char c;
    while (in.get(c)) {
        if (quoted) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get(c);
                    field.push_back('"');
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
            continue;
        }
        if (c == '"' && field.empty() && !was_quoted) {
            quoted = was_quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
            was_quoted = false;
        } else if (c == '\n') {
            break;
        } else if (c != '\r') {
            field.push_back(c);
        }
    }
    if (quoted) throw Error("malformed CSV: unterminated quoted field");
    fields.push_back(std::move(field));
    return true;
}

}  // namespace

std::string export_csv(const std::vector<FeatureVector>& vectors, const FeatureSchema& schema) {
    check_schema(vectors, schema);
    std::ostringstream out;
    out << "id";
    for (const auto& e : schema.entries()) out << ',' << csv_field(e.name);
    out << ",class\n";
    for (const auto& v : vectors) {
        out << csv_field(v.id);
        for (double x : v.values) out << ',' << format_value(x);
        out << ',' << (v.label ? csv_field(*v.label) : std::string()) << '\n';
    }
    return out.str();
}

std::string export_arff(const std::vector<FeatureVector>& vectors, const FeatureSchema& schema,
                        std::string_view relation_name, const std::vector<std::string>& classes) {
    check_schema(vectors, schema);
    std::vector<std::string> class_values = classes;
    std::unordered_set<std::string> known(class_values.begin(), class_values.end());
    for (const auto& v : vectors) {
        if (!v.label) throw Error("label required for ARFF (vector " + v.id + ")");
        if (classes.empty()) {
            if (known.insert(*v.label).second) class_values.push_back(*v.label);
        } else if (!known.contains(*v.label)) {
            throw Error("label '" + *v.label + "' is not a declared class");
        }
    }
    if (class_values.empty()) throw Error("ARFF export needs at least one class");

    std::ostringstream out;
    out << "% schema " << schema.version() << '\n';
    out << "@relation " << arff_token(relation_name) << "\n\n";
    for (const auto& e : schema.entries()) out << "@attribute " << arff_token(e.name) << " numeric\n";
    out << "@attribute class {";
    for (std::size_t i = 0; i < class_values.size(); ++i) {
        out << (i ? "," : "") << arff_token(class_values[i]);
    }
    out << "}\n\n@data\n";
    for (const auto& v : vectors) {
        for (double x : v.values) out << format_value(x) << ',';
        out << arff_token(*v.label) << '\n';
    }
    return out.str();
}

FeatureTable parse_csv(std::istream& in) {
    FeatureTable table;
    std::vector<std::string> fields;
    if (!read_csv_record(in, fields)) throw Error("empty feature file");
    if (fields.size() < 2 || fields.front() != "id" || fields.back() != "class") {
        throw Error("malformed feature CSV header (expected id,...,class)");
    }
    table.feature_names.assign(fields.begin() + 1, fields.end() - 1);
    std::size_t line = 1;
    while (read_csv_record(in, fields)) {
        ++line;
        if (fields.size() == 1 && fields[0].empty()) continue;
        if (fields.size() != table.feature_names.size() + 2) {
            throw Error("feature CSV row " + std::to_string(line) + " has " +
                        std::to_string(fields.size()) + " columns, expected " +
                        std::to_string(table.feature_names.size() + 2));
        }
        FeatureVector v;
        v.id = fields.front();
        if (!fields.back().empty()) v.label = fields.back();
        v.values.reserve(table.feature_names.size());
        for (std::size_t i = 1; i + 1 < fields.size(); ++i) {
            v.values.push_back(parse_number(fields[i], "CSV row " + std::to_string(line)));
        }
        table.rows.push_back(std::move(v));
    }
    return table;
}

FeatureTable parse_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_csv(in);
}

namespace {

// Tokenizer for ARFF header and data lines: whitespace/comma separated,
// single or double quotes with backslash escapes, and {...} groups.
class ArffLine {
public:
    explicit ArffLine(std::string_view line) : s_(line) {}

    void skip_space() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool at_end() {
        skip_space();
        return pos_ >= s_.size();
    }
    char peek() {
        skip_space();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    void expect(char c) {
        if (peek() != c) throw Error(std::string("malformed ARFF: expected '") + c + "'");
        ++pos_;
    }
    // A bare token ends at whitespace, ',', '{' or '}'.
    std::string token() {
        skip_space();
        if (pos_ >= s_.size()) throw Error("malformed ARFF: unexpected end of line");
        char q = s_[pos_];
        if (q == '\'' || q == '"') {
            ++pos_;
            std::string out;
            while (pos_ < s_.size() && s_[pos_] != q) {
                if (s_[pos_] == '\\' && pos_ + 1 < s_.size()) ++pos_;
                out.push_back(s_[pos_++]);
            }
            if (pos_ >= s_.size()) throw Error("malformed ARFF: unterminated quote");
            ++pos_;
            return out;
        }
        std::size_t start = pos_;
        while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) &&
               s_[pos_] != ',' && s_[pos_] != '{' && s_[pos_] != '}') {
            ++pos_;
        }
        if (start == pos_) throw Error("malformed ARFF: empty token");
        return std::string(s_.substr(start, pos_ - start));
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
};

std::string lower(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

}  // namespace

FeatureTable parse_arff(std::istream& in) {
    FeatureTable table;
    std::vector<std::string> class_values;
    bool have_relation = false;
    bool have_class = false;
    bool in_data = false;
    std::string line;
    std::size_t line_no = 0;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        ArffLine tok(line);
        if (tok.at_end() || tok.peek() == '%') continue;
        if (!in_data) {
            const std::string keyword = lower(tok.token());
            if (keyword == "@relation") {
                tok.token();
                have_relation = true;
            } else if (keyword == "@attribute") {
                if (!have_relation) throw Error("malformed ARFF: @attribute before @relation");
                if (have_class) throw Error("malformed ARFF: class must be the last attribute");
                std::string name = tok.token();
                if (tok.peek() == '{') {
                    tok.expect('{');
                    while (true) {
                        class_values.push_back(tok.token());
                        if (tok.peek() == ',') {
                            tok.expect(',');
                            continue;
                        }
                        tok.expect('}');
                        break;
                    }
                    have_class = true;
                } else {
                    const std::string type = lower(tok.token());
                    if (type != "numeric" && type != "real" && type != "integer") {
                        throw Error("unsupported ARFF attribute type '" + type + "'");
                    }
                    table.feature_names.push_back(std::move(name));
                }
            } else if (keyword == "@data") {
                if (!have_class) throw Error("malformed ARFF: no nominal class attribute");
                in_data = true;
            } else {
                throw Error("malformed ARFF: unexpected line " + std::to_string(line_no));
            }
            continue;
        }
        ++row;
        FeatureVector v;
        v.id = "row" + std::to_string(row);
        for (std::size_t i = 0; i <= table.feature_names.size(); ++i) {
            if (i > 0) tok.expect(',');
            std::string value = tok.token();
            if (value == "?") throw Error("missing values are not supported (line " + std::to_string(line_no) + ")");
            if (i < table.feature_names.size()) {
                v.values.push_back(parse_number(value, "ARFF line " + std::to_string(line_no)));
            } else {
                if (std::find(class_values.begin(), class_values.end(), value) == class_values.end()) {
                    throw Error("undeclared class value '" + value + "' on line " + std::to_string(line_no));
                }
                v.label = std::move(value);
            }
        }
        if (!tok.at_end()) throw Error("malformed ARFF: extra values on line " + std::to_string(line_no));
        table.rows.push_back(std::move(v));
    }
    if (!in_data) throw Error("malformed ARFF: missing @data section");
    return table;
}

FeatureTable parse_arff(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_arff(in);
}

FeatureTable read_feature_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read feature file " + path.string());
    const auto ext = lower(path.extension().string());
    if (ext == ".csv") return parse_csv(in);
    if (ext == ".arff") return parse_arff(in);
    throw Error("unknown feature file extension '" + ext + "' (expected .csv or .arff)");
}

}  // namespace kmernet

#include "dcx/ingest.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dcx/sha256.hpp"

namespace dcx {

std::string BinSpec::label_for(const Rational& value) const {
    if (edges.empty()) throw IngestError("bin spec has no edges");
    if (value < edges.front())
        throw IngestError("value " + to_string(value) + " lies below the first bin edge " +
                          to_string(edges.front()));
    size_t bin = edges.size() - 1;
    for (size_t i = 0; i + 1 < edges.size(); ++i)
        if (value < edges[i + 1]) {
            bin = i;
            break;
        }
    return std::to_string(bin);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cell);
            cell.clear();
        } else if (c != '\r') {
            cell.push_back(c);
        }
    }
    out.push_back(cell);
    return out;
}

}  // namespace

DataTable ingest_csv_text(const Schema& schema, const AttributeList& list,
                          const std::string& text, const IngestOptions& options) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw IngestError("empty file");
    std::vector<std::string> header = split_csv_line(line);
    if (header != list) {
        std::string want = list_to_string(list);
        std::string got = list_to_string(header);
        throw IngestError("header mismatch: expected " + want + ", found " + got);
    }
    std::vector<const ValueSpace*> spaces;
    for (const auto& name : list) spaces.push_back(&schema.space_of(name));
    std::vector<const BinSpec*> bins(list.size(), nullptr);
    for (size_t i = 0; i < list.size(); ++i) {
        auto it = options.bins.find(list[i]);
        if (it != options.bins.end()) bins[i] = &it->second;
    }

    DataTable table;
    table.list = list;
    size_t rows = 0;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != list.size())
            throw IngestError("line " + std::to_string(line_no) + ": expected " +
                              std::to_string(list.size()) + " cells, found " +
                              std::to_string(cells.size()));
        Tuple tuple(list.size());
        for (size_t i = 0; i < list.size(); ++i) {
            std::string label = cells[i];
            if (bins[i]) {
                Rational v;
                try {
                    v = parse_rational(label);
                } catch (const std::invalid_argument&) {
                    throw IngestError("line " + std::to_string(line_no) + ", column '" + list[i] +
                                      "': '" + label + "' is not numeric but the column is binned");
                }
                label = bins[i]->label_for(v);
            }
            if (spaces[i]->index_of(label) < 0)
                throw IngestError("line " + std::to_string(line_no) + ", column '" + list[i] +
                                  "': unknown label '" + label + "'");
            tuple[i] = std::move(label);
        }
        bool keep = true;
        for (const auto& [attr, wanted] : options.filters) {
            for (size_t i = 0; i < list.size(); ++i)
                if (list[i] == attr && tuple[i] != wanted) {
                    keep = false;
                    break;
                }
            if (!keep) break;
        }
        if (!keep) continue;
        table.add_mass(tuple, 1);
        ++rows;
    }
    if (rows == 0) throw IngestError("no data rows survived ingestion");
    if (options.normalize) {
        DataTable scaled;
        scaled.list = table.list;
        for (const auto& [tuple, mass] : table.atoms) scaled.add_mass(tuple, mass / Rational(rows));
        return scaled;
    }
    return table;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IngestError("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

DataTable ingest_csv_file(const Schema& schema, const AttributeList& list,
                          const std::string& path, const IngestOptions& options) {
    try {
        return ingest_csv_text(schema, list, read_file(path), options);
    } catch (const IngestError& e) {
        throw IngestError(path + ": " + e.what());
    }
}

namespace {

IngestOptions ingest_options_from_json(const Json& j, const std::string& where) {
    IngestOptions opts;
    if (j.contains("normalize")) {
        if (!j["normalize"].is_boolean()) throw ParseError(where + ".normalize: expected a bool");
        opts.normalize = j["normalize"].get<bool>();
    }
    if (j.contains("bins")) {
        const Json& bins = j["bins"];
        if (!bins.is_object())
            throw ParseError(where + ".bins: expected an object keyed by attribute");
        for (const auto& [attr, spec] : bins.items()) {
            if (!spec.is_array()) throw ParseError(where + ".bins." + attr + ": expected edges");
            BinSpec bs;
            for (size_t i = 0; i < spec.size(); ++i)
                bs.edges.push_back(
                    rational_from_json(spec[i], where + ".bins." + attr + "[" + std::to_string(i) + "]"));
            for (size_t i = 0; i + 1 < bs.edges.size(); ++i)
                if (!(bs.edges[i] < bs.edges[i + 1]))
                    throw ParseError(where + ".bins." + attr + ": edges must increase strictly");
            opts.bins[attr] = std::move(bs);
        }
    }
    if (j.contains("filter")) {
        const Json& f = j["filter"];
        if (!f.is_object()) throw ParseError(where + ".filter: expected {attribute: label}");
        for (const auto& [attr, label] : f.items()) {
            if (!label.is_string()) throw ParseError(where + ".filter." + attr + ": expected a label");
            opts.filters.emplace_back(attr, label.get<std::string>());
        }
    }
    return opts;
}

}  // namespace

ProjectConfig load_project_config(const std::string& path) {
    Json j;
    try {
        j = Json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    } catch (const IngestError& e) {
        throw ParseError(e.what());  // an unreadable config is a config error
    }
    namespace fs = std::filesystem;
    fs::path base = fs::path(path).parent_path();

    ProjectConfig config;
    if (!j.contains("schema")) throw ParseError("config: missing field 'schema'");
    if (j["schema"].is_string()) {
        config.schema_path = (base / j["schema"].get<std::string>()).string();
        try {
            config.schema = schema_from_json(Json::parse(read_file(config.schema_path)));
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(config.schema_path + ": " + e.what());
        } catch (const IngestError& e) {
            throw ParseError(e.what());
        }
    } else {
        config.schema = schema_from_json(j["schema"]);
    }

    if (!j.contains("tables") || !j["tables"].is_array())
        throw ParseError("config.tables: expected an array");
    std::set<std::string> names;
    for (size_t ti = 0; ti < j["tables"].size(); ++ti) {
        std::string where = "config.tables[" + std::to_string(ti) + "]";
        const Json& jt = j["tables"][ti];
        TableSpec spec;
        if (!jt.contains("name") || !jt["name"].is_string())
            throw ParseError(where + ".name: expected a string");
        spec.name = jt["name"].get<std::string>();
        if (!names.insert(spec.name).second)
            throw ParseError(where + ".name: duplicate table name '" + spec.name + "'");
        if (jt.contains("list")) {
            if (!jt["list"].is_array()) throw ParseError(where + ".list: expected names");
            for (const auto& e : jt["list"]) spec.list.push_back(e.get<std::string>());
        }
        if (jt.contains("csv")) {
            spec.csv_path = (base / jt["csv"].get<std::string>()).string();
            if (spec.list.empty())
                throw ParseError(where + ": csv tables need an explicit 'list'");
        } else if (jt.contains("table")) {
            spec.inline_table = jt["table"];
        } else {
            throw ParseError(where + ": expected 'csv' or 'table'");
        }
        spec.options = ingest_options_from_json(jt, where);
        if (jt.contains("reorder")) {
            std::vector<size_t> sigma;
            for (const auto& e : jt["reorder"]) sigma.push_back(e.get<size_t>());
            spec.reorder = std::move(sigma);
        }
        config.tables.push_back(std::move(spec));
    }

    if (j.contains("options")) {
        const Json& jo = j["options"];
        if (jo.contains("variable_budget"))
            config.variable_budget = jo["variable_budget"].get<size_t>();
        if (jo.contains("closed_under_permutation"))
            config.closed_under_permutation = jo["closed_under_permutation"].get<bool>();
    }
    return config;
}

LoadedProject load_project(const std::string& config_path) {
    LoadedProject project;
    project.config = load_project_config(config_path);
    project.content_hashes["config"] = sha256_hex(read_file(config_path));
    if (!project.config.schema_path.empty())
        project.content_hashes["schema"] = sha256_hex(read_file(project.config.schema_path));

    auto violations = validate_schema(project.config.schema);
    for (const auto& v : violations)
        if (v.severity == "error")
            throw ParseError("schema invalid: " + v.field + ": " + v.message);

    project.complex.schema = project.config.schema;
    project.complex.closed_under_permutation = project.config.closed_under_permutation;
    for (const auto& spec : project.config.tables) {
        DataTable table;
        if (!spec.csv_path.empty()) {
            table = ingest_csv_file(project.config.schema, spec.list, spec.csv_path, spec.options);
            project.content_hashes["table:" + spec.name] = sha256_hex(read_file(spec.csv_path));
        } else {
            table = table_from_json(*spec.inline_table);
            project.content_hashes["table:" + spec.name] = sha256_hex(spec.inline_table->dump());
            auto problems = validate_table(project.config.schema, table);
            if (!problems.empty())
                throw ParseError("table '" + spec.name + "': " + problems.front());
        }
        if (spec.reorder) table = permute(table, *spec.reorder);
        project.tables_by_name[spec.name] = table;
        project.complex.generators.push_back(std::move(table));
    }
    return project;
}

}  // namespace dcx

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dcx/json_io.hpp"
#include "dcx/table.hpp"

namespace dcx {

struct IngestError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Right-open bins over a numeric column: edges e0 < e1 < ... < ek give bins
// [e0,e1), ..., [e_{k-1},ek), [ek,inf), labeled "0", "1", ....
struct BinSpec {
    std::vector<Rational> edges;

    std::string label_for(const Rational& value) const;  // throws IngestError below e0
};

struct IngestOptions {
    bool normalize = false;                    // divide by the ingested row count
    std::map<std::string, BinSpec> bins;       // per attribute name
    // Keep only rows whose cell equals the given label (conjunction).
    std::vector<std::pair<std::string, std::string>> filters;
};

// CSV: comma separated, first row header matching `list` order, UTF-8,
// no quoting (cells containing commas are rejected upstream by splitting).
DataTable ingest_csv_text(const Schema& schema, const AttributeList& list,
                          const std::string& text, const IngestOptions& options = {});

DataTable ingest_csv_file(const Schema& schema, const AttributeList& list,
                          const std::string& path, const IngestOptions& options = {});

// Project configuration: schema + named tables + solve options.
struct TableSpec {
    std::string name;
    AttributeList list;
    std::string csv_path;              // one of csv_path / inline_table
    std::optional<Json> inline_table;  // DataTable JSON
    IngestOptions options;
    std::optional<std::vector<size_t>> reorder;  // applied after ingestion
};

struct ProjectConfig {
    Schema schema;
    std::string schema_path;  // empty when inline
    std::vector<TableSpec> tables;
    size_t variable_budget = 200000;
    bool closed_under_permutation = false;
};

// Loads config JSON; `base_dir` resolves relative paths. Throws ParseError /
// IngestError with field-level context.
ProjectConfig load_project_config(const std::string& path);

// Ingests every table and assembles the generator complex.
struct LoadedProject {
    ProjectConfig config;
    DataComplexGen complex;
    std::map<std::string, DataTable> tables_by_name;
    std::map<std::string, std::string> content_hashes;  // input name -> sha256
};
LoadedProject load_project(const std::string& config_path);

std::string read_file(const std::string& path);  // throws IngestError when unreadable

}  // namespace dcx

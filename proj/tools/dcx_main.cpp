// dcx: measures over product value spaces, joins, and obstruction reports.

#include <CLI11.hpp>
#include <iostream>

#include "dcx/ingest.hpp"
#include "dcx/json_io.hpp"
#include "dcx/sha256.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIngest = 3;
constexpr int kExitBudget = 4;
constexpr int kExitInternal = 5;

using dcx::Json;

Json report_envelope(const std::string& command, const dcx::LoadedProject& project) {
    Json j;
    j["tool"] = "dcx";
    j["report_version"] = 1;
    j["command"] = command;
    Json hashes = Json::object();
    for (const auto& [name, hash] : project.content_hashes) hashes[name] = hash;
    j["inputs"] = std::move(hashes);
    return j;
}

const dcx::DataTable& named_table(const dcx::LoadedProject& project, const std::string& name) {
    auto it = project.tables_by_name.find(name);
    if (it == project.tables_by_name.end())
        throw dcx::ParseError("no table named '" + name + "' in the config");
    return it->second;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

dcx::LPOptions lp_options(const dcx::LoadedProject& project) {
    dcx::LPOptions options;
    options.variable_budget = project.config.variable_budget;
    return options;
}

dcx::Rational parse_slack(const std::string& text) {
    dcx::Rational t = dcx::parse_rational(text);
    if (t < 0) throw dcx::ParseError("slack must be nonnegative");
    return t;
}

int run_validate(const std::string& config_path) {
    // Reports every schema/table violation; exit 2 when any error remains.
    dcx::LoadedProject project = dcx::load_project(config_path);
    Json report = report_envelope("validate", project);
    Json violations = Json::array();
    for (const auto& v : dcx::validate_schema(project.config.schema))
        violations.push_back(Json{{"severity", v.severity}, {"field", v.field},
                                  {"message", v.message}});
    for (const auto& msg : dcx::validate_complex(project.complex))
        violations.push_back(Json{{"severity", "error"}, {"field", "tables"}, {"message", msg}});
    report["violations"] = violations;
    auto alignment = dcx::is_well_aligned(project.complex, 4);
    report["well_aligned_up_to_len4"] = !alignment.has_value();
    if (alignment) report["alignment_failure"] = alignment->describe();
    report["path_connected"] = dcx::is_path_connected(project.complex).connected;
    emit(report);
    for (const auto& v : violations)
        if (v["severity"] == "error") return kExitConfig;
    return kExitOk;
}

int run_marginal(const std::string& config_path, const std::string& table, size_t drop) {
    dcx::LoadedProject project = dcx::load_project(config_path);
    Json report = report_envelope("marginal", project);
    report["table"] = dcx::table_to_json(dcx::marginalize(named_table(project, table), drop));
    emit(report);
    return kExitOk;
}

int run_wasserstein(const std::string& config_path, const std::string& t1, const std::string& t2,
                    bool lossy_decimals) {
    dcx::LoadedProject project = dcx::load_project(config_path);
    dcx::TransportResult r = dcx::optimal_coupling(project.config.schema, named_table(project, t1),
                                                   named_table(project, t2), lp_options(project));
    Json report = report_envelope("wasserstein", project);
    report["distance"] = dcx::to_string(r.cost);
    if (lossy_decimals) report["distance_decimal_lossy"] = dcx::to_decimal_string(r.cost);
    report["coupling"] = dcx::coupling_to_json(r.coupling);
    emit(report);
    return kExitOk;
}

int run_glue(const std::string& config_path, const std::string& t1, const std::string& t2,
             const std::string& overlap_json) {
    dcx::LoadedProject project = dcx::load_project(config_path);
    dcx::JoinProblem p;
    p.t01 = named_table(project, t1);
    p.t02 = named_table(project, t2);
    Json jo;
    try {
        jo = Json::parse(overlap_json);
    } catch (const nlohmann::json::parse_error& e) {
        throw dcx::ParseError(std::string("--overlap: ") + e.what());
    }
    // {"source": [names], "map1": [indices into t1], "map2": [indices into t2]}
    p.i01.source = jo.at("source").get<std::vector<std::string>>();
    p.i02.source = p.i01.source;
    p.i01.target = p.t01.list;
    p.i02.target = p.t02.list;
    for (const auto& e : jo.at("map1")) p.i01.index_map.push_back(e.get<size_t>());
    for (const auto& e : jo.at("map2")) p.i02.index_map.push_back(e.get<size_t>());

    Json report = report_envelope("glue", project);
    report["overlap_consistent"] = dcx::overlap_consistent(p);
    if (!dcx::overlap_consistent(p)) {
        emit(report);
        return kExitOk;  // an obstructed glue is still a computed verdict
    }
    dcx::GlueResult glue = dcx::conditional_glue(p);
    report["table"] = dcx::table_to_json(glue.table);
    report["mu01"] = dcx::inclusion_to_json(glue.merge.mu01);
    report["mu02"] = dcx::inclusion_to_json(glue.merge.mu02);
    emit(report);
    return kExitOk;
}

int run_fill(const std::string& config_path, const std::string& horn_path, bool boundary,
             const std::string& slack_text, bool constructive) {
    dcx::LoadedProject project = dcx::load_project(config_path);
    Json jh;
    try {
        jh = Json::parse(dcx::read_file(horn_path));
    } catch (const nlohmann::json::parse_error& e) {
        throw dcx::ParseError(horn_path + ": " + e.what());
    }
    dcx::HornProblem horn = dcx::horn_from_json(jh);
    if (!slack_text.empty()) horn.slack = parse_slack(slack_text);

    dcx::FillResult fill;
    if (boundary)
        fill = dcx::fill_boundary(project.config.schema, horn, lp_options(project));
    else if (constructive)
        fill = dcx::fill_horn_constructive(project.config.schema, horn, lp_options(project));
    else
        fill = dcx::fill_horn_lp(project.config.schema, horn, lp_options(project));

    Json report = report_envelope(boundary ? "fill-boundary" : "fill-horn", project);
    report["slack"] = dcx::to_string(horn.slack);
    report["fill"] = dcx::fill_result_to_json(fill);
    emit(report);
    if (fill.status == dcx::FillStatus::BudgetExceeded) return kExitBudget;
    return kExitOk;
}

struct SectionSetup {
    dcx::DataSection section;
    std::vector<dcx::AttributeList> cells;
};

SectionSetup section_setup(const dcx::LoadedProject& project, int dim) {
    if (dim < 1) throw dcx::ParseError("--dim must be at least 1");
    SectionSetup setup;
    setup.section = dcx::section_from_complex(project.complex, dim - 1);
    setup.cells = dcx::default_cells(setup.section, project.config.schema);
    if (setup.cells.empty())
        throw dcx::ParseError("no level-" + std::to_string(dim) +
                              " cells are covered by the section");
    return setup;
}

int run_cocycle(const std::string& config_path, int dim, const std::string& slack_text) {
    dcx::LoadedProject project = dcx::load_project(config_path);
    SectionSetup setup = section_setup(project, dim);
    dcx::CocycleReport r =
        dcx::evaluate_cocycle(setup.section, project.complex, setup.cells,
                              parse_slack(slack_text), lp_options(project));
    Json report = report_envelope("cocycle", project);
    report["section"] = dcx::section_to_json(setup.section);
    report["cocycle"] = dcx::cocycle_report_to_json(r);
    emit(report);
    return kExitOk;
}

int run_trichotomy(const std::string& config_path, int dim, const std::string& slack_text) {
    dcx::LoadedProject project = dcx::load_project(config_path);
    SectionSetup setup = section_setup(project, dim);
    dcx::TrichotomyVerdict v =
        dcx::classify_trichotomy(setup.section, project.complex, setup.cells,
                                 parse_slack(slack_text), lp_options(project));
    Json report = report_envelope("trichotomy", project);
    report["trichotomy"] = dcx::trichotomy_to_json(v);
    emit(report);
    return kExitOk;
}

int run_persistence(const std::string& config_path, int dim, bool lossy_decimals) {
    dcx::LoadedProject project = dcx::load_project(config_path);
    SectionSetup setup = section_setup(project, dim);
    dcx::PersistenceResult r =
        dcx::persistence(setup.section, project.complex, setup.cells, lp_options(project));
    dcx::TrichotomyVerdict at0 = dcx::classify_trichotomy(
        setup.section, project.complex, setup.cells, dcx::Rational(0), lp_options(project));

    Json report = report_envelope("persistence", project);
    report["dim"] = dim;
    report["t_n"] = r.t_n ? Json(dcx::to_string(*r.t_n)) : Json("infinity");
    report["t_prime_n"] = r.t_prime_n ? Json(dcx::to_string(*r.t_prime_n)) : Json("infinity");
    if (lossy_decimals) {
        if (r.t_n) report["t_n_decimal_lossy"] = dcx::to_decimal_string(*r.t_n);
        if (r.t_prime_n) report["t_prime_n_decimal_lossy"] = dcx::to_decimal_string(*r.t_prime_n);
    }
    report["case_at_0"] = at0.case_number;
    report["details"] = dcx::persistence_to_json(r);
    emit(report);
    return kExitOk;
}

int run_homology(const std::string& config_path, int dim) {
    dcx::LoadedProject project = dcx::load_project(config_path);
    size_t max_len = 0;
    for (const auto& g : project.complex.generators)
        max_len = std::max(max_len, g.list.size());
    std::set<dcx::AttributeList> cells;
    for (const auto& t : dcx::closure_up_to(project.complex, static_cast<int>(max_len)))
        if (!t.list.empty()) cells.insert(t.list);
    size_t rank = dcx::homology_rank(cells, static_cast<size_t>(dim));
    Json report = report_envelope("homology", project);
    report["dim"] = dim;
    report["rank"] = rank;
    emit(report);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"data tables as measures: joins, obstructions, persistence"};
    app.require_subcommand(1);

    std::string config_path;
    std::string table, t1, t2, overlap_json, horn_path, slack_text;
    size_t drop = 0;
    int dim = 2;
    bool constructive = false;
    bool lossy_decimals = false;

    auto add_config = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "project config JSON")->required();
    };

    CLI::App* validate = app.add_subcommand("validate", "check schema, tables, and alignment");
    add_config(validate);

    CLI::App* marginal = app.add_subcommand("marginal", "marginalize a table");
    add_config(marginal);
    marginal->add_option("--table", table)->required();
    marginal->add_option("--drop", drop, "position to integrate out")->required();

    CLI::App* wass = app.add_subcommand("wasserstein", "exact transport distance");
    add_config(wass);
    wass->add_option("--t1", t1)->required();
    wass->add_option("--t2", t2)->required();
    wass->add_flag("--lossy-decimals", lossy_decimals,
                   "also print a decimal approximation (lossy)");

    CLI::App* glue = app.add_subcommand("glue", "conditional-product join of two tables");
    add_config(glue);
    glue->add_option("--t1", t1)->required();
    glue->add_option("--t2", t2)->required();
    glue->add_option("--overlap", overlap_json,
                     "JSON {\"source\":[names],\"map1\":[idx],\"map2\":[idx]}")
        ->required();

    CLI::App* fill_horn = app.add_subcommand("fill-horn", "fill a horn exactly");
    add_config(fill_horn);
    fill_horn->add_option("--horn", horn_path, "horn problem JSON file")->required();
    fill_horn->add_flag("--constructive", constructive, "use the constructive filler");

    CLI::App* fill_boundary = app.add_subcommand("fill-boundary", "fill a full boundary");
    add_config(fill_boundary);
    fill_boundary->add_option("--horn", horn_path, "boundary problem JSON file")->required();
    fill_boundary->add_option("--slack", slack_text, "allowed per-face transport cost");

    CLI::App* cocycle = app.add_subcommand("cocycle", "evaluate the obstruction cocycle");
    add_config(cocycle);
    cocycle->add_option("--dim", dim, "cell dimension n")->required();
    cocycle->add_option("--slack", slack_text)->default_val("0");

    CLI::App* trichotomy = app.add_subcommand("trichotomy", "classify the obstruction");
    add_config(trichotomy);
    trichotomy->add_option("--dim", dim)->required();
    trichotomy->add_option("--slack", slack_text)->default_val("0");

    CLI::App* persistence = app.add_subcommand("persistence", "minimal slacks t_n and t'_n");
    add_config(persistence);
    persistence->add_option("--dim", dim)->required();
    persistence->add_flag("--lossy-decimals", lossy_decimals,
                          "also print decimal approximations (lossy)");

    CLI::App* homology = app.add_subcommand("homology", "Z/2 Betti number of the attribute base");
    add_config(homology);
    homology->add_option("--dim", dim)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return run_validate(config_path);
        if (marginal->parsed()) return run_marginal(config_path, table, drop);
        if (wass->parsed()) return run_wasserstein(config_path, t1, t2, lossy_decimals);
        if (glue->parsed()) return run_glue(config_path, t1, t2, overlap_json);
        if (fill_horn->parsed()) return run_fill(config_path, horn_path, false, slack_text, constructive);
        if (fill_boundary->parsed()) return run_fill(config_path, horn_path, true, slack_text, false);
        if (cocycle->parsed()) return run_cocycle(config_path, dim, slack_text);
        if (trichotomy->parsed()) return run_trichotomy(config_path, dim, slack_text);
        if (persistence->parsed()) return run_persistence(config_path, dim, lossy_decimals);
        if (homology->parsed()) return run_homology(config_path, dim);
    } catch (const dcx::BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const dcx::IngestError& e) {
        std::cerr << "ingestion error: " << e.what() << "\n";
        return kExitIngest;
    } catch (const dcx::ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::out_of_range& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::logic_error& e) {
        std::cerr << "internal solver invariant violated: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitOk;
}

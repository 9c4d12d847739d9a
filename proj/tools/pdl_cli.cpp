// Command-line front end: model checking, satisfiability, parameters,
// treewidth, reduction generators and table encoding over PDL formulas.
// Exit codes: 0 = yes/success, 1 = no, 2 = error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pdl/graphs.hpp"
#include "pdl/mc.hpp"
#include "pdl/random.hpp"
#include "pdl/reductions.hpp"
#include "pdl/report.hpp"
#include "pdl/semantics.hpp"
#include "pdl/solvers.hpp"
#include "pdl/team.hpp"

using namespace pdl;

namespace {

struct GlobalFlags {
    bool json = false;
    std::string mode = "lax";
    std::string bottom = "empty";
    uint64_t seed = 0; // reserved for generator-backed commands
    int max_team = 12; // brute MC cap; the label algorithm tolerates twice this
    int max_vars = 24;
    bool parallel = true;
};

SplitMode split_mode(const GlobalFlags& g) {
    return g.mode == "strict" ? SplitMode::Strict : SplitMode::Lax;
}
BottomMode bottom_mode(const GlobalFlags& g) {
    return g.bottom == "never" ? BottomMode::Never : BottomMode::EmptyTeam;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Formula formula_arg(const std::string& inline_text, const std::string& file) {
    std::string text = inline_text;
    if (!file.empty()) text = read_file(file);
    if (text.find_first_not_of(" \t\r\n") == std::string::npos)
        throw IoError("empty formula");
    return parse(text);
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

void emit(const GlobalFlags& g, RunReport& report, const std::string& text) {
    if (g.json)
        std::cout << report.to_json().dump(2) << "\n";
    else
        std::cout << text << "\n";
}

nlohmann::json witness_json(const Witness& w) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [var, val] : w) j[var] = val ? 1 : 0;
    return j;
}

std::string witness_text(const Witness& w) {
    std::string s;
    for (const auto& [var, val] : w) {
        if (!s.empty()) s += " ";
        s += var + ":" + (val ? "1" : "0");
    }
    return s;
}

int run_mc(const GlobalFlags& g, const std::string& team_file, const std::string& formula,
           const std::string& formula_file, const std::string& algo, bool want_certificate,
           bool self_check) {
    Timer timer;
    Team team = load_team(team_file);
    Formula f = formula_arg(formula, formula_file);

    bool answer;
    std::optional<std::vector<SplitChoice>> certificate;
    McOptions mopts;
    mopts.mode = split_mode(g);
    mopts.bottom = bottom_mode(g);
    mopts.max_team = 2 * g.max_team;
    mopts.parallel = g.parallel;
    EvalOptions eopts;
    eopts.mode = mopts.mode;
    eopts.bottom = mopts.bottom;
    eopts.max_team = g.max_team;

    if (algo == "brute") {
        answer = evaluate(team, f, eopts);
    } else {
        McResult r = mc_teamsize(team, f, mopts, want_certificate);
        answer = r.satisfied;
        certificate = r.certificate;
    }
    if (self_check) {
        bool brute = evaluate(team, f, eopts);
        bool labels = mc_teamsize(team, f, mopts).satisfied;
        if (brute != labels) throw Error("self-check failed: algorithms disagree");
    }

    RunReport rep;
    rep.command = "mc";
    rep.algorithm = algo;
    rep.mode = g.mode;
    rep.answer = answer;
    rep.parameters = parameter_report_json(parameters(f, team));
    if (certificate) {
        nlohmann::json c = nlohmann::json::array();
        for (const auto& sc : *certificate)
            c.push_back({{"occurrence", sc.occurrence},
                         {"target", sc.target},
                         {"left", sc.left},
                         {"right", sc.right}});
        rep.result["certificate"] = std::move(c);
    }
    rep.elapsed_ms = timer.ms();
    rep.exit_code = answer ? 0 : 1;

    std::string text = answer ? "yes" : "no";
    if (certificate) {
        text += "\n";
        for (const auto& sc : *certificate) {
            text += "split@" + std::to_string(sc.occurrence) + ": {";
            for (int i = 0; i < team.size(); ++i)
                if (sc.left & (uint32_t(1) << i)) text += " " + team.member(i).to_string();
            text += " } | {";
            for (int i = 0; i < team.size(); ++i)
                if (sc.right & (uint32_t(1) << i)) text += " " + team.member(i).to_string();
            text += " }\n";
        }
        while (!text.empty() && text.back() == '\n') text.pop_back();
    }
    emit(g, rep, text);
    return rep.exit_code;
}

int run_sat(const GlobalFlags& g, const std::string& formula, const std::string& formula_file,
            const std::string& algo, bool show_witness, bool self_check) {
    Timer timer;
    Formula f = formula_arg(formula, formula_file);
    SatOptions sopts;
    sopts.max_vars = g.max_vars;
    sopts.parallel = g.parallel;
    sopts.bottom = bottom_mode(g);

    std::optional<Witness> w =
        algo == "brute" ? sat_brute(f, sopts) : sat_splits(f, sopts);
    if (self_check) {
        if (sat_brute(f, sopts).has_value() != sat_splits(f, sopts).has_value())
            throw Error("self-check failed: algorithms disagree");
    }

    RunReport rep;
    rep.command = "sat";
    rep.algorithm = algo;
    rep.answer = w.has_value();
    rep.parameters = parameter_report_json(parameters(f));
    if (w && show_witness) rep.result["witness"] = witness_json(*w);
    rep.elapsed_ms = timer.ms();
    rep.exit_code = w ? 0 : 1;

    std::string text = w ? "yes" : "no";
    if (w && show_witness) text += "\n" + witness_text(*w);
    emit(g, rep, text);
    return rep.exit_code;
}

int run_msat(const GlobalFlags& g, const std::string& formula, const std::string& formula_file,
             long long m, const std::string& universe_csv) {
    Timer timer;
    Formula f = formula_arg(formula, formula_file);
    SatOptions sopts;
    sopts.max_vars = g.max_vars;
    sopts.parallel = g.parallel;
    sopts.bottom = bottom_mode(g);

    std::vector<std::string> universe = variables_of(f);
    if (!universe_csv.empty()) {
        universe.clear();
        std::istringstream ss(universe_csv);
        std::string tok;
        while (std::getline(ss, tok, ',')) universe.push_back(tok);
    }
    std::optional<Team> team = msat(f, m, universe, sopts);

    RunReport rep;
    rep.command = "msat";
    rep.algorithm = "exact-size-scan";
    rep.answer = team.has_value();
    rep.parameters = parameter_report_json(parameters(f));
    if (team) rep.result["team"] = nlohmann::json::parse(team_to_json(*team));
    rep.elapsed_ms = timer.ms();
    rep.exit_code = team ? 0 : 1;

    std::string text = team ? "yes" : "no";
    if (team) {
        for (const auto& member : team->members()) text += "\n" + member.to_string();
    }
    emit(g, rep, text);
    return rep.exit_code;
}

int run_params(const GlobalFlags& g, const std::string& formula, const std::string& formula_file,
               const std::string& team_file) {
    Timer timer;
    Formula f = formula_arg(formula, formula_file);
    ParameterReport p;
    if (!team_file.empty()) {
        Team t = load_team(team_file);
        p = parameters(f, t);
    } else {
        p = parameters(f);
    }
    RunReport rep;
    rep.command = "params";
    rep.algorithm = "syntax-walk";
    rep.parameters = parameter_report_json(p);
    rep.elapsed_ms = timer.ms();
    rep.exit_code = 0;

    std::ostringstream text;
    text << "formula-size " << p.formula_size << "\nformula-depth " << p.formula_depth
         << "\n#splits " << p.splits << "\ndep-arity " << p.arity << "\n#variables "
         << p.variable_count;
    if (p.team_size) text << "\nteam-size " << *p.team_size;
    emit(g, rep, text.str());
    return 0;
}

int run_tw(const GlobalFlags& g, const std::string& formula, const std::string& formula_file,
           const std::string& team_file, const std::string& graph_kind,
           const std::string& method, bool triangles, const std::string& graph_out,
           const std::string& decomp_out, int exact_cap) {
    Timer timer;
    Formula f = formula_arg(formula, formula_file);
    GraphOptions gopts;
    gopts.triangles = triangles;
    Graph graph;
    if (graph_kind == "gaifman") {
        if (team_file.empty()) throw Error("--graph gaifman needs --team");
        Team t = load_team(team_file);
        graph = gaifman_graph(t, f, gopts);
    } else {
        graph = circuit_graph(f, gopts);
    }

    int width;
    TreeDecomposition decomposition;
    bool have_decomposition = false;
    if (method == "exact") {
        TreewidthOptions topts;
        topts.max_vertices = exact_cap;
        width = exact_treewidth(graph, topts);
    } else {
        decomposition = tree_decompose(
            graph, method == "min-degree" ? ElimMethod::MinDegree : ElimMethod::MinFill);
        have_decomposition = true;
        width = decomposition.width();
    }

    if (!graph_out.empty()) {
        std::ofstream out(graph_out);
        if (!out) throw IoError("cannot write " + graph_out);
        write_graph(graph, out);
    }
    if (have_decomposition && !decomp_out.empty()) {
        std::ofstream out(decomp_out);
        if (!out) throw IoError("cannot write " + decomp_out);
        write_decomposition(decomposition, out);
    }

    RunReport rep;
    rep.command = "tw";
    rep.algorithm = method;
    rep.result["width"] = width;
    rep.result["graph"] = graph_kind;
    rep.result["vertices"] = graph.order();
    rep.result["edges"] = graph.edges.size();
    rep.parameters = parameter_report_json(parameters(f));
    rep.elapsed_ms = timer.ms();
    rep.exit_code = 0;
    emit(g, rep, std::to_string(width));
    return 0;
}

int run_reduce(const GlobalFlags& g, const std::string& kind, const std::string& input,
               const std::string& output) {
    Timer timer;
    std::ifstream in(input);
    if (!in) throw IoError("cannot open file: " + input);
    McInstance inst;
    if (kind == "3sat")
        inst = reduce_3sat(parse_dimacs(in));
    else
        inst = reduce_3col(parse_graph(in));

    std::string json_text = instance_to_json(inst);
    if (!output.empty()) {
        std::ofstream out(output);
        if (!out) throw IoError("cannot write " + output);
        out << json_text << "\n";
    }

    RunReport rep;
    rep.command = "reduce";
    rep.algorithm = kind;
    rep.result = nlohmann::json::parse(json_text);
    rep.parameters = parameter_report_json(parameters(inst.formula, inst.team));
    rep.elapsed_ms = timer.ms();
    rep.exit_code = 0;
    emit(g, rep, output.empty() ? json_text : "wrote " + output);
    return 0;
}

int run_encode(const GlobalFlags& g, const std::string& table_file, const std::string& dep_spec) {
    Timer timer;
    std::ifstream in(table_file);
    if (!in) throw IoError("cannot open file: " + table_file);
    EncodedTable table = encode_table_csv(in);

    RunReport rep;
    rep.command = "encode";
    rep.algorithm = "binary-codebooks";
    rep.result["variables"] = table.variables;
    rep.result["team"] = nlohmann::json::parse(team_to_json(table.team));

    std::ostringstream text;
    text << table.variables.size() << " variables, team of " << table.team.size();

    int exit_code = 0;
    if (!dep_spec.empty()) {
        auto semi = dep_spec.find(';');
        if (semi == std::string::npos) throw Error("--dep needs 'A,B;C' form");
        auto split_cols = [](const std::string& s) {
            std::vector<std::string> out;
            std::istringstream ss(s);
            std::string tok;
            while (std::getline(ss, tok, ','))
                if (!tok.empty()) out.push_back(tok);
            return out;
        };
        Formula atom = rewrite_dep_over_columns(table, split_cols(dep_spec.substr(0, semi)),
                                                split_cols(dep_spec.substr(semi + 1)));
        EvalOptions eopts;
        eopts.mode = split_mode(g);
        eopts.bottom = bottom_mode(g);
        eopts.max_team = std::max(g.max_team, table.team.size());
        bool answer = evaluate(table.team, atom, eopts);
        rep.answer = answer;
        rep.result["formula"] = render(atom);
        if (!answer) {
            auto chk = check_dep(table.team, atom->premise, atom->conclusion);
            if (chk.witness) {
                auto row1 = table.decode(chk.witness->first);
                auto row2 = table.decode(chk.witness->second);
                rep.result["witness_rows"] = {row1, row2};
                text << "\nviolated by rows:";
                for (const auto& row : {row1, row2}) {
                    text << "\n ";
                    for (const auto& cell : row) text << " " << cell;
                }
            }
        }
        exit_code = answer ? 0 : 1;
        text << "\n" << render(atom) << "\n" << (answer ? "yes" : "no");
    }

    rep.parameters = nlohmann::json::object();
    rep.elapsed_ms = timer.ms();
    rep.exit_code = exit_code;
    emit(g, rep, text.str());
    return exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"propositional dependence logic toolkit"};
    app.require_subcommand(1);
    GlobalFlags g;
    app.add_flag("--json", g.json, "machine-readable report on stdout");
    app.add_option("--mode", g.mode, "split semantics")
        ->check(CLI::IsMember({"lax", "strict"}))
        ->capture_default_str();
    app.add_option("--bottom", g.bottom, "teams satisfying F: empty team only, or never")
        ->check(CLI::IsMember({"empty", "never"}))
        ->capture_default_str();
    app.add_option("--seed", g.seed, "seed for generator-backed commands");
    app.add_option("--max-team", g.max_team, "brute-force team cap")->capture_default_str();
    app.add_option("--max-vars", g.max_vars, "variable enumeration cap")->capture_default_str();
    app.add_flag("!--serial", g.parallel, "disable OpenMP kernels");

    // mc
    auto* mc = app.add_subcommand("mc", "model checking: does the team satisfy the formula?");
    std::string team_file, formula, formula_file, algo = "teamsize";
    bool want_certificate = false, self_check = false;
    mc->add_option("--team", team_file, "team file (.json or .csv)")->required();
    mc->add_option("--formula", formula, "formula text");
    mc->add_option("--formula-file", formula_file, "file with the formula");
    mc->add_option("--algo", algo, "algorithm")
        ->check(CLI::IsMember({"brute", "teamsize"}))
        ->capture_default_str();
    mc->add_flag("--certificate", want_certificate, "print the split certificate on yes");
    mc->add_flag("--self-check", self_check, "run both algorithms and compare");

    // sat
    auto* sat = app.add_subcommand("sat", "satisfiability by a nonempty team");
    std::string s_formula, s_formula_file, s_algo = "splits";
    bool s_witness = false, s_self_check = false;
    sat->add_option("--formula", s_formula, "formula text");
    sat->add_option("--formula-file", s_formula_file, "file with the formula");
    sat->add_option("--algo", s_algo, "algorithm")
        ->check(CLI::IsMember({"brute", "splits"}))
        ->capture_default_str();
    sat->add_flag("--witness", s_witness, "print a satisfying assignment");
    sat->add_flag("--self-check", s_self_check, "run both algorithms and compare");

    // msat
    auto* ms = app.add_subcommand("msat", "satisfiability by a team of exactly size m");
    std::string m_formula, m_formula_file, m_universe;
    long long m_size = 2;
    ms->add_option("--formula", m_formula, "formula text");
    ms->add_option("--formula-file", m_formula_file, "file with the formula");
    ms->add_option("-m,--size", m_size, "required team size")->required();
    ms->add_option("--universe", m_universe, "comma-separated universe (default: VAR(formula))");

    // params
    auto* pc = app.add_subcommand("params", "structural parameters of a formula");
    std::string p_formula, p_formula_file, p_team;
    pc->add_option("--formula", p_formula, "formula text");
    pc->add_option("--formula-file", p_formula_file, "file with the formula");
    pc->add_option("--team", p_team, "optional team file for team-size");

    // tw
    auto* tw = app.add_subcommand("tw", "treewidth of the circuit or Gaifman graph");
    std::string t_formula, t_formula_file, t_team, t_graph = "circuit", t_method = "min-fill";
    std::string t_graph_out, t_decomp_out;
    bool t_triangles = false;
    int t_exact_cap = 12;
    tw->add_option("--formula", t_formula, "formula text");
    tw->add_option("--formula-file", t_formula_file, "file with the formula");
    tw->add_option("--team", t_team, "team file, required for --graph gaifman");
    tw->add_option("--graph", t_graph, "graph representation")
        ->check(CLI::IsMember({"circuit", "gaifman"}))
        ->capture_default_str();
    tw->add_option("--method", t_method, "width computation")
        ->check(CLI::IsMember({"min-fill", "min-degree", "exact"}))
        ->capture_default_str();
    tw->add_flag("--triangles", t_triangles, "also relate operand pairs of a node");
    tw->add_option("--graph-out", t_graph_out, "write the graph (edge-list format)");
    tw->add_option("--decomp-out", t_decomp_out, "write the tree decomposition");
    tw->add_option("--exact-cap", t_exact_cap, "vertex cap for --method exact")
        ->capture_default_str();

    // reduce
    auto* rd = app.add_subcommand("reduce", "hardness-reduction instance generators");
    std::string r_kind, r_input, r_output;
    rd->add_option("kind", r_kind, "reduction")->check(CLI::IsMember({"3sat", "3col"}))->required();
    rd->add_option("input", r_input, "DIMACS file (3sat) or edge list (3col)")->required();
    rd->add_option("-o,--output", r_output, "write instance JSON here instead of stdout");

    // encode
    auto* en = app.add_subcommand("encode", "binary-encode a CSV table into a team");
    std::string e_table, e_dep;
    en->add_option("table", e_table, "CSV file, first row = column names")->required();
    en->add_option("--dep", e_dep, "check dep over columns, e.g. \"Room,Time;Course\"");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*mc) return run_mc(g, team_file, formula, formula_file, algo, want_certificate,
                               self_check);
        if (*sat) return run_sat(g, s_formula, s_formula_file, s_algo, s_witness, s_self_check);
        if (*ms) return run_msat(g, m_formula, m_formula_file, m_size, m_universe);
        if (*pc) return run_params(g, p_formula, p_formula_file, p_team);
        if (*tw) return run_tw(g, t_formula, t_formula_file, t_team, t_graph, t_method,
                               t_triangles, t_graph_out, t_decomp_out, t_exact_cap);
        if (*rd) return run_reduce(g, r_kind, r_input, r_output);
        if (*en) return run_encode(g, e_table, e_dep);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

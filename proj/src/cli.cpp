#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "decomp/model_io.hpp"

namespace decomp {

namespace {

Word split_word(const std::string& text) {
    Word word;
    std::string token;
    for (char c : text) {
        if (c == ',' || c == ' ') {
            if (!token.empty()) {
                word.push_back(token);
                token.clear();
            }
        } else {
            token += c;
        }
    }
    if (!token.empty()) {
        word.push_back(token);
    }
    return word;
}

std::string render_word(const Word& w) {
    std::string out;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i > 0) {
            out += " ";
        }
        out += w[i];
    }
    return out.empty() ? "ε" : out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    out << content;
}

}  // namespace

int cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"decomposability toolkit for multi-agent task automata"};
    app.require_subcommand(1);

    std::string model_path, other_path, out_path, out_dir = ".";
    std::string format = "text", mode = "bisimulation";
    std::string left_word, right_word, left_events, right_events;
    std::vector<std::string> compose_paths, controller_paths;
    int bound = 1;
    size_t agent = 1;
    bool with_oracle = false;

    auto* check = app.add_subcommand("check", "run the decomposability conditions");
    check->add_option("file", model_path)->required();
    check->add_option("--bound", bound, "path reuse bound");
    check->add_flag("--oracle", with_oracle, "also decide the defining property directly");
    check->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* decompose = app.add_subcommand("decompose", "write one projected automaton per agent");
    decompose->add_option("file", model_path)->required();
    decompose->add_option("-o,--out-dir", out_dir);

    auto* project = app.add_subcommand("project", "project onto one agent's alphabet");
    project->add_option("file", model_path)->required();
    project->add_option("--agent", agent)->required();
    project->add_option("--format", format)->check(CLI::IsMember({"text", "dot"}));

    auto* compose_cmd = app.add_subcommand("compose", "parallel composition of automata");
    compose_cmd->add_option("files", compose_paths)->required()->expected(-2);
    compose_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "dot"}));

    auto* bisim = app.add_subcommand("bisim", "decide bisimilarity of two automata");
    bisim->add_option("left", model_path)->required();
    bisim->add_option("right", other_path)->required();

    auto* interleave_cmd = app.add_subcommand("interleave", "synchronized interleaving of two strings");
    interleave_cmd->add_option("left", left_word)->required();
    interleave_cmd->add_option("right", right_word)->required();
    interleave_cmd->add_option("--left-events", left_events, "alphabet of the left string");
    interleave_cmd->add_option("--right-events", right_events, "alphabet of the right string");

    auto* verify = app.add_subcommand("verify-team", "check the composed closed loops against the task");
    verify->add_option("file", model_path)->required();
    verify->add_option("--mode", mode)->check(CLI::IsMember({"bisimulation", "simulation"}));
    verify->add_option("--controller", controller_paths,
                       "controller automaton files, assigned to agents in order");

    auto* diagnose_cmd = app.add_subcommand("diagnose", "suggest alphabet repairs");
    diagnose_cmd->add_option("file", model_path)->required();
    diagnose_cmd->add_option("--bound", bound);

    auto* export_dot = app.add_subcommand("export-dot", "emit a Graphviz rendering");
    export_dot->add_option("file", model_path)->required();
    export_dot->add_option("-o,--output", out_path);

    std::vector<const char*> argv{"decomp"};
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*check) {
            ModelDocument doc = load_model(model_path);
            DecomposabilityReport report =
                check_decomposable(doc.automaton, doc.distribution, bound, with_oracle);
            ReportDocument rendered = make_report_document(doc.name, report);
            out << (format == "json" ? report_to_json(rendered) : report_to_text(rendered));
            if (format == "json") {
                out << "\n";
            }
            if (with_oracle && !report.oracle_agrees.value_or(true)) {
                err << "error: condition verdict disagrees with the direct check\n";
                return 2;
            }
            return report.overall ? 0 : 1;
        }
        if (*decompose) {
            ModelDocument doc = load_model(model_path);
            for (size_t i = 1; i <= doc.distribution.agent_count(); ++i) {
                Automaton projection =
                    project_automaton(doc.automaton, doc.distribution.alphabet_of(i));
                ModelDocument local{doc.name + "-agent" + std::to_string(i), projection,
                                    EventDistribution({projection.alphabet()})};
                std::string path = out_dir + "/" + local.name + ".aut";
                write_file(path, serialize_model(local));
                out << path << "\n";
            }
            return 0;
        }
        if (*project) {
            ModelDocument doc = load_model(model_path);
            Automaton projection =
                project_automaton(doc.automaton, doc.distribution.alphabet_of(agent));
            if (format == "dot") {
                out << emit_dot(projection);
            } else {
                ModelDocument local{doc.name + "-agent" + std::to_string(agent), projection,
                                    EventDistribution({projection.alphabet()})};
                out << serialize_model(local);
            }
            return 0;
        }
        if (*compose_cmd) {
            std::vector<Automaton> parts;
            for (const auto& path : compose_paths) {
                parts.push_back(load_model(path).automaton);
            }
            Automaton composed = compose_all(parts);
            if (format == "dot") {
                out << emit_dot(composed);
            } else {
                ModelDocument doc{"composed", composed, EventDistribution({composed.alphabet()})};
                out << serialize_model(doc);
            }
            return 0;
        }
        if (*bisim) {
            Automaton left = load_model(model_path).automaton;
            Automaton right = load_model(other_path).automaton;
            if (auto witness = bisimilar(left, right)) {
                out << "bisimilar (" << witness->relation.size() << " related pairs)\n";
                return 0;
            }
            auto refusal = bisimulation_refusal(left, right);
            out << "not bisimilar";
            if (refusal) {
                out << "; diverging behavior: " << render_word(*refusal);
            }
            out << "\n";
            return 1;
        }
        if (*interleave_cmd) {
            Word left = split_word(left_word);
            Word right = split_word(right_word);
            std::set<Event> e1(left.begin(), left.end());
            std::set<Event> e2(right.begin(), right.end());
            if (!left_events.empty()) {
                Word w = split_word(left_events);
                e1 = std::set<Event>(w.begin(), w.end());
            }
            if (!right_events.empty()) {
                Word w = split_word(right_events);
                e2 = std::set<Event>(w.begin(), w.end());
            }
            for (const Word& w : interleave(left, right, e1, e2)) {
                out << render_word(w) << "\n";
            }
            return 0;
        }
        if (*verify) {
            ModelDocument doc = load_model(model_path);
            std::vector<LocalController> controllers =
                synthesize_controllers(doc.automaton, doc.distribution);
            for (size_t i = 0; i < controller_paths.size() && i < controllers.size(); ++i) {
                controllers[i].automaton = load_model(controller_paths[i]).automaton;
            }
            std::vector<AgentPlant> plants;
            for (size_t i = 1; i <= doc.distribution.agent_count(); ++i) {
                plants.push_back(universal_plant(doc.distribution, i));
            }
            TeamMode team_mode =
                mode == "simulation" ? TeamMode::simulation : TeamMode::bisimulation;
            TeamVerdict verdict =
                verify_team(doc.automaton, doc.distribution, plants, controllers, team_mode);
            out << "team (" << mode << "): "
                << (verdict.satisfied ? "satisfies the task" : "fails the task") << "\n";
            if (verdict.counterexample) {
                out << "counterexample: " << render_word(*verdict.counterexample) << "\n";
            }
            return verdict.satisfied ? 0 : 1;
        }
        if (*diagnose_cmd) {
            ModelDocument doc = load_model(model_path);
            DecomposabilityReport report = check_decomposable(doc.automaton, doc.distribution, bound);
            if (report.overall) {
                out << "already decomposable; nothing to repair\n";
                return 0;
            }
            auto suggestions = diagnose(doc.automaton, doc.distribution, report);
            ReportDocument rendered = make_report_document(doc.name, report, suggestions);
            out << report_to_text(rendered);
            bool verified = !suggestions.empty();
            for (const auto& s : suggestions) {
                verified = verified && s.verified;
            }
            return verified ? 0 : 1;
        }
        if (*export_dot) {
            ModelDocument doc = load_model(model_path);
            std::string dot = emit_dot(doc.automaton);
            if (out_path.empty()) {
                out << dot;
            } else {
                write_file(out_path, dot);
            }
            return 0;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no subcommand\n";
    return 2;
}

}  // namespace decomp

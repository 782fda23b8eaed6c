#include "decomp/model_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace decomp {

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string token;
    while (in >> token) {
        if (token.front() == '#') {
            break;
        }
        tokens.push_back(token);
    }
    return tokens;
}

std::string join_word(const Word& w) {
    std::string out;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i > 0) {
            out += " ";
        }
        out += w[i];
    }
    return out.empty() ? "ε" : out;
}

}  // namespace

ModelDocument parse_model(std::istream& in) {
    std::optional<std::string> name;
    std::set<Event> events;
    std::optional<size_t> agent_count;
    std::map<size_t, std::set<Event>> agent_alphabets;
    std::set<StateId> states;
    std::optional<StateId> initial;
    std::set<Transition> transitions;

    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto tokens = tokens_of(line);
        if (tokens.empty()) {
            continue;
        }
        const std::string& head = tokens[0];
        if (head == "automaton") {
            if (tokens.size() != 2) {
                throw ParseError(lineno, "expected: automaton <name>");
            }
            if (name) {
                throw ParseError(lineno, "duplicate automaton line");
            }
            name = tokens[1];
        } else if (head == "events") {
            for (size_t i = 1; i < tokens.size(); ++i) {
                if (!events.insert(tokens[i]).second) {
                    throw ParseError(lineno, "duplicate event '" + tokens[i] + "'");
                }
            }
        } else if (head == "agents") {
            if (tokens.size() != 2) {
                throw ParseError(lineno, "expected: agents <n>");
            }
            try {
                agent_count = std::stoul(tokens[1]);
            } catch (const std::exception&) {
                throw ParseError(lineno, "agent count must be a number");
            }
            if (*agent_count == 0) {
                throw ParseError(lineno, "agent count must be positive");
            }
        } else if (head == "agent") {
            if (!agent_count) {
                throw ParseError(lineno, "agent line before agents line");
            }
            if (tokens.size() < 3 || tokens[1].back() != ':') {
                throw ParseError(lineno, "expected: agent <i>: <events>");
            }
            size_t index = 0;
            try {
                index = std::stoul(tokens[1].substr(0, tokens[1].size() - 1));
            } catch (const std::exception&) {
                throw ParseError(lineno, "agent index must be a number");
            }
            if (index < 1 || index > *agent_count) {
                throw ParseError(lineno, "agent index out of range");
            }
            for (size_t i = 2; i < tokens.size(); ++i) {
                if (events.count(tokens[i]) == 0) {
                    throw ParseError(lineno, "undeclared event '" + tokens[i] + "'");
                }
                agent_alphabets[index].insert(tokens[i]);
            }
        } else if (head == "states") {
            for (size_t i = 1; i < tokens.size(); ++i) {
                if (!states.insert(tokens[i]).second) {
                    throw ParseError(lineno, "duplicate state '" + tokens[i] + "'");
                }
            }
        } else if (head == "initial") {
            if (tokens.size() != 2) {
                throw ParseError(lineno, "expected: initial <state>");
            }
            if (states.count(tokens[1]) == 0) {
                throw ParseError(lineno, "undeclared state '" + tokens[1] + "'");
            }
            initial = tokens[1];
        } else if (head == "trans") {
            if (tokens.size() != 4) {
                throw ParseError(lineno, "expected: trans <src> <event> <dst>");
            }
            if (states.count(tokens[1]) == 0) {
                throw ParseError(lineno, "undeclared state '" + tokens[1] + "'");
            }
            if (events.count(tokens[2]) == 0) {
                throw ParseError(lineno, "undeclared event '" + tokens[2] + "'");
            }
            if (states.count(tokens[3]) == 0) {
                throw ParseError(lineno, "undeclared state '" + tokens[3] + "'");
            }
            transitions.insert({tokens[1], tokens[2], tokens[3]});
        } else {
            throw ParseError(lineno, "unknown directive '" + head + "'");
        }
    }

    if (!name) {
        throw ParseError(lineno, "missing automaton line");
    }
    if (states.empty()) {
        throw ParseError(lineno, "empty state set");
    }
    if (!initial) {
        throw ParseError(lineno, "missing initial line");
    }

    std::vector<std::set<Event>> alphabets;
    if (agent_count) {
        for (size_t i = 1; i <= *agent_count; ++i) {
            auto it = agent_alphabets.find(i);
            if (it == agent_alphabets.end() || it->second.empty()) {
                throw ParseError(lineno, "agent " + std::to_string(i) + " has no events");
            }
            alphabets.push_back(it->second);
        }
        std::set<Event> covered;
        for (const auto& alpha : alphabets) {
            covered.insert(alpha.begin(), alpha.end());
        }
        if (covered != events) {
            for (const Event& e : events) {
                if (covered.count(e) == 0) {
                    throw ParseError(lineno, "event '" + e + "' belongs to no agent");
                }
            }
        }
    } else {
        alphabets.push_back(events);
    }

    return ModelDocument{*name, Automaton(states, *initial, events, transitions),
                         EventDistribution(alphabets)};
}

ModelDocument parse_model(const std::string& text) {
    std::istringstream in(text);
    return parse_model(in);
}

ModelDocument load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    return parse_model(in);
}

std::string serialize_model(const ModelDocument& doc) {
    std::ostringstream out;
    out << "automaton " << doc.name << "\n";
    out << "events";
    for (const Event& e : doc.automaton.alphabet()) {
        out << " " << e;
    }
    out << "\n";
    out << "agents " << doc.distribution.agent_count() << "\n";
    for (size_t agent = 1; agent <= doc.distribution.agent_count(); ++agent) {
        out << "agent " << agent << ":";
        for (const Event& e : doc.distribution.alphabet_of(agent)) {
            out << " " << e;
        }
        out << "\n";
    }
    out << "states";
    for (const StateId& q : doc.automaton.states()) {
        out << " " << q;
    }
    out << "\n";
    out << "initial " << doc.automaton.initial() << "\n";
    for (const Transition& t : doc.automaton.transitions()) {
        out << "trans " << t.src << " " << t.event << " " << t.dst << "\n";
    }
    return out.str();
}

std::string display_state(const StateId& id) {
    if (id.find('(') == std::string::npos) {
        return id;
    }
    std::string flat;
    for (char c : id) {
        if (c != '(' && c != ')') {
            flat += c;
        }
    }
    return "(" + flat + ")";
}

std::string emit_dot(const Automaton& a) {
    std::ostringstream out;
    out << "digraph automaton {\n";
    out << "  rankdir=LR;\n";
    out << "  node [shape=circle];\n";
    out << "  \"__start\" [shape=point];\n";
    out << "  \"__start\" -> \"" << a.initial() << "\";\n";
    for (const StateId& q : a.states()) {
        out << "  \"" << q << "\" [label=\"" << display_state(q) << "\"];\n";
    }
    for (const Transition& t : a.transitions()) {
        out << "  \"" << t.src << "\" -> \"" << t.dst << "\" [label=\"" << t.event << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

std::string describe(const Witness& w) {
    std::ostringstream out;
    if (const auto* dc1 = std::get_if<Dc1Witness>(&w)) {
        out << "state " << display_state(dc1->state) << ": events {" << dc1->e1 << ", " << dc1->e2
            << "} have no joint owner and are not executable in both orders";
    } else if (const auto* dc2 = std::get_if<Dc2Witness>(&w)) {
        out << "state " << display_state(dc2->state) << ": orders " << dc2->e1 << " " << dc2->e2
            << " and " << dc2->e2 << " " << dc2->e1;
        if (dc2->suffix.empty()) {
            out << " are not both defined";
        } else {
            out << " diverge on suffix " << join_word(dc2->suffix);
        }
    } else if (const auto* dc3 = std::get_if<Dc3Witness>(&w)) {
        out << "state " << display_state(dc3->state) << ": branches [" << join_word(dc3->branch_a)
            << "] and [" << join_word(dc3->branch_b) << "] synchronize on " << dc3->shared
            << " between agents " << dc3->agent_i << " and " << dc3->agent_j
            << " but admit the illegal string " << join_word(dc3->offending);
    } else if (const auto* dc4 = std::get_if<Dc4Witness>(&w)) {
        out << "agent " << dc4->agent << ": local state " << display_state(dc4->local_state)
            << " has " << dc4->event << "-successors " << display_state(dc4->succ_a) << " and "
            << display_state(dc4->succ_b) << " with different continuations";
        if (dc4->suffix) {
            out << "; suffix " << join_word(*dc4->suffix) << " is enabled from only one";
        }
    }
    return out.str();
}

ReportDocument make_report_document(const std::string& name, const DecomposabilityReport& report,
                                    const std::vector<RepairSuggestion>& suggestions) {
    ReportDocument doc;
    doc.name = name;
    doc.bound = report.bound;
    for (Condition c : {Condition::DC1, Condition::DC2, Condition::DC3, Condition::DC4}) {
        const ConditionVerdict& verdict = report.verdict(c);
        ReportDocument::Line line;
        line.condition = to_string(c);
        line.holds = verdict.holds;
        for (const Witness& w : verdict.witnesses) {
            line.witnesses.push_back(describe(w));
        }
        doc.conditions.push_back(std::move(line));
    }
    doc.overall = report.overall;
    doc.oracle_agrees = report.oracle_agrees;
    for (size_t agent = 1; agent <= report.projections.size(); ++agent) {
        ModelDocument projection{name + "-agent" + std::to_string(agent),
                                 report.projections[agent - 1],
                                 EventDistribution({report.projections[agent - 1].alphabet()})};
        doc.projections.push_back(serialize_model(projection));
    }
    if (report.composed) {
        ModelDocument composed{name + "-composed", *report.composed,
                               EventDistribution({report.composed->alphabet()})};
        doc.composed = serialize_model(composed);
    }
    for (const RepairSuggestion& s : suggestions) {
        ReportDocument::Suggestion out;
        out.event = s.event;
        out.agents.assign(s.add_to_agents.begin(), s.add_to_agents.end());
        out.rationale = to_string(s.rationale);
        out.verified = s.verified;
        doc.suggestions.push_back(std::move(out));
    }
    return doc;
}

std::string report_to_text(const ReportDocument& doc) {
    std::ostringstream out;
    out << "automaton " << doc.name << " (bound " << doc.bound << ")\n";
    for (const auto& line : doc.conditions) {
        out << line.condition << ": " << (line.holds ? "holds" : "fails") << "\n";
        for (const auto& w : line.witnesses) {
            out << "  - " << w << "\n";
        }
    }
    out << "decomposable: " << (doc.overall ? "yes" : "no") << "\n";
    if (doc.oracle_agrees) {
        out << "oracle agrees: " << (*doc.oracle_agrees ? "yes" : "no") << "\n";
    }
    for (const auto& s : doc.suggestions) {
        out << "suggestion (" << s.rationale << "): add " << s.event << " to agent";
        for (size_t agent : s.agents) {
            out << " " << agent;
        }
        out << (s.verified ? " [verified]" : " [unverified]") << "\n";
    }
    if (doc.team) {
        out << "team (" << doc.team->mode
            << "): " << (doc.team->satisfied ? "satisfies the task" : "fails the task") << "\n";
        if (doc.team->counterexample) {
            out << "  counterexample: " << *doc.team->counterexample << "\n";
        }
    }
    return out.str();
}

std::string report_to_json(const ReportDocument& doc) {
    nlohmann::json j;
    j["name"] = doc.name;
    j["bound"] = doc.bound;
    j["conditions"] = nlohmann::json::array();
    for (const auto& line : doc.conditions) {
        j["conditions"].push_back(
            {{"condition", line.condition}, {"holds", line.holds}, {"witnesses", line.witnesses}});
    }
    j["decomposable"] = doc.overall;
    if (doc.oracle_agrees) {
        j["oracle_agrees"] = *doc.oracle_agrees;
    }
    j["projections"] = doc.projections;
    j["composed"] = doc.composed;
    j["suggestions"] = nlohmann::json::array();
    for (const auto& s : doc.suggestions) {
        j["suggestions"].push_back({{"event", s.event},
                                    {"agents", s.agents},
                                    {"rationale", s.rationale},
                                    {"verified", s.verified}});
    }
    if (doc.team) {
        nlohmann::json t;
        t["mode"] = doc.team->mode;
        t["satisfied"] = doc.team->satisfied;
        if (doc.team->counterexample) {
            t["counterexample"] = *doc.team->counterexample;
        }
        j["team"] = t;
    }
    return j.dump(2);
}

ReportDocument report_from_json(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    ReportDocument doc;
    doc.name = j.at("name").get<std::string>();
    doc.bound = j.at("bound").get<int>();
    for (const auto& line : j.at("conditions")) {
        ReportDocument::Line out;
        out.condition = line.at("condition").get<std::string>();
        out.holds = line.at("holds").get<bool>();
        out.witnesses = line.at("witnesses").get<std::vector<std::string>>();
        doc.conditions.push_back(std::move(out));
    }
    doc.overall = j.at("decomposable").get<bool>();
    if (j.contains("oracle_agrees")) {
        doc.oracle_agrees = j.at("oracle_agrees").get<bool>();
    }
    doc.projections = j.at("projections").get<std::vector<std::string>>();
    doc.composed = j.at("composed").get<std::string>();
    for (const auto& s : j.at("suggestions")) {
        ReportDocument::Suggestion out;
        out.event = s.at("event").get<std::string>();
        out.agents = s.at("agents").get<std::vector<size_t>>();
        out.rationale = s.at("rationale").get<std::string>();
        out.verified = s.at("verified").get<bool>();
        doc.suggestions.push_back(std::move(out));
    }
    if (j.contains("team")) {
        ReportDocument::Team team;
        team.mode = j.at("team").at("mode").get<std::string>();
        team.satisfied = j.at("team").at("satisfied").get<bool>();
        if (j.at("team").contains("counterexample")) {
            team.counterexample = j.at("team").at("counterexample").get<std::string>();
        }
        doc.team = team;
    }
    return doc;
}

}  // namespace decomp

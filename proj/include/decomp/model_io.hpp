#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "decomp/algebra.hpp"
#include "decomp/automaton.hpp"
#include "decomp/decomposability.hpp"
#include "decomp/tasking.hpp"

namespace decomp {

/// Parse failure with the offending 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(size_t line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

    size_t line() const { return line_; }

private:
    size_t line_;
};

/// A named automaton together with the event distribution it is checked
/// against. Files without agent lines default to a single agent owning the
/// whole alphabet.
struct ModelDocument {
    std::string name;
    Automaton automaton;
    EventDistribution distribution;
};

ModelDocument parse_model(std::istream& in);
ModelDocument parse_model(const std::string& text);
ModelDocument load_model(const std::string& path);

std::string serialize_model(const ModelDocument& doc);

/// Graphviz rendering; states sorted by id, initial state marked by an
/// entry arrow, composite ids flattened in labels.
std::string emit_dot(const Automaton& a);

/// Flattens nested product ids for display: ((x,y),z) -> (x,y,z).
std::string display_state(const StateId& id);

std::string describe(const Witness& w);

/// Serializable rendering of a decomposability report plus optional
/// team-verification outcome.
struct ReportDocument {
    std::string name;
    int bound = 1;
    struct Line {
        std::string condition;
        bool holds = false;
        std::vector<std::string> witnesses;
        bool operator==(const Line&) const = default;
    };
    std::vector<Line> conditions;
    bool overall = false;
    std::optional<bool> oracle_agrees;
    std::vector<std::string> projections;  // serialized automata, agent order
    std::string composed;                  // serialized automaton
    struct Suggestion {
        std::string event;
        std::vector<size_t> agents;
        std::string rationale;
        bool verified = false;
        bool operator==(const Suggestion&) const = default;
    };
    std::vector<Suggestion> suggestions;
    struct Team {
        std::string mode;
        bool satisfied = false;
        std::optional<std::string> counterexample;
        bool operator==(const Team&) const = default;
    };
    std::optional<Team> team;

    bool operator==(const ReportDocument&) const = default;
};

ReportDocument make_report_document(const std::string& name, const DecomposabilityReport& report,
                                    const std::vector<RepairSuggestion>& suggestions = {});

std::string report_to_text(const ReportDocument& doc);
std::string report_to_json(const ReportDocument& doc);
ReportDocument report_from_json(const std::string& json_text);

/// Command-line entry point; argv without the program name.
/// Exit codes: 0/1 carry verdicts, 2 reports usage or input errors.
int cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace decomp

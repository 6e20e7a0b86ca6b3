#pragma once

#include "wildcycle/document.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wildcycle {

inline constexpr const char* kReportSchema = "wildcycle-report/1";
inline constexpr const char* kDocumentFormat = "wildcycle-document/1";

const std::vector<std::string>& command_names();

struct RunOptions {
    std::optional<int> truncation;      // working precision in t; default from the document
    std::optional<std::string> lambda0; // overrides the document's lambda0 points
    std::optional<int> factor;          // ramify: pull-back degree (default: the minimal q)
    std::optional<std::string> phi;     // twist: exponential factor, an expression in t_q
    int sign = -1;                      // twist by E^{sign*phi/lambda}
};

struct Report {
    std::string command;
    int exit_code = 0;
    std::string json;  // canonical JSON (2-space indent, keys in emission order)
    std::string text;  // human-readable rendering of the same content
};

// 1 input error, 2 truncation or field extension, 3 internal
int exit_code_for(ErrorKind k);

// default working precision (in t) for exact input
int default_truncation(int rank, int max_pole);

Report run_command(const std::string& cmd, const InputDocument& doc, const RunOptions& opt = {});
// parses the document text first; parse failures become exit-code-1 reports
Report run_command_text(const std::string& cmd, const std::string& document_text, const RunOptions& opt = {});

// re-serialize a report's JSON; identity on reports produced by run_command
std::string reserialize_json(const std::string& json);
// text rendering of a report's JSON
std::string render_text(const std::string& json);

}  // namespace wildcycle

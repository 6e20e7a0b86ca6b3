#pragma once

#include "wildcycle/lambda_connection.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wildcycle {

struct ParseContext {
    std::string tvar = "t";
    std::string lvar = "z";
    int cyclotomic_order = 1;
    int q = 1;
    std::optional<int> truncation;  // precision of entries; empty means exact
    int line = 1;                   // position of the expression start, for messages
    int column = 1;
};

struct InputDocument {
    std::string tvar = "t";
    std::string lvar = "z";
    int cyclotomic_order = 1;
    int rank = 0;
    int ramification = 1;
    std::optional<int> truncation;
    std::vector<std::string> lambda0_points;
    std::vector<std::vector<std::string>> matrix;
    std::vector<std::vector<std::pair<int, int>>> positions;  // line, column of each entry

    ParseContext context() const;
};

Series parse_expression(const std::string& src, const ParseContext& ctx = {});
Cyclotomic parse_scalar(const std::string& src, int cyclotomic_order = 1);
InputDocument parse_document(const std::string& text);
InputDocument read_document(const std::string& path);
LaurentMatrix document_matrix(const InputDocument& doc);
LambdaConnection document_connection(const InputDocument& doc, const std::optional<Cyclotomic>& lambda0 = std::nullopt);
std::vector<Cyclotomic> document_lambda0_points(const InputDocument& doc);
// canonical text; entries are re-printed from their parsed values
std::string print_document(const InputDocument& doc);
InputDocument document_from_connection(const LambdaConnection& m, const std::string& tvar = "t", const std::string& lvar = "z");

}  // namespace wildcycle

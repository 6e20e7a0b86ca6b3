#include "wildcycle/document.hpp"

#include "wildcycle/errors.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace wildcycle {

ParseContext InputDocument::context() const
{
    ParseContext c;
    c.tvar = tvar;
    c.lvar = lvar;
    c.cyclotomic_order = cyclotomic_order;
    c.q = ramification;
    c.truncation = truncation;
    return c;
}

namespace {

enum class Tok { Num, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    std::string text;
    int pos;
};

class Parser {
public:
    Parser(const std::string& src, const ParseContext& ctx) : src_(src), ctx_(ctx) { lex(); }

    Series parse()
    {
        Series s = expr();
        expect(Tok::End, {"operator", "end of expression"});
        return s;
    }

private:
    const std::string& src_;
    const ParseContext& ctx_;
    std::vector<Token> toks_;
    size_t at_ = 0;

    [[noreturn]] void error_at(int pos, const std::string& what, ErrorKind kind = ErrorKind::ParseError) const
    {
        int line = ctx_.line, col = ctx_.column;
        for (int k = 0; k < pos && k < static_cast<int>(src_.size()); ++k) {
            if (src_[k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        fail(kind, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what);
    }

    [[noreturn]] void unexpected(const std::set<std::string>& expected) const
    {
        std::string e;
        for (const auto& x : expected) e += (e.empty() ? "" : ", ") + x;
        const Token& t = toks_[at_];
        std::string found = t.kind == Tok::End ? "end of expression" : "'" + t.text + "'";
        error_at(t.pos, "expected one of {" + e + "}, found " + found);
    }

    void lex()
    {
        size_t k = 0;
        while (k < src_.size()) {
            char c = src_[k];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++k;
                continue;
            }
            int p = static_cast<int>(k);
            if (std::isdigit(static_cast<unsigned char>(c))) {
                size_t e = k;
                while (e < src_.size() && std::isdigit(static_cast<unsigned char>(src_[e]))) ++e;
                toks_.push_back({Tok::Num, src_.substr(k, e - k), p});
                k = e;
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                size_t e = k;
                while (e < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[e])) || src_[e] == '_')) ++e;
                toks_.push_back({Tok::Ident, src_.substr(k, e - k), p});
                k = e;
                continue;
            }
            Tok kind;
            switch (c) {
            case '+': kind = Tok::Plus; break;
            case '-': kind = Tok::Minus; break;
            case '*': kind = Tok::Star; break;
            case '/': kind = Tok::Slash; break;
            case '^': kind = Tok::Caret; break;
            case '(': kind = Tok::LParen; break;
            case ')': kind = Tok::RParen; break;
            default: error_at(p, std::string("unexpected character '") + c + "'");
            }
            toks_.push_back({kind, std::string(1, c), p});
            ++k;
        }
        toks_.push_back({Tok::End, "", static_cast<int>(src_.size())});
    }

    const Token& peek() const { return toks_[at_]; }
    bool accept(Tok k)
    {
        if (toks_[at_].kind != k) return false;
        ++at_;
        return true;
    }
    void expect(Tok k, const std::set<std::string>& expected)
    {
        if (!accept(k)) unexpected(expected);
    }

    Series constant(const Cyclotomic& c) const { return Series::constant(ParamScalar(c), ctx_.q); }

    Series expr()
    {
        Series s = term();
        for (;;) {
            if (accept(Tok::Plus))
                s += term();
            else if (accept(Tok::Minus))
                s -= term();
            else
                return s;
        }
    }

    Series term()
    {
        Series s = unary();
        for (;;) {
            if (accept(Tok::Star)) {
                s = s * unary();
            } else if (peek().kind == Tok::Slash) {
                int pos = peek().pos;
                ++at_;
                s = s * reciprocal(unary(), pos);
            } else {
                return s;
            }
        }
    }

    Series unary()
    {
        if (accept(Tok::Minus)) return -unary();
        if (accept(Tok::Plus)) return unary();
        return power();
    }

    Series reciprocal(const Series& d, int pos) const
    {
        if (d.known_zero()) error_at(pos, "division by zero");
        if (d.is_exact() && d.raw().size() == 1) {
            if (d.leading().is_zero()) error_at(pos, "division by zero");
            return Series::monomial(d.leading().inverse(), -d.valuation(), ctx_.q);
        }
        if (!ctx_.truncation) error_at(pos, "division by a series needs a declared truncation");
        try {
            return d.inverse(*ctx_.truncation);
        } catch (const Error& e) {
            error_at(pos, std::string("cannot invert divisor: ") + e.what());
        }
    }

    long exponent()
    {
        int pos = peek().pos;
        bool neg = false;
        if (accept(Tok::Minus))
            neg = true;
        else
            accept(Tok::Plus);
        if (peek().kind == Tok::Num) {
            mpz_class v(peek().text);
            ++at_;
            if (!v.fits_slong_p()) error_at(pos, "exponent too large");
            return neg ? -v.get_si() : v.get_si();
        }
        if (accept(Tok::LParen)) {
            Series e = expr();
            expect(Tok::RParen, {"')'"});
            mpq_class r;
            if (!rational_constant(e, r)) error_at(pos, "exponent must be an integer constant", ErrorKind::UnsupportedExponent);
            if (r.get_den() != 1)
                error_at(pos, "non-integer exponent " + r.get_str() + "; declare the ramification instead", ErrorKind::UnsupportedExponent);
            if (!r.get_num().fits_slong_p()) error_at(pos, "exponent too large");
            long v = r.get_num().get_si();
            return neg ? -v : v;
        }
        unexpected({"number", "'('", "'-'"});
    }

    static bool rational_constant(const Series& s, mpq_class& r)
    {
        if (!s.is_exact()) return false;
        if (s.known_zero()) {
            r = 0;
            return true;
        }
        if (s.raw().size() != 1 || s.valuation() != 0 || !s.leading().is_constant()) return false;
        Cyclotomic c = s.leading().constant_value();
        if (!c.is_rational()) return false;
        r = c.rational_value();
        return true;
    }

    Series power()
    {
        int pos = peek().pos;
        Series base = atom();
        if (!accept(Tok::Caret)) return base;
        long e = exponent();
        if (e < 0) {
            base = reciprocal(base, pos);
            e = -e;
        }
        Series r = Series::constant(ParamScalar(1), ctx_.q);
        Series b = base;
        while (e > 0) {
            if (e & 1) r = r * b;
            e >>= 1;
            if (e) b = b * b;
        }
        return r;
    }

    Series atom()
    {
        const Token& t = peek();
        if (t.kind == Tok::Num) {
            ++at_;
            return constant(Cyclotomic(mpq_class(mpz_class(t.text))));
        }
        if (accept(Tok::LParen)) {
            Series s = expr();
            expect(Tok::RParen, {"')'", "operator"});
            return s;
        }
        if (t.kind == Tok::Ident) {
            ++at_;
            const std::string& id = t.text;
            if (id == ctx_.tvar) return Series::monomial(ParamScalar(1), 1, ctx_.q);
            if (id == ctx_.lvar) return Series::constant(ParamScalar::lambda(), ctx_.q);
            if (id == "i") return constant(Cyclotomic::imag_unit());
            if (id == "zeta") return constant(Cyclotomic::zeta(ctx_.cyclotomic_order));
            if (id.size() > 4 && id.compare(0, 4, "zeta") == 0) {
                std::string digits = id.substr(4);
                bool ok = digits.size() <= 4 && digits.find_first_not_of("0123456789") == std::string::npos && digits[0] != '0';
                if (!ok) error_at(t.pos, "unknown identifier '" + id + "'");
                return constant(Cyclotomic::zeta(std::stoi(digits)));
            }
            if (id == "O") {
                expect(Tok::LParen, {"'('"});
                int p = peek().pos;
                Series inner = expr();
                expect(Tok::RParen, {"')'"});
                if (!inner.is_exact() || inner.raw().size() != 1 || !inner.leading().is_one())
                    error_at(p, "O(...) takes a monomial t^k");
                return Series::zero_to(inner.valuation(), ctx_.q);
            }
            error_at(t.pos, "unknown identifier '" + id + "'; expected one of {" + ctx_.tvar + ", " + ctx_.lvar + ", i, zeta, zetaN, O}");
        }
        unexpected({"number", "identifier", "'('", "'-'"});
    }
};

std::string trim(const std::string& s)
{
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::pair<std::string, int>> split_entries(const std::string& line, char sep)
{
    std::vector<std::pair<std::string, int>> out;
    size_t start = 0;
    for (;;) {
        size_t e = line.find(sep, start);
        std::string piece = line.substr(start, e == std::string::npos ? std::string::npos : e - start);
        size_t lead = piece.find_first_not_of(" \t\r");
        out.emplace_back(trim(piece), static_cast<int>(start + (lead == std::string::npos ? 0 : lead)) + 1);
        if (e == std::string::npos) break;
        start = e + 1;
    }
    return out;
}

[[noreturn]] void doc_error(int line, const std::string& what)
{
    fail(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + what);
}

int header_int(const std::string& v, int line, const char* key, int lo)
{
    try {
        size_t used = 0;
        int x = std::stoi(v, &used);
        if (used != v.size() || x < lo) throw std::invalid_argument(key);
        return x;
    } catch (const std::exception&) {
        doc_error(line, std::string("header '") + key + "' expects an integer >= " + std::to_string(lo));
    }
}

}  // namespace

Series parse_expression(const std::string& src, const ParseContext& ctx)
{
    Parser p(src, ctx);
    Series s = p.parse();
    if (ctx.truncation && s.precision() > *ctx.truncation) s = s.with_precision(*ctx.truncation);
    return s.is_q_free() ? s.with_q(ctx.q) : s;
}

Cyclotomic parse_scalar(const std::string& src, int cyclotomic_order)
{
    ParseContext c;
    c.cyclotomic_order = cyclotomic_order;
    Series s = parse_expression(src, c);
    if (!s.is_exact() || s.valuation() < 0 || (!s.known_zero() && (s.raw().size() != 1 || s.valuation() != 0)))
        fail(ErrorKind::ParseError, "'" + src + "' is not a scalar constant");
    if (s.known_zero()) return Cyclotomic();
    if (!s.leading().is_constant()) fail(ErrorKind::ParseError, "'" + src + "' depends on lambda");
    return s.leading().constant_value();
}

InputDocument parse_document(const std::string& text)
{
    InputDocument doc;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    bool in_matrix = false, saw_matrix = false, saw_rank = false, closed = false;
    std::set<std::string> seen;
    while (std::getline(in, raw)) {
        ++line;
        std::string l = trim(raw);
        if (in_matrix) {
            if (l == "end") {
                in_matrix = false;
                closed = true;
                continue;
            }
            if (l.empty() || l[0] == '#') continue;
            std::vector<std::string> row;
            std::vector<std::pair<int, int>> pos;
            size_t off = raw.find_first_not_of(" \t");
            for (auto& [e, col] : split_entries(raw.substr(off), ';')) {
                if (e.empty()) doc_error(line, "empty matrix entry");
                row.push_back(e);
                pos.emplace_back(line, col + static_cast<int>(off));
            }
            doc.matrix.push_back(row);
            doc.positions.push_back(pos);
            continue;
        }
        if (l.empty() || l[0] == '#') continue;
        size_t colon = l.find(':');
        if (colon == std::string::npos) doc_error(line, "expected 'key: value' or 'matrix:'");
        std::string key = trim(l.substr(0, colon));
        std::string val = trim(l.substr(colon + 1));
        if (closed) doc_error(line, "content after the matrix block");
        if (seen.count(key)) doc_error(line, "duplicate header '" + key + "'");
        seen.insert(key);
        if (key == "variables") {
            std::istringstream vs(val);
            std::string a, b, extra;
            if (!(vs >> a >> b) || (vs >> extra)) doc_error(line, "variables expects two names");
            doc.tvar = a;
            doc.lvar = b;
        } else if (key == "cyclotomic_order") {
            doc.cyclotomic_order = header_int(val, line, "cyclotomic_order", 1);
        } else if (key == "rank") {
            doc.rank = header_int(val, line, "rank", 1);
            saw_rank = true;
        } else if (key == "ramification") {
            doc.ramification = header_int(val, line, "ramification", 1);
        } else if (key == "truncation") {
            doc.truncation = header_int(val, line, "truncation", -1000000);
        } else if (key == "lambda0") {
            for (auto& [p, col] : split_entries(val, ';'))
                if (!p.empty()) doc.lambda0_points.push_back(p);
        } else if (key == "matrix") {
            if (!val.empty()) doc_error(line, "matrix rows start on the next line");
            in_matrix = true;
            saw_matrix = true;
        } else {
            doc_error(line, "unknown header '" + key + "'; expected one of {variables, cyclotomic_order, rank, ramification, truncation, lambda0, matrix}");
        }
    }
    if (in_matrix) doc_error(line, "matrix block not closed by 'end'");
    if (!saw_matrix) doc_error(line, "missing matrix block");
    if (!saw_rank) doc.rank = static_cast<int>(doc.matrix.size());
    if (static_cast<int>(doc.matrix.size()) != doc.rank) doc_error(line, "matrix has " + std::to_string(doc.matrix.size()) + " rows, rank is " + std::to_string(doc.rank));
    for (size_t r = 0; r < doc.matrix.size(); ++r)
        if (static_cast<int>(doc.matrix[r].size()) != doc.rank)
            doc_error(doc.positions[r][0].first, "row has " + std::to_string(doc.matrix[r].size()) + " entries, rank is " + std::to_string(doc.rank));
    if (doc.tvar == doc.lvar) doc_error(1, "variable names must differ");
    // validate every entry and lambda0 point now so errors carry positions
    document_matrix(doc);
    document_lambda0_points(doc);
    return doc;
}

InputDocument read_document(const std::string& path)
{
    std::ifstream f(path);
    if (!f) fail(ErrorKind::InvalidArgument, "cannot read input file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_document(ss.str());
}

LaurentMatrix document_matrix(const InputDocument& doc)
{
    int n = doc.rank;
    LaurentMatrix a = smat_zero(n, n, doc.ramification);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            ParseContext c = doc.context();
            if (i < static_cast<int>(doc.positions.size())) {
                c.line = doc.positions[i][j].first;
                c.column = doc.positions[i][j].second;
            }
            a(i, j) = parse_expression(doc.matrix[i][j], c);
        }
    return a;
}

std::vector<Cyclotomic> document_lambda0_points(const InputDocument& doc)
{
    std::vector<Cyclotomic> out;
    for (const auto& p : doc.lambda0_points) {
        Cyclotomic c = parse_scalar(p, doc.cyclotomic_order);
        mpq_class re, im;
        if (!c.gaussian_parts(re, im)) fail(ErrorKind::ParseError, "lambda0 value '" + p + "' is not a Gaussian rational");
        out.push_back(c);
    }
    return out;
}

LambdaConnection document_connection(const InputDocument& doc, const std::optional<Cyclotomic>& lambda0)
{
    LambdaConnection m(doc.ramification, document_matrix(doc));
    if (lambda0) m = restrict_lambda(m, *lambda0);
    return m;
}

std::string print_document(const InputDocument& doc)
{
    std::ostringstream o;
    o << "variables: " << doc.tvar << " " << doc.lvar << "\n";
    o << "cyclotomic_order: " << doc.cyclotomic_order << "\n";
    o << "rank: " << doc.rank << "\n";
    o << "ramification: " << doc.ramification << "\n";
    if (doc.truncation) o << "truncation: " << *doc.truncation << "\n";
    if (!doc.lambda0_points.empty()) {
        o << "lambda0: ";
        auto pts = document_lambda0_points(doc);
        for (size_t k = 0; k < pts.size(); ++k) o << (k ? "; " : "") << pts[k].to_string();
        o << "\n";
    }
    o << "matrix:\n";
    LaurentMatrix a = document_matrix(doc);
    for (int i = 0; i < doc.rank; ++i) {
        for (int j = 0; j < doc.rank; ++j) o << (j ? " ; " : "") << a(i, j).to_string(doc.tvar, doc.lvar);
        o << "\n";
    }
    o << "end\n";
    return o.str();
}

InputDocument document_from_connection(const LambdaConnection& m, const std::string& tvar, const std::string& lvar)
{
    InputDocument d;
    d.tvar = tvar;
    d.lvar = lvar;
    d.rank = m.rank();
    d.ramification = m.q;
    d.cyclotomic_order = m.common_order();
    if (m.lambda0) d.cyclotomic_order = lcm_int(d.cyclotomic_order, m.lambda0->order());
    int p = m.precision();
    if (p < kExact) d.truncation = p;
    if (m.lambda0) d.lambda0_points.push_back(m.lambda0->to_string());
    for (int i = 0; i < m.rank(); ++i) {
        std::vector<std::string> row;
        for (int j = 0; j < m.rank(); ++j) row.push_back(m.A(i, j).to_string(tvar, lvar));
        d.matrix.push_back(row);
    }
    return d;
}

}  // namespace wildcycle

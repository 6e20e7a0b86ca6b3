#include "wildcycle/report.hpp"

#include "wildcycle/errors.hpp"
#include "wildcycle/nearby.hpp"
#include "wildcycle/newton.hpp"
#include "wildcycle/pairing.hpp"
#include "wildcycle/regular.hpp"
#include "wildcycle/turrittin.hpp"

#include "json.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace wildcycle {

using ojson = nlohmann::ordered_json;

const std::vector<std::string>& command_names()
{
    static const std::vector<std::string> names = {"decompose", "nearby", "regularity", "ramify", "twist", "mellin", "verify"};
    return names;
}

int exit_code_for(ErrorKind k)
{
    switch (k) {
    case ErrorKind::ParseError:
    case ErrorKind::UnsupportedExponent:
    case ErrorKind::InvalidArgument:
    case ErrorKind::NotStarShaped:
    case ErrorKind::SpectrumNotSplit:
    case ErrorKind::LambdaDependentSpectrum:
    case ErrorKind::DenominatorVanishes:
        return 1;
    case ErrorKind::InsufficientTruncation:
    case ErrorKind::UnsupportedAlgebraicExtension:
        return 2;
    default:
        return 3;
    }
}

int default_truncation(int rank, int max_pole)
{
    return std::clamp(rank * std::max(1, max_pole) + 4, 8, 64);
}

namespace {

struct Env {
    const InputDocument& doc;
    const RunOptions& opt;
    LambdaConnection m;
    int cap = 12;
    std::optional<Cyclotomic> lambda0;
    std::string lvar;
};


std::string lam_str(const ParamScalar& p, const Env& e) { return p.to_string(e.lvar); }

ojson phi_json(const ExpFactor& phi, const std::string& tvar)
{
    ojson j;
    j["phi"] = phi.is_zero() ? "0" : phi.to_string(tvar);
    j["q"] = phi.q();
    ojson c = ojson::object();
    for (const auto& [k, v] : phi.coeffs()) c[std::to_string(k)] = v.to_string();
    j["coefficients"] = c;
    return j;
}

ojson dims_json(const std::map<int, int>& d)
{
    ojson j = ojson::object();
    for (const auto& [k, v] : d) j[std::to_string(k)] = v;
    return j;
}

ojson newton_json(const NewtonPolygon& p)
{
    ojson j;
    j["module_q"] = p.module_q;
    ojson s = ojson::array();
    for (const auto& sl : p.slopes) s.push_back({{"slope", rational_to_string(sl.slope)}, {"length", sl.length}});
    j["slopes"] = s;
    j["regular_length"] = p.regular_length();
    j["minimal_q"] = p.absolute_q();
    return j;
}

DecompOptions decomp_options(const Env& e)
{
    DecompOptions o;
    o.exact_cap = e.cap;
    return o;
}

ojson decomposition_json(const FormalDecomposition& d, const Env& e)
{
    ojson j;
    j["input_q"] = d.input_q;
    j["q_used"] = d.q_used;
    j["field_order"] = d.field_order;
    ojson s = ojson::array();
    for (size_t k = 0; k < d.summands.size(); ++k) {
        const Summand& sm = d.summands[k];
        ojson x;
        x["index"] = static_cast<int>(k);
        ojson p = phi_json(sm.phi, e.doc.tvar);
        x["phi"] = p["phi"];
        x["phi_q"] = sm.phi.q();
        x["phi_coefficients"] = p["coefficients"];
        x["minimal_q"] = sm.phi.reduced().q();
        x["rank"] = sm.rank();
        ojson res = ojson::array();
        for (int r = 0; r < sm.rank(); ++r) {
            ojson row = ojson::array();
            for (int c = 0; c < sm.rank(); ++c) {
                const Series& a = sm.regular.A(r, c);
                row.push_back(a.precision() > 0 ? lam_str(a.coeff(0), e) : std::string("unknown"));
            }
            res.push_back(row);
        }
        x["residue"] = res;
        x["regular_valuation"] = std::min(smat_valuation(sm.regular.A), sm.regular.precision());
        s.push_back(x);
    }
    j["summands"] = s;
    ojson cert;
    cert["gauge_valuation"] = std::min(smat_valuation(d.gauge), smat_precision(d.gauge));
    cert["gauge_precision"] = smat_precision(d.gauge) >= kExact ? ojson("exact") : ojson(smat_precision(d.gauge));
    cert["guaranteed_order"] = d.guaranteed_order >= kExact ? ojson("exact") : ojson(d.guaranteed_order);
    j["certificate"] = cert;
    return j;
}

ojson phi_set_json(const FormalDecomposition& d, const std::string& tvar)
{
    ojson a = ojson::array();
    for (const auto& s : d.summands) {
        ExpFactor r = s.phi.reduced();
        a.push_back({{"phi", r.is_zero() ? "0" : r.to_string(tvar)}, {"q", r.q()}, {"rank", s.rank()}});
    }
    return a;
}

int minimal_q(const FormalDecomposition& d)
{
    int q = 1;
    for (const auto& s : d.summands) q = std::lcm(q, s.phi.reduced().q());
    return q;
}

ojson table_json(const DeligneTable& t, const Env& e)
{
    ojson j;
    j["q_used"] = t.q_used;
    j["input_q"] = t.input_q;
    j["folded"] = t.folded;
    j["total_dim"] = t.total_dim();
    ojson es = ojson::array();
    for (const auto& en : t.entries) {
        ojson x;
        ojson p = phi_json(en.datum.phi, e.doc.tvar);
        x["phi"] = p["phi"];
        x["phi_q"] = en.datum.phi.q();
        x["beta"] = en.datum.beta.to_string();
        x["beta_star"] = lam_str(star(en.datum.beta), e);
        x["dim"] = en.datum.dim;
        x["jordan_sizes"] = en.jordan_sizes;
        x["weight_dims"] = dims_json(en.datum.weight_dims);
        x["primitive_dims"] = dims_json(en.datum.primitive_dims);
        if (t.folded)
            x["orbit_size"] = en.orbit_size;
        else
            x["summand"] = en.summand;
        es.push_back(x);
    }
    j["entries"] = es;
    return j;
}

ExpFactor phi_from_option(const Env& e)
{
    ParseContext c = e.doc.context();
    c.q = e.m.q;
    c.truncation.reset();
    Series s = parse_expression(*e.opt.phi, c);
    if (!s.is_exact()) fail(ErrorKind::InvalidArgument, "the exponential factor must be exact");
    std::map<int, Cyclotomic> co;
    for (int k = s.valuation(); k < s.end(); ++k) {
        ParamScalar v = s.coeff(k);
        if (v.is_zero()) continue;
        if (k >= 0) fail(ErrorKind::InvalidArgument, "the exponential factor must be a polar part (negative powers only)");
        if (!v.is_constant()) fail(ErrorKind::InvalidArgument, "the exponential factor must not depend on lambda");
        co[k] = v.constant_value();
    }
    return ExpFactor(e.m.q, co);
}

ojson module_json(const LambdaConnection& m, const Env& e)
{
    InputDocument d = document_from_connection(m, e.doc.tvar, e.doc.lvar);
    std::istringstream in(print_document(d));
    ojson lines = ojson::array();
    for (std::string l; std::getline(in, l);) lines.push_back(l);
    return lines;
}

ojson cmd_decompose(Env& e)
{
    ojson r;
    FormalDecomposition d = formal_decompose(e.m, decomp_options(e));
    r["phi_set"] = phi_set_json(d, e.doc.tvar);
    r["minimal_q"] = minimal_q(d);
    r["decomposition"] = decomposition_json(d, e);
    try {
        r["newton_polygon"] = newton_json(newton_polygon_module(e.m, std::max(e.cap, 16)));
    } catch (const Error& err) {
        r["newton_polygon"] = ojson{{"error", err.what()}};
    }
    if (!e.lambda0 && !e.doc.lambda0_points.empty() && !e.m.lambda0) {
        ojson rs = ojson::array();
        for (const auto& p : document_lambda0_points(e.doc)) {
            FormalDecomposition dr = formal_decompose(restrict_lambda(e.m, p), decomp_options(e));
            ojson x;
            x["lambda0"] = p.to_string();
            x["phi_set"] = phi_set_json(dr, e.doc.tvar);
            x["minimal_q"] = minimal_q(dr);
            auto key = [](const FormalDecomposition& f) {
                std::vector<std::pair<std::string, int>> v;
                for (const auto& s : f.summands) v.emplace_back(s.phi.reduced().to_string(), s.rank());
                std::sort(v.begin(), v.end());
                return v;
            };
            x["agrees_with_family"] = key(dr) == key(d) && minimal_q(dr) == minimal_q(d);
            rs.push_back(x);
        }
        r["restrictions"] = rs;
    }
    return r;
}

ojson cmd_verify(Env& e)
{
    FormalDecomposition d = formal_decompose(e.m, decomp_options(e));
    VerifyReport v = verify_decomposition(e.m, d);
    ojson r;
    r["verdict"] = v.pass ? "PASS" : "FAIL";
    r["phi_set"] = phi_set_json(d, e.doc.tvar);
    r["residual_valuation"] = v.residual_valuation >= kExact ? ojson("none") : ojson(v.residual_valuation);
    r["certified_order"] = v.certified_order >= kExact ? ojson("exact") : ojson(v.certified_order);
    r["claimed_order"] = v.claimed_order >= kExact ? ojson("exact") : ojson(v.claimed_order);
    r["findings"] = v.findings;
    return r;
}

ojson cmd_nearby(Env& e)
{
    DeligneTable t = deligne_nearby_cycles(e.m, decomp_options(e));
    ojson r;
    r["rank"] = e.m.rank();
    r["table"] = table_json(t, e);
    r["galois_folded"] = table_json(fold_galois(t), e);
    return r;
}

ojson cmd_regularity(Env& e)
{
    RegularityVerdict v = regularity_test(e.m);
    auto yn = [](const std::optional<bool>& b) { return b ? ojson(*b ? "yes" : "no") : ojson("not applicable"); };
    ojson r;
    r["newton_slopes_zero"] = yn(v.newton_slopes_zero);
    r["v0_lattice_full"] = yn(v.v0_full);
    r["decomposition_trivial"] = yn(v.decomposition_trivial);
    r["v0_fiber_dim"] = v.v0_dim;
    r["rank"] = e.m.rank();
    r["criteria_agree"] = v.agree;
    r["regular"] = v.regular();
    r["findings"] = v.findings;
    return r;
}

ojson cmd_ramify(Env& e)
{
    int f = 1;
    ojson r;
    if (e.opt.factor) {
        f = *e.opt.factor;
        if (f < 1 || f > 4) fail(ErrorKind::InvalidArgument, "--factor must be between 1 and 4");
    } else {
        FormalDecomposition d = formal_decompose(e.m, decomp_options(e));
        int q = minimal_q(d);
        f = q % e.m.q == 0 ? q / e.m.q : q;
    }
    LambdaConnection p = ramify_pullback(e.m, f);
    r["factor"] = f;
    r["ramification"] = p.q;
    r["document"] = module_json(p, e);
    return r;
}

ojson cmd_twist(Env& e)
{
    ojson r;
    ojson out = ojson::array();
    auto one = [&](const LambdaConnection& base, const ExpFactor& phi, int sign) {
        LambdaConnection tw = twist_exponential(base, phi, sign);
        ojson x;
        ojson p = phi_json(phi, e.doc.tvar);
        x["phi"] = p["phi"];
        x["sign"] = sign;
        x["ramification"] = tw.q;
        try {
            x["newton_polygon"] = newton_json(newton_polygon_module(tw, std::max(e.cap, 16)));
        } catch (const Error& err) {
            x["newton_polygon"] = ojson{{"error", err.what()}};
        }
        x["document"] = module_json(tw, e);
        out.push_back(x);
    };
    if (e.opt.phi) {
        one(e.m, phi_from_option(e), e.opt.sign);
    } else {
        // untwist by each factor of the decomposition in the working coordinate
        FormalDecomposition d = formal_decompose(e.m, decomp_options(e));
        LambdaConnection base = ramify_pullback(e.m, d.q_used / e.m.q);
        std::vector<ExpFactor> seen;
        for (const auto& s : d.summands) {
            if (std::find(seen.begin(), seen.end(), s.phi) != seen.end()) continue;
            seen.push_back(s.phi);
            one(base, s.phi.at_ramification(base.q), -1);
        }
    }
    r["twists"] = out;
    return r;
}

ojson cmd_mellin(Env& e)
{
    DeligneTable t = deligne_nearby_cycles(e.m, decomp_options(e));
    ojson blocks = ojson::array();
    for (const auto& en : t.entries) {
        for (int size : en.jordan_sizes) {
            int ell = size - 1;
            std::vector<ExpansionTerm> terms = model_orthonormal_block(en.datum.beta, ell);
            for (auto& term : terms) term.phi = en.datum.phi;
            ojson b;
            b["phi"] = en.datum.phi.is_zero() ? "0" : en.datum.phi.to_string(e.doc.tvar);
            b["beta"] = en.datum.beta.to_string();
            b["ell"] = ell;
            b["metadata"] = terms.empty() ? "" : terms.front().metadata;
            ojson ts = ojson::array();
            for (const auto& term : terms) ts.push_back(term.to_string());
            b["terms"] = ts;
            ojson ps = ojson::array();
            for (const auto& p : mellin_poles(terms)) {
                ojson x;
                x["alpha"] = p.alpha.to_string();
                x["order"] = p.order;
                x["location"] = lam_str(p.location(), e);
                ojson pr = ojson::object();
                for (const auto& [k, c] : p.principal) pr[std::to_string(k + 1)] = lam_str(c, e);
                x["principal_part"] = pr;
                ps.push_back(x);
            }
            b["poles"] = ps;
            blocks.push_back(b);
        }
    }
    ojson r;
    r["blocks"] = blocks;
    return r;
}

std::string scalar_text(const ojson& v)
{
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

bool is_flat(const ojson& v)
{
    if (!v.is_array()) return false;
    for (const auto& x : v)
        if (x.is_object() || (x.is_array() && !is_flat(x))) return false;
    return true;
}

std::string flat_text(const ojson& v)
{
    std::string s = "[";
    bool first = true;
    for (const auto& x : v) {
        s += (first ? "" : ", ") + (x.is_array() ? flat_text(x) : scalar_text(x));
        first = false;
    }
    return s + "]";
}

void render(const ojson& v, int indent, std::ostringstream& o)
{
    std::string pad(indent, ' ');
    if (v.is_object()) {
        for (auto it = v.begin(); it != v.end(); ++it) {
            const ojson& x = it.value();
            if (x.is_object() && !x.empty()) {
                o << pad << it.key() << ":\n";
                render(x, indent + 2, o);
            } else if (x.is_object()) {
                o << pad << it.key() << ": {}\n";
            } else if (x.is_array() && is_flat(x) && (it.key() != "document" && it.key() != "lines")) {
                o << pad << it.key() << ": " << flat_text(x) << "\n";
            } else if (x.is_array()) {
                o << pad << it.key() << ":" << (x.empty() ? " []" : "") << "\n";
                render(x, indent + 2, o);
            } else {
                o << pad << it.key() << ": " << scalar_text(x) << "\n";
            }
        }
    } else if (v.is_array()) {
        for (const auto& x : v) {
            if (x.is_object()) {
                std::ostringstream sub;
                render(x, indent + 2, sub);
                std::string s = sub.str();
                // first line of the item carries the dash
                o << pad << "- " << s.substr(indent + 2);
            } else if (x.is_array()) {
                o << pad << "- " << flat_text(x) << "\n";
            } else {
                o << pad << "| " << scalar_text(x) << "\n";
            }
        }
    } else {
        o << pad << scalar_text(v) << "\n";
    }
}

Report finish(const std::string& cmd, ojson j)
{
    Report r;
    r.command = cmd;
    r.exit_code = j["exit_code"].get<int>();
    r.json = j.dump(2) + "\n";
    r.text = render_text(r.json);
    return r;
}

ojson input_echo(const InputDocument& doc)
{
    ojson in;
    in["format"] = kDocumentFormat;
    std::istringstream s(print_document(doc));
    ojson lines = ojson::array();
    for (std::string l; std::getline(s, l);) lines.push_back(l);
    in["lines"] = lines;
    return in;
}

}  // namespace

std::string render_text(const std::string& json)
{
    std::ostringstream o;
    render(ojson::parse(json), 0, o);
    return o.str();
}

std::string reserialize_json(const std::string& json)
{
    return ojson::parse(json).dump(2) + "\n";
}

Report run_command(const std::string& cmd, const InputDocument& doc, const RunOptions& opt)
{
    ojson j;
    j["schema"] = kReportSchema;
    j["command"] = cmd;
    ojson findings = ojson::array();
    int code = 0;
    ojson result;
    ojson trunc;
    int rank = doc.rank, pole = 0;
    try {
        j["input"] = input_echo(doc);
        if (std::find(command_names().begin(), command_names().end(), cmd) == command_names().end())
            fail(ErrorKind::InvalidArgument, "unknown command '" + cmd + "'");
        Env e{doc, opt, {}, 8, std::nullopt, doc.lvar};
        e.m = document_connection(doc);
        pole = e.m.pole_order();
        if (opt.lambda0) {
            Cyclotomic l0 = parse_scalar(*opt.lambda0, doc.cyclotomic_order);
            mpq_class a, b;
            if (!l0.gaussian_parts(a, b)) fail(ErrorKind::InvalidArgument, "lambda0 must be a Gaussian rational");
            e.lambda0 = l0;
            e.m = restrict_lambda(e.m, l0);
        }
        if (opt.truncation && (*opt.truncation < 1 || *opt.truncation > 64))
            fail(ErrorKind::InvalidArgument, "truncation must be between 1 and 64");
        e.cap = opt.truncation.value_or(doc.truncation.value_or(default_truncation(rank, pole)));
        if (e.m.precision() < kExact && opt.truncation && *opt.truncation < e.m.precision()) e.m = with_precision(e.m, *opt.truncation);
        trunc["input_precision"] = e.m.precision() >= kExact ? ojson("exact") : ojson(e.m.precision());
        trunc["working_precision"] = e.cap;
        trunc["required_truncation"] = required_truncation(rank, std::max(1, rank), pole, 1);
        j["options"] = {{"lambda0", e.lambda0 ? ojson(e.lambda0->to_string()) : ojson("family")}, {"truncation", e.cap}};

        if (cmd == "decompose") result = cmd_decompose(e);
        else if (cmd == "verify") result = cmd_verify(e);
        else if (cmd == "nearby") result = cmd_nearby(e);
        else if (cmd == "regularity") result = cmd_regularity(e);
        else if (cmd == "ramify") result = cmd_ramify(e);
        else if (cmd == "twist") result = cmd_twist(e);
        else result = cmd_mellin(e);
        if (cmd == "verify" && result["verdict"] != "PASS") findings.push_back("decomposition certificate failed");
    } catch (const Error& err) {
        code = exit_code_for(err.kind());
        ojson f;
        f["error"] = error_kind_name(err.kind());
        f["message"] = err.what();
        if (err.kind() == ErrorKind::InsufficientTruncation) {
            int req = err.required_truncation > 0 ? err.required_truncation : required_truncation(rank, std::max(1, rank), pole, 1);
            f["required_truncation"] = req;
            trunc["required_truncation"] = req;
        }
        findings.push_back(f);
    } catch (const std::exception& ex) {
        code = 3;
        findings.push_back(ojson{{"error", "Internal"}, {"message", ex.what()}});
    }
    if (!result.is_null()) j["result"] = result;
    if (!trunc.is_null()) j["truncation"] = trunc;
    j["findings"] = findings;
    j["exit_code"] = code;
    return finish(cmd, std::move(j));
}

Report run_command_text(const std::string& cmd, const std::string& document_text, const RunOptions& opt)
{
    try {
        InputDocument doc = parse_document(document_text);
        return run_command(cmd, doc, opt);
    } catch (const Error& err) {
        ojson j;
        j["schema"] = kReportSchema;
        j["command"] = cmd;
        j["findings"] = ojson::array({ojson{{"error", error_kind_name(err.kind())}, {"message", err.what()}}});
        j["exit_code"] = exit_code_for(err.kind());
        return finish(cmd, std::move(j));
    }
}

}  // namespace wildcycle

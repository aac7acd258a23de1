#include "ultradiff/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "ultradiff/errors.hpp"
#include "ultradiff/report.hpp"
#include "ultradiff/series_format.hpp"

namespace ultradiff {

namespace {

struct RunConfig {
    std::uint32_t p = 2;
    int prec = 64;
    std::uint64_t seed = 1;
    int samples = 1000;
    std::string format = "text";
    std::string domain;
};

struct ExprSource {
    std::string inline_text;
    std::string file;

    std::string text() const {
        if (!file.empty()) {
            std::ifstream in(file);
            if (!in) throw ConfigError("cannot read expression file '" + file + "'");
            std::stringstream buf;
            buf << in.rdbuf();
            std::string s = buf.str();
            while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
            return s;
        }
        if (inline_text.empty()) throw ConfigError("an expression is required (--expr or --expr-file)");
        return inline_text;
    }
};

void add_expr_options(CLI::App* cmd, ExprSource& src) {
    auto* e = cmd->add_option("--expr", src.inline_text, "expression, e.g. \"phi32(x1)\"");
    auto* f = cmd->add_option("--expr-file", src.file, "file holding one expression");
    e->excludes(f);
}

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> parts;
    while (true) {
        auto pos = text.find(sep);
        parts.emplace_back(text.substr(0, pos));
        if (pos == std::string_view::npos) break;
        text.remove_prefix(pos + 1);
    }
    return parts;
}

Point parse_point(const std::string& text, const PrimeField& F, int prec) {
    Point pt;
    for (const auto& part : split(text, ';')) pt.push_back(parse_series(part, F, prec));
    return pt;
}

// Arity: the largest variable index in the text, or the context hint when
// that is larger.
Expr load_expr(const ExprSource& src, const PrimeField& F, int hint) {
    const std::string text = src.text();
    // parse once with a generous arity just to learn the variables used
    Expr probe = parse_expr(text, std::numeric_limits<int>::max(), F);
    const int used = max_variable(probe);
    if (hint > 0 && used > hint) return parse_expr(text, hint, F);  // raises ArityError with a position
    return parse_expr(text, std::max({hint, used, 1}), F);
}

BallDomain domain_for(const RunConfig& cfg, const PrimeField& F, int d) {
    if (cfg.domain.empty()) return BallDomain::unit_polydisc(F, d);
    BallDomain U = parse_domain(cfg.domain, F, cfg.prec);
    if (U.dim() != d) {
        throw ConfigError("domain has dimension " + std::to_string(U.dim()) + " but the map has arity " +
                          std::to_string(d));
    }
    return U;
}

void emit_values(const RunConfig& cfg, std::ostream& out, const std::string& op, const Expr& f, const Point& point,
                 const Values& values) {
    if (cfg.format == "json") {
        Json pt = Json::array(), vals = Json::array(), abs = Json::array();
        for (const auto& c : point) pt.push_back(to_string(c));
        for (const auto& v : values) {
            vals.push_back(to_string(v));
            abs.push_back(valuation_abs(v).to_string(cfg.p));
        }
        Json j{{"op", op}, {"field_p", cfg.p}, {"prec", cfg.prec}, {"expr", to_string(f)},
               {"point", pt}, {"values", vals}, {"abs", abs}};
        out << j.dump(2) << '\n';
    } else if (cfg.format == "csv") {
        out << "component,value,abs\n";
        for (std::size_t i = 0; i < values.size(); ++i)
            out << i + 1 << ",\"" << to_string(values[i]) << "\"," << valuation_abs(values[i]).to_string(cfg.p) << '\n';
    } else {
        for (const auto& v : values) out << to_string(v) << '\n';
    }
}

template <class Report>
void emit_report(const RunConfig& cfg, std::ostream& out, const Report& r) {
    if (cfg.format == "json")
        out << to_json(r).dump(2) << '\n';
    else if (cfg.format == "csv")
        out << to_csv(r);
    else
        out << to_text(r);
}

int check_status(const CheckReport& r) {
    if (!r.failures.empty()) return kExitCheckFailed;
    if (r.exact_matches != r.samples) return kExitPrecision;
    return kExitOk;
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Exact difference calculus over F_p((X))", "ultradiff"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--p", cfg.p, "field characteristic (prime)")->capture_default_str();
    app.add_option("--prec", cfg.prec, "working precision N, series known modulo X^N")->capture_default_str();
    app.add_option("--seed", cfg.seed, "sampler seed")->capture_default_str();
    app.add_option("--samples", cfg.samples, "number of sampled points")->capture_default_str();
    app.add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    app.add_option("--domain", cfg.domain, "O^d or ball(c_1,r_1;...;c_d,r_d); default O^d");

    // eval
    ExprSource eval_src;
    std::string eval_at;
    auto* eval_cmd = app.add_subcommand("eval", "evaluate an expression at a point");
    add_expr_options(eval_cmd, eval_src);
    eval_cmd->add_option("--at", eval_at, "point, coordinates separated by ';'")->required();

    // dd
    ExprSource dd_src;
    std::string dd_alpha, dd_at, dd_method = "direct";
    auto* dd_cmd = app.add_subcommand("dd", "divided difference f^>alpha<");
    add_expr_options(dd_cmd, dd_src);
    dd_cmd->add_option("--alpha", dd_alpha, "multi-index, e.g. (2) or 1,0")->required();
    dd_cmd->add_option("--at", dd_at, "flat point in K^(d+|alpha|), ';'-separated")->required();
    dd_cmd->add_option("--method", dd_method)->check(CLI::IsMember({"direct", "recursive"}))->capture_default_str();

    // dq
    ExprSource dq_src;
    int dq_k = 1, dq_arity = 0;
    std::string dq_at;
    auto* dq_cmd = app.add_subcommand("dq", "iterated difference quotient f^[k] on the (x, y, t) layout");
    add_expr_options(dq_cmd, dq_src);
    dq_cmd->add_option("--k", dq_k, "order")->check(CLI::Range(1, 8))->capture_default_str();
    dq_cmd->add_option("--arity", dq_arity, "d, when the expression does not use every variable");
    dq_cmd->add_option("--at", dq_at, "flat point in E^[k], ';'-separated")->required();

    // phi
    ExprSource phi_src;
    int phi_k_order = 1;
    std::string phi_x, phi_t;
    std::vector<std::string> phi_xi;
    auto* phi_cmd = app.add_subcommand("phi", "iterated quotient Phi_k with fixed directions");
    add_expr_options(phi_cmd, phi_src);
    phi_cmd->add_option("--k", phi_k_order, "order")->check(CLI::Range(1, 8))->capture_default_str();
    phi_cmd->add_option("--x", phi_x, "base point")->required();
    phi_cmd->add_option("--xi", phi_xi, "direction xi_i (repeat k times)")->required();
    phi_cmd->add_option("--t", phi_t, "t_1; ..; t_k")->required();

    // check
    ExprSource check_src;
    std::string check_target, check_alpha, check_beta;
    int check_min_sep = -1;
    auto* check_cmd = app.add_subcommand("check", "sampled identity checks");
    check_cmd->add_option("target", check_target)
        ->check(CLI::IsMember({"fviaphi", "simpfml", "theta", "symmetry", "recursion"}))
        ->required();
    add_expr_options(check_cmd, check_src);
    check_cmd->add_option("--alpha", check_alpha, "multi-index");
    check_cmd->add_option("--beta", check_beta, "multi-index over d + |alpha| coordinates (simpfml)");
    check_cmd->add_option("--min-sep", check_min_sep, "separation margin for strict points");

    // probe
    ExprSource probe_src;
    std::string probe_target, probe_alpha, probe_levels, probe_witness;
    int probe_n_max = 20;
    auto* probe_cmd = app.add_subcommand("probe", "regularity probes");
    probe_cmd->add_option("target", probe_target)->check(CLI::IsMember({"holder", "c2", "bcnorm"}))->required();
    add_expr_options(probe_cmd, probe_src);
    probe_cmd->add_option("--n-max", probe_n_max, "largest even n for the c2 scan")->capture_default_str();
    probe_cmd->add_option("--alpha", probe_alpha, "multi-index for bcnorm");
    probe_cmd->add_option("--levels", probe_levels, "separation levels m, comma-separated (default 0..prec/2)");
    probe_cmd->add_option("--witness", probe_witness, "pin extra tuples per level")->check(CLI::IsMember({"gauss"}));

    // counterexample
    int ce_n_max = 20;
    auto* ce_cmd = app.add_subcommand("counterexample", "full report for the phi32 map");
    ce_cmd->add_option("--n-max", ce_n_max, "largest even n for the blow-up table")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        const PrimeField F(cfg.p);
        if (cfg.prec < 4) throw ConfigError("--prec must be at least 4");
        if (cfg.samples < 0) throw ConfigError("--samples must be non-negative");

        if (*eval_cmd) {
            Point pt = parse_point(eval_at, F, cfg.prec);
            Expr f = load_expr(eval_src, F, static_cast<int>(pt.size()));
            if (f.arity() != static_cast<int>(pt.size()))
                throw ArityError("the point has " + std::to_string(pt.size()) + " coordinates");
            emit_values(cfg, out, "eval", f, pt, eval_expr(f, pt));
            return kExitOk;
        }
        if (*dd_cmd) {
            MultiIndex alpha = parse_multi_index(dd_alpha);
            Expr f = load_expr(dd_src, F, alpha.dim());
            BlockPoint x(alpha, parse_point(dd_at, F, cfg.prec));
            Values v = dd_method == "recursive" ? dd_recursive(f, x) : dd_direct(f, x);
            emit_values(cfg, out, "dd", f, x.flat(), v);
            return kExitOk;
        }
        if (*dq_cmd) {
            Expr f = load_expr(dq_src, F, dq_arity);
            Point z = parse_point(dq_at, F, cfg.prec);
            emit_values(cfg, out, "dq", f, z, dq_iter(f, dq_k, z));
            return kExitOk;
        }
        if (*phi_cmd) {
            Point x = parse_point(phi_x, F, cfg.prec);
            Expr f = load_expr(phi_src, F, static_cast<int>(x.size()));
            std::vector<Point> xis;
            for (const auto& s : phi_xi) xis.push_back(parse_point(s, F, cfg.prec));
            Point ts = parse_point(phi_t, F, cfg.prec);
            if (static_cast<int>(xis.size()) != phi_k_order || static_cast<int>(ts.size()) != phi_k_order)
                throw ShapeError("phi needs exactly k directions and k parameters");
            Point flat = x;
            for (const auto& xi : xis) flat.insert(flat.end(), xi.begin(), xi.end());
            flat.insert(flat.end(), ts.begin(), ts.end());
            emit_values(cfg, out, "phi", f, flat, phi_k(f, phi_k_order, x, xis, ts));
            return kExitOk;
        }
        if (*check_cmd) {
            std::optional<MultiIndex> alpha;
            if (!check_alpha.empty()) alpha = parse_multi_index(check_alpha);
            Expr f = load_expr(check_src, F, alpha ? alpha->dim() : 0);
            if (alpha && alpha->dim() != f.arity())
                throw ArityError("alpha has " + std::to_string(alpha->dim()) + " entries, the map has arity " +
                                 std::to_string(f.arity()));
            CheckOptions opt{domain_for(cfg, F, f.arity()), cfg.samples, cfg.prec, cfg.seed, check_min_sep};
            CheckReport r;
            if (check_target == "fviaphi") {
                r = check_fviaphi(f, opt);
            } else {
                if (!alpha) throw ConfigError("check " + check_target + " needs --alpha");
                if (check_target == "simpfml") {
                    if (check_beta.empty()) throw ConfigError("check simpfml needs --beta");
                    r = check_simpfml(f, *alpha, parse_multi_index(check_beta), opt);
                } else if (check_target == "theta") {
                    r = check_transport(f, *alpha, opt);
                } else if (check_target == "symmetry") {
                    r = check_symmetry(f, *alpha, opt);
                } else {
                    r = check_recursion(f, *alpha, opt);
                }
            }
            emit_report(cfg, out, r);
            return check_status(r);
        }
        if (*probe_cmd) {
            if (probe_target == "c2") {
                BlowupTable t = c2_blowup_scan(probe_n_max, cfg.prec, F);
                emit_report(cfg, out, t);
                return t.strictly_increasing && t.matches_formula ? kExitOk : kExitCheckFailed;
            }
            if (probe_target == "holder") {
                Expr f = load_expr(probe_src, F, 0);
                emit_report(cfg, out, holder_estimate(f, domain_for(cfg, F, f.arity()), cfg.samples, cfg.prec, cfg.seed));
                return kExitOk;
            }
            if (probe_alpha.empty()) throw ConfigError("probe bcnorm needs --alpha");
            MultiIndex alpha = parse_multi_index(probe_alpha);
            Expr f = load_expr(probe_src, F, alpha.dim());
            std::vector<int> levels;
            if (probe_levels.empty()) {
                for (int m = 0; m <= cfg.prec / 2; ++m) levels.push_back(m);
            } else {
                for (const auto& s : split(probe_levels, ',')) levels.push_back(std::stoi(s));
            }
            Witness w;
            if (probe_witness == "gauss") {
                if (alpha != MultiIndex({2})) throw ConfigError("--witness gauss pins triples and needs --alpha (2)");
                w = gauss_witness_for_levels(F, cfg.prec);
            }
            const int per_level = std::max(1, cfg.samples / std::max<int>(1, static_cast<int>(levels.size())));
            emit_report(cfg, out,
                        dd_boundedness_scan(f, alpha, domain_for(cfg, F, f.arity()), per_level, levels, cfg.prec,
                                            cfg.seed, w));
            return kExitOk;
        }
        if (*ce_cmd) {
            CounterexampleReport r = counterexample_report(ce_n_max, std::max(1, cfg.samples), cfg.prec, cfg.seed, F);
            emit_report(cfg, out, r);
            return r.passed() ? kExitOk : kExitCheckFailed;
        }
    } catch (const SyntaxError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const PrecisionError& e) {
        err << "error: " << e.what() << '\n';
        return kExitPrecision;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: invalid number: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        err << "error: number out of range: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace ultradiff

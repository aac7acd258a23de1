#include <algorithm>
#include <limits>
#include <optional>
#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ultradiff/calculus.hpp"
#include "ultradiff/checks.hpp"
#include "ultradiff/cli.hpp"
#include "ultradiff/errors.hpp"
#include "ultradiff/regularity.hpp"
#include "ultradiff/report.hpp"
#include "ultradiff/series_format.hpp"

namespace py = pybind11;
using namespace ultradiff;

namespace {

py::object to_python(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Expr load(const std::string& text, const PrimeField& F, int arity) {
    if (arity > 0) return parse_expr(text, arity, F);
    Expr probe = parse_expr(text, std::numeric_limits<int>::max(), F);
    return parse_expr(text, std::max(max_variable(probe), 1), F);
}

Point parse_point(const std::vector<std::string>& at, const PrimeField& F, int prec) {
    Point pt;
    for (const auto& s : at) pt.push_back(parse_series(s, F, prec));
    return pt;
}

std::vector<std::string> printed(const Values& v) {
    std::vector<std::string> out;
    for (const auto& s : v) out.push_back(to_string(s));
    return out;
}

BallDomain domain_of(const std::optional<std::string>& text, const PrimeField& F, int d, int prec) {
    return text ? parse_domain(*text, F, prec) : BallDomain::unit_polydisc(F, d);
}

std::vector<std::string> eval(const std::string& expr, const std::vector<std::string>& at, std::uint32_t p, int prec) {
    PrimeField F(p);
    FieldMap f(load(expr, F, static_cast<int>(at.size())));
    return printed(f(parse_point(at, F, prec)));
}

std::vector<std::string> dd(const std::string& expr, const std::vector<int>& alpha, const std::vector<std::string>& at,
                            std::uint32_t p, int prec, const std::string& method) {
    PrimeField F(p);
    FieldMap f(load(expr, F, static_cast<int>(alpha.size())));
    BlockPoint x(MultiIndex(alpha), parse_point(at, F, prec));
    if (method == "direct") return printed(dd_direct(f, x));
    if (method == "recursive") return printed(dd_recursive(f, x));
    throw ConfigError("method must be direct or recursive");
}

py::object valuation(const std::string& series, std::uint32_t p, int prec) {
    auto s = parse_series(series, PrimeField(p), prec);
    if (s.is_zero_to_precision()) return py::none();
    return py::int_(s.lead());
}

py::object check(const std::string& op, const std::string& expr, std::optional<std::vector<int>> alpha,
                 std::optional<std::vector<int>> beta, std::uint32_t p, int prec, int samples, std::uint64_t seed,
                 std::optional<std::string> domain, int min_sep) {
    PrimeField F(p);
    const int hint = alpha ? static_cast<int>(alpha->size()) : 0;
    FieldMap f(load(expr, F, hint));
    CheckOptions opt{domain_of(domain, F, f.arity(), prec), samples, prec, seed, min_sep};
    auto need = [&](const std::optional<std::vector<int>>& m, const char* name) {
        if (!m) throw ConfigError(std::string("check ") + op + " needs " + name);
        return MultiIndex(*m);
    };
    CheckReport r;
    if (op == "fviaphi") r = check_fviaphi(f, opt);
    else if (op == "simpfml") r = check_simpfml(f, need(alpha, "alpha"), need(beta, "beta"), opt);
    else if (op == "theta") r = check_transport(f, need(alpha, "alpha"), opt);
    else if (op == "symmetry") r = check_symmetry(f, need(alpha, "alpha"), opt);
    else if (op == "recursion") r = check_recursion(f, need(alpha, "alpha"), opt);
    else throw ConfigError("unknown check: " + op);
    return to_python(to_json(r));
}

py::object holder(const std::string& expr, std::uint32_t p, int prec, int samples, std::uint64_t seed,
                  std::optional<std::string> domain) {
    PrimeField F(p);
    FieldMap f(load(expr, F, 0));
    return to_python(to_json(holder_estimate(f, domain_of(domain, F, f.arity(), prec), samples, prec, seed)));
}

py::tuple run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_command(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact difference calculus over F_p((X))";

    auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
    py::register_exception<PrecisionError>(m, "PrecisionError", base.ptr());

    m.def("eval", &eval, py::arg("expr"), py::arg("at"), py::arg("p") = 2, py::arg("prec") = 64,
          "Evaluate an expression at a point given as series literals.");
    m.def("dd", &dd, py::arg("expr"), py::arg("alpha"), py::arg("at"), py::arg("p") = 2, py::arg("prec") = 64,
          py::arg("method") = "direct", "Divided difference of order alpha at a flat block point.");
    m.def(
        "gauss_expand",
        [](const std::string& series, std::uint32_t p, int prec) {
            return to_string(gauss_expand(parse_series(series, PrimeField(p), prec)));
        },
        py::arg("series"), py::arg("p") = 2, py::arg("prec") = 64);
    m.def("valuation", &valuation, py::arg("series"), py::arg("p") = 2, py::arg("prec") = 64,
          "Valuation, or None when the value is zero to its precision.");
    m.def("check", &check, py::arg("op"), py::arg("expr"), py::arg("alpha") = py::none(), py::arg("beta") = py::none(),
          py::arg("p") = 2, py::arg("prec") = 64, py::arg("samples") = 100, py::arg("seed") = 1,
          py::arg("domain") = py::none(), py::arg("min_sep") = -1);
    m.def("holder", &holder, py::arg("expr"), py::arg("p") = 2, py::arg("prec") = 64, py::arg("samples") = 400,
          py::arg("seed") = 1, py::arg("domain") = py::none());
    m.def(
        "c2_blowup",
        [](int n_max, std::uint32_t p, int prec) { return to_python(to_json(c2_blowup_scan(n_max, prec, PrimeField(p)))); },
        py::arg("n_max") = 20, py::arg("p") = 2, py::arg("prec") = 64);
    m.def(
        "counterexample",
        [](int n_max, int samples, int prec, std::uint64_t seed, std::uint32_t p) {
            return to_python(to_json(counterexample_report(n_max, samples, prec, seed, PrimeField(p))));
        },
        py::arg("n_max") = 20, py::arg("samples") = 200, py::arg("prec") = 64, py::arg("seed") = 1,
        py::arg("p") = 2);
    m.def("run", &run, py::arg("args"), "Run the command-line tool in process; returns (status, stdout, stderr).");
}

#include "ultradiff/report.hpp"

#include <sstream>

#include "ultradiff/series_format.hpp"

namespace ultradiff {

namespace {

Json strings(const std::vector<LaurentSeries>& v) {
    Json a = Json::array();
    for (const auto& s : v) a.push_back(to_string(s));
    return a;
}

std::string abs_of_valuation(std::uint32_t p, int v) { return AbsValue::exact(v).to_string(p); }

Json blowup_rows(const BlowupTable& t) {
    Json rows = Json::array();
    for (const auto& r : t.rows)
        rows.push_back({{"n", r.n}, {"valuation", r.valuation}, {"abs", abs_of_valuation(t.field_p, r.valuation)},
                        {"value", to_string(r.value)}});
    return rows;
}

std::string blowup_csv(const BlowupTable& t) {
    std::ostringstream out;
    out << "n,valuation,abs\n";
    for (const auto& r : t.rows) out << r.n << ',' << r.valuation << ',' << abs_of_valuation(t.field_p, r.valuation) << '\n';
    return out.str();
}

Json subcheck(const SubCheck& c) { return {{"name", c.name}, {"cases", c.cases}, {"passed", c.passed}}; }

} // namespace

std::string outcome_name(Outcome o) {
    switch (o) {
    case Outcome::Match:
        return "match";
    case Outcome::Undecidable:
        return "undecidable";
    case Outcome::Failure:
        return "failure";
    }
    return "?";
}

Json to_json(const CheckReport& r) {
    Json failures = Json::array();
    for (const auto& f : r.failures)
        failures.push_back({{"point", strings(f.point)}, {"lhs", strings(f.lhs)}, {"rhs", strings(f.rhs)}});
    return {{"op", r.op},
            {"field_p", r.field_p},
            {"prec", r.prec},
            {"seed", r.seed},
            {"samples", r.samples},
            {"exact_matches", r.exact_matches},
            {"undecidable", r.undecidable},
            {"failures", failures}};
}

Json to_json(const HolderReport& r) {
    Json rows = Json::array();
    for (const auto& pr : r.pairs) rows.push_back({{"v_in", pr.v_in}, {"v_out", pr.v_out}});
    return {{"check", "holder"},
            {"params", {{"p", r.field_p}, {"prec", r.prec}, {"seed", r.seed}, {"samples", r.samples}}},
            {"rows", rows},
            {"censored", r.censored},
            {"sigma", r.sigma.to_string()},
            {"log_p_C", r.log_c},
            {"deep_slope", r.deep_slope.to_string()},
            {"self_certified", r.self_certified()},
            {"verdict", r.verdict}};
}

Json to_json(const BoundednessTable& t) {
    Json rows = Json::array();
    for (const auto& r : t.rows) {
        rows.push_back({{"level", r.level},
                        {"count", r.count},
                        {"sup", r.sup.to_string(t.field_p)},
                        {"sup_exact", r.sup.is_exact()},
                        {"sup_neg_log", r.sup.neg_log()}});
    }
    return {{"check", "bcnorm"},
            {"params", {{"p", t.field_p}, {"prec", t.prec}, {"seed", t.seed}, {"alpha", t.alpha.to_string()}}},
            {"rows", rows},
            {"monotone_growth", t.monotone_growth},
            {"verdict", t.monotone_growth ? "sup grows along the sweep: unbounded signal" : "no growth along the sweep"}};
}

Json to_json(const BlowupTable& t) {
    return {{"check", "c2"},
            {"params", {{"p", t.field_p}, {"prec", t.prec}, {"n_max", t.n_max}}},
            {"rows", blowup_rows(t)},
            {"strictly_increasing", t.strictly_increasing},
            {"matches_formula", t.matches_formula},
            {"verdict", t.verdict}};
}

Json to_json(const CounterexampleReport& r) {
    Json subs = Json::array();
    for (const SubCheck* c : {&r.holder_sandwich, &r.additivity, &r.phi2_zero, &r.phi2_t1_zero, &r.phi1_x_independent})
        subs.push_back(subcheck(*c));
    subs.push_back({{"name", "blowup"},
                    {"cases", static_cast<int>(r.blowup.rows.size())},
                    {"passed", r.blowup.strictly_increasing && r.blowup.matches_formula
                                   ? static_cast<int>(r.blowup.rows.size())
                                   : 0}});
    return {{"check", "counterexample"},
            {"params",
             {{"p", r.field_p}, {"prec", r.prec}, {"n_max", r.n_max}, {"samples", r.samples}, {"seed", r.seed}}},
            {"subchecks", subs},
            {"rows", blowup_rows(r.blowup)},
            {"verdict", r.verdict}};
}

std::string to_csv(const CheckReport& r) {
    std::ostringstream out;
    out << "sample,outcome\n";
    for (std::size_t i = 0; i < r.outcomes.size(); ++i) out << i << ',' << outcome_name(r.outcomes[i]) << '\n';
    return out.str();
}

std::string to_csv(const HolderReport& r) {
    std::ostringstream out;
    out << "v_in,v_out\n";
    for (const auto& pr : r.pairs) out << pr.v_in << ',' << pr.v_out << '\n';
    return out.str();
}

std::string to_csv(const BoundednessTable& t) {
    std::ostringstream out;
    out << "level,count,sup\n";
    for (const auto& r : t.rows) out << r.level << ',' << r.count << ',' << r.sup.to_string(t.field_p) << '\n';
    return out.str();
}

std::string to_csv(const BlowupTable& t) { return blowup_csv(t); }

std::string to_csv(const CounterexampleReport& r) { return blowup_csv(r.blowup); }

std::string to_text(const CheckReport& r) {
    std::ostringstream out;
    out << r.op << ": " << r.exact_matches << "/" << r.samples << " exact matches";
    if (r.undecidable) out << ", " << r.undecidable << " undecidable at precision " << r.prec;
    out << ", " << r.failures.size() << " failures\n";
    for (const auto& f : r.failures) {
        out << "  counterexample at (";
        for (std::size_t i = 0; i < f.point.size(); ++i) out << (i ? "; " : "") << to_string(f.point[i]);
        out << ")\n    lhs:";
        for (const auto& v : f.lhs) out << ' ' << to_string(v);
        out << "\n    rhs:";
        for (const auto& v : f.rhs) out << ' ' << to_string(v);
        out << '\n';
    }
    return out.str();
}

std::string to_text(const HolderReport& r) {
    std::ostringstream out;
    out << "sigma = " << r.sigma.to_string() << ", log_p C = " << r.log_c << ", deep slope = " << r.deep_slope.to_string()
        << "\n";
    out << r.pairs.size() << " pairs, " << r.censored << " censored\n";
    out << r.verdict << '\n';
    return out.str();
}

std::string to_text(const BoundednessTable& t) {
    std::ostringstream out;
    out << "level  count  sup|f^>" << t.alpha.to_string() << "<|\n";
    for (const auto& r : t.rows) out << r.level << "  " << r.count << "  " << r.sup.to_string(t.field_p) << '\n';
    out << (t.monotone_growth ? "sup grows along the sweep: unbounded signal\n" : "no growth along the sweep\n");
    return out.str();
}

std::string to_text(const BlowupTable& t) {
    std::ostringstream out;
    out << "n  |f^>2<(0, X^n, X^n + X^(n+3))|\n";
    for (const auto& r : t.rows) out << r.n << "  " << abs_of_valuation(t.field_p, r.valuation) << '\n';
    out << t.verdict << '\n';
    return out.str();
}

std::string to_text(const CounterexampleReport& r) {
    std::ostringstream out;
    for (const SubCheck* c : {&r.holder_sandwich, &r.additivity, &r.phi2_zero, &r.phi2_t1_zero, &r.phi1_x_independent})
        out << c->name << ": " << c->passed << "/" << c->cases << '\n';
    out << to_text(r.blowup);
    out << r.verdict << '\n';
    return out.str();
}

} // namespace ultradiff

#include "ultradiff/series_format.hpp"

#include <cctype>
#include <map>
#include <optional>

#include "ultradiff/errors.hpp"

namespace ultradiff {

namespace {

class LiteralReader {
public:
    LiteralReader(std::string_view text, PrimeField field) : s_(text), field_(field) {}

    LaurentSeries read(int default_prec) {
        std::map<int, Residue> terms;
        std::optional<int> big_o;
        bool negate = false;
        skip_ws();
        if (at_end()) fail("term", "empty series literal");
        while (true) {
            skip_ws();
            if (peek_big_o()) {
                if (negate) fail("term", "O-term cannot be subtracted");
                big_o = read_big_o();
                skip_ws();
                if (!at_end()) fail("end of literal", "trailing input after O-term");
                break;
            }
            auto [c, e] = read_term();
            if (negate) c = field_.neg(c);
            terms[e] = field_.add(terms[e], c);
            skip_ws();
            if (at_end()) break;
            char op = s_[pos_];
            if (op != '+' && op != '-') fail("'+' or '-'", "unexpected character");
            negate = (op == '-');
            ++pos_;
        }
        int prec = big_o.value_or(default_prec);
        int lead = prec;
        for (auto& [e, c] : terms) {
            if (c == 0) continue;
            if (e >= prec) fail("exponent below the O-term", "term X^" + std::to_string(e) + " lies in the unknown tail");
            lead = std::min(lead, e);
        }
        std::vector<Residue> coeffs(static_cast<std::size_t>(prec - lead), 0);
        for (auto& [e, c] : terms)
            if (c != 0) coeffs[static_cast<std::size_t>(e - lead)] = c;
        return LaurentSeries(field_, lead, std::move(coeffs), prec);
    }

private:
    bool at_end() const { return pos_ >= s_.size(); }
    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    [[noreturn]] void fail(const std::string& expected, const std::string& what) const {
        throw SyntaxError(pos_, expected, "series literal: " + what);
    }
    void expect(char c) {
        skip_ws();
        if (at_end() || s_[pos_] != c) fail(std::string("'") + c + "'", "unexpected input");
        ++pos_;
    }
    bool peek_big_o() const { return !at_end() && s_[pos_] == 'O'; }

    long long read_int(bool allow_sign) {
        skip_ws();
        bool neg = false;
        if (allow_sign && !at_end() && (s_[pos_] == '-' || s_[pos_] == '+')) {
            neg = s_[pos_] == '-';
            ++pos_;
        }
        std::size_t start = pos_;
        long long v = 0;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_] - '0');
            if (v > (1LL << 40)) fail("integer", "integer too large");
            ++pos_;
        }
        if (pos_ == start) fail("integer", "missing integer");
        return neg ? -v : v;
    }

    int read_exponent() {
        long long e = read_int(true);
        if (e > (1 << 24) || e < -(1 << 24)) fail("exponent", "exponent out of range");
        return static_cast<int>(e);
    }

    int read_big_o() {
        ++pos_;  // 'O'
        expect('(');
        expect('X');
        expect('^');
        int n = read_exponent();
        expect(')');
        return n;
    }

    std::pair<Residue, int> read_term() {
        skip_ws();
        Residue c = 1;
        if (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            std::size_t at = pos_;
            long long v = read_int(false);
            if (v >= static_cast<long long>(field_.characteristic())) {
                pos_ = at;
                fail("coefficient in 0..p-1", "coefficient out of range");
            }
            c = static_cast<Residue>(v);
            skip_ws();
            if (at_end() || s_[pos_] != '*') return {c, 0};
            ++pos_;
            skip_ws();
        }
        if (at_end() || s_[pos_] != 'X') fail("'X' or coefficient", "unexpected input");
        ++pos_;
        skip_ws();
        int e = 1;
        if (!at_end() && s_[pos_] == '^') {
            ++pos_;
            e = read_exponent();
        }
        return {c, e};
    }

    std::string_view s_;
    PrimeField field_;
    std::size_t pos_ = 0;
};

} // namespace

LaurentSeries parse_series(std::string_view text, PrimeField field, int default_prec) {
    return LiteralReader(text, field).read(default_prec);
}

std::string to_string(const LaurentSeries& x) {
    std::string out;
    auto coeffs = x.coefficients();
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        Residue c = coeffs[i];
        if (c == 0) continue;
        int e = x.lead() + static_cast<int>(i);
        if (!out.empty()) out += " + ";
        if (e == 0) {
            out += std::to_string(c);
            continue;
        }
        if (c != 1) out += std::to_string(c) + "*";
        out += "X";
        if (e != 1) out += "^" + std::to_string(e);
    }
    if (out.empty()) out = "0";
    out += " + O(X^" + std::to_string(x.prec()) + ")";
    return out;
}

} // namespace ultradiff

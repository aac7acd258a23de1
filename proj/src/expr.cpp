#include "ultradiff/expr.hpp"

#include <algorithm>
#include <cctype>

#include "ultradiff/errors.hpp"

namespace ultradiff {

bool structurally_equal(const Node& a, const Node& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case NodeKind::Var:
        return a.var == b.var;
    case NodeKind::Const:
        return a.literal == b.literal;
    case NodeKind::Pow:
        return a.exponent == b.exponent && structurally_equal(*a.lhs, *b.lhs);
    case NodeKind::Builtin:
        return a.builtin == b.builtin && structurally_equal(*a.lhs, *b.lhs);
    default:
        return structurally_equal(*a.lhs, *b.lhs) && structurally_equal(*a.rhs, *b.rhs);
    }
}

Expr::Expr(PrimeField field, int arity, std::vector<NodePtr> outputs)
    : field_(field), arity_(arity), outputs_(std::move(outputs)) {
    if (arity_ < 1) throw ArityError("arity must be at least 1");
    if (outputs_.empty()) throw ArityError("an expression needs at least one output component");
}

bool operator==(const Expr& a, const Expr& b) {
    if (a.field_ != b.field_ || a.arity_ != b.arity_ || a.outputs_.size() != b.outputs_.size()) return false;
    for (std::size_t i = 0; i < a.outputs_.size(); ++i)
        if (!structurally_equal(*a.outputs_[i], *b.outputs_[i])) return false;
    return true;
}

namespace {

class ExprParser {
public:
    ExprParser(std::string_view text, int arity, PrimeField field) : s_(text), arity_(arity), field_(field) {}

    Expr parse() {
        std::vector<NodePtr> outs;
        skip_ws();
        if (peek('[')) {
            ++pos_;
            outs.push_back(sum());
            while (peek(',')) {
                ++pos_;
                outs.push_back(sum());
            }
            expect(']');
        } else {
            outs.push_back(sum());
        }
        skip_ws();
        if (!at_end()) fail("operator or end of input", "unexpected character");
        return Expr(field_, arity_, std::move(outs));
    }

private:
    bool at_end() const { return pos_ >= s_.size(); }
    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip_ws();
        return !at_end() && s_[pos_] == c;
    }
    void expect(char c) {
        if (!peek(c)) fail(std::string("'") + c + "'", "unexpected input");
        ++pos_;
    }
    [[noreturn]] void fail(const std::string& expected, const std::string& what) const {
        throw SyntaxError(pos_, expected, what);
    }

    static NodePtr binary(NodeKind k, NodePtr l, NodePtr r, std::size_t at) {
        auto n = std::make_shared<Node>();
        n->kind = k;
        n->position = at;
        n->lhs = std::move(l);
        n->rhs = std::move(r);
        return n;
    }

    NodePtr sum() {
        NodePtr acc = prod();
        while (true) {
            skip_ws();
            if (at_end() || (s_[pos_] != '+' && s_[pos_] != '-')) return acc;
            std::size_t at = pos_;
            NodeKind k = s_[pos_] == '+' ? NodeKind::Add : NodeKind::Sub;
            ++pos_;
            acc = binary(k, acc, prod(), at);
        }
    }

    NodePtr prod() {
        NodePtr acc = power();
        while (true) {
            skip_ws();
            if (at_end() || (s_[pos_] != '*' && s_[pos_] != '/')) return acc;
            std::size_t at = pos_;
            NodeKind k = s_[pos_] == '*' ? NodeKind::Mul : NodeKind::Div;
            ++pos_;
            acc = binary(k, acc, power(), at);
        }
    }

    NodePtr power() {
        NodePtr base = atom();
        while (peek('^')) {
            std::size_t at = pos_++;
            auto n = std::make_shared<Node>();
            n->kind = NodeKind::Pow;
            n->position = at;
            skip_ws();
            long long e = natural("non-negative exponent");
            if (e > 4096) fail("exponent <= 4096", "exponent too large");
            n->exponent = static_cast<unsigned>(e);
            n->lhs = base;
            base = n;
        }
        return base;
    }

    long long natural(const char* what) {
        std::size_t start = pos_;
        long long v = 0;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_] - '0');
            if (v > (1LL << 40)) fail(what, "integer too large");
            ++pos_;
        }
        if (pos_ == start) fail(what, "missing integer");
        return v;
    }

    int signed_int() {
        skip_ws();
        bool neg = false;
        if (!at_end() && (s_[pos_] == '-' || s_[pos_] == '+')) {
            neg = s_[pos_] == '-';
            ++pos_;
        }
        long long v = natural("integer");
        if (v > (1 << 24)) fail("exponent in range", "exponent too large");
        return static_cast<int>(neg ? -v : v);
    }

    NodePtr constant(Literal lit, std::size_t at) {
        auto n = std::make_shared<Node>();
        n->kind = NodeKind::Const;
        n->position = at;
        n->literal = lit;
        return n;
    }

    NodePtr atom() {
        skip_ws();
        if (at_end()) fail("operand", "unexpected end of input");
        const std::size_t at = pos_;
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr inner = sum();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            long long v = natural("integer");
            if (v >= static_cast<long long>(field_.characteristic())) {
                pos_ = at;
                fail("coefficient in 0..p-1", "coefficient out of range");
            }
            return constant({Literal::Kind::Integer, static_cast<Residue>(v), 0}, at);
        }
        if (c == 'X') {
            ++pos_;
            int e = 1;
            // X^k is a single literal (k may be negative); (X)^k is a power node.
            if (peek('^')) {
                ++pos_;
                e = signed_int();
            }
            return constant({Literal::Kind::XPower, 1, e}, at);
        }
        if (c == 'O' && pos_ + 1 < s_.size() && !std::isalnum(static_cast<unsigned char>(s_[pos_ + 1]))) {
            ++pos_;
            expect('(');
            expect('X');
            expect('^');
            int e = signed_int();
            expect(')');
            return constant({Literal::Kind::BigO, 0, e}, at);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t end = pos_;
            while (end < s_.size() && std::isalpha(static_cast<unsigned char>(s_[end]))) ++end;
            std::string_view word = s_.substr(pos_, end - pos_);
            if (word == "x") {
                pos_ = end;
                if (at_end() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                    fail("variable index", "variable name needs an index");
                long long idx = natural("variable index");
                if (idx < 1 || idx > arity_) {
                    throw ArityError("variable x" + std::to_string(idx) + " at position " + std::to_string(at) +
                                     " exceeds arity " + std::to_string(arity_));
                }
                auto n = std::make_shared<Node>();
                n->kind = NodeKind::Var;
                n->position = at;
                n->var = static_cast<int>(idx);
                return n;
            }
            while (end < s_.size() && std::isalnum(static_cast<unsigned char>(s_[end]))) ++end;
            std::string name(s_.substr(pos_, end - pos_));
            if (name != "phi32") fail("builtin phi32", "unknown function '" + name + "'");
            pos_ = end;
            expect('(');
            NodePtr arg = sum();
            expect(')');
            auto n = std::make_shared<Node>();
            n->kind = NodeKind::Builtin;
            n->position = at;
            n->builtin = std::move(name);
            n->lhs = std::move(arg);
            return n;
        }
        fail("operand", "unexpected character");
    }

    std::string_view s_;
    int arity_;
    PrimeField field_;
    std::size_t pos_ = 0;
};

int precedence(const Node& n) {
    switch (n.kind) {
    case NodeKind::Add:
    case NodeKind::Sub:
        return 1;
    case NodeKind::Mul:
    case NodeKind::Div:
        return 2;
    case NodeKind::Pow:
        return 3;
    default:
        return 4;
    }
}

std::string print_literal(const Literal& lit) {
    switch (lit.kind) {
    case Literal::Kind::Integer:
        return std::to_string(lit.coeff);
    case Literal::Kind::XPower:
        return lit.exponent == 1 ? "X" : "X^" + std::to_string(lit.exponent);
    case Literal::Kind::BigO:
        return "O(X^" + std::to_string(lit.exponent) + ")";
    }
    return {};
}

std::string print_node(const Node& n) {
    switch (n.kind) {
    case NodeKind::Var:
        return "x" + std::to_string(n.var);
    case NodeKind::Const:
        return print_literal(n.literal);
    case NodeKind::Builtin:
        return n.builtin + "(" + print_node(*n.lhs) + ")";
    case NodeKind::Pow: {
        const Node& b = *n.lhs;
        bool bare = b.kind == NodeKind::Var || b.kind == NodeKind::Builtin || b.kind == NodeKind::Pow;
        std::string base = print_node(b);
        return (bare ? base : "(" + base + ")") + "^" + std::to_string(n.exponent);
    }
    default: {
        const char* op = n.kind == NodeKind::Add ? " + " : n.kind == NodeKind::Sub ? " - " : n.kind == NodeKind::Mul ? "*" : "/";
        const int pr = precedence(n);
        std::string l = print_node(*n.lhs);
        std::string r = print_node(*n.rhs);
        if (precedence(*n.lhs) < pr) l = "(" + l + ")";
        if (precedence(*n.rhs) <= pr) r = "(" + r + ")";
        return l + op + r;
    }
    }
}

struct Evaluator {
    std::span<const LaurentSeries> point;
    PrimeField field;
    int const_prec;

    LaurentSeries literal(const Literal& lit) const {
        switch (lit.kind) {
        case Literal::Kind::Integer:
            return LaurentSeries::monomial(field, lit.coeff, 0, const_prec);
        case Literal::Kind::XPower:
            return LaurentSeries::monomial(field, 1, lit.exponent, const_prec);
        case Literal::Kind::BigO:
            return LaurentSeries::zero(field, lit.exponent);
        }
        return LaurentSeries::zero(field, const_prec);
    }

    LaurentSeries operator()(const Node& n) const {
        switch (n.kind) {
        case NodeKind::Var:
            return point[static_cast<std::size_t>(n.var - 1)];
        case NodeKind::Const:
            return literal(n.literal);
        case NodeKind::Add:
            return (*this)(*n.lhs) + (*this)(*n.rhs);
        case NodeKind::Sub:
            return (*this)(*n.lhs) - (*this)(*n.rhs);
        case NodeKind::Mul:
            return (*this)(*n.lhs) * (*this)(*n.rhs);
        case NodeKind::Div:
            return (*this)(*n.lhs) / (*this)(*n.rhs);
        case NodeKind::Pow:
            if (n.exponent == 0) return LaurentSeries::one(field, const_prec);
            return (*this)(*n.lhs).pow(n.exponent);
        case NodeKind::Builtin:
            return gauss_expand((*this)(*n.lhs));
        }
        throw DomainError("unknown node kind");
    }
};

} // namespace

Expr parse_expr(std::string_view text, int arity, PrimeField field) { return ExprParser(text, arity, field).parse(); }

namespace {

int max_var(const Node& n) {
    int m = n.kind == NodeKind::Var ? n.var : 0;
    if (n.lhs) m = std::max(m, max_var(*n.lhs));
    if (n.rhs) m = std::max(m, max_var(*n.rhs));
    return m;
}

} // namespace

int max_variable(const Expr& f) {
    int m = 0;
    for (const auto& root : f.outputs()) m = std::max(m, max_var(*root));
    return m;
}

std::string to_string(const Expr& f) {
    if (f.coarity() == 1) return print_node(*f.outputs().front());
    std::string out = "[";
    for (std::size_t i = 0; i < f.outputs().size(); ++i) {
        if (i) out += ", ";
        out += print_node(*f.outputs()[i]);
    }
    return out + "]";
}

std::vector<LaurentSeries> eval_expr(const Expr& f, std::span<const LaurentSeries> point) {
    if (static_cast<int>(point.size()) != f.arity()) {
        throw ArityError("point has " + std::to_string(point.size()) + " coordinates, map expects " +
                         std::to_string(f.arity()));
    }
    int const_prec = point.front().prec();
    for (const auto& x : point) {
        if (x.field() != f.field()) throw DomainError("point and expression live over different prime fields");
        const_prec = std::max(const_prec, x.prec());
    }
    Evaluator ev{point, f.field(), const_prec};
    std::vector<LaurentSeries> out;
    out.reserve(f.outputs().size());
    for (const auto& root : f.outputs()) out.push_back(ev(*root));
    return out;
}

LaurentSeries gauss_expand(const LaurentSeries& x) {
    if (x.is_zero_to_precision()) {
        if (x.prec() < 0) {
            throw UndecidableAtPrecision("phi32: argument zero to precision " + std::to_string(x.prec()) +
                                         " is not certified to lie in the unit ball");
        }
        return LaurentSeries::zero(x.field(), 3 * x.prec() / 2);
    }
    if (x.lead() < 0) {
        throw DomainError("phi32 is defined on the unit ball only; argument has valuation " + std::to_string(x.lead()));
    }
    const int out_prec = 3 * x.prec() / 2;
    const int out_lead = 3 * x.lead() / 2;
    std::vector<Residue> out(static_cast<std::size_t>(out_prec - out_lead), 0);
    auto c = x.coefficients();
    for (std::size_t i = 0; i < c.size(); ++i) {
        int k = x.lead() + static_cast<int>(i);
        out[static_cast<std::size_t>(3 * k / 2 - out_lead)] = c[i];
    }
    return LaurentSeries(x.field(), out_lead, std::move(out), out_prec);
}

} // namespace ultradiff

#include "slantsub/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace slantsub {

namespace {

ExprPtr node(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

ExprPtr unary(Expr::Op op, ExprPtr a) {
    Expr e;
    e.kind = Expr::Kind::Unary;
    e.op = op;
    e.a = std::move(a);
    return node(std::move(e));
}

ExprPtr binary(Expr::Op op, ExprPtr a, ExprPtr b) {
    Expr e;
    e.kind = Expr::Kind::Binary;
    e.op = op;
    e.a = std::move(a);
    e.b = std::move(b);
    return node(std::move(e));
}

bool is_const(const ExprPtr& e, double v) {
    return e->kind == Expr::Kind::Constant && e->value == v;
}

// Light folding so rendered derivatives stay readable.
ExprPtr add(ExprPtr a, ExprPtr b) {
    if (is_const(a, 0.0)) return b;
    if (is_const(b, 0.0)) return a;
    return binary(Expr::Op::Add, std::move(a), std::move(b));
}
ExprPtr sub(ExprPtr a, ExprPtr b) {
    if (is_const(b, 0.0)) return a;
    if (is_const(a, 0.0)) return unary(Expr::Op::Neg, std::move(b));
    return binary(Expr::Op::Sub, std::move(a), std::move(b));
}
ExprPtr mul(ExprPtr a, ExprPtr b) {
    if (is_const(a, 0.0) || is_const(b, 0.0)) return make_const(0.0);
    if (is_const(a, 1.0)) return b;
    if (is_const(b, 1.0)) return a;
    return binary(Expr::Op::Mul, std::move(a), std::move(b));
}
ExprPtr divide(ExprPtr a, ExprPtr b) {
    if (is_const(a, 0.0)) return make_const(0.0);
    if (is_const(b, 1.0)) return a;
    return binary(Expr::Op::Div, std::move(a), std::move(b));
}

struct Parser {
    std::string_view text;
    std::size_t pos = 0;
    int dimension;
    const std::map<std::string, double>& constants;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool peek(char c) {
        skip_ws();
        return pos < text.size() && text[pos] == c;
    }

    bool accept(char c) {
        if (peek(c)) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c, const std::string& what) {
        if (!accept(c)) throw SyntaxError(pos, what);
    }

    ExprPtr parse() {
        ExprPtr e = parse_sum();
        skip_ws();
        if (pos != text.size()) throw SyntaxError(pos, "end of input");
        return e;
    }

    ExprPtr parse_sum() {
        ExprPtr e = parse_term();
        for (;;) {
            if (accept('+'))
                e = binary(Expr::Op::Add, e, parse_term());
            else if (accept('-'))
                e = binary(Expr::Op::Sub, e, parse_term());
            else
                return e;
        }
    }

    ExprPtr parse_term() {
        ExprPtr e = parse_unary();
        for (;;) {
            if (accept('*'))
                e = binary(Expr::Op::Mul, e, parse_unary());
            else if (accept('/'))
                e = binary(Expr::Op::Div, e, parse_unary());
            else
                return e;
        }
    }

    ExprPtr parse_unary() {
        if (accept('-')) return unary(Expr::Op::Neg, parse_unary());
        return parse_power();
    }

    // '^' binds tighter than unary minus and associates right:
    // -x^2 is -(x^2), a^b^c is a^(b^c), 2^-3 allowed.
    ExprPtr parse_power() {
        ExprPtr base = parse_atom();
        if (accept('^')) return binary(Expr::Op::Pow, base, parse_unary());
        return base;
    }

    ExprPtr parse_atom() {
        skip_ws();
        if (pos >= text.size()) throw SyntaxError(pos, "an operand");
        const char c = text[pos];
        if (c == '(') {
            ++pos;
            ExprPtr e = parse_sum();
            expect(')', "')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
        throw SyntaxError(pos, "an operand");
    }

    ExprPtr parse_number() {
        const std::string buf(text.substr(pos));
        const char* begin = buf.c_str();
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) throw SyntaxError(pos, "a number");
        pos += static_cast<std::size_t>(end - begin);
        return make_const(v);
    }

    ExprPtr parse_identifier() {
        const std::size_t start = pos;
        while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                     text[pos] == '_'))
            ++pos;
        const std::string name(text.substr(start, pos - start));
        if (peek('(')) {
            Expr::Op op;
            if (name == "sin")
                op = Expr::Op::Sin;
            else if (name == "cos")
                op = Expr::Op::Cos;
            else if (name == "sqrt")
                op = Expr::Op::Sqrt;
            else
                throw SyntaxError(start, "a function name (sin, cos, sqrt)");
            ++pos; // '('
            ExprPtr arg = parse_sum();
            expect(')', "')'");
            return unary(op, arg);
        }
        if (name.size() >= 2 && name[0] == 'x') {
            bool digits = true;
            for (std::size_t i = 1; i < name.size(); ++i)
                if (!std::isdigit(static_cast<unsigned char>(name[i]))) digits = false;
            if (digits) {
                const int idx = std::atoi(name.c_str() + 1);
                if (idx < 1 || idx > dimension)
                    throw SyntaxError(start, "a variable index between 1 and " +
                                                 std::to_string(dimension));
                return make_var(idx - 1);
            }
        }
        if (name == "pi") return make_const(M_PI);
        auto it = constants.find(name);
        if (it != constants.end()) return make_const(it->second);
        throw SyntaxError(start, "a known identifier ('" + name + "' is not bound)");
    }
};

int precedence(const Expr& e) {
    if (e.kind == Expr::Kind::Constant || e.kind == Expr::Kind::Variable) return 5;
    if (e.kind == Expr::Kind::Unary) return e.op == Expr::Op::Neg ? 2 : 5;
    switch (e.op) {
        case Expr::Op::Add:
        case Expr::Op::Sub: return 0;
        case Expr::Op::Mul:
        case Expr::Op::Div: return 1;
        case Expr::Op::Pow: return 3;
        default: return 5;
    }
}

void render_into(const Expr& e, std::string& out, int parent_prec) {
    const int prec = precedence(e);
    const bool parens = prec < parent_prec;
    if (parens) out += '(';
    switch (e.kind) {
        case Expr::Kind::Constant: {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", e.value);
            out += buf;
            break;
        }
        case Expr::Kind::Variable:
            out += 'x';
            out += std::to_string(e.var + 1);
            break;
        case Expr::Kind::Unary:
            if (e.op == Expr::Op::Neg) {
                out += '-';
                render_into(*e.a, out, 3); // binds looser than ^, tighter than * /
            } else {
                out += e.op == Expr::Op::Sin ? "sin" : e.op == Expr::Op::Cos ? "cos" : "sqrt";
                out += '(';
                render_into(*e.a, out, 0);
                out += ')';
            }
            break;
        case Expr::Kind::Binary: {
            const char* sym = e.op == Expr::Op::Add   ? "+"
                              : e.op == Expr::Op::Sub ? "-"
                              : e.op == Expr::Op::Mul ? "*"
                              : e.op == Expr::Op::Div ? "/"
                                                      : "^";
            // Left-assoc binaries need the right child tighter; '^' the reverse.
            const int lhs_prec = e.op == Expr::Op::Pow ? prec + 1 : prec;
            const int rhs_prec = e.op == Expr::Op::Pow ? prec : prec + 1;
            render_into(*e.a, out, lhs_prec);
            out += sym;
            render_into(*e.b, out, rhs_prec);
            break;
        }
    }
    if (parens) out += ')';
}

} // namespace

ExprPtr make_const(double v) {
    Expr e;
    e.kind = Expr::Kind::Constant;
    e.value = v;
    return node(std::move(e));
}

ExprPtr make_var(int index) {
    Expr e;
    e.kind = Expr::Kind::Variable;
    e.var = index;
    return node(std::move(e));
}

ExprPtr parse_expression(std::string_view text, int dimension,
                         const std::map<std::string, double>& constants) {
    Parser p{text, 0, dimension, constants};
    return p.parse();
}

double eval_expr(const Expr& e, const Eigen::VectorXd& coords) {
    switch (e.kind) {
        case Expr::Kind::Constant: return e.value;
        case Expr::Kind::Variable: return coords[e.var];
        case Expr::Kind::Unary: {
            const double a = eval_expr(*e.a, coords);
            switch (e.op) {
                case Expr::Op::Neg: return -a;
                case Expr::Op::Sin: return std::sin(a);
                case Expr::Op::Cos: return std::cos(a);
                case Expr::Op::Sqrt:
                    if (a < 0.0) fail("EvalError", "sqrt of a negative value");
                    return std::sqrt(a);
                default: break;
            }
            break;
        }
        case Expr::Kind::Binary: {
            const double a = eval_expr(*e.a, coords);
            const double b = eval_expr(*e.b, coords);
            switch (e.op) {
                case Expr::Op::Add: return a + b;
                case Expr::Op::Sub: return a - b;
                case Expr::Op::Mul: return a * b;
                case Expr::Op::Div:
                    if (std::abs(b) <= 1e-12) fail("EvalError", "division by a tiny denominator");
                    return a / b;
                case Expr::Op::Pow: {
                    const double r = std::pow(a, b);
                    if (!std::isfinite(r)) fail("EvalError", "pow produced a non-finite value");
                    return r;
                }
                default: break;
            }
            break;
        }
    }
    fail("EvalError", "malformed expression node");
}

ExprPtr try_differentiate(const ExprPtr& e, int axis) {
    switch (e->kind) {
        case Expr::Kind::Constant: return make_const(0.0);
        case Expr::Kind::Variable: return make_const(e->var == axis ? 1.0 : 0.0);
        case Expr::Kind::Unary: {
            ExprPtr da = try_differentiate(e->a, axis);
            if (!da) return nullptr;
            switch (e->op) {
                case Expr::Op::Neg: return is_const(da, 0.0) ? da : unary(Expr::Op::Neg, da);
                case Expr::Op::Sin: return mul(unary(Expr::Op::Cos, e->a), da);
                case Expr::Op::Cos:
                    return mul(unary(Expr::Op::Neg, unary(Expr::Op::Sin, e->a)), da);
                case Expr::Op::Sqrt:
                    if (is_const(da, 0.0)) return make_const(0.0);
                    return divide(da, mul(make_const(2.0), unary(Expr::Op::Sqrt, e->a)));
                default: return nullptr;
            }
        }
        case Expr::Kind::Binary: {
            ExprPtr da = try_differentiate(e->a, axis);
            ExprPtr db = try_differentiate(e->b, axis);
            if (!da || !db) return nullptr;
            switch (e->op) {
                case Expr::Op::Add: return add(da, db);
                case Expr::Op::Sub: return sub(da, db);
                case Expr::Op::Mul: return add(mul(da, e->b), mul(e->a, db));
                case Expr::Op::Div:
                    return divide(sub(mul(da, e->b), mul(e->a, db)),
                                  binary(Expr::Op::Pow, e->b, make_const(2.0)));
                case Expr::Op::Pow:
                    // Only constant exponents: c a^(c-1) a'. Anything else needs log.
                    if (e->b->kind != Expr::Kind::Constant) return nullptr;
                    if (is_const(da, 0.0)) return make_const(0.0);
                    return mul(mul(make_const(e->b->value),
                                   binary(Expr::Op::Pow, e->a, make_const(e->b->value - 1.0))),
                               da);
                default: return nullptr;
            }
        }
    }
    return nullptr;
}

std::string render(const Expr& e) {
    std::string out;
    render_into(e, out, 0);
    return out;
}

bool expr_equal(const Expr& lhs, const Expr& rhs) {
    if (lhs.kind != rhs.kind) return false;
    switch (lhs.kind) {
        case Expr::Kind::Constant: return lhs.value == rhs.value;
        case Expr::Kind::Variable: return lhs.var == rhs.var;
        case Expr::Kind::Unary: return lhs.op == rhs.op && expr_equal(*lhs.a, *rhs.a);
        case Expr::Kind::Binary:
            return lhs.op == rhs.op && expr_equal(*lhs.a, *rhs.a) && expr_equal(*lhs.b, *rhs.b);
    }
    return false;
}

} // namespace slantsub

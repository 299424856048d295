#include "mokkt/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <limits>
#include <sstream>

namespace mokkt {

bool is_unary(NodeKind k) {
    switch (k) {
    case NodeKind::Neg:
    case NodeKind::Abs:
    case NodeKind::Sqrt:
    case NodeKind::Exp:
    case NodeKind::Log:
    case NodeKind::Sin:
    case NodeKind::Cos:
        return true;
    default:
        return false;
    }
}

bool is_binary(NodeKind k) {
    switch (k) {
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul:
    case NodeKind::Div:
    case NodeKind::Pow:
    case NodeKind::Min2:
    case NodeKind::Max2:
        return true;
    default:
        return false;
    }
}

const char* node_name(NodeKind k) {
    switch (k) {
    case NodeKind::Constant: return "const";
    case NodeKind::Var: return "var";
    case NodeKind::Neg: return "neg";
    case NodeKind::Add: return "+";
    case NodeKind::Sub: return "-";
    case NodeKind::Mul: return "*";
    case NodeKind::Div: return "/";
    case NodeKind::Pow: return "^";
    case NodeKind::Abs: return "abs";
    case NodeKind::Sqrt: return "sqrt";
    case NodeKind::Exp: return "exp";
    case NodeKind::Log: return "log";
    case NodeKind::Sin: return "sin";
    case NodeKind::Cos: return "cos";
    case NodeKind::Min2: return "min2";
    case NodeKind::Max2: return "max2";
    }
    return "?";
}

namespace {

struct Builtin {
    const char* name;
    NodeKind kind;
    int arity;
};

constexpr std::array<Builtin, 8> kBuiltins = {{
    {"abs", NodeKind::Abs, 1},
    {"sqrt", NodeKind::Sqrt, 1},
    {"exp", NodeKind::Exp, 1},
    {"log", NodeKind::Log, 1},
    {"sin", NodeKind::Sin, 1},
    {"cos", NodeKind::Cos, 1},
    {"min2", NodeKind::Min2, 2},
    {"max2", NodeKind::Max2, 2},
}};

const Builtin* find_builtin(std::string_view name) {
    for (const auto& b : kBuiltins)
        if (name == b.name) return &b;
    return nullptr;
}

} // namespace

int Expr::push(Node n) {
    nodes_.push_back(n);
    return static_cast<int>(nodes_.size()) - 1;
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
public:
    Parser(std::string_view text, Expr& out) : text_(text), out_(out) {}

    void run() {
        int root = parse_expr();
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError("unexpected trailing input", pos_);
        (void)root;
    }

private:
    std::string_view text_;
    Expr& out_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool accept(char c) {
        if (peek(c)) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c, const char* what) {
        if (!accept(c)) throw ParseError(std::string("expected '") + c + "' " + what, pos_);
    }

    int parse_expr() {
        int lhs = parse_term();
        for (;;) {
            skip_ws();
            std::size_t at = pos_;
            if (accept('+')) {
                int rhs = parse_term();
                lhs = out_.push({NodeKind::Add, 0.0, -1, lhs, rhs, static_cast<int>(at)});
            } else if (accept('-')) {
                int rhs = parse_term();
                lhs = out_.push({NodeKind::Sub, 0.0, -1, lhs, rhs, static_cast<int>(at)});
            } else {
                return lhs;
            }
        }
    }

    int parse_term() {
        int lhs = parse_factor();
        for (;;) {
            skip_ws();
            std::size_t at = pos_;
            if (accept('*')) {
                int rhs = parse_factor();
                lhs = out_.push({NodeKind::Mul, 0.0, -1, lhs, rhs, static_cast<int>(at)});
            } else if (accept('/')) {
                int rhs = parse_factor();
                lhs = out_.push({NodeKind::Div, 0.0, -1, lhs, rhs, static_cast<int>(at)});
            } else {
                return lhs;
            }
        }
    }

    int parse_factor() {
        skip_ws();
        std::size_t at = pos_;
        if (accept('-')) {
            int child = parse_power();
            return out_.push({NodeKind::Neg, 0.0, -1, child, -1, static_cast<int>(at)});
        }
        return parse_power();
    }

    int parse_power() {
        int base = parse_atom();
        skip_ws();
        std::size_t at = pos_;
        if (accept('^')) {
            int exponent = parse_factor(); // right-associative, minus allowed
            return out_.push({NodeKind::Pow, 0.0, -1, base, exponent, static_cast<int>(at)});
        }
        return base;
    }

    int parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
        if (accept('(')) {
            int inner = parse_expr();
            expect(')', "to close parenthesized expression");
            return inner;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    int parse_number() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                throw ParseError("digits required after decimal point", pos_);
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t mark = pos_;
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                pos_ = mark; // 'e' belongs to an identifier that follows, not to this literal
            } else {
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            }
        }
        double value = 0.0;
        auto res = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (res.ec != std::errc() || res.ptr != text_.data() + pos_)
            throw ParseError("malformed numeric literal", start);
        return out_.push({NodeKind::Constant, value, -1, -1, -1, static_cast<int>(start)});
    }

    int parse_ident() {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        std::string_view name = text_.substr(start, pos_ - start);

        if (const Builtin* b = find_builtin(name)) {
            expect('(', ("after function '" + std::string(name) + "'").c_str());
            std::vector<int> args;
            args.push_back(parse_expr());
            while (accept(',')) args.push_back(parse_expr());
            expect(')', "to close argument list");
            if (static_cast<int>(args.size()) != b->arity)
                throw ParseError("function '" + std::string(name) + "' takes " +
                                     std::to_string(b->arity) + " argument(s), got " +
                                     std::to_string(args.size()),
                                 start);
            int a = args[0];
            int bb = args.size() > 1 ? args[1] : -1;
            return out_.push({b->kind, 0.0, -1, a, bb, static_cast<int>(start)});
        }

        for (std::size_t i = 0; i < out_.vars_.size(); ++i) {
            if (name == out_.vars_[i]) {
                if (peek('('))
                    throw ParseError("variable '" + std::string(name) +
                                         "' used as a function (no implicit multiplication)",
                                     pos_);
                return out_.push({NodeKind::Var, 0.0, static_cast<int>(i), -1, -1,
                                  static_cast<int>(start)});
            }
        }
        throw ParseError("unknown identifier '" + std::string(name) + "'", start);
    }
};

Expr Expr::parse(std::string_view text, std::vector<std::string> vars) {
    if (vars.empty()) throw FormatError("variable list must be nonempty");
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (find_builtin(vars[i]))
            throw FormatError("variable name '" + vars[i] + "' shadows a builtin function");
        for (std::size_t j = i + 1; j < vars.size(); ++j)
            if (vars[i] == vars[j]) throw FormatError("duplicate variable name '" + vars[i] + "'");
    }
    Expr e;
    e.vars_ = std::move(vars);
    Parser p(text, e);
    p.run();
    return e;
}

Expr Expr::constant(double v, std::vector<std::string> vars) {
    Expr e;
    e.vars_ = std::move(vars);
    e.push({NodeKind::Constant, v, -1, -1, -1, -1});
    return e;
}

Expr Expr::variable(int index, std::vector<std::string> vars) {
    if (index < 0 || index >= static_cast<int>(vars.size()))
        throw FormatError("variable index out of range");
    Expr e;
    e.vars_ = std::move(vars);
    e.push({NodeKind::Var, 0.0, index, -1, -1, -1});
    return e;
}

Expr Expr::unary(NodeKind k, const Expr& child) {
    Expr e = child;
    int c = e.root();
    e.push({k, 0.0, -1, c, -1, -1});
    return e;
}

Expr Expr::binary(NodeKind k, const Expr& lhs, const Expr& rhs) {
    if (lhs.vars_ != rhs.vars_) throw FormatError("operands use different variable lists");
    Expr e = lhs;
    int offset = e.size();
    for (const Node& n : rhs.nodes_) {
        Node m = n;
        if (m.a >= 0) m.a += offset;
        if (m.b >= 0) m.b += offset;
        e.nodes_.push_back(m);
    }
    int left = offset - 1;
    int right = e.size() - 1;
    e.push({k, 0.0, -1, left, right, -1});
    return e;
}

// ---------------------------------------------------------------------------
// Evaluation

bool is_integral_value(double v) {
    return std::isfinite(v) && v == std::floor(v) && std::abs(v) <= 9.007199254740992e15;
}

double integer_pow(double x, long long p) {
    if (p < 0) return 1.0 / integer_pow(x, -p);
    double result = 1.0;
    double base = x;
    while (p > 0) {
        if (p & 1) result *= base;
        base *= base;
        p >>= 1;
    }
    return result;
}

namespace {

double eval_pow(double base, double exponent, int node) {
    if (is_integral_value(exponent)) {
        long long p = static_cast<long long>(exponent);
        if (base == 0.0 && p < 0) throw DomainError("0 raised to a negative power", node);
        return integer_pow(base, p);
    }
    if (base <= 0.0)
        throw DomainError("non-integer power of a non-positive base", node);
    return std::pow(base, exponent);
}

} // namespace

double Expr::eval(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dim())
        throw FormatError("point dimension does not match variable count");
    std::vector<double> v(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const Node& n = nodes_[i];
        const int ni = static_cast<int>(i);
        switch (n.kind) {
        case NodeKind::Constant: v[i] = n.value; break;
        case NodeKind::Var: v[i] = x[static_cast<std::size_t>(n.var)]; break;
        case NodeKind::Neg: v[i] = -v[n.a]; break;
        case NodeKind::Add: v[i] = v[n.a] + v[n.b]; break;
        case NodeKind::Sub: v[i] = v[n.a] - v[n.b]; break;
        case NodeKind::Mul: v[i] = v[n.a] * v[n.b]; break;
        case NodeKind::Div:
            if (v[n.b] == 0.0) throw DomainError("division by zero", ni);
            v[i] = v[n.a] / v[n.b];
            break;
        case NodeKind::Pow: v[i] = eval_pow(v[n.a], v[n.b], ni); break;
        case NodeKind::Abs: v[i] = std::abs(v[n.a]); break;
        case NodeKind::Sqrt:
            if (v[n.a] < 0.0) throw DomainError("sqrt of a negative value", ni);
            v[i] = std::sqrt(v[n.a]);
            break;
        case NodeKind::Exp: v[i] = std::exp(v[n.a]); break;
        case NodeKind::Log:
            if (v[n.a] <= 0.0) throw DomainError("log of a non-positive value", ni);
            v[i] = std::log(v[n.a]);
            break;
        case NodeKind::Sin: v[i] = std::sin(v[n.a]); break;
        case NodeKind::Cos: v[i] = std::cos(v[n.a]); break;
        case NodeKind::Min2: v[i] = std::min(v[n.a], v[n.b]); break;
        case NodeKind::Max2: v[i] = std::max(v[n.a], v[n.b]); break;
        }
    }
    return v.back();
}

// ---------------------------------------------------------------------------
// Printing

namespace {

// Precedence levels matching the grammar: additive 1, multiplicative 2,
// unary minus 3, power 4, atoms 5.
int precedence(NodeKind k) {
    switch (k) {
    case NodeKind::Add:
    case NodeKind::Sub: return 1;
    case NodeKind::Mul:
    case NodeKind::Div: return 2;
    case NodeKind::Neg: return 3;
    case NodeKind::Pow: return 4;
    default: return 5;
    }
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

} // namespace

std::string Expr::str() const {
    std::vector<std::string> out(nodes_.size());
    auto wrap = [&](int child, int min_prec) {
        const Node& c = nodes_[static_cast<std::size_t>(child)];
        if (precedence(c.kind) < min_prec) return "(" + out[static_cast<std::size_t>(child)] + ")";
        return out[static_cast<std::size_t>(child)];
    };
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const Node& n = nodes_[i];
        switch (n.kind) {
        case NodeKind::Constant:
            // Negative constants never come out of the parser; parenthesize so
            // the printed form stays grammatical inside larger expressions.
            out[i] = n.value < 0.0 || std::signbit(n.value) ? "(0-" + format_double(-n.value) + ")"
                                                            : format_double(n.value);
            break;
        case NodeKind::Var: out[i] = vars_[static_cast<std::size_t>(n.var)]; break;
        case NodeKind::Neg: out[i] = "-" + wrap(n.a, 4); break;
        case NodeKind::Add: out[i] = wrap(n.a, 1) + "+" + wrap(n.b, 2); break;
        case NodeKind::Sub: out[i] = wrap(n.a, 1) + "-" + wrap(n.b, 2); break;
        case NodeKind::Mul: out[i] = wrap(n.a, 2) + "*" + wrap(n.b, 3); break;
        case NodeKind::Div: out[i] = wrap(n.a, 2) + "/" + wrap(n.b, 3); break;
        case NodeKind::Pow: out[i] = wrap(n.a, 5) + "^" + wrap(n.b, 3); break;
        case NodeKind::Abs:
        case NodeKind::Sqrt:
        case NodeKind::Exp:
        case NodeKind::Log:
        case NodeKind::Sin:
        case NodeKind::Cos:
            out[i] = std::string(node_name(n.kind)) + "(" + out[static_cast<std::size_t>(n.a)] + ")";
            break;
        case NodeKind::Min2:
        case NodeKind::Max2:
            out[i] = std::string(node_name(n.kind)) + "(" + out[static_cast<std::size_t>(n.a)] +
                     "," + out[static_cast<std::size_t>(n.b)] + ")";
            break;
        }
    }
    return out.back();
}

// ---------------------------------------------------------------------------
// Structural equality

namespace {

bool same_subtree(const Expr& lhs, int li, const Expr& rhs, int ri) {
    const Node& a = lhs.node(li);
    const Node& b = rhs.node(ri);
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case NodeKind::Constant: {
        std::uint64_t ua, ub;
        std::memcpy(&ua, &a.value, sizeof ua);
        std::memcpy(&ub, &b.value, sizeof ub);
        return ua == ub;
    }
    case NodeKind::Var: return a.var == b.var;
    default:
        if (!same_subtree(lhs, a.a, rhs, b.a)) return false;
        if (a.b >= 0 || b.b >= 0) {
            if (a.b < 0 || b.b < 0) return false;
            return same_subtree(lhs, a.b, rhs, b.b);
        }
        return true;
    }
}

} // namespace

bool operator==(const Expr& lhs, const Expr& rhs) {
    if (lhs.vars() != rhs.vars()) return false;
    if (lhs.size() == 0 || rhs.size() == 0) return lhs.size() == rhs.size();
    return same_subtree(lhs, lhs.root(), rhs, rhs.root());
}

} // namespace mokkt

#include "bergspec/expr.hpp"

#include <array>
#include <cctype>
#include <cstdlib>
#include <optional>

#include "bergspec/error.hpp"

namespace bergspec {

namespace {

// Chain rule for an analytic function F applied to a jet, given F(a), F'(a), F''(a).
Jet compose(Jet const& a, cplx f0, cplx f1, cplx f2) {
    return {f0, f1 * a.d1, f2 * a.d1 * a.d1 + f1 * a.d2};
}

}  // namespace

Jet operator+(Jet const& a, Jet const& b) { return {a.value + b.value, a.d1 + b.d1, a.d2 + b.d2}; }
Jet operator-(Jet const& a, Jet const& b) { return {a.value - b.value, a.d1 - b.d1, a.d2 - b.d2}; }
Jet operator-(Jet const& a) { return {-a.value, -a.d1, -a.d2}; }

Jet operator*(Jet const& a, Jet const& b) {
    return {a.value * b.value, a.d1 * b.value + a.value * b.d1,
            a.d2 * b.value + 2.0 * a.d1 * b.d1 + a.value * b.d2};
}

Jet operator/(Jet const& a, Jet const& b) {
    cplx q = a.value / b.value;
    cplx q1 = (a.d1 - q * b.d1) / b.value;
    cplx q2 = (a.d2 - 2.0 * q1 * b.d1 - q * b.d2) / b.value;
    return {q, q1, q2};
}

Jet exp(Jet const& a) {
    cplx e = std::exp(a.value);
    return compose(a, e, e, e);
}

Jet log(Jet const& a) {
    cplx inv = 1.0 / a.value;
    return compose(a, std::log(a.value), inv, -inv * inv);
}

Jet sqrt(Jet const& a) {
    cplx s = std::sqrt(a.value);
    cplx s1 = 0.5 / s;
    return compose(a, s, s1, -0.5 * s1 / a.value);
}

Jet pow(Jet const& a, Jet const& b) { return exp(b * log(a)); }

cplx ipow(cplx a, int n) {
    if (n < 0) return 1.0 / ipow(a, -n);
    cplx result = 1.0;
    while (n > 0) {
        if (n & 1) result *= a;
        a *= a;
        n >>= 1;
    }
    return result;
}

Jet ipow(Jet const& a, int n) {
    if (n == 0) return Jet::constant(1.0);
    if (n < 0) return Jet::constant(1.0) / ipow(a, -n);
    cplx p = ipow(a.value, n - 2 >= 0 ? n - 2 : 0);
    // a^n, n a^{n-1}, n(n-1) a^{n-2}
    cplx f0 = n >= 2 ? p * a.value * a.value : a.value;
    cplx f1 = n >= 2 ? double(n) * p * a.value : cplx(1.0);
    cplx f2 = n >= 2 ? double(n) * double(n - 1) * p : cplx(0.0);
    return compose(a, f0, f1, f2);
}

// ---------------------------------------------------------------------------

class ExprParser {
public:
    ExprParser(std::string_view text, AnalyticExpr& out) : text_(text), out_(out) {}

    void run() {
        skip_ws();
        if (pos_ >= text_.size()) fail("empty expression");
        int root = parse_expr();
        skip_ws();
        if (pos_ < text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        // Move root to the end if folding left it elsewhere.
        if (root != int(out_.nodes_.size()) - 1) {
            auto node = out_.nodes_[root];
            out_.nodes_.push_back(node);
        }
    }

private:
    using Op = AnalyticExpr::Op;

    [[noreturn]] void fail(std::string const& what) const {
        throw ConfigError("expression: " + what, 0, int(pos_) + 1);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    bool is_const(int idx) const { return out_.nodes_[idx].op == Op::constant; }
    cplx const_value(int idx) const { return out_.nodes_[idx].value; }

    int push(AnalyticExpr::Node node) {
        out_.nodes_.push_back(node);
        return int(out_.nodes_.size()) - 1;
    }

    int make_const(cplx c) { return push({Op::constant, c}); }

    int make_binary(Op op, int lhs, int rhs) {
        if (is_const(lhs) && is_const(rhs)) {
            cplx a = const_value(lhs), b = const_value(rhs);
            switch (op) {
            case Op::add: return make_const(a + b);
            case Op::sub: return make_const(a - b);
            case Op::mul: return make_const(a * b);
            case Op::div: return make_const(a / b);
            case Op::pow: return make_const(std::pow(a, b));
            default: break;
            }
        }
        return push({op, {}, lhs, rhs});
    }

    int make_unary(Op op, int arg) {
        if (is_const(arg)) {
            cplx a = const_value(arg);
            switch (op) {
            case Op::neg: return make_const(-a);
            case Op::exp: return make_const(std::exp(a));
            case Op::log: return make_const(std::log(a));
            case Op::sqrt: return make_const(std::sqrt(a));
            default: break;
            }
        }
        return push({op, {}, arg});
    }

    int parse_expr() {
        int lhs = parse_term();
        for (;;) {
            if (accept('+')) lhs = make_binary(Op::add, lhs, parse_term());
            else if (accept('-')) lhs = make_binary(Op::sub, lhs, parse_term());
            else return lhs;
        }
    }

    int parse_term() {
        int lhs = parse_unary();
        for (;;) {
            if (accept('*')) lhs = make_binary(Op::mul, lhs, parse_unary());
            else if (accept('/')) lhs = make_binary(Op::div, lhs, parse_unary());
            else return lhs;
        }
    }

    int parse_unary() {
        if (accept('-')) return make_unary(Op::neg, parse_unary());
        if (accept('+')) return parse_unary();
        return parse_power();
    }

    int parse_power() {
        int base = parse_primary();
        if (!accept('^')) return base;
        std::size_t at = pos_;
        int exponent = parse_unary();
        if (!is_const(exponent)) {
            pos_ = at;
            fail("exponent of '^' must be an integer constant; use pow() for general exponents");
        }
        cplx e = const_value(exponent);
        double n = std::round(e.real());
        if (e.imag() != 0.0 || n != e.real() || std::abs(n) > 1e6) {
            pos_ = at;
            fail("exponent of '^' must be an integer constant; use pow() for general exponents");
        }
        if (is_const(base)) return make_const(ipow(const_value(base), int(n)));
        return push({Op::ipow, {}, base, -1, int(n)});
    }

    std::optional<double> parse_number() {
        skip_ws();
        if (pos_ >= text_.size()) return std::nullopt;
        char c = text_[pos_];
        if (!std::isdigit(static_cast<unsigned char>(c)) && c != '.') return std::nullopt;
        std::string buf(text_.substr(pos_));
        char* end = nullptr;
        double value = std::strtod(buf.c_str(), &end);
        if (end == buf.c_str()) fail("malformed number");
        pos_ += std::size_t(end - buf.c_str());
        return value;
    }

    std::string parse_identifier() {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    int parse_primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        if (auto number = parse_number()) {
            // An 'i' glued to the literal makes it imaginary: 2i, 0.5i.
            if (pos_ < text_.size() && text_[pos_] == 'i' &&
                (pos_ + 1 >= text_.size() || !std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])))) {
                ++pos_;
                return make_const(cplx(0.0, *number));
            }
            return make_const(*number);
        }
        if (accept('(')) {
            int inner = parse_expr();
            expect(')');
            return inner;
        }
        std::size_t at = pos_;
        std::string name = parse_identifier();
        if (name.empty()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        if (name == "z") return push({Op::variable});
        if (name == "i") return make_const(cplx(0.0, 1.0));
        if (name == "pi") return make_const(pi);
        Op op;
        if (name == "exp") op = Op::exp;
        else if (name == "log") op = Op::log;
        else if (name == "sqrt") op = Op::sqrt;
        else if (name == "pow") op = Op::pow;
        else {
            pos_ = at;
            fail("unknown identifier '" + name + "'");
        }
        expect('(');
        int arg = parse_expr();
        if (op == Op::pow) {
            expect(',');
            int exponent = parse_expr();
            expect(')');
            return make_binary(Op::pow, arg, exponent);
        }
        expect(')');
        return make_unary(op, arg);
    }

    std::string_view text_;
    AnalyticExpr& out_;
    std::size_t pos_ = 0;
};

AnalyticExpr AnalyticExpr::parse(std::string_view text) {
    AnalyticExpr expr;
    expr.source_ = std::string(text);
    ExprParser(text, expr).run();
    // Drop nodes orphaned by constant folding so evaluation touches only live nodes.
    std::vector<Node> live;
    std::vector<int> remap(expr.nodes_.size(), -1);
    std::vector<char> used(expr.nodes_.size(), 0);
    used.back() = 1;
    for (int i = int(expr.nodes_.size()) - 1; i >= 0; --i) {
        if (!used[i]) continue;
        auto const& n = expr.nodes_[i];
        if (n.lhs >= 0) used[n.lhs] = 1;
        if (n.rhs >= 0) used[n.rhs] = 1;
    }
    for (std::size_t i = 0; i < expr.nodes_.size(); ++i) {
        if (!used[i]) continue;
        Node n = expr.nodes_[i];
        if (n.lhs >= 0) n.lhs = remap[n.lhs];
        if (n.rhs >= 0) n.rhs = remap[n.rhs];
        remap[i] = int(live.size());
        live.push_back(n);
    }
    expr.nodes_ = std::move(live);
    return expr;
}

AnalyticExpr AnalyticExpr::constant(cplx c) {
    AnalyticExpr expr;
    expr.nodes_.push_back({Op::constant, c});
    expr.source_ = "(" + std::to_string(c.real()) + (c.imag() < 0 ? "" : "+") + std::to_string(c.imag()) + "i)";
    return expr;
}

bool AnalyticExpr::is_constant() const { return nodes_.size() == 1 && nodes_[0].op == Op::constant; }

namespace {
template <class T>
T lift(cplx c) {
    if constexpr (std::is_same_v<T, Jet>) return Jet::constant(c);
    else return T(c);
}
}  // namespace

template <class T>
T AnalyticExpr::eval(T const& z) const {
    constexpr std::size_t inline_capacity = 48;
    std::array<T, inline_capacity> small;
    std::vector<T> large;
    T* slot = small.data();
    if (nodes_.size() > inline_capacity) {
        large.resize(nodes_.size());
        slot = large.data();
    }
    using std::exp, std::log, std::sqrt, std::pow;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        Node const& n = nodes_[i];
        switch (n.op) {
        case Op::constant: slot[i] = lift<T>(n.value); break;
        case Op::variable: slot[i] = z; break;
        case Op::add: slot[i] = slot[n.lhs] + slot[n.rhs]; break;
        case Op::sub: slot[i] = slot[n.lhs] - slot[n.rhs]; break;
        case Op::mul: slot[i] = slot[n.lhs] * slot[n.rhs]; break;
        case Op::div: slot[i] = slot[n.lhs] / slot[n.rhs]; break;
        case Op::neg: slot[i] = -slot[n.lhs]; break;
        case Op::ipow: slot[i] = ipow(slot[n.lhs], n.exponent); break;
        case Op::exp: slot[i] = exp(slot[n.lhs]); break;
        case Op::log: slot[i] = log(slot[n.lhs]); break;
        case Op::sqrt: slot[i] = sqrt(slot[n.lhs]); break;
        case Op::pow: slot[i] = pow(slot[n.lhs], slot[n.rhs]); break;
        }
    }
    return slot[nodes_.size() - 1];
}

template cplx AnalyticExpr::eval<cplx>(cplx const&) const;
template Jet AnalyticExpr::eval<Jet>(Jet const&) const;

}  // namespace bergspec

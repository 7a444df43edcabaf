#pragma once

// Analytic expressions in one complex variable z.
//
// Grammar (whitespace insignificant):
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?        exponent must fold to an integer
//   primary := number ['i'] | 'i' | 'z' | 'pi' | func '(' args ')' | '(' expr ')'
//   func    := exp | log | sqrt | pow(base, exponent)
//
// log, sqrt and pow use principal branches. Evaluation propagates a
// second-order jet so h', h'' and v' come out of a single pass.

#include <string>
#include <string_view>
#include <vector>

#include "bergspec/types.hpp"

namespace bergspec {

/// Value with first and second derivative with respect to z.
struct Jet {
    cplx value{};
    cplx d1{};
    cplx d2{};

    static Jet constant(cplx c) { return {c, {}, {}}; }
    static Jet variable(cplx z) { return {z, 1.0, 0.0}; }
};

Jet operator+(Jet const& a, Jet const& b);
Jet operator-(Jet const& a, Jet const& b);
Jet operator-(Jet const& a);
Jet operator*(Jet const& a, Jet const& b);
Jet operator/(Jet const& a, Jet const& b);
Jet exp(Jet const& a);
Jet log(Jet const& a);
Jet sqrt(Jet const& a);
Jet pow(Jet const& a, Jet const& b);
Jet ipow(Jet const& a, int n);
cplx ipow(cplx a, int n);

class AnalyticExpr {
public:
    /// Throws ConfigError (column set) on malformed input.
    static AnalyticExpr parse(std::string_view text);
    static AnalyticExpr constant(cplx c);

    cplx operator()(cplx z) const { return eval<cplx>(z); }
    Jet jet(cplx z) const { return eval<Jet>(Jet::variable(z)); }

    bool is_constant() const;
    std::string const& source() const { return source_; }

private:
    enum class Op { constant, variable, add, sub, mul, div, neg, ipow, exp, log, sqrt, pow };

    struct Node {
        Op op;
        cplx value{};
        int lhs = -1;
        int rhs = -1;
        int exponent = 0;
    };

    friend class ExprParser;

    template <class T>
    T eval(T const& z) const;

    std::vector<Node> nodes_;  // children precede parents; root is last
    std::string source_;
};

}  // namespace bergspec

// Line-oriented scenario configuration:
//
//   p = 2
//   model = trident
//   c = 0, s = 0, d = 0.5        # several assignments per line, ',' or ';'
//   fp = (1, 0.5, 0.0, dw)       # repeatable: (zeta, alpha, Re beta, role)
//   petal_anchor = -0.9+0.1i     # repeatable
//   h_expr = log((1+z)/(1-z))

#include <cctype>
#include <cstdlib>
#include <map>
#include <optional>

#include "bergspec/error.hpp"
#include "bergspec/scenario.hpp"

namespace bergspec {

namespace {

struct Segment {
    std::string text;
    int line;
    int column;  // 1-based column of text[0]
};

std::string replace_unicode_minus(std::string_view in) {
    std::string out;
    out.reserve(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
        if (i + 2 < in.size() && (unsigned char)in[i] == 0xE2 && (unsigned char)in[i + 1] == 0x88 &&
            (unsigned char)in[i + 2] == 0x92) {
            out.push_back('-');
            i += 2;
        } else {
            out.push_back(in[i]);
        }
    }
    return out;
}

Segment trim(Segment s) {
    std::size_t b = 0, e = s.text.size();
    while (b < e && std::isspace((unsigned char)s.text[b])) ++b;
    while (e > b && std::isspace((unsigned char)s.text[e - 1])) --e;
    return {s.text.substr(b, e - b), s.line, s.column + int(b)};
}

std::vector<Segment> split_top_level(Segment const& s, char const* separators) {
    std::vector<Segment> parts;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.text.size(); ++i) {
        char c = i < s.text.size() ? s.text[i] : ';';
        if (c == '(') ++depth;
        else if (c == ')') --depth;
        bool sep = i == s.text.size() || (depth == 0 && std::string_view(separators).find(c) != std::string_view::npos);
        if (sep) {
            parts.push_back(trim({s.text.substr(start, i - start), s.line, s.column + int(start)}));
            start = i + 1;
        }
    }
    return parts;
}

double parse_real(Segment const& s, bool allow_neg_inf = false) {
    if (allow_neg_inf && (s.text == "-inf" || s.text == "-infinity")) return neg_infinity;
    char* end = nullptr;
    double value = std::strtod(s.text.c_str(), &end);
    if (s.text.empty() || end != s.text.c_str() + s.text.size() || !std::isfinite(value))
        throw ConfigError("expected a decimal number, got '" + s.text + "'", s.line, s.column);
    return value;
}

cplx parse_complex(Segment const& s) {
    try {
        AnalyticExpr e = AnalyticExpr::parse(s.text);
        if (!e.is_constant()) throw ConfigError("expected a complex constant, got '" + s.text + "'", s.line, s.column);
        return e(0.0);
    } catch (ConfigError const& e) {
        if (e.line() > 0) throw;
        throw ConfigError(std::string("complex literal: ") + e.what(), s.line, s.column + std::max(0, e.column() - 1));
    }
}

AnalyticExpr parse_expression(Segment const& s) {
    try {
        return AnalyticExpr::parse(s.text);
    } catch (ConfigError const& e) {
        throw ConfigError(e.what(), s.line, s.column + std::max(0, e.column() - 1));
    }
}

FixedPoint parse_fixed_point(Segment const& s) {
    if (s.text.size() < 2 || s.text.front() != '(' || s.text.back() != ')')
        throw ConfigError("fp expects (zeta, alpha, beta_re, role)", s.line, s.column);
    Segment inner{s.text.substr(1, s.text.size() - 2), s.line, s.column + 1};
    auto fields = split_top_level(inner, ",");
    if (fields.size() != 4) throw ConfigError("fp expects exactly 4 fields (zeta, alpha, beta_re, role)", s.line, s.column);
    FixedPoint fp;
    fp.zeta = parse_complex(fields[0]);
    fp.alpha = parse_real(fields[1]);
    double beta = parse_real(fields[2], true);
    fp.beta = std::isinf(beta) ? Beta::minus_infinity() : Beta{beta};
    std::string const& role = fields[3].text;
    if (role == "dw" || role == "denjoy_wolff") fp.role = Role::denjoy_wolff;
    else if (role == "rep" || role == "repelling") fp.role = Role::repelling;
    else throw ConfigError("unknown role '" + role + "' (dw | rep)", fields[3].line, fields[3].column);
    return fp;
}

std::string unquote(std::string const& s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
    return s;
}

}  // namespace

Scenario parse_scenario(std::string_view config_text) {
    std::string text = replace_unicode_minus(config_text);
    std::map<std::string, Segment> scalars;
    std::vector<Segment> fps, anchors, focus;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        ++line_no;
        std::string line = text.substr(pos, eol - pos);
        pos = eol + 1;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (!line.empty() && line.back() == '\r') line.pop_back();

        for (Segment const& assignment : split_top_level({line, line_no, 1}, ",;")) {
            if (assignment.text.empty()) continue;
            auto eq = assignment.text.find('=');
            if (eq == std::string::npos)
                throw ConfigError("expected 'key = value'", assignment.line, assignment.column);
            Segment key = trim({assignment.text.substr(0, eq), assignment.line, assignment.column});
            Segment value = trim({assignment.text.substr(eq + 1), assignment.line, assignment.column + int(eq) + 1});
            value.text = unquote(value.text);
            if (key.text.empty()) throw ConfigError("missing key before '='", key.line, key.column);
            if (value.text.empty()) throw ConfigError("missing value for '" + key.text + "'", value.line, value.column);

            if (key.text == "fp") fps.push_back(value);
            else if (key.text == "petal_anchor") anchors.push_back(value);
            else if (key.text == "focus") focus.push_back(value);
            else if (key.text == "p" || key.text == "model" || key.text == "a" || key.text == "c" ||
                     key.text == "s" || key.text == "d" || key.text == "h_expr" || key.text == "v_expr") {
                if (scalars.count(key.text)) throw ConfigError("duplicate key '" + key.text + "'", key.line, key.column);
                scalars.emplace(key.text, value);
            } else {
                throw ConfigError("unknown key '" + key.text + "'", key.line, key.column);
            }
        }
        if (eol == text.size()) break;
    }

    auto get = [&](std::string const& key) -> Segment const* {
        auto it = scalars.find(key);
        return it == scalars.end() ? nullptr : &it->second;
    };
    auto reject = [&](std::string const& model, std::initializer_list<char const*> keys) {
        for (char const* k : keys)
            if (auto s = get(k)) throw ConfigError("key '" + std::string(k) + "' not allowed for model " + model, s->line, 1);
    };

    Segment const* p_seg = get("p");
    if (!p_seg) throw ConfigError("missing key 'p'");
    double p = parse_real(*p_seg);
    if (!(p >= 1.0)) throw ConfigError("p must be >= 1", p_seg->line, p_seg->column);
    Segment const* model_seg = get("model");
    if (!model_seg) throw ConfigError("missing key 'model'");
    std::string const& model = model_seg->text;

    auto weights = [&] {
        WeightParams w;
        if (auto s = get("c")) w.c = parse_real(*s);
        if (auto s = get("s")) w.s = parse_real(*s);
        if (auto s = get("d")) w.d = parse_real(*s);
        return w;
    };
    auto parsed_fps = [&] {
        std::vector<FixedPoint> out;
        for (auto const& s : fps) out.push_back(parse_fixed_point(s));
        return out;
    };
    auto no_lists = [&](std::string const& m) {
        if (!fps.empty()) throw ConfigError("fp not allowed for built-in model " + m, fps.front().line, 1);
        if (!anchors.empty()) throw ConfigError("petal_anchor not allowed for built-in model " + m, anchors.front().line, 1);
        if (!focus.empty()) throw ConfigError("focus not allowed for built-in model " + m, focus.front().line, 1);
    };

    try {
        if (model == "strip_flow") {
            reject(model, {"h_expr", "v_expr"});
            no_lists(model);
            double a = 1.0;
            if (auto s = get("a")) a = parse_real(*s);
            return Scenario::strip_flow(a, p, weights());
        }
        if (model == "half_strip" || model == "trident") {
            reject(model, {"a", "h_expr", "v_expr"});
            no_lists(model);
            return model == "trident" ? Scenario::trident(p, weights()) : Scenario::half_strip(p, weights());
        }
        if (model == "parametric") {
            reject(model, {"a", "c", "s", "d", "h_expr", "v_expr"});
            if (!anchors.empty() || !focus.empty()) throw ConfigError("parametric scenarios take only fp entries");
            return Scenario::parametric(p, parsed_fps());
        }
        if (model == "expression") {
            reject(model, {"a", "c", "s", "d"});
            Segment const* h = get("h_expr");
            if (!h) throw ConfigError("expression model requires h_expr");
            parse_expression(*h);  // located syntax errors
            std::string v = "1";
            if (auto vs = get("v_expr")) {
                parse_expression(*vs);
                v = vs->text;
            }
            std::vector<cplx> anchor_values, focus_values;
            for (auto const& s : anchors) anchor_values.push_back(parse_complex(s));
            for (auto const& s : focus) focus_values.push_back(parse_complex(s));
            return Scenario::expression(p, h->text, v, parsed_fps(), anchor_values, focus_values);
        }
    } catch (ConfigError const& e) {
        if (e.line() > 0) throw;
        throw ConfigError(std::string(e.what()), model_seg->line, 0);
    }
    throw ConfigError("unknown model '" + model + "'", model_seg->line, model_seg->column);
}

}  // namespace bergspec

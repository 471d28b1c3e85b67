#include "fractal/descriptor.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace fractal {

FunctionDescriptor FunctionDescriptor::constant(double c) { return {{TermConst{c}}}; }

FunctionDescriptor FunctionDescriptor::power(double p, double c) {
    FunctionDescriptor d{{TermPower{p, c}}};
    d.validate();
    return d;
}

FunctionDescriptor FunctionDescriptor::exponential(double a, double c) {
    return {{TermExp{a, c}}};
}

FunctionDescriptor FunctionDescriptor::sine(double a, double c) { return {{TermSin{a, c}}}; }
FunctionDescriptor FunctionDescriptor::cosine(double a, double c) { return {{TermCos{a, c}}}; }

FunctionDescriptor FunctionDescriptor::mittag_leffler(double beta, double a, double c) {
    MLSpec spec;
    spec.beta = beta;
    spec.scale = std::abs(a);
    spec.sign = a >= 0.0 ? -1 : +1; // stored as E(-a u^beta)
    spec.validate();
    return {{TermML{spec, c}}};
}

FunctionDescriptor FunctionDescriptor::sum(std::vector<FunctionDescriptor> parts) {
    FunctionDescriptor d;
    for (auto& p : parts)
        for (auto& t : p.terms)
            d.terms.push_back(t);
    d.validate();
    return d;
}

void FunctionDescriptor::validate() const {
    if (terms.empty())
        throw std::invalid_argument("FunctionDescriptor: empty sum");
    for (const auto& t : terms) {
        if (const auto* pw = std::get_if<TermPower>(&t)) {
            if (!(pw->p > -1.0))
                throw std::invalid_argument(
                    "FunctionDescriptor: power exponent must exceed -1");
        } else if (const auto* ml = std::get_if<TermML>(&t)) {
            ml->spec.validate();
        }
    }
}

double eval_u(const FunctionDescriptor& d, double u) {
    double sum = 0.0;
    for (const auto& t : d.terms) {
        if (const auto* k = std::get_if<TermConst>(&t))
            sum += k->c;
        else if (const auto* pw = std::get_if<TermPower>(&t))
            sum += pw->c * std::pow(u, pw->p);
        else if (const auto* e = std::get_if<TermExp>(&t))
            sum += e->c * std::exp(e->a * u);
        else if (const auto* s = std::get_if<TermSin>(&t))
            sum += s->c * std::sin(s->a * u);
        else if (const auto* c = std::get_if<TermCos>(&t))
            sum += c->c * std::cos(c->a * u);
        else if (const auto* m = std::get_if<TermML>(&t))
            sum += m->c * mittag_leffler(m->spec, u);
    }
    return sum;
}

double eval_descriptor(const FunctionDescriptor& d, const Staircase& st, double t) {
    if (!(t >= 0.0) && st.support().kind == FractalSupport::Kind::CantorLike)
        throw std::invalid_argument("eval_descriptor: t must be nonnegative");
    return eval_u(d, st.eval(t));
}

namespace {

// n-th u-derivative of the Mittag-Leffler term by term-wise series;
// index terms whose Gamma argument hits a nonpositive integer drop out.
double ml_nth_derivative(const MLSpec& spec, double u, int n) {
    if (n == 1)
        return mittag_leffler_du(spec, u);
    const double a = spec.signed_scale();
    double sum = 0.0;
    for (int j = 0; j < 10000; ++j) {
        const double g = spec.beta * j - n + 1.0;
        if (g <= 0.0 && g == std::floor(g))
            continue;
        const double e = spec.beta * j - n;
        if (u == 0.0 && e != 0.0)
            continue;
        double lt = (j > 0 ? j * std::log(std::abs(a)) : 0.0) +
                    (e != 0.0 ? e * std::log(u) : 0.0) - std::lgamma(g);
        double t = std::exp(lt);
        if (a < 0.0 && (j & 1))
            t = -t;
        sum += t;
        if (j > 8 && std::abs(t) < 1e-16 * (std::abs(sum) + 1e-300))
            break;
    }
    return sum;
}

double falling_factorial(double p, int n) {
    double f = 1.0;
    for (int i = 0; i < n; ++i)
        f *= p - i;
    return f;
}

} // namespace

double eval_u_derivative(const FunctionDescriptor& d, double u, int order) {
    if (order < 0)
        throw std::invalid_argument("eval_u_derivative: order must be nonnegative");
    if (order == 0)
        return eval_u(d, u);
    double sum = 0.0;
    for (const auto& t : d.terms) {
        if (std::get_if<TermConst>(&t)) {
            continue;
        } else if (const auto* pw = std::get_if<TermPower>(&t)) {
            const double f = falling_factorial(pw->p, order);
            if (f != 0.0)
                sum += pw->c * f * std::pow(u, pw->p - order);
        } else if (const auto* e = std::get_if<TermExp>(&t)) {
            sum += e->c * std::pow(e->a, order) * std::exp(e->a * u);
        } else if (const auto* s = std::get_if<TermSin>(&t)) {
            const double ph = order * M_PI / 2.0;
            sum += s->c * std::pow(s->a, order) * std::sin(s->a * u + ph);
        } else if (const auto* c = std::get_if<TermCos>(&t)) {
            const double ph = order * M_PI / 2.0;
            sum += c->c * std::pow(c->a, order) * std::cos(c->a * u + ph);
        } else if (const auto* m = std::get_if<TermML>(&t)) {
            sum += m->c * ml_nth_derivative(m->spec, u, order);
        }
    }
    return sum;
}

FunctionDescriptor FunctionDescriptor::scaled(double factor) const {
    FunctionDescriptor out = *this;
    for (auto& t : out.terms)
        std::visit([factor](auto& term) { term.c *= factor; }, t);
    return out;
}

// ---------------------------------------------------------------------------
// parser

namespace {

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c))
            throw ParseError(std::string("expected '") + c + "'", pos);
    }
    bool accept_word(const char* w) {
        skip_ws();
        std::size_t n = 0;
        while (w[n])
            ++n;
        if (text.compare(pos, n, w) == 0) {
            pos += n;
            return true;
        }
        return false;
    }
    double number() {
        skip_ws();
        const char* begin = text.c_str() + pos;
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end == begin)
            throw ParseError("expected a number", pos);
        pos += end - begin;
        return v;
    }
    bool number_ahead() {
        skip_ws();
        if (pos >= text.size())
            return false;
        char c = text[pos];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return true;
        if ((c == '+' || c == '-') && pos + 1 < text.size()) {
            char d = text[pos + 1];
            return std::isdigit(static_cast<unsigned char>(d)) || d == '.';
        }
        return false;
    }
};

FunctionDescriptor parse_term(Cursor& cur, double sign) {
    double coeff = sign;
    bool have_number = false;
    if (cur.number_ahead()) {
        coeff *= cur.number();
        have_number = true;
    }
    if (have_number)
        cur.accept('*');
    cur.skip_ws();
    const std::size_t at = cur.pos;
    if (cur.accept_word("const"))
        return FunctionDescriptor::constant(coeff);
    if (cur.accept_word("pow")) {
        cur.expect('(');
        double p = cur.number();
        cur.expect(')');
        if (!(p > -1.0))
            throw ParseError("pow exponent must exceed -1", at);
        return FunctionDescriptor::power(p, coeff);
    }
    if (cur.accept_word("exp")) {
        cur.expect('(');
        double a = cur.number();
        cur.expect(')');
        return FunctionDescriptor::exponential(a, coeff);
    }
    if (cur.accept_word("sin")) {
        cur.expect('(');
        double a = cur.number();
        cur.expect(')');
        return FunctionDescriptor::sine(a, coeff);
    }
    if (cur.accept_word("cos")) {
        cur.expect('(');
        double a = cur.number();
        cur.expect(')');
        return FunctionDescriptor::cosine(a, coeff);
    }
    if (cur.accept_word("ml")) {
        cur.expect('(');
        double beta = cur.number();
        cur.expect(',');
        double a = cur.number();
        cur.expect(')');
        if (!(beta > 0.0))
            throw ParseError("ml order must be positive", at);
        return FunctionDescriptor::mittag_leffler(beta, a, coeff);
    }
    if (have_number) // bare coefficient acts as a constant term
        return FunctionDescriptor::constant(coeff);
    throw ParseError("expected an atom (const, pow, exp, sin, cos, ml)", at);
}

} // namespace

FunctionDescriptor parse_expr(const std::string& text) {
    Cursor cur{text};
    double sign = 1.0;
    if (cur.accept('-'))
        sign = -1.0;
    else
        cur.accept('+');
    FunctionDescriptor d = parse_term(cur, sign);
    while (!cur.eof()) {
        if (cur.accept('+'))
            sign = 1.0;
        else if (cur.accept('-'))
            sign = -1.0;
        else
            throw ParseError("expected '+' or '-' between terms", cur.pos);
        FunctionDescriptor t = parse_term(cur, sign);
        d.terms.push_back(t.terms.front());
    }
    d.validate();
    return d;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string term_body(const DescriptorTerm& t, double& coeff) {
    if (const auto* k = std::get_if<TermConst>(&t)) {
        coeff = k->c;
        return "const";
    }
    if (const auto* pw = std::get_if<TermPower>(&t)) {
        coeff = pw->c;
        return "pow(" + fmt(pw->p) + ")";
    }
    if (const auto* e = std::get_if<TermExp>(&t)) {
        coeff = e->c;
        return "exp(" + fmt(e->a) + ")";
    }
    if (const auto* s = std::get_if<TermSin>(&t)) {
        coeff = s->c;
        return "sin(" + fmt(s->a) + ")";
    }
    if (const auto* c = std::get_if<TermCos>(&t)) {
        coeff = c->c;
        return "cos(" + fmt(c->a) + ")";
    }
    const auto& m = std::get<TermML>(t);
    coeff = m.c;
    return "ml(" + fmt(m.spec.beta) + "," + fmt(-m.spec.signed_scale()) + ")";
}

} // namespace

std::string print_descriptor(const FunctionDescriptor& d) {
    std::string out;
    bool first = true;
    for (const auto& t : d.terms) {
        double coeff = 1.0;
        const std::string body = term_body(t, coeff);
        if (first) {
            out += (coeff < 0.0 ? "-" : "");
        } else {
            out += coeff < 0.0 ? " - " : " + ";
        }
        out += fmt(std::abs(coeff)) + "*" + body;
        first = false;
    }
    return out;
}

} // namespace fractal

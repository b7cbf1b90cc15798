#include "rostforge/dsl.hpp"

#include <cctype>

#include "rostforge/errors.hpp"
#include "rostforge/fieldext.hpp"

namespace rostforge {

ParseError::ParseError(std::string input, size_t position, const std::string& what)
    : std::runtime_error(what + " at position " + std::to_string(position)),
      input_(std::move(input)),
      position_(position) {}

std::string ParseError::caret_message() const {
    std::string s = input_ + "\n";
    s += std::string(std::min(position_, input_.size()), ' ') + "^ " + what();
    return s;
}

namespace {

struct Cursor {
    std::string text;   // original
    std::string clean;  // whitespace stripped
    std::vector<size_t> map;  // clean index -> original index
    size_t pos = 0;

    explicit Cursor(const std::string& t) : text(t) {
        for (size_t i = 0; i < t.size(); ++i)
            if (!std::isspace(static_cast<unsigned char>(t[i]))) {
                clean.push_back(t[i]);
                map.push_back(i);
            }
    }
    bool done() const { return pos >= clean.size(); }
    char peek() const { return done() ? '\0' : clean[pos]; }
    bool eat(char c) {
        if (peek() != c) return false;
        ++pos;
        return true;
    }
    bool eat(const std::string& s) {
        if (clean.compare(pos, s.size(), s) != 0) return false;
        pos += s.size();
        return true;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(text, pos < map.size() ? map[pos] : text.size(), what);
    }
    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }
    long long integer() {
        bool neg = eat('-');
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a number");
        long long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (clean[pos] - '0');
            ++pos;
        }
        return neg ? -v : v;
    }
    std::string identifier() {
        if (!std::isalpha(static_cast<unsigned char>(peek()))) fail("expected an identifier");
        std::string s;
        while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
            s.push_back(clean[pos]);
            ++pos;
        }
        return s;
    }
};

// resolve a variable name inside the field tower, embedding upward
std::optional<Element> resolve_name(const std::string& name, const FieldPtr& f) {
    switch (f->kind()) {
        case Field::Kind::RationalFunction:
            if (name == f->variable()) return Element::generator(f);
            break;
        case Field::Kind::FiniteExtension:
            if (name == "x") return Element::generator(f);
            break;
        case Field::Kind::Finite:
            if (name == "g" && f->exponent() > 1) return Element::generator(f);
            return std::nullopt;
        default: return std::nullopt;
    }
    if (f->base()) {
        auto inner = resolve_name(name, f->base());
        if (inner) return embed(*inner, f);
    }
    return std::nullopt;
}

Element parse_expr(Cursor& c, const FieldPtr& f);

Element parse_base(Cursor& c, const FieldPtr& f) {
    if (c.eat('(')) {
        Element e = parse_expr(c, f);
        c.expect(')');
        return e;
    }
    if (c.eat('-')) return -parse_base(c, f);
    if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
        long long v = c.integer();
        return Element::from_integer(f, BigInt(v));
    }
    if (std::isalpha(static_cast<unsigned char>(c.peek()))) {
        size_t at = c.pos;
        std::string name = c.identifier();
        auto e = resolve_name(name, f);
        if (!e) {
            c.pos = at;
            c.fail("unknown variable '" + name + "' over " + f->to_string());
        }
        return *e;
    }
    c.fail("expected an element");
}

Element parse_power(Cursor& c, const FieldPtr& f) {
    Element b = parse_base(c, f);
    if (c.eat('^')) {
        long long e = c.integer();
        return b.pow(BigInt(e));
    }
    return b;
}

Element parse_term(Cursor& c, const FieldPtr& f) {
    Element acc = parse_power(c, f);
    for (;;) {
        if (c.eat('*'))
            acc = acc * parse_power(c, f);
        else if (c.eat('/'))
            acc = acc / parse_power(c, f);
        else
            return acc;
    }
}

Element parse_expr(Cursor& c, const FieldPtr& f) {
    Element acc = parse_term(c, f);
    for (;;) {
        if (c.eat('+'))
            acc = acc + parse_term(c, f);
        else if (c.peek() == '-' && c.pos + 1 < c.clean.size()) {
            c.eat('-');
            acc = acc - parse_term(c, f);
        } else
            return acc;
    }
}

// a polynomial in x over `base`, via elements of base(x)
Polynomial parse_poly_in_x(Cursor& c, const FieldPtr& base) {
    FieldPtr helper = Field::rational_function(base, {"x"});
    Element e = parse_expr(c, helper);
    if (e.rf_den().degree() != 0) c.fail("polynomial expected (denominator is not constant)");
    Polynomial p = e.rf_num().scale(e.rf_den().coeff(0).inverse());
    return p;
}

FieldPtr parse_field_cursor(Cursor& c) {
    FieldPtr f;
    if (c.eat("NF(")) {
        long long d = c.integer();
        c.expect(',');
        long long r1 = c.integer();
        c.expect(',');
        long long r2 = c.integer();
        c.expect(')');
        if (d < 1 || r1 < 0 || r2 < 0) c.fail("bad number field data");
        try {
            f = Field::number_field(static_cast<unsigned>(d), static_cast<unsigned>(r1),
                                    static_cast<unsigned>(r2));
        } catch (const std::invalid_argument& e) {
            c.fail(e.what());
        }
    } else if (c.eat('Q')) {
        f = Field::rationals();
    } else if (c.eat('R')) {
        f = Field::declared("R", true, true);
    } else if (c.eat('C')) {
        f = Field::declared("C", true, true);
    } else if (c.eat('F')) {
        long long p = c.integer();
        long long e = 1;
        if (c.eat('^')) e = c.integer();
        if (p < 2 || e < 1) c.fail("bad finite field parameters");
        f = Field::finite(static_cast<uint64_t>(p), static_cast<unsigned>(e));
    } else {
        c.fail("expected a field (Q, R, C, F<p>, NF(d,r1,r2))");
    }
    for (;;) {
        if (c.eat('(')) {
            std::vector<std::string> vars;
            vars.push_back(c.identifier());
            while (c.eat(',')) vars.push_back(c.identifier());
            c.expect(')');
            f = Field::rational_function(f, std::move(vars));
        } else if (c.eat('[')) {
            Polynomial p = parse_poly_in_x(c, f);
            c.expect(']');
            try {
                f = Field::finite_extension(f, std::move(p));
            } catch (const std::invalid_argument& e) {
                c.fail(e.what());
            }
        } else {
            return f;
        }
    }
}

}  // namespace

FieldPtr parse_field(const std::string& text) {
    Cursor c(text);
    FieldPtr f = parse_field_cursor(c);
    if (!c.done()) c.fail("trailing input after field expression");
    return f;
}

Element parse_element(const std::string& text, const FieldPtr& field) {
    Cursor c(text);
    Element e = parse_expr(c, field);
    if (!c.done()) c.fail("trailing input after element expression");
    return e;
}

namespace {

MilnorClass parse_symbol(Cursor& c, const FieldPtr& f) {
    c.expect('{');
    std::vector<Element> entries;
    if (!c.eat('}')) {
        entries.push_back(parse_expr(c, f));
        while (c.eat(',')) entries.push_back(parse_expr(c, f));
        c.expect('}');
    }
    return MilnorClass::symbol(f, entries);
}

}  // namespace

MilnorClass parse_class(const std::string& text, const FieldPtr& field) {
    Cursor c(text);
    std::optional<MilnorClass> acc;
    bool negative = c.eat('-');
    for (;;) {
        BigInt coeff(negative ? -1 : 1);
        if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
            long long k = c.integer();
            coeff = coeff * BigInt(k);
            c.expect('*');
        }
        MilnorClass s = parse_symbol(c, field).scaled(coeff);
        acc = acc ? *acc + s : s;
        if (c.eat('+'))
            negative = false;
        else if (c.eat('-'))
            negative = true;
        else
            break;
    }
    if (!c.done()) c.fail("trailing input after class expression");
    return *acc;
}

Valuation parse_valuation(const std::string& text, const FieldPtr& field) {
    Cursor c(text);
    if (c.eat("inf")) {
        if (!c.done()) c.fail("trailing input after 'inf'");
        return Valuation::infinite_place(field);
    }
    if (c.peek() == '(') {
        if (field->kind() != Field::Kind::RationalFunction)
            c.fail("point of the line needs a rational function field");
        c.expect('(');
        // the polynomial is written in the field's own variable
        FieldPtr base = field->base();
        Element e = parse_expr(c, field);
        c.expect(')');
        if (!c.done()) c.fail("trailing input after valuation");
        if (e.rf_den().degree() != 0) throw ParseError(text, 0, "uniformizer must be a polynomial");
        Polynomial pi = e.rf_num().scale(e.rf_den().coeff(0).inverse());
        return Valuation::point_of_line(field, pi);
    }
    long long p = c.integer();
    if (!c.done()) c.fail("trailing input after prime");
    if (!field->is_rationals()) c.fail("finite places live over Q");
    return Valuation::finite_place(BigInt(p));
}

MorphismWord parse_morphism_word(const std::string& text, const ObjectRef& source) {
    // split into generator tokens on the composition operator
    std::vector<std::string> tokens;
    {
        std::string cur;
        for (size_t i = 0; i < text.size();) {
            if (text.compare(i, 3, "\xe2\x88\x98") == 0) {  // the ring operator
                tokens.push_back(cur);
                cur.clear();
                i += 3;
            } else if (text[i] == '.') {
                tokens.push_back(cur);
                cur.clear();
                ++i;
            } else {
                cur.push_back(text[i]);
                ++i;
            }
        }
        tokens.push_back(cur);
    }
    // instantiate from the source side: the last token applies first
    GenSeq rev;
    FieldPtr cur_field = source.field;
    for (size_t idx = tokens.size(); idx-- > 0;) {
        std::string tok = tokens[idx];
        // trim
        size_t b = tok.find_first_not_of(" \t");
        size_t e = tok.find_last_not_of(" \t");
        if (b == std::string::npos) throw ParseError(text, 0, "empty generator token");
        tok = tok.substr(b, e - b + 1);
        auto payload = [&](const std::string& head) -> std::string {
            if (tok.rfind(head + "[", 0) != 0 || tok.back() != ']')
                throw ParseError(text, 0, "malformed generator '" + tok + "'");
            return tok.substr(head.size() + 1, tok.size() - head.size() - 2);
        };
        if (tok.rfind("res", 0) == 0) {
            Valuation v = parse_valuation(payload("res"), cur_field);
            rev.push_back(Generator::residue_at(v));
            cur_field = v.residue_field();
        } else if (tok.rfind("sym", 0) == 0) {
            MilnorClass x = parse_class(payload("sym"), cur_field);
            rev.push_back(Generator::symbol_mult(x));
        } else if (tok.rfind("rst", 0) == 0) {
            std::string body = payload("rst");
            size_t arrow = body.find("->");
            if (arrow == std::string::npos) throw ParseError(text, 0, "rst expects E->L");
            FieldPtr from = parse_field(body.substr(0, arrow));
            FieldPtr to = parse_field(body.substr(arrow + 2));
            if (!same_field(from, cur_field))
                throw ParseError(text, 0, "rst source " + from->to_string() +
                                              " does not match the current object " +
                                              cur_field->to_string());
            rev.push_back(Generator::restriction(FieldMorphism::embedding(from, to)));
            cur_field = to;
        } else if (tok.rfind("nrm", 0) == 0) {
            std::string body = payload("nrm");
            size_t slash = body.find('/');
            if (slash == std::string::npos) throw ParseError(text, 0, "nrm expects L/E");
            FieldPtr L = parse_field(body.substr(0, slash));
            FieldPtr E = parse_field(body.substr(slash + 1));
            if (!same_field(L, cur_field))
                throw ParseError(text, 0, "nrm source " + L->to_string() +
                                              " does not match the current object " +
                                              cur_field->to_string());
            rev.push_back(Generator::norm(FieldMorphism::embedding(E, L)));
            cur_field = E;
        } else {
            throw ParseError(text, 0, "unknown generator '" + tok + "'");
        }
    }
    GenSeq seq(rev.rbegin(), rev.rend());
    return MorphismWord::single(source, std::move(seq));
}

}  // namespace rostforge

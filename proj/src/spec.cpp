#include "drt/spec.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <fstream>
#include <set>
#include <sstream>

#include <gmpxx.h>

#include "drt/error.hpp"

namespace drt::spec {

std::string Value::kind_name() const {
    switch (kind) {
        case Kind::String: return "string";
        case Kind::Integer: return "integer";
        case Kind::Boolean: return "boolean";
        case Kind::Array: return "array";
        case Kind::Table: return "table";
    }
    return "?";
}

namespace {

std::string where(const std::string& source, Pos p) {
    return source + ":" + std::to_string(p.line) + ":" + std::to_string(p.col) + ": ";
}

// ---------------------------------------------------------------- TOML subset

class Reader {
public:
    Reader(const std::string& text, const std::string& source) : s_(text), src_(source) {}

    Document run() {
        Document doc;
        doc.source = src_;
        doc.sections.push_back(Section{"", Pos{}, {}});
        std::set<std::string> seen{""};
        for (;;) {
            skip_blank_lines();
            if (eof()) break;
            if (peek() == '[') {
                Pos p = pos();
                get();
                skip_ws();
                std::string name = key();
                skip_ws();
                while (peek() == '.') {
                    get();
                    skip_ws();
                    name += "." + key();
                    skip_ws();
                }
                expect(']');
                end_of_line();
                if (!seen.insert(name).second) error(p, "duplicate section [" + name + "]");
                doc.sections.push_back(Section{name, p, {}});
                continue;
            }
            Pos p = pos();
            std::string k = key();
            skip_ws();
            expect('=');
            skip_ws();
            Value v = value();
            end_of_line();
            auto& tab = doc.sections.back().entries;
            for (const auto& [ok, ov] : tab)
                if (ok == k) error(p, "duplicate key '" + k + "'");
            tab.emplace_back(k, std::move(v));
        }
        return doc;
    }

private:
    bool eof() const { return i_ >= s_.size(); }
    char peek() const { return eof() ? '\0' : s_[i_]; }
    Pos pos() const { return Pos{line_, col_}; }
    char get() {
        char c = s_[i_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }
    [[noreturn]] void error(Pos p, const std::string& msg) const { fail(ErrorKind::Parse, where(src_, p) + msg); }

    void skip_ws() {
        while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) get();
    }
    void skip_comment() {
        if (peek() == '#')
            while (!eof() && peek() != '\n') get();
    }
    void skip_blank_lines() {
        for (;;) {
            skip_ws();
            skip_comment();
            if (peek() == '\n') {
                get();
                continue;
            }
            return;
        }
    }
    // whitespace, comments and newlines inside arrays and inline tables
    void skip_all() { skip_blank_lines(); }
    void end_of_line() {
        skip_ws();
        skip_comment();
        if (eof()) return;
        if (peek() != '\n') error(pos(), std::string("unexpected '") + peek() + "' after value");
        get();
    }
    void expect(char c) {
        if (peek() != c) {
            if (eof()) error(pos(), std::string("expected '") + c + "', found end of input");
            error(pos(), std::string("expected '") + c + "', found '" + peek() + "'");
        }
        get();
    }

    static bool bare(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'; }

    std::string key() {
        if (peek() == '"') return string_literal();
        Pos p = pos();
        std::string k;
        while (!eof() && bare(peek())) k += get();
        if (k.empty()) error(p, eof() ? "expected a key, found end of input" : std::string("expected a key, found '") + peek() + "'");
        return k;
    }

    std::string string_literal() {
        Pos p = pos();
        expect('"');
        std::string out;
        for (;;) {
            if (eof() || peek() == '\n') error(p, "unterminated string");
            char c = get();
            if (c == '"') return out;
            if (c == '\\') {
                if (eof()) error(p, "unterminated string");
                char e = get();
                switch (e) {
                    case '"': out += '"'; break;
                    case '\\': out += '\\'; break;
                    case 'n': out += '\n'; break;
                    case 't': out += '\t'; break;
                    default: error(pos(), std::string("unknown escape '\\") + e + "'");
                }
                continue;
            }
            out += c;
        }
    }

    Value value() {
        Value v;
        v.pos = pos();
        const char c = peek();
        if (c == '"') {
            v.kind = Value::Kind::String;
            v.str = string_literal();
        } else if (c == '[') {
            get();
            v.kind = Value::Kind::Array;
            v.arr = std::make_shared<Array>();
            for (;;) {
                skip_all();
                if (peek() == ']') {
                    get();
                    break;
                }
                v.arr->push_back(value());
                skip_all();
                if (peek() == ',') {
                    get();
                    continue;
                }
                skip_all();
                expect(']');
                break;
            }
        } else if (c == '{') {
            get();
            v.kind = Value::Kind::Table;
            v.tab = std::make_shared<Table>();
            for (;;) {
                skip_all();
                if (peek() == '}') {
                    get();
                    break;
                }
                Pos kp = pos();
                std::string k = key();
                skip_ws();
                expect('=');
                skip_ws();
                Value inner = value();
                for (const auto& [ok, ov] : *v.tab)
                    if (ok == k) error(kp, "duplicate key '" + k + "'");
                v.tab->emplace_back(k, std::move(inner));
                skip_all();
                if (peek() == ',') {
                    get();
                    continue;
                }
                skip_all();
                expect('}');
                break;
            }
        } else if (c == '+' || c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            if (c == '+' || c == '-') digits += get();
            while (!eof() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '_'))
                if (char d = get(); d != '_') digits += d;
            if (digits.empty() || digits == "+" || digits == "-") error(v.pos, "malformed integer");
            if (!eof() && bare(peek())) error(pos(), "malformed integer");
            v.kind = Value::Kind::Integer;
            try {
                v.num = std::stoll(digits);
            } catch (const std::exception&) {
                error(v.pos, "integer out of range");
            }
        } else if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string w;
            while (!eof() && bare(peek())) w += get();
            if (w != "true" && w != "false") error(v.pos, "unexpected '" + w + "' (strings need double quotes)");
            v.kind = Value::Kind::Boolean;
            v.flag = w == "true";
        } else {
            if (eof()) error(v.pos, "expected a value, found end of input");
            error(v.pos, std::string("expected a value, found '") + c + "'");
        }
        return v;
    }

    const std::string& s_;
    std::string src_;
    std::size_t i_ = 0;
    int line_ = 1, col_ = 1;
};

// ---------------------------------------------------------------- expressions

struct Node {
    enum class K { Num, Ident, Tuple, Neg, Add, Sub, Mul, Div, Pow };
    K k = K::Num;
    std::string text;
    long long exp = 0;
    std::size_t col = 0;
    std::vector<Node> kids;
};

class ExprParser {
public:
    explicit ExprParser(const std::string& s) : s_(s) {}

    Node run() {
        Node n = expr();
        ws();
        if (i_ < s_.size()) err("unexpected '" + std::string(1, s_[i_]) + "'");
        return n;
    }

private:
    [[noreturn]] void err(const std::string& m) const {
        fail(ErrorKind::Parse, "in expression '" + s_ + "' at column " + std::to_string(i_ + 1) + ": " + m);
    }
    void ws() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char c) {
        ws();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    Node bin(Node::K k, Node l, Node r, std::size_t col) {
        Node n;
        n.k = k;
        n.col = col;
        n.kids.push_back(std::move(l));
        n.kids.push_back(std::move(r));
        return n;
    }
    Node expr() {
        Node l = term();
        for (;;) {
            ws();
            const std::size_t c = i_;
            if (eat('+'))
                l = bin(Node::K::Add, std::move(l), term(), c);
            else if (eat('-'))
                l = bin(Node::K::Sub, std::move(l), term(), c);
            else
                return l;
        }
    }
    Node term() {
        Node l = unary();
        for (;;) {
            ws();
            const std::size_t c = i_;
            if (eat('*'))
                l = bin(Node::K::Mul, std::move(l), unary(), c);
            else if (eat('/'))
                l = bin(Node::K::Div, std::move(l), unary(), c);
            else
                return l;
        }
    }
    Node unary() {
        ws();
        const std::size_t c = i_;
        if (eat('-')) {
            Node n;
            n.k = Node::K::Neg;
            n.col = c;
            n.kids.push_back(unary());
            return n;
        }
        if (eat('+')) return unary();
        Node a = atom();
        ws();
        if (eat('^')) {
            ws();
            std::string d;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) d += s_[i_++];
            if (d.empty()) err("expected a non-negative integer exponent");
            Node n;
            n.k = Node::K::Pow;
            n.col = c;
            n.exp = std::stoll(d);
            n.kids.push_back(std::move(a));
            return n;
        }
        return a;
    }
    Node atom() {
        ws();
        Node n;
        n.col = i_;
        if (i_ >= s_.size()) err("unexpected end of expression");
        const char c = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            n.k = Node::K::Num;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) n.text += s_[i_++];
            return n;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            n.k = Node::K::Ident;
            while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_' || s_[i_] == '\''))
                n.text += s_[i_++];
            return n;
        }
        if (eat('(')) {
            Node first = expr();
            if (eat(')')) return first;
            n.k = Node::K::Tuple;
            n.kids.push_back(std::move(first));
            while (eat(',')) n.kids.push_back(expr());
            if (!eat(')')) err("expected ')'");
            return n;
        }
        err("unexpected '" + std::string(1, c) + "'");
    }

    const std::string& s_;
    std::size_t i_ = 0;
};

Node parse_expr(const std::string& s) { return ExprParser(s).run(); }

Scalar number(const Field& f, const std::string& digits) {
    mpz_class z(digits);
    if (f.finite()) {
        mpz_class r = z % f.characteristic();
        return f.from_int(r.get_si());
    }
    return f.from_rational(mpq_class(z));
}

using Param = std::optional<std::pair<std::string, Scalar>>;

[[noreturn]] void expr_error(const std::string& text, const Node& n, const std::string& m) {
    fail(ErrorKind::Parse, "in expression '" + text + "' at column " + std::to_string(n.col + 1) + ": " + m);
}

// Scalars of f: numbers, tuples over the base, z, the parameter.
Scalar eval_scalar(const Field& f, const std::string& text, const Node& n, const Param& param) {
    switch (n.k) {
        case Node::K::Num: return number(f, n.text);
        case Node::K::Ident:
            if (param && n.text == param->first) return param->second;
            if (n.text == "z" && f.is_extension()) return f.generator();
            expr_error(text, n, "unknown scalar '" + n.text + "'");
        case Node::K::Tuple: {
            if (!f.is_extension()) expr_error(text, n, "coordinate tuple over a field that is not an extension");
            if (n.kids.size() != f.degree())
                expr_error(text, n, "tuple has " + std::to_string(n.kids.size()) + " coordinates, field degree is " +
                                        std::to_string(f.degree()));
            std::vector<Scalar> c;
            for (const auto& k : n.kids) c.push_back(eval_scalar(*f.base(), text, k, {}));
            return f.from_coords(c);
        }
        case Node::K::Neg: return -eval_scalar(f, text, n.kids[0], param);
        case Node::K::Add: return eval_scalar(f, text, n.kids[0], param) + eval_scalar(f, text, n.kids[1], param);
        case Node::K::Sub: return eval_scalar(f, text, n.kids[0], param) - eval_scalar(f, text, n.kids[1], param);
        case Node::K::Mul: return eval_scalar(f, text, n.kids[0], param) * eval_scalar(f, text, n.kids[1], param);
        case Node::K::Div: {
            Scalar d = eval_scalar(f, text, n.kids[1], param);
            if (d.is_zero()) expr_error(text, n, "division by zero");
            return eval_scalar(f, text, n.kids[0], param) / d;
        }
        case Node::K::Pow: return f.pow(eval_scalar(f, text, n.kids[0], param), static_cast<std::uint64_t>(n.exp));
    }
    expr_error(text, n, "bad expression");
}

bool scalar_only(const Node& n, const Algebra* a, const Param& param) {
    switch (n.k) {
        case Node::K::Num:
        case Node::K::Tuple: return true;
        case Node::K::Ident: {
            if (param && n.text == param->first) return true;
            if (a) {
                if (a->has_quiver() && a->quiver().find_arrow(n.text)) return false;
                for (const auto& l : a->basis_labels())
                    if (l == n.text) return false;
            }
            return n.text == "z";
        }
        default:
            for (const auto& k : n.kids)
                if (!scalar_only(k, a, param)) return false;
            return true;
    }
}

Vec eval_element(const Algebra& a, const std::string& text, const Node& n, const Param& param) {
    const Field& f = a.field();
    if (scalar_only(n, &a, param)) return a.scalar(eval_scalar(f, text, n, param));
    switch (n.k) {
        case Node::K::Ident: {
            if (a.has_quiver())
                if (auto ar = a.quiver().find_arrow(n.text)) return a.arrow_element(*ar);
            const auto& labels = a.basis_labels();
            for (std::size_t i = 0; i < labels.size(); ++i)
                if (labels[i] == n.text) return a.basis(i);
            expr_error(text, n, "unknown name '" + n.text + "'");
        }
        case Node::K::Neg: return scale(eval_element(a, text, n.kids[0], param), -f.one());
        case Node::K::Add: return add(eval_element(a, text, n.kids[0], param), eval_element(a, text, n.kids[1], param));
        case Node::K::Sub: return sub(eval_element(a, text, n.kids[0], param), eval_element(a, text, n.kids[1], param));
        case Node::K::Mul: {
            const Node& l = n.kids[0];
            const Node& r = n.kids[1];
            if (scalar_only(l, &a, param)) return scale(eval_element(a, text, r, param), eval_scalar(f, text, l, param));
            if (scalar_only(r, &a, param)) return scale(eval_element(a, text, l, param), eval_scalar(f, text, r, param));
            return a.mul(eval_element(a, text, l, param), eval_element(a, text, r, param));
        }
        case Node::K::Div: {
            if (!scalar_only(n.kids[1], &a, param)) expr_error(text, n, "can only divide by a scalar");
            Scalar d = eval_scalar(f, text, n.kids[1], param);
            if (d.is_zero()) expr_error(text, n, "division by zero");
            return scale(eval_element(a, text, n.kids[0], param), f.inv(d));
        }
        case Node::K::Pow: {
            Vec base = eval_element(a, text, n.kids[0], param);
            Vec out = a.one();
            for (long long i = 0; i < n.exp; ++i) out = a.mul(out, base);
            return out;
        }
        default: break;
    }
    expr_error(text, n, "bad expression");
}

// Linear combinations of words in named generators (arrows, or table labels).
using Combo = std::map<Word, Scalar>;

Combo combo_add(Combo x, const Combo& y, const Scalar& sign) {
    for (const auto& [w, c] : y) {
        auto it = x.find(w);
        if (it == x.end())
            x.emplace(w, c * sign);
        else
            it->second = it->second + c * sign;
    }
    for (auto it = x.begin(); it != x.end();)
        it = it->second.is_zero() ? x.erase(it) : std::next(it);
    return x;
}

Combo combo_mul(const Combo& x, const Combo& y) {
    Combo out;
    for (const auto& [wx, cx] : x)
        for (const auto& [wy, cy] : y) {
            Word w = wx;
            w.insert(w.end(), wy.begin(), wy.end());
            out = combo_add(out, Combo{{w, cx * cy}}, cx.field()->one());
        }
    return out;
}

Combo eval_combo(const Field& f, const std::vector<std::string>& gens, const std::string& text, const Node& n) {
    switch (n.k) {
        case Node::K::Num: return combo_add({}, Combo{{Word{}, number(f, n.text)}}, f.one());
        case Node::K::Tuple: return combo_add({}, Combo{{Word{}, eval_scalar(f, text, n, {})}}, f.one());
        case Node::K::Ident: {
            for (std::size_t i = 0; i < gens.size(); ++i)
                if (gens[i] == n.text) return Combo{{Word{i}, f.one()}};
            if (n.text == "z" && f.is_extension()) return Combo{{Word{}, f.generator()}};
            expr_error(text, n, "unknown name '" + n.text + "'");
        }
        case Node::K::Neg: return combo_add({}, eval_combo(f, gens, text, n.kids[0]), -f.one());
        case Node::K::Add: return combo_add(eval_combo(f, gens, text, n.kids[0]), eval_combo(f, gens, text, n.kids[1]), f.one());
        case Node::K::Sub: return combo_add(eval_combo(f, gens, text, n.kids[0]), eval_combo(f, gens, text, n.kids[1]), -f.one());
        case Node::K::Mul: return combo_mul(eval_combo(f, gens, text, n.kids[0]), eval_combo(f, gens, text, n.kids[1]));
        case Node::K::Div: {
            Combo d = eval_combo(f, gens, text, n.kids[1]);
            if (d.size() != 1 || !d.begin()->first.empty()) expr_error(text, n, "can only divide by a nonzero scalar");
            return combo_mul(eval_combo(f, gens, text, n.kids[0]), Combo{{Word{}, f.inv(d.begin()->second)}});
        }
        case Node::K::Pow: {
            Combo base = eval_combo(f, gens, text, n.kids[0]);
            Combo out{{Word{}, f.one()}};
            for (long long i = 0; i < n.exp; ++i) out = combo_mul(out, base);
            return out;
        }
    }
    expr_error(text, n, "bad expression");
}

// ---------------------------------------------------------------- semantic helpers

class Loader {
public:
    Loader(const Document& d, const LoadOptions& o) : doc_(d), opts_(o) {}

    [[noreturn]] void error(Pos p, const std::string& m) const { fail(ErrorKind::Parse, where(doc_.source, p) + m); }
    // errors from the library, tagged with a position
    template <class F>
    auto at(Pos p, F&& fn) const -> decltype(fn()) {
        try {
            return fn();
        } catch (const Error& e) {
            const std::string msg = e.what();
            if (msg.rfind(doc_.source + ":", 0) == 0) throw;
            throw Error(e.kind() == ErrorKind::Parse ? ErrorKind::Parse : e.kind(), where(doc_.source, p) + msg);
        }
    }

    const Value& want(const Value& v, Value::Kind k, const std::string& what) const {
        if (v.kind != k) {
            Value tmp;
            tmp.kind = k;
            error(v.pos, what + " must be a " + tmp.kind_name() + ", found " + v.kind_name());
        }
        return v;
    }
    std::string text_of(const Value& v, const std::string& what) const {
        if (v.kind == Value::Kind::String) return v.str;
        if (v.kind == Value::Kind::Integer) return std::to_string(v.num);
        error(v.pos, what + " must be a string or an integer, found " + v.kind_name());
    }

    FieldPtr field_from(const Value& v, const std::string& what) const {
        if (v.kind == Value::Kind::String) return named_field(v.str, v.pos);
        want(v, Value::Kind::Table, what);
        const Value* base = nullptr;
        const Value* minpoly = nullptr;
        for (const auto& [k, x] : *v.tab) {
            if (k == "base")
                base = &x;
            else if (k == "minpoly")
                minpoly = &x;
            else
                error(x.pos, "unknown key '" + k + "' in " + what);
        }
        if (!base) error(v.pos, what + " needs a base");
        if (!minpoly) error(v.pos, what + " needs a minpoly");
        FieldPtr b = named_field(want(*base, Value::Kind::String, "base").str, base->pos);
        want(*minpoly, Value::Kind::Array, "minpoly");
        std::vector<Scalar> coeffs;
        for (const auto& c : *minpoly->arr) coeffs.push_back(at(c.pos, [&] { return parse_scalar(*b, text_of(c, "coefficient")); }));
        return at(minpoly->pos, [&] { return Field::extension(b, coeffs, opts_.assume_irreducible); });
    }

    FieldPtr named_field(const std::string& s, Pos p) const {
        if (s == "Q") return Field::rationals();
        if (s.size() > 4 && s.rfind("Fp(", 0) == 0 && s.back() == ')') {
            const std::string d = s.substr(3, s.size() - 4);
            if (!d.empty() && std::all_of(d.begin(), d.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) &&
                d.size() < 10) {
                const auto n = std::stoull(d);
                if (!is_prime(n)) error(p, "Fp(" + d + "): " + d + " is not prime");
                return Field::prime(static_cast<std::uint32_t>(n));
            }
        }
        error(p, "unknown field '" + s + "' (expected \"Fp(p)\", \"Q\", or { base, minpoly })");
    }

private:
    const Document& doc_;
    LoadOptions opts_;
};

int degree_suffix(const std::string& key, std::size_t skip, bool& ok) {
    const std::string d = key.substr(skip);
    ok = !d.empty();
    std::size_t i = (ok && d[0] == '-') ? 1 : 0;
    if (i == d.size()) ok = false;
    for (; ok && i < d.size(); ++i) ok = std::isdigit(static_cast<unsigned char>(d[i])) != 0;
    if (!ok || d.size() > 6) {
        ok = false;
        return 0;
    }
    return std::stoi(d);
}

std::string scalar_literal(const Scalar& c) {
    const std::string s = c.str();
    if (s.find_first_of("/(") != std::string::npos) return "\"" + s + "\"";
    return s;
}

std::string format_combo(const Field& f, const Combo& c, const std::vector<std::string>& gens) {
    std::string out;
    for (const auto& [w, coeff] : c) {
        std::string label;
        for (std::size_t i = 0; i < w.size(); ++i) label += (i ? "*" : "") + gens[w[i]];
        std::string term;
        if (label.empty())
            term = coeff.str();
        else if (coeff.is_one())
            term = label;
        else if (coeff == -f.one() && !f.is_extension())
            term = "-" + label;
        else
            term = coeff.str() + "*" + label;
        if (out.empty())
            out = term;
        else if (term[0] == '-')
            out += " - " + term.substr(1);
        else
            out += " + " + term;
    }
    return out.empty() ? "0" : out;
}

std::string field_literal(const Field& f) {
    if (!f.is_extension()) return "\"" + f.name() + "\"";
    std::string s = "{ base = \"" + f.base()->name() + "\", minpoly = [";
    for (std::size_t i = 0; i < f.minpoly().size(); ++i) s += (i ? ", " : "") + scalar_literal(f.minpoly()[i]);
    return s + "] }";
}

std::string quoted(const std::string& s) {
    std::string o = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') o += '\\';
        o += c;
    }
    return o + "\"";
}

}  // namespace

Document parse_document(const std::string& text, const std::string& source) { return Reader(text, source).run(); }

Vec parse_element(const Algebra& a, const std::string& text, const Param& param) {
    return eval_element(a, text, parse_expr(text), param);
}

Scalar parse_scalar(const Field& f, const std::string& text) { return eval_scalar(f, text, parse_expr(text), {}); }

// ---------------------------------------------------------------- Spec

const ExtensionContext& Spec::extension() const {
    require(ctx_ != nullptr, "spec has no extension section");
    return *ctx_;
}

const ProjComplex& Spec::complex(const std::string& n) const {
    auto it = complexes_.find(n);
    require(it != complexes_.end(), "unknown complex '" + n + "'");
    return it->second;
}

bool Spec::complex_over_large(const std::string& n) const {
    complex(n);
    return complex_large_.at(n);
}

const Module& Spec::module(const std::string& n) const {
    auto it = modules_.find(n);
    require(it != modules_.end(), "unknown module '" + n + "'");
    return it->second;
}

namespace {

ProjComplex build_complex(const Loader& L, const AlgebraPtr& ap, const ComplexDecl& d, const Param& param) {
    const Algebra& a = *ap;
    std::vector<std::vector<std::size_t>> comps;
    for (const auto& names : d.comps) {
        std::vector<std::size_t> c;
        for (const auto& n : names) {
            auto u = a.projective_index(n);
            if (!u) {
                std::string known;
                for (std::size_t i = 0; i < a.num_projectives(); ++i) known += (i ? ", " : "") + a.proj(i).name;
                L.error(d.pos, "complex " + d.name + ": unknown projective '" + n + "' (known: " + known + ")");
            }
            c.push_back(*u);
        }
        comps.push_back(std::move(c));
    }
    std::vector<AMatrix> diffs;
    for (std::size_t k = 0; k + 1 < comps.size(); ++k) {
        const int deg = d.lo + static_cast<int>(k);
        AMatrix m(a, comps[k + 1].size(), comps[k].size());
        auto it = d.diffs.find(deg);
        if (it != d.diffs.end()) {
            const auto& rows = it->second;
            if (rows.size() != m.rows) {
                const Pos p = rows.empty() ? d.pos : rows.front().empty() ? d.pos : rows.front().front().second;
                L.error(p, "d" + std::to_string(deg) + " of complex " + d.name + " needs " + std::to_string(m.rows) +
                               " rows (one per term in degree " + std::to_string(deg + 1) + "), found " +
                               std::to_string(rows.size()));
            }
            for (std::size_t t = 0; t < rows.size(); ++t) {
                if (rows[t].size() != m.cols)
                    L.error(rows[t].empty() ? d.pos : rows[t].front().second,
                            "d" + std::to_string(deg) + " of complex " + d.name + " needs " + std::to_string(m.cols) +
                                " columns (one per term in degree " + std::to_string(deg) + "), found " +
                                std::to_string(rows[t].size()));
                for (std::size_t s = 0; s < rows[t].size(); ++s)
                    m(t, s) = L.at(rows[t][s].second, [&] { return parse_element(a, rows[t][s].first, param); });
            }
        }
        diffs.push_back(std::move(m));
    }
    for (const auto& [deg, rows] : d.diffs)
        if (deg < d.lo || deg + 1 >= d.lo + static_cast<int>(comps.size()))
            if (!rows.empty() && !rows.front().empty())
                L.error(rows.front().front().second, "d" + std::to_string(deg) + " of complex " + d.name + " has no terms on one side");
    if (comps.empty()) return ProjComplex::zero(ap);
    return L.at(d.pos, [&] { return ProjComplex(ap, d.lo, comps, diffs); });
}

ComplexDecl read_complex(const Loader& L, const Section& s, const std::string& name,
                         const std::set<std::string>& extra, std::map<std::string, const Value*>& extras) {
    ComplexDecl d;
    d.name = name;
    d.pos = s.pos;
    std::map<int, std::vector<std::string>> terms;
    for (const auto& [k, v] : s.entries) {
        bool ok = false;
        if (k == "over") {
            const std::string o = L.want(v, Value::Kind::String, "over").str;
            if (o != "k" && o != "K") L.error(v.pos, "over must be \"k\" or \"K\"");
            d.over_large = o == "K";
        } else if (extra.count(k)) {
            extras[k] = &v;
        } else if (k.rfind("deg", 0) == 0 && (degree_suffix(k, 3, ok), ok)) {
            const int deg = degree_suffix(k, 3, ok);
            L.want(v, Value::Kind::Array, k);
            std::vector<std::string> names;
            for (const auto& x : *v.arr) names.push_back(L.want(x, Value::Kind::String, "projective name").str);
            terms[deg] = std::move(names);
        } else if (k.rfind("d", 0) == 0 && (degree_suffix(k, 1, ok), ok)) {
            const int deg = degree_suffix(k, 1, ok);
            L.want(v, Value::Kind::Array, k);
            std::vector<std::vector<std::pair<std::string, Pos>>> rows;
            for (const auto& row : *v.arr) {
                L.want(row, Value::Kind::Array, "row of " + k);
                std::vector<std::pair<std::string, Pos>> r;
                for (const auto& e : *row.arr) r.emplace_back(L.text_of(e, "entry"), e.pos);
                rows.push_back(std::move(r));
            }
            d.diffs[deg] = std::move(rows);
        } else {
            L.error(v.pos, "unknown key '" + k + "' in [" + s.name + "] (expected degN, dN, over)");
        }
    }
    if (!terms.empty()) {
        d.lo = terms.begin()->first;
        const int hi = terms.rbegin()->first;
        for (int i = d.lo; i <= hi; ++i) {
            auto it = terms.find(i);
            d.comps.push_back(it == terms.end() ? std::vector<std::string>{} : it->second);
        }
    }
    return d;
}

Matrix read_matrix(const Loader& L, const Field& f, const Value& v, std::size_t rows, std::size_t cols,
                   const std::string& what) {
    L.want(v, Value::Kind::Array, what);
    if (v.arr->size() != rows)
        L.error(v.pos, what + " needs " + std::to_string(rows) + " rows, found " + std::to_string(v.arr->size()));
    Matrix m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const Value& r = L.want((*v.arr)[i], Value::Kind::Array, "row of " + what);
        if (r.arr->size() != cols)
            L.error(r.pos, what + " needs " + std::to_string(cols) + " columns, found " + std::to_string(r.arr->size()));
        for (std::size_t j = 0; j < cols; ++j) {
            const Value& e = (*r.arr)[j];
            m(i, j) = L.at(e.pos, [&] { return parse_scalar(f, L.text_of(e, "matrix entry")); });
        }
    }
    return m;
}

}  // namespace

Spec Spec::load(const std::string& path, const LoadOptions& o) {
    std::ifstream in(path);
    require(in.good(), "cannot read spec file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path, o);
}

Spec Spec::parse(const std::string& text, const std::string& source, const LoadOptions& o) {
    Document doc = parse_document(text, source);
    Loader L(doc, o);
    Spec sp;
    sp.source_ = source;
    const Section& root = doc.sections.front();
    const Value* field_v = nullptr;
    const Value* ext_v = nullptr;
    for (const auto& [k, v] : root.entries) {
        if (k == "name")
            sp.name_ = L.want(v, Value::Kind::String, "name").str;
        else if (k == "field")
            field_v = &v;
        else if (k == "extension")
            ext_v = &v;
        else
            L.error(v.pos, "unknown top-level key '" + k + "' (expected name, field, extension)");
    }
    if (!field_v) L.error(Pos{}, "missing 'field'");
    FieldPtr field = L.field_from(*field_v, "field");

    // the algebra section
    const Section* alg = nullptr;
    for (const auto& s : doc.sections) {
        if (s.name == "quiver" || s.name == "univariate" || s.name == "table") {
            if (alg) L.error(s.pos, "more than one algebra section ([" + alg->name + "] and [" + s.name + "])");
            alg = &s;
        }
    }
    if (!alg) L.error(Pos{}, "missing algebra section: one of [quiver], [univariate], [table]");

    Presentation pres;
    pres.field = field;
    if (alg->name == "quiver") {
        pres.kind = Presentation::Kind::Quiver;
        const Value* rel_v = nullptr;
        for (const auto& [k, v] : alg->entries) {
            if (k == "vertices") {
                L.want(v, Value::Kind::Array, "vertices");
                for (const auto& x : *v.arr) pres.quiver.vertices.push_back(L.text_of(x, "vertex"));
            } else if (k == "arrows") {
                L.want(v, Value::Kind::Array, "arrows");
                for (const auto& x : *v.arr) {
                    const std::string s = L.want(x, Value::Kind::String, "arrow").str;
                    // "name: source -> target"
                    const auto colon = s.find(':');
                    const auto arrow = s.find("->");
                    if (colon == std::string::npos || arrow == std::string::npos || arrow < colon)
                        L.error(x.pos, "arrow '" + s + "' must look like \"a: 1 -> 2\"");
                    auto trim = [](std::string t) {
                        const auto b = t.find_first_not_of(" \t");
                        const auto e = t.find_last_not_of(" \t");
                        return b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
                    };
                    Arrow ar;
                    ar.name = trim(s.substr(0, colon));
                    const std::string src = trim(s.substr(colon + 1, arrow - colon - 1));
                    const std::string tgt = trim(s.substr(arrow + 2));
                    if (ar.name.empty() || !std::all_of(ar.name.begin(), ar.name.end(), [](char c) {
                            return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
                        }) || !std::isalpha(static_cast<unsigned char>(ar.name[0])))
                        L.error(x.pos, "arrow name '" + ar.name + "' must be an identifier");
                    ar.source = L.at(x.pos, [&] { return pres.quiver.vertex(src); });
                    ar.target = L.at(x.pos, [&] { return pres.quiver.vertex(tgt); });
                    pres.quiver.arrows.push_back(ar);
                }
            } else if (k == "relations") {
                rel_v = &v;
            } else {
                L.error(v.pos, "unknown key '" + k + "' in [quiver] (expected vertices, arrows, relations)");
            }
        }
        L.at(alg->pos, [&] {
            pres.quiver.validate();
            return 0;
        });
        if (rel_v) {
            L.want(*rel_v, Value::Kind::Array, "relations");
            std::vector<std::string> gens;
            for (const auto& ar : pres.quiver.arrows) gens.push_back(ar.name);
            for (const auto& x : *rel_v->arr) {
                const std::string s = L.want(x, Value::Kind::String, "relation").str;
                Combo c = L.at(x.pos, [&] { return eval_combo(*field, gens, s, parse_expr(s)); });
                if (c.empty()) L.error(x.pos, "relation '" + s + "' is zero");
                Relation r;
                for (const auto& [w, coeff] : c) r.push_back({coeff, w});
                pres.relations.push_back(std::move(r));
            }
        }
    } else if (alg->name == "univariate") {
        pres.kind = Presentation::Kind::Univariate;
        bool have = false;
        for (const auto& [k, v] : alg->entries) {
            if (k != "modulus") L.error(v.pos, "unknown key '" + k + "' in [univariate] (expected modulus)");
            L.want(v, Value::Kind::Array, "modulus");
            for (const auto& c : *v.arr)
                pres.modulus.push_back(L.at(c.pos, [&] { return parse_scalar(*field, L.text_of(c, "coefficient")); }));
            have = true;
        }
        if (!have) L.error(alg->pos, "[univariate] needs a modulus");
    } else {
        pres.kind = Presentation::Kind::Table;
        const Value* products = nullptr;
        const Value* unit = nullptr;
        for (const auto& [k, v] : alg->entries) {
            if (k == "dim") {
                L.want(v, Value::Kind::Integer, "dim");
                if (v.num <= 0 || v.num > 4096) L.error(v.pos, "dim must be between 1 and 4096");
                pres.table_dim = static_cast<std::size_t>(v.num);
            } else if (k == "labels") {
                L.want(v, Value::Kind::Array, "labels");
                for (const auto& x : *v.arr) pres.table_labels.push_back(L.want(x, Value::Kind::String, "label").str);
            } else if (k == "products") {
                products = &v;
            } else if (k == "unit") {
                unit = &v;
            } else {
                L.error(v.pos, "unknown key '" + k + "' in [table] (expected dim, labels, products, unit)");
            }
        }
        const std::size_t n = pres.table_dim;
        if (n == 0) L.error(alg->pos, "[table] needs dim");
        if (pres.table_labels.empty())
            for (std::size_t i = 0; i < n; ++i) pres.table_labels.push_back("b" + std::to_string(i));
        if (pres.table_labels.size() != n) L.error(alg->pos, "[table] needs exactly dim labels");
        for (const auto& l : pres.table_labels)
            if (l.empty() || !std::isalpha(static_cast<unsigned char>(l[0])) || l == "z")
                L.error(alg->pos, "table label '" + l + "' must be an identifier other than z");
        auto combo_vec = [&](const Value& v) {
            const std::string s = L.text_of(v, "table entry");
            Combo c = L.at(v.pos, [&] { return eval_combo(*field, pres.table_labels, s, parse_expr(s)); });
            Vec out(n, field->zero());
            for (const auto& [w, coeff] : c) {
                if (w.size() != 1) L.error(v.pos, "table entry '" + s + "' must be a linear combination of labels");
                out[w[0]] = coeff;
            }
            return out;
        };
        if (!products) L.error(alg->pos, "[table] needs products");
        L.want(*products, Value::Kind::Array, "products");
        if (products->arr->size() != n) L.error(products->pos, "products needs dim rows");
        for (const auto& row : *products->arr) {
            L.want(row, Value::Kind::Array, "row of products");
            if (row.arr->size() != n) L.error(row.pos, "products rows need dim entries");
            for (const auto& e : *row.arr) pres.table.push_back(combo_vec(e));
        }
        if (unit) pres.table_unit = combo_vec(*unit);
    }
    sp.algebra_ = L.at(alg->pos, [&] { return Algebra::build(pres); });

    if (ext_v) {
        FieldPtr big;
        if (ext_v->kind == Value::Kind::Table) {
            // base defaults to the algebra field
            bool has_base = false;
            for (const auto& [k, v] : *ext_v->tab) has_base = has_base || k == "base";
            if (has_base) {
                big = L.field_from(*ext_v, "extension");
            } else {
                Value copy = *ext_v;
                copy.tab = std::make_shared<Table>(*ext_v->tab);
                Value b;
                b.kind = Value::Kind::String;
                b.pos = ext_v->pos;
                b.str = field->name();
                copy.tab->emplace_back("base", b);
                if (field->is_extension()) L.error(ext_v->pos, "extensions of an extension field are not supported");
                big = L.field_from(copy, "extension");
            }
        } else {
            L.error(ext_v->pos, "extension must be a table { base = ..., minpoly = [...] }");
        }
        if (!big->is_extension() || !big->base()->same(*field))
            L.error(ext_v->pos, "extension base must be the algebra field " + field->name());
        sp.ctx_ = L.at(ext_v->pos, [&] { return std::make_shared<ExtensionContext>(sp.algebra_, big); });
    }

    for (const auto& s : doc.sections) {
        const auto dot = s.name.find('.');
        const std::string kind = s.name.substr(0, dot);
        if (s.name.empty() || s.name == alg->name) continue;
        if (dot == std::string::npos || dot + 1 == s.name.size() || (kind != "complex" && kind != "module" && kind != "family"))
            L.error(s.pos, "unknown section [" + s.name + "] (expected [complex.NAME], [module.NAME], [family.NAME])");
        const std::string name = s.name.substr(dot + 1);
        if (kind == "complex") {
            std::map<std::string, const Value*> extras;
            ComplexDecl d = read_complex(L, s, name, {}, extras);
            if (d.over_large && !sp.ctx_) L.error(s.pos, "complex " + name + " is over K but there is no extension");
            const AlgebraPtr& ap = d.over_large ? sp.ctx_->large() : sp.algebra_;
            sp.complexes_.emplace(name, build_complex(L, ap, d, {}));
            sp.complex_large_[name] = d.over_large;
            sp.complex_order_.push_back(name);
        } else if (kind == "family") {
            std::map<std::string, const Value*> extras;
            FamilyDecl f;
            f.body = read_complex(L, s, name, {"parameter", "samples"}, extras);
            if (!extras.count("parameter")) L.error(s.pos, "family " + name + " needs a parameter");
            f.parameter = L.want(*extras["parameter"], Value::Kind::String, "parameter").str;
            if (f.parameter.empty() || !std::isalpha(static_cast<unsigned char>(f.parameter[0])))
                L.error(extras["parameter"]->pos, "parameter must be an identifier");
            if (!extras.count("samples")) L.error(s.pos, "family " + name + " needs samples");
            const Value& sv = *extras["samples"];
            if (sv.kind == Value::Kind::Integer) {
                if (sv.num < 1 || sv.num > 100000) L.error(sv.pos, "samples must be between 1 and 100000");
                for (long long i = 0; i < sv.num; ++i) f.samples.emplace_back(std::to_string(i), sv.pos);
            } else {
                L.want(sv, Value::Kind::Array, "samples");
                for (const auto& x : *sv.arr) f.samples.emplace_back(L.text_of(x, "sample"), x.pos);
            }
            if (f.body.over_large && !sp.ctx_) L.error(s.pos, "family " + name + " is over K but there is no extension");
            sp.families_.emplace(name, f);
            sp.family_order_.push_back(name);
            // instantiate the first sample so errors surface at load time
            sp.family_samples(name);
            const AlgebraPtr& ap = sp.family_algebra(name);
            const auto samples = sp.family_samples(name);
            build_complex(L, ap, f.body, Param{{f.parameter, samples.front()}});
        } else {
            const Algebra& a = *sp.algebra_;
            const Field& fk = a.field();
            const Value* simple = nullptr;
            const Value* projective = nullptr;
            const Value* dims = nullptr;
            const Value* actions = nullptr;
            const Value* tmat = nullptr;
            for (const auto& [k, v] : s.entries) {
                if (k == "simple")
                    simple = &v;
                else if (k == "projective")
                    projective = &v;
                else if (k == "dims")
                    dims = &v;
                else if (k == "actions")
                    actions = &v;
                else if (k == "t")
                    tmat = &v;
                else
                    L.error(v.pos, "unknown key '" + k + "' in [" + s.name + "] (expected simple, projective, dims, actions, t)");
            }
            auto proj_of = [&](const Value& v) {
                const std::string n = L.want(v, Value::Kind::String, "projective name").str;
                auto u = a.projective_index(n);
                if (!u) L.error(v.pos, "unknown projective '" + n + "'");
                return *u;
            };
            std::optional<Module> m;
            if (simple) {
                m = simple_module(sp.algebra_, proj_of(*simple));
            } else if (projective) {
                m = projective_module(sp.algebra_, proj_of(*projective));
            } else if (tmat) {
                if (a.presentation().kind != Presentation::Kind::Univariate) L.error(tmat->pos, "t is only for [univariate] algebras");
                L.want(*tmat, Value::Kind::Array, "t");
                const std::size_t n = tmat->arr->size();
                Matrix t = read_matrix(L, fk, *tmat, n, n, "t");
                m = L.at(tmat->pos, [&] { return Module::from_t_action(sp.algebra_, t); });
            } else if (dims) {
                if (!a.has_quiver()) L.error(dims->pos, "dims/actions modules need a [quiver] algebra");
                const auto& q = a.quiver();
                L.want(*dims, Value::Kind::Array, "dims");
                std::vector<std::size_t> dv;
                for (const auto& x : *dims->arr) {
                    L.want(x, Value::Kind::Integer, "dimension");
                    if (x.num < 0) L.error(x.pos, "dimensions must be non-negative");
                    dv.push_back(static_cast<std::size_t>(x.num));
                }
                if (dv.size() != q.vertices.size()) L.error(dims->pos, "dims needs one entry per vertex");
                std::vector<Matrix> acts;
                for (const auto& ar : q.arrows) acts.emplace_back(fk, dv[ar.target], dv[ar.source]);
                if (actions) {
                    L.want(*actions, Value::Kind::Table, "actions");
                    for (const auto& [k, v] : *actions->tab) {
                        auto ar = q.find_arrow(k);
                        if (!ar) L.error(v.pos, "unknown arrow '" + k + "'");
                        acts[*ar] = read_matrix(L, fk, v, dv[q.arrows[*ar].target], dv[q.arrows[*ar].source], "action of " + k);
                    }
                }
                m = L.at(dims->pos, [&] { return Module::from_quiver(sp.algebra_, dv, acts); });
            } else {
                L.error(s.pos, "module " + name + " needs simple, projective, dims, or t");
            }
            sp.modules_.emplace(name, std::move(*m));
            sp.module_order_.push_back(name);
        }
    }
    return sp;
}

const AlgebraPtr& Spec::family_algebra(const std::string& n) const {
    auto it = families_.find(n);
    require(it != families_.end(), "unknown family '" + n + "'");
    return it->second.body.over_large ? extension().large() : algebra_;
}

std::vector<Scalar> Spec::family_samples(const std::string& n) const {
    auto it = families_.find(n);
    require(it != families_.end(), "unknown family '" + n + "'");
    const Field& f = family_algebra(n)->field();
    Document doc;
    doc.source = source_;
    Loader L(doc, {});
    std::vector<Scalar> out;
    for (const auto& [text, pos] : it->second.samples) out.push_back(L.at(pos, [&] { return parse_scalar(f, text); }));
    return out;
}

FamilyTemplate Spec::family(const std::string& n) const {
    auto it = families_.find(n);
    require(it != families_.end(), "unknown family '" + n + "'");
    const FamilyDecl decl = it->second;
    const AlgebraPtr ap = family_algebra(n);
    const std::string source = source_;
    return [decl, ap, source](const Scalar& lam) {
        Document doc;
        doc.source = source;
        Loader L(doc, {});
        return build_complex(L, ap, decl.body, Param{{decl.parameter, lam}});
    };
}

std::string Spec::header() const {
    const Presentation& p = algebra_->presentation();
    const Field& f = *p.field;
    std::ostringstream os;
    if (!name_.empty()) os << "name = " << quoted(name_) << "\n";
    os << "field = " << field_literal(f) << "\n";
    if (ctx_ && ctx_->degree() == 1) {
        os << "extension = { base = \"" << f.name() << "\", minpoly = [0, 1] }\n";
    } else if (ctx_) {
        const Field& K = ctx_->large_field();
        os << "extension = { base = \"" << f.name() << "\", minpoly = [";
        for (std::size_t i = 0; i < K.minpoly().size(); ++i) os << (i ? ", " : "") << scalar_literal(K.minpoly()[i]);
        os << "] }\n";
    }
    os << "\n";
    switch (p.kind) {
        case Presentation::Kind::Quiver: {
            os << "[quiver]\nvertices = [";
            for (std::size_t i = 0; i < p.quiver.vertices.size(); ++i) os << (i ? ", " : "") << quoted(p.quiver.vertices[i]);
            os << "]\narrows = [";
            std::vector<std::string> gens;
            for (std::size_t i = 0; i < p.quiver.arrows.size(); ++i) {
                const auto& a = p.quiver.arrows[i];
                gens.push_back(a.name);
                os << (i ? ", " : "")
                   << quoted(a.name + ": " + p.quiver.vertices[a.source] + " -> " + p.quiver.vertices[a.target]);
            }
            os << "]\n";
            if (!p.relations.empty()) {
                os << "relations = [";
                for (std::size_t i = 0; i < p.relations.size(); ++i) {
                    Combo c;
                    for (const auto& t : p.relations[i]) c = combo_add(c, Combo{{t.word, t.coeff}}, f.one());
                    os << (i ? ", " : "") << quoted(format_combo(f, c, gens));
                }
                os << "]\n";
            }
            break;
        }
        case Presentation::Kind::Univariate: {
            os << "[univariate]\nmodulus = [";
            for (std::size_t i = 0; i < p.modulus.size(); ++i) os << (i ? ", " : "") << scalar_literal(p.modulus[i]);
            os << "]\n";
            break;
        }
        case Presentation::Kind::Table: {
            const std::size_t n = p.table_dim;
            os << "[table]\ndim = " << n << "\nlabels = [";
            for (std::size_t i = 0; i < n; ++i) os << (i ? ", " : "") << quoted(p.table_labels[i]);
            os << "]\nproducts = [\n";
            auto vec_text = [&](const Vec& v) {
                Combo c;
                for (std::size_t i = 0; i < v.size(); ++i)
                    if (!v[i].is_zero()) c.emplace(Word{i}, v[i]);
                return quoted(format_combo(f, c, p.table_labels));
            };
            for (std::size_t i = 0; i < n; ++i) {
                os << "  [";
                for (std::size_t j = 0; j < n; ++j) os << (j ? ", " : "") << vec_text(p.table[i * n + j]);
                os << "],\n";
            }
            os << "]\n";
            if (p.table_unit) os << "unit = " << vec_text(*p.table_unit) << "\n";
            break;
        }
    }
    return os.str();
}

std::string format_complex_section(const std::string& name, const ProjComplex& x, bool over_large) {
    std::ostringstream os;
    os << "[complex." << name << "]\n";
    if (over_large) os << "over = \"K\"\n";
    if (x.empty()) return os.str();
    const Algebra& a = x.algebra();
    for (int i = x.lo(); i <= x.hi(); ++i) {
        os << "deg" << i << " = [";
        const auto& c = x.components(i);
        for (std::size_t k = 0; k < c.size(); ++k) os << (k ? ", " : "") << quoted(a.proj(c[k]).name);
        os << "]\n";
    }
    for (int i = x.lo(); i < x.hi(); ++i) {
        const AMatrix d = x.differential(i);
        if (d.rows == 0 || d.cols == 0) continue;
        os << "d" << i << " = [";
        for (std::size_t t = 0; t < d.rows; ++t) {
            os << (t ? ", " : "") << "[";
            for (std::size_t s = 0; s < d.cols; ++s) os << (s ? ", " : "") << quoted(a.format_element(d(t, s)));
            os << "]";
        }
        os << "]\n";
    }
    return os.str();
}

}  // namespace drt::spec

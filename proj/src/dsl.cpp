#include "parametrix/dsl.hpp"

#include <cctype>
#include <sstream>

namespace parametrix {

namespace {

enum class Tok { End, Ident, Int, Plus, Minus, Star, Slash, Caret, LParen, RParen, LBrack, RBrack, LBrace, RBrace, Comma, Semi, Eq };

struct Token {
    Tok kind;
    std::string text;
    long value = 0;
    int line = 1, col = 1;
};

struct Lexer {
    const std::string &src;
    size_t pos = 0;
    int line = 1, col = 1;

    explicit Lexer(const std::string &s) : src(s) {}

    void advance(size_t k = 1) {
        for (size_t i = 0; i < k && pos < src.size(); ++i, ++pos) {
            if (src[pos] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    }

    Token next() {
        while (pos < src.size()) {
            char c = src[pos];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
                continue;
            }
            if (c == '/' && pos + 1 < src.size() && src[pos + 1] == '/') {
                while (pos < src.size() && src[pos] != '\n') advance();
                continue;
            }
            break;
        }
        Token t;
        t.line = line;
        t.col = col;
        if (pos >= src.size()) {
            t.kind = Tok::End;
            return t;
        }
        char c = src[pos];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos;
            while (pos < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_' ||
                    src[pos] == '.'))
                advance();
            t.kind = Tok::Ident;
            t.text = src.substr(start, pos - start);
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos;
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) advance();
            t.kind = Tok::Int;
            t.text = src.substr(start, pos - start);
            t.value = std::stol(t.text);
            return t;
        }
        advance();
        switch (c) {
            case '+': t.kind = Tok::Plus; return t;
            case '-': t.kind = Tok::Minus; return t;
            case '*': t.kind = Tok::Star; return t;
            case '/': t.kind = Tok::Slash; return t;
            case '^': t.kind = Tok::Caret; return t;
            case '(': t.kind = Tok::LParen; return t;
            case ')': t.kind = Tok::RParen; return t;
            case '[': t.kind = Tok::LBrack; return t;
            case ']': t.kind = Tok::RBrack; return t;
            case '{': t.kind = Tok::LBrace; return t;
            case '}': t.kind = Tok::RBrace; return t;
            case ',': t.kind = Tok::Comma; return t;
            case ';': t.kind = Tok::Semi; return t;
            case '=': t.kind = Tok::Eq; return t;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", t.line, t.col);
    }
};

// Values in expressions: a coefficient, a scalar operator, or a linear jet
// expression in the unknowns. Operators act on everything to their right.
struct Value {
    enum class Kind { Coef, Op, Jet } kind;
    RatFunc coef;
    DiffOp op;
    JetExpr jet;

    static Value from_coef(RatFunc f) { return {Kind::Coef, std::move(f), {}, {}}; }
    static Value from_op(DiffOp p) { return {Kind::Op, {}, std::move(p), {}}; }
    static Value from_jet(JetExpr e) { return {Kind::Jet, {}, {}, std::move(e)}; }
};

struct ExprParser {
    Lexer lex;
    Token cur;
    CtxPtr ctx;
    const std::vector<std::string> *deps; // null = coefficient-only mode
    bool allow_ops;

    ExprParser(const std::string &text, CtxPtr c, const std::vector<std::string> *d, bool ops)
      : lex(text), ctx(std::move(c)), deps(d), allow_ops(ops) {
        cur = lex.next();
    }

    [[noreturn]] void fail(const std::string &msg) { throw ParseError(msg, cur.line, cur.col); }

    void eat(Tok k, const char *what) {
        if (cur.kind != k) fail(std::string("expected ") + what);
        cur = lex.next();
    }

    int dep_index(const std::string &name) const {
        if (!deps) return -1;
        for (size_t i = 0; i < deps->size(); ++i)
            if ((*deps)[i] == name) return static_cast<int>(i);
        return -1;
    }

    // is the identifier a derivation symbol d1..dn?
    int d_index(const std::string &name) const {
        if (name.size() < 2 || name[0] != 'd') return -1;
        for (size_t i = 1; i < name.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(name[i]))) return -1;
        int idx = std::stoi(name.substr(1));
        if (idx < 1 || idx > ctx->nvars()) return -1;
        return idx - 1;
    }

    Value parse_expression() {
        Value v = parse_term();
        while (cur.kind == Tok::Plus || cur.kind == Tok::Minus) {
            bool minus = cur.kind == Tok::Minus;
            cur = lex.next();
            Value w = parse_term();
            v = add(v, minus ? negate(w) : w);
        }
        return v;
    }

    Value negate(const Value &v) {
        switch (v.kind) {
            case Value::Kind::Coef: return Value::from_coef(-v.coef);
            case Value::Kind::Op: return Value::from_op(-v.op);
            case Value::Kind::Jet: return Value::from_jet(v.jet.scale(RatFunc(ctx, mpq_class(-1))));
        }
        fail("bad value");
    }

    Value add(const Value &a, const Value &b) {
        if (a.kind == Value::Kind::Jet || b.kind == Value::Kind::Jet) {
            if (a.kind != b.kind) fail("cannot add an unknown-free term to a jet expression");
            return Value::from_jet(a.jet + b.jet);
        }
        if (a.kind == Value::Kind::Op || b.kind == Value::Kind::Op)
            return Value::from_op(as_op(a) + as_op(b));
        return Value::from_coef(a.coef + b.coef);
    }

    DiffOp as_op(const Value &v) {
        if (v.kind == Value::Kind::Op) return v.op;
        if (v.kind == Value::Kind::Coef) return DiffOp(ctx, v.coef);
        fail("jet expression used as an operator");
    }

    Value mul(const Value &a, const Value &b) {
        if (a.kind == Value::Kind::Jet) fail("nonlinear term: jet expression on the left of *");
        if (b.kind == Value::Kind::Jet) {
            if (a.kind == Value::Kind::Coef) return Value::from_jet(b.jet.scale(a.coef));
            // apply the operator to the jet expression
            JetExpr out(ctx);
            for (auto &[key, c] : b.jet.terms()) {
                DiffOp applied = a.op * DiffOp(ctx, c);
                for (auto &[mu, cc] : applied.terms()) out.add_term({key.comp, mu * key.mu}, cc);
            }
            return Value::from_jet(out);
        }
        if (a.kind == Value::Kind::Coef && b.kind == Value::Kind::Coef)
            return Value::from_coef(a.coef * b.coef);
        if (a.kind == Value::Kind::Coef) return Value::from_op(b.op.scale(a.coef));
        return Value::from_op(a.op * as_op(b));
    }

    Value divide(const Value &a, const Value &b) {
        if (b.kind != Value::Kind::Coef) fail("division only by coefficient expressions");
        if (b.coef.is_zero()) fail("division by zero");
        if (a.kind == Value::Kind::Coef) return Value::from_coef(a.coef / b.coef);
        if (a.kind == Value::Kind::Op) return Value::from_op(a.op * DiffOp(ctx, b.coef.inv()));
        return Value::from_jet(a.jet.scale(b.coef.inv()));
    }

    Value parse_term() {
        Value v = parse_power();
        while (cur.kind == Tok::Star || cur.kind == Tok::Slash) {
            bool div = cur.kind == Tok::Slash;
            cur = lex.next();
            Value w = parse_power();
            v = div ? divide(v, w) : mul(v, w);
        }
        return v;
    }

    Value parse_power() {
        Value v = parse_atom();
        if (cur.kind == Tok::Caret) {
            cur = lex.next();
            bool neg = false;
            if (cur.kind == Tok::Minus) {
                neg = true;
                cur = lex.next();
            }
            if (cur.kind != Tok::Int) fail("exponent must be an integer");
            long e = cur.value;
            cur = lex.next();
            if (v.kind == Value::Kind::Jet) fail("cannot raise a jet expression to a power");
            if (v.kind == Value::Kind::Op) {
                if (neg) fail("negative operator powers are not defined");
                DiffOp r = DiffOp::one(ctx);
                for (long i = 0; i < e; ++i) r = r * v.op;
                return Value::from_op(r);
            }
            RatFunc r(ctx, mpq_class(1));
            for (long i = 0; i < e; ++i) r = r * v.coef;
            if (neg) r = r.inv();
            return Value::from_coef(r);
        }
        return v;
    }

    Value parse_atom() {
        if (cur.kind == Tok::Minus) {
            cur = lex.next();
            return negate(parse_atom());
        }
        if (cur.kind == Tok::Int) {
            Value v = Value::from_coef(RatFunc(ctx, mpq_class(cur.value)));
            cur = lex.next();
            return v;
        }
        if (cur.kind == Tok::LParen) {
            cur = lex.next();
            Value v = parse_expression();
            eat(Tok::RParen, "')'");
            return v;
        }
        if (cur.kind != Tok::Ident) fail("expected an identifier, number or '('");
        std::string name = cur.text;
        int tline = cur.line, tcol = cur.col;
        cur = lex.next();
        int dep = dep_index(name);
        if (dep >= 0) {
            Mono mu(ctx->nvars());
            if (cur.kind == Tok::LBrack) {
                cur = lex.next();
                while (true) {
                    if (cur.kind != Tok::Int) fail("jet index must be an axis number");
                    long axis = cur.value;
                    if (axis < 1 || axis > ctx->nvars())
                        throw ParseError("jet axis out of range", cur.line, cur.col);
                    mu.e[axis - 1] += 1;
                    cur = lex.next();
                    if (cur.kind == Tok::Comma) {
                        cur = lex.next();
                        continue;
                    }
                    break;
                }
                eat(Tok::RBrack, "']'");
            }
            return Value::from_jet(JetExpr::jet(ctx, dep, mu));
        }
        if (allow_ops) {
            int di = d_index(name);
            if (di >= 0) return Value::from_op(DiffOp::d(ctx, di));
        }
        int cv = ctx->find_coeff_var(name);
        if (cv >= 0) {
            if (cv < ctx->nvars()) return Value::from_coef(RatFunc::var(ctx, cv));
            return Value::from_coef(RatFunc::param(ctx, name));
        }
        throw ParseError("undeclared symbol '" + name + "'", tline, tcol);
    }
};

} // namespace

RatFunc parse_ratfunc(CtxPtr ctx, const std::string &text) {
    ExprParser p(text, ctx, nullptr, false);
    Value v = p.parse_expression();
    if (p.cur.kind != Tok::End) p.fail("trailing input after expression");
    if (v.kind != Value::Kind::Coef) p.fail("expected a coefficient expression");
    return v.coef;
}

DiffOp parse_diffop(CtxPtr ctx, const std::string &text) {
    ExprParser p(text, ctx, nullptr, true);
    Value v = p.parse_expression();
    if (p.cur.kind != Tok::End) p.fail("trailing input after expression");
    if (v.kind == Value::Kind::Jet) p.fail("expected an operator, found a jet expression");
    return v.kind == Value::Kind::Op ? v.op : DiffOp(ctx, v.coef);
}

SystemDoc parse_system(const std::string &text) {
    Lexer lex(text);
    Token cur = lex.next();
    auto expect_ident = [&](const char *what) {
        if (cur.kind != Tok::Ident) throw ParseError(std::string("expected ") + what, cur.line, cur.col);
        std::string s = cur.text;
        cur = lex.next();
        return s;
    };
    auto eat = [&](Tok k, const char *what) {
        if (cur.kind != k) throw ParseError(std::string("expected ") + what, cur.line, cur.col);
        cur = lex.next();
    };
    if (cur.kind != Tok::Ident || cur.text != "system")
        throw ParseError("input must start with 'system'", cur.line, cur.col);
    cur = lex.next();
    SystemDoc doc;
    doc.name = expect_ident("system name");
    eat(Tok::LBrace, "'{'");

    std::vector<std::string> indep, params;
    std::vector<std::pair<std::string, std::pair<int, int>>> raw_eqs; // text spans
    std::vector<std::string> eq_texts;
    while (cur.kind == Tok::Ident && (cur.text == "indep" || cur.text == "param" || cur.text == "dep")) {
        std::string section = cur.text;
        cur = lex.next();
        while (true) {
            std::string nm = expect_ident("name");
            if (section == "indep") indep.push_back(nm);
            else if (section == "param") params.push_back(nm);
            else doc.deps.push_back(nm);
            if (cur.kind == Tok::Comma) {
                cur = lex.next();
                continue;
            }
            break;
        }
        eat(Tok::Semi, "';'");
    }
    if (indep.empty()) throw ParseError("no independent variables declared", cur.line, cur.col);
    if (doc.deps.empty()) throw ParseError("no unknowns declared", cur.line, cur.col);
    for (size_t i = 0; i < indep.size(); ++i) {
        std::string want = "x" + std::to_string(i + 1);
        if (indep[i] != want)
            throw ParseError("independent variables must be named x1..xn in order", 0, 0);
    }
    doc.ctx = make_context(static_cast<int>(indep.size()), params);
    // equations: re-lex each 'eq ... ;' span with the expression parser
    while (cur.kind == Tok::Ident && cur.text == "eq") {
        int start = static_cast<int>(lex.pos);
        // scan forward to the matching ';'
        int depth = 0;
        size_t p = lex.pos;
        while (p < text.size() && (text[p] != ';' || depth > 0)) {
            if (text[p] == '(' || text[p] == '[') ++depth;
            if (text[p] == ')' || text[p] == ']') --depth;
            ++p;
        }
        if (p >= text.size()) throw ParseError("equation is missing ';'", cur.line, cur.col);
        std::string body = text.substr(start, p - start);
        // split on a top-level '='
        std::string lhs = body, rhs;
        {
            int d2 = 0;
            for (size_t i = 0; i < body.size(); ++i) {
                if (body[i] == '(' || body[i] == '[') ++d2;
                if (body[i] == ')' || body[i] == ']') --d2;
                if (body[i] == '=' && d2 == 0) {
                    lhs = body.substr(0, i);
                    rhs = body.substr(i + 1);
                    break;
                }
            }
        }
        auto eval = [&](const std::string &s) {
            ExprParser ep(s, doc.ctx, &doc.deps, true);
            Value v = ep.parse_expression();
            if (ep.cur.kind != Tok::End) ep.fail("trailing input in equation");
            if (v.kind == Value::Kind::Op) ep.fail("equation contains no unknown");
            if (v.kind == Value::Kind::Coef) {
                if (!v.coef.is_zero()) ep.fail("equation contains no unknown");
                return JetExpr(doc.ctx);
            }
            return v.jet;
        };
        JetExpr e = eval(lhs);
        if (!rhs.empty()) e = e - eval(rhs);
        doc.equations.push_back(e);
        // resume the statement lexer after the ';'
        while (lex.pos <= p) lex.advance();
        cur = lex.next();
    }
    eat(Tok::RBrace, "'}'");
    if (cur.kind != Tok::End) throw ParseError("trailing input after '}'", cur.line, cur.col);
    return doc;
}

OpMatrix SystemDoc::matrix() const {
    OpMatrix A(ctx, static_cast<int>(equations.size()), static_cast<int>(deps.size()));
    for (size_t i = 0; i < equations.size(); ++i)
        A.set_row(static_cast<int>(i), jetexpr_to_row(ctx, equations[i], static_cast<int>(deps.size())));
    A.col_labels = deps;
    for (size_t i = 0; i < equations.size(); ++i) A.row_labels[i] = "eq" + std::to_string(i + 1);
    return A;
}

std::string SystemDoc::print() const {
    std::ostringstream os;
    os << "system " << name << " {\n  indep ";
    for (int i = 0; i < ctx->nvars(); ++i) os << (i ? ", " : "") << "x" << (i + 1);
    os << ";\n";
    if (!ctx->params().empty()) {
        os << "  param ";
        for (size_t i = 0; i < ctx->params().size(); ++i) os << (i ? ", " : "") << ctx->params()[i];
        os << ";\n";
    }
    os << "  dep ";
    for (size_t i = 0; i < deps.size(); ++i) os << (i ? ", " : "") << deps[i];
    os << ";\n";
    for (auto &e : equations) os << "  eq " << e.str(deps) << ";\n";
    os << "}\n";
    return os.str();
}

SystemDoc doc_from_matrix(const std::string &name, const OpMatrix &A) {
    SystemDoc doc;
    doc.name = name;
    doc.ctx = A.ctx();
    doc.deps = A.col_labels;
    for (int i = 0; i < A.rows(); ++i) doc.equations.push_back(row_to_jetexpr(A.row(i)));
    // zero rows must keep their slot
    for (auto &e : doc.equations)
        if (e.is_zero()) e = JetExpr(doc.ctx);
    return doc;
}

} // namespace parametrix

#include "plumbing/templates.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "plumbing/error.hpp"

namespace plumbing {

namespace {

const std::set<std::string> kParamNames{"t", "tp", "n", "np", "m", "A"};
const std::set<std::string> kVarNames{"t", "tp", "n", "np", "m", "mA"};

[[noreturn]] void fail(int line, const std::string& msg) {
    throw Error("TemplateError", "line " + std::to_string(line) + ": " + msg);
}

class ExprParser {
public:
    ExprParser(std::string_view s, int line) : s_(s), line_(line) {}

    Expr parse() {
        Expr e = sum();
        skip();
        if (pos_ != s_.size()) fail(line_, "unexpected '" + std::string(s_.substr(pos_)) + "' in expression '" + std::string(s_) + "'");
        return e;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    Expr sum() {
        Expr e = product();
        while (true) {
            if (eat('+')) e = bin(Expr::Op::Add, std::move(e), product());
            else if (eat('-')) e = bin(Expr::Op::Sub, std::move(e), product());
            else return e;
        }
    }
    Expr product() {
        Expr e = unary();
        while (eat('*')) e = bin(Expr::Op::Mul, std::move(e), unary());
        return e;
    }
    Expr unary() {
        if (eat('-')) {
            Expr e;
            e.op = Expr::Op::Neg;
            e.kids.push_back(unary());
            return e;
        }
        return atom();
    }
    Expr atom() {
        skip();
        if (eat('(')) {
            Expr e = sum();
            if (!eat(')')) fail(line_, "missing ')' in expression '" + std::string(s_) + "'");
            return e;
        }
        Expr e;
        std::size_t start = pos_;
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            e.op = Expr::Op::Num;
            e.value = std::stoll(std::string(s_.substr(start, pos_ - start)));
            return e;
        }
        while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        std::string name(s_.substr(start, pos_ - start));
        if (name.empty()) fail(line_, "expected a number or variable in expression '" + std::string(s_) + "'");
        if (!kVarNames.count(name)) fail(line_, "unknown variable '" + name + "'");
        e.op = Expr::Op::Var;
        e.var = name;
        return e;
    }
    static Expr bin(Expr::Op op, Expr a, Expr b) {
        Expr e;
        e.op = op;
        e.kids.push_back(std::move(a));
        e.kids.push_back(std::move(b));
        return e;
    }

    std::string_view s_;
    int line_;
    std::size_t pos_ = 0;
};

Expr parse_expr(std::string_view s, int line) { return ExprParser(s, line).parse(); }

// Split on `sep` at bracket depth zero.
std::vector<std::string> split_top(std::string_view s, char sep) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if (depth == 0 && (sep == ' ' ? std::isspace(static_cast<unsigned char>(c)) != 0 : c == sep)) {
            if (sep != ' ' || !cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (sep != ' ' || !cur.empty()) out.push_back(cur);
    return out;
}

std::string trim(std::string s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool is_twig_token(const std::string& tok) {
    if (tok.empty()) return false;
    if (tok[0] == '[' || tok == "A") return true;
    auto paren = tok.find('(');
    if (paren == std::string::npos) return false;
    static const std::set<std::string> heads{"U", "L", "R", "rev", "adj", "under", "over"};
    return heads.count(tok.substr(0, paren)) > 0;
}

TwigItem parse_twig_item(const std::string& tok, int line) {
    TwigItem item;
    if (tok == "A") {
        item.kind = TwigItem::Kind::A;
        return item;
    }
    if (tok.front() == '[') {
        if (tok.back() != ']') fail(line, "unterminated twig '" + tok + "'");
        item.kind = TwigItem::Kind::List;
        std::string inner = trim(tok.substr(1, tok.size() - 2));
        if (!inner.empty())
            for (auto& part : split_top(inner, ',')) item.args.push_back(parse_expr(trim(part), line));
        return item;
    }
    auto paren = tok.find('(');
    if (tok.back() != ')') fail(line, "unterminated twig item '" + tok + "'");
    std::string head = tok.substr(0, paren);
    std::string inner = tok.substr(paren + 1, tok.size() - paren - 2);
    if (head == "U") {
        item.kind = TwigItem::Kind::U;
        item.args.push_back(parse_expr(inner, line));
        return item;
    }
    if (head == "L" || head == "R") {
        item.kind = head == "L" ? TwigItem::Kind::L : TwigItem::Kind::R;
        auto parts = split_top(inner, ';');
        if (parts.size() != 2) fail(line, "expected " + head + "(m;t) in '" + tok + "'");
        for (auto& p : parts) item.args.push_back(parse_expr(trim(p), line));
        return item;
    }
    if (head == "rev") item.kind = TwigItem::Kind::Rev;
    else if (head == "adj") item.kind = TwigItem::Kind::Adj;
    else if (head == "under") item.kind = TwigItem::Kind::Under;
    else item.kind = TwigItem::Kind::Over;
    std::string arg = trim(inner);
    if (!is_twig_token(arg)) fail(line, "expected a twig inside '" + tok + "'");
    item.inner.push_back(parse_twig_item(arg, line));
    return item;
}

bool is_identifier(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::vector<PathElement> parse_path(const std::vector<std::string>& toks, std::size_t from, int line) {
    std::vector<PathElement> out;
    for (std::size_t i = from; i < toks.size(); ++i) {
        PathElement el;
        if (is_twig_token(toks[i])) el.twig = parse_twig_item(toks[i], line);
        else if (is_identifier(toks[i])) el.name = toks[i];
        else fail(line, "bad path element '" + toks[i] + "'");
        out.push_back(std::move(el));
    }
    return out;
}

Requirement parse_requirement(const std::vector<std::string>& toks, int line) {
    if (toks.size() != 4 || toks[2] != ">=") fail(line, "expected '" + toks[0] + " <param> >= <int>'");
    if (!kParamNames.count(toks[1]) || toks[1] == "A") fail(line, "unknown parameter '" + toks[1] + "'");
    try {
        return {toks[1], std::stoll(toks[3])};
    } catch (const std::exception&) {
        fail(line, "bad integer '" + toks[3] + "'");
    }
}

void collect_vars(const Expr& e, std::set<std::string>& out) {
    if (e.op == Expr::Op::Var) out.insert(e.var);
    for (auto& k : e.kids) collect_vars(k, out);
}

void collect_vars(const TwigItem& t, std::set<std::string>& out, bool& uses_a) {
    if (t.kind == TwigItem::Kind::A) uses_a = true;
    for (auto& e : t.args) collect_vars(e, out);
    for (auto& i : t.inner) collect_vars(i, out, uses_a);
}

void check_body(const FamilyTemplate& f, const std::vector<Statement>& body) {
    for (auto& s : body) {
        std::set<std::string> vars;
        bool uses_a = false;
        collect_vars(s.expr, vars);
        for (auto& el : s.path)
            if (el.twig) collect_vars(*el.twig, vars, uses_a);
        if (uses_a && !f.uses("A")) fail(s.line, "twig A used but not declared in params");
        for (auto& v : vars) {
            std::string p = v == "mA" ? "A" : v;
            if (!f.uses(p)) fail(s.line, "variable '" + v + "' not declared in params");
        }
        check_body(f, s.body);
    }
}

std::string pad(int k) {
    std::string s = std::to_string(k);
    return std::string(s.size() < 3 ? 3 - s.size() : 0, '0') + s;
}

class Builder {
public:
    Builder(Env env, std::optional<Twig> a) : env_(std::move(env)), a_(std::move(a)) {}

    void run(const std::vector<Statement>& body, const std::vector<std::int64_t>& suffix) {
        for (auto& s : body) {
            switch (s.kind) {
            case Statement::Kind::Vertex: {
                std::string id = s.name + suffix_of(suffix, suffix.size());
                if (g_.find(id)) fail(s.line, "vertex '" + id + "' declared twice");
                g_.add_vertex(id, s.expr.eval(env_));
                break;
            }
            case Statement::Kind::Path: {
                int prev = -1;
                for (auto& el : s.path) {
                    if (el.name) {
                        int v = resolve(*el.name, suffix, s.line);
                        link(prev, v, s.line);
                        prev = v;
                    } else {
                        for (auto e : el.twig->eval(env_, a_)) {
                            int v = g_.add_vertex("v" + pad(++anon_), -e);
                            link(prev, v, s.line);
                            prev = v;
                        }
                    }
                }
                break;
            }
            case Statement::Kind::Repeat: {
                auto count = s.expr.eval(env_);
                if (count < 0) fail(s.line, "negative repeat count");
                for (std::int64_t k = 1; k <= count; ++k) {
                    auto inner = suffix;
                    inner.push_back(k);
                    run(s.body, inner);
                }
                break;
            }
            }
        }
    }

    WeightedDualGraph take() { return std::move(g_); }

private:
    static std::string suffix_of(const std::vector<std::int64_t>& s, std::size_t len) {
        std::string out;
        for (std::size_t i = 0; i < len; ++i) out += "_" + std::to_string(s[i]);
        return out;
    }
    int resolve(const std::string& name, const std::vector<std::int64_t>& suffix, int line) const {
        for (std::size_t len = suffix.size() + 1; len-- > 0;)
            if (auto v = g_.find(name + suffix_of(suffix, len))) return *v;
        fail(line, "unknown vertex '" + name + "'");
    }
    void link(int a, int b, int line) {
        if (a < 0) return;
        if (a == b || g_.adjacent(a, b)) fail(line, "repeated edge '" + g_.id(a) + " " + g_.id(b) + "'");
        g_.add_edge(a, b);
    }

    Env env_;
    std::optional<Twig> a_;
    WeightedDualGraph g_;
    int anon_ = 0;
};

} // namespace

std::int64_t Expr::eval(const Env& env) const {
    switch (op) {
    case Op::Num: return value;
    case Op::Var: {
        auto it = env.find(var);
        if (it == env.end()) throw Error("TemplateError", "variable '" + var + "' has no value");
        return it->second;
    }
    case Op::Add: return kids[0].eval(env) + kids[1].eval(env);
    case Op::Sub: return kids[0].eval(env) - kids[1].eval(env);
    case Op::Mul: return kids[0].eval(env) * kids[1].eval(env);
    case Op::Neg: return -kids[0].eval(env);
    }
    return 0;
}

Twig TwigItem::eval(const Env& env, const std::optional<Twig>& a) const {
    switch (kind) {
    case Kind::List: {
        Twig out;
        for (auto& e : args) out.push_back(e.eval(env));
        return out;
    }
    case Kind::U: return repeat2(args[0].eval(env));
    case Kind::L: return L(args[0].eval(env), args[1].eval(env));
    case Kind::R: return R(args[0].eval(env), args[1].eval(env));
    case Kind::A:
        if (!a) throw Error("BadParams", "twig A is required");
        return *a;
    case Kind::Rev: return transpose(inner[0].eval(env, a));
    case Kind::Adj: return adjoint(inner[0].eval(env, a));
    case Kind::Under: return underline(inner[0].eval(env, a));
    case Kind::Over: return overline(inner[0].eval(env, a));
    }
    return {};
}

bool FamilyTemplate::uses(std::string_view p) const {
    return std::find(params.begin(), params.end(), p) != params.end();
}

std::int64_t FamilyTemplate::minimum(std::string_view p, bool strict) const {
    std::int64_t lo = p == "m" ? 2 : (p == "n" || p == "np") ? 1 : 0;
    for (auto& r : required)
        if (r.var == p) lo = std::max(lo, r.min);
    if (strict)
        for (auto& r : strict_required)
            if (r.var == p) lo = std::max(lo, r.min);
    return lo;
}

std::string FamilyTemplate::describe(const FamilyParams& p) const {
    std::vector<std::string> parts;
    if (uses("t")) parts.push_back("t=" + std::to_string(p.t));
    if (uses("tp")) parts.push_back("t'=" + std::to_string(p.tp));
    if (uses("n")) parts.push_back("n=" + std::to_string(p.n));
    if (uses("np")) parts.push_back("n'=" + std::to_string(p.n));
    if (uses("m")) parts.push_back("m=" + std::to_string(p.m));
    if (uses("A")) parts.push_back("A=" + (p.a ? format_twig(*p.a) : std::string("?")));
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " " : "") + parts[i];
    return out.empty() ? "-" : out;
}

FamilyParams FamilyTemplate::normalized(const FamilyParams& p) const {
    FamilyParams q;
    if (uses("t")) q.t = p.t;
    if (uses("tp")) q.tp = p.tp;
    if (uses("n") || uses("np")) q.n = p.n;
    if (uses("m")) q.m = p.m;
    if (uses("A")) q.a = p.a;
    return q;
}

void FamilyTemplate::validate(const FamilyParams& p, bool strict) const {
    auto bad = [&](const std::string& what) {
        throw Error("BadParams", "family (" + std::to_string(id) + "): " + what);
    };
    if (uses("t") && p.t < 0) bad("t >= 0 required, got t=" + std::to_string(p.t));
    if (uses("tp") && p.tp < 0) bad("t' >= 0 required, got t'=" + std::to_string(p.tp));
    if (uses("m") && p.m < 2) bad("m >= 2 required, got m=" + std::to_string(p.m));
    std::string nname = uses("np") ? "n'" : "n";
    if ((uses("n") || uses("np")) && p.n < 1) bad(nname + " >= 1 required, got " + nname + "=" + std::to_string(p.n));
    auto value = [&](const std::string& v) {
        if (v == "t") return p.t;
        if (v == "tp") return p.tp;
        if (v == "m") return p.m;
        return p.n;
    };
    auto shown = [&](const std::string& v) { return v == "tp" ? std::string("t'") : v == "np" ? std::string("n'") : v; };
    for (auto& r : required)
        if (value(r.var) < r.min)
            bad(shown(r.var) + " >= " + std::to_string(r.min) + " required, got " + shown(r.var) + "=" + std::to_string(value(r.var)));
    if (strict)
        for (auto& r : strict_required)
            if (value(r.var) < r.min)
                bad(shown(r.var) + " >= " + std::to_string(r.min) + " required in strict mode, got " + shown(r.var) + "=" +
                    std::to_string(value(r.var)));
    if (uses("A")) {
        if (!p.a) bad("an admissible twig A is required");
        if (p.a->empty() || !admissible(*p.a)) bad("A must be a nonempty admissible twig, got " + format_twig(*p.a));
    }
}

Env FamilyTemplate::environment(const FamilyParams& p) const {
    Env env;
    if (uses("t")) env["t"] = p.t;
    if (uses("tp")) env["tp"] = p.tp;
    if (uses("n")) env["n"] = p.n;
    if (uses("np")) env["np"] = p.n;
    if (uses("m")) env["m"] = p.m;
    if (uses("A") && p.a) env["mA"] = m_A(*p.a);
    return env;
}

WeightedDualGraph FamilyTemplate::build(const FamilyParams& p) const {
    Builder b(environment(p), p.a);
    b.run(body, {});
    return b.take();
}

std::vector<FamilyTemplate> parse_templates(std::string_view text) {
    std::vector<FamilyTemplate> out;
    std::istringstream in{std::string(text)};
    std::string raw;
    int lineno = 0;
    bool header = false;
    FamilyTemplate* fam = nullptr;
    // Open statement lists: the family body first, then nested repeat bodies.
    std::vector<std::vector<Statement>*> stack;
    std::set<int> ids;

    while (std::getline(in, raw)) {
        ++lineno;
        if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
        auto toks = split_top(raw, ' ');
        if (toks.empty()) continue;
        if (!header) {
            if (trim(raw) != kTemplateHeader)
                fail(lineno, "expected header '" + std::string(kTemplateHeader) + "', got '" + trim(raw) + "'");
            header = true;
            continue;
        }
        const std::string& kw = toks[0];
        if (kw == "family") {
            if (fam) fail(lineno, "family inside family (missing 'end')");
            if (toks.size() != 3) fail(lineno, "expected 'family <id> <group>'");
            FamilyTemplate f;
            try {
                f.id = std::stoi(toks[1]);
            } catch (const std::exception&) {
                fail(lineno, "bad family id '" + toks[1] + "'");
            }
            if (f.id < 1) fail(lineno, "family id must be positive");
            if (!ids.insert(f.id).second) fail(lineno, "family " + toks[1] + " defined twice");
            f.group = toks[2];
            f.line = lineno;
            f.target_kind = "";
            out.push_back(std::move(f));
            fam = &out.back();
            stack = {&fam->body};
            continue;
        }
        if (!fam) fail(lineno, "statement '" + kw + "' outside a family");
        if (kw == "end") {
            stack.pop_back();
            if (stack.empty()) {
                if (fam->target_kind.empty()) fail(lineno, "family " + std::to_string(fam->id) + " has no target");
                check_body(*fam, fam->body);
                fam = nullptr;
            }
            continue;
        }
        bool top = stack.size() == 1;
        if (kw == "params") {
            if (!top) fail(lineno, "params inside repeat");
            for (std::size_t i = 1; i < toks.size(); ++i) {
                if (!kParamNames.count(toks[i])) fail(lineno, "unknown parameter '" + toks[i] + "'");
                fam->params.push_back(toks[i]);
            }
            if (fam->uses("n") && fam->uses("np")) fail(lineno, "n and np are exclusive");
        } else if (kw == "require" || kw == "strict") {
            if (!top) fail(lineno, kw + " inside repeat");
            auto r = parse_requirement(toks, lineno);
            if (!fam->uses(r.var)) fail(lineno, "parameter '" + r.var + "' not declared");
            (kw == "require" ? fam->required : fam->strict_required).push_back(r);
        } else if (kw == "target") {
            if (!top || toks.size() != 2) fail(lineno, "expected 'target P2|F0|F(<expr>)'");
            const std::string& t = toks[1];
            if (t == "P2") {
                fam->target_kind = "P2";
            } else if (t == "F0") {
                fam->target_kind = "F";
                fam->target_m = parse_expr("0", lineno);
            } else if (t.size() > 3 && t.rfind("F(", 0) == 0 && t.back() == ')') {
                fam->target_kind = "F";
                fam->target_m = parse_expr(t.substr(2, t.size() - 3), lineno);
                std::set<std::string> vars;
                collect_vars(fam->target_m, vars);
                for (auto& v : vars)
                    if (!fam->uses(v)) fail(lineno, "variable '" + v + "' not declared in params");
            } else {
                fail(lineno, "unknown target '" + t + "'");
            }
        } else if (kw == "vertex") {
            if (toks.size() < 3 || !is_identifier(toks[1])) fail(lineno, "expected 'vertex <name> <weight>'");
            Statement s;
            s.kind = Statement::Kind::Vertex;
            s.line = lineno;
            s.name = toks[1];
            std::string e;
            for (std::size_t i = 2; i < toks.size(); ++i) e += toks[i];
            s.expr = parse_expr(e, lineno);
            stack.back()->push_back(std::move(s));
        } else if (kw == "path") {
            if (toks.size() < 3) fail(lineno, "path needs at least two elements");
            Statement s;
            s.kind = Statement::Kind::Path;
            s.line = lineno;
            s.path = parse_path(toks, 1, lineno);
            stack.back()->push_back(std::move(s));
        } else if (kw == "fan") {
            if (toks.size() < 4 || !is_identifier(toks[1])) fail(lineno, "expected 'fan <center> <count> <twig items...>'");
            Statement arm;
            arm.kind = Statement::Kind::Path;
            arm.line = lineno;
            arm.path.push_back({toks[1], std::nullopt});
            for (auto& el : parse_path(toks, 3, lineno)) {
                if (!el.twig) fail(lineno, "fan arms take twig items only, got '" + *el.name + "'");
                arm.path.push_back(std::move(el));
            }
            Statement rep;
            rep.kind = Statement::Kind::Repeat;
            rep.line = lineno;
            rep.expr = parse_expr(toks[2], lineno);
            rep.body.push_back(std::move(arm));
            stack.back()->push_back(std::move(rep));
        } else if (kw == "repeat") {
            if (toks.size() < 2) fail(lineno, "expected 'repeat <count>'");
            Statement rep;
            rep.kind = Statement::Kind::Repeat;
            rep.line = lineno;
            std::string e;
            for (std::size_t i = 1; i < toks.size(); ++i) e += toks[i];
            rep.expr = parse_expr(e, lineno);
            stack.back()->push_back(std::move(rep));
            stack.push_back(&stack.back()->back().body);
        } else {
            fail(lineno, "unknown statement '" + kw + "'");
        }
    }
    if (!header) fail(lineno, "empty template file");
    if (fam) fail(lineno, "family " + std::to_string(fam->id) + " not closed with 'end'");
    return out;
}

} // namespace plumbing

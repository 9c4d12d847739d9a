#include "pdl/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <unordered_map>

namespace pdl {

namespace {

Formula make(FormulaNode&& n) {
    return std::make_shared<const FormulaNode>(std::move(n));
}

void check_ident(const std::string& s) {
    if (!is_identifier(s))
        throw Error("invalid variable name: '" + s + "'");
    if (s == "T" || s == "F")
        throw Error("'" + s + "' is a reserved constant, not a variable name");
}

} // namespace

bool is_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

Formula top() { return make({Kind::Top, {}, {}, {}, nullptr, nullptr}); }
Formula bot() { return make({Kind::Bot, {}, {}, {}, nullptr, nullptr}); }

Formula var(const std::string& name) {
    check_ident(name);
    return make({Kind::Var, name, {}, {}, nullptr, nullptr});
}

Formula negvar(const std::string& name) {
    check_ident(name);
    return make({Kind::NegVar, name, {}, {}, nullptr, nullptr});
}

Formula dep(std::vector<std::string> premise, std::vector<std::string> conclusion) {
    if (conclusion.empty())
        throw Error("dependence atom needs a non-empty conclusion");
    for (const auto& v : premise) check_ident(v);
    for (const auto& v : conclusion) check_ident(v);
    return make({Kind::Dep, {}, std::move(premise), std::move(conclusion), nullptr, nullptr});
}

Formula negdep(std::vector<std::string> premise, std::vector<std::string> conclusion) {
    Formula d = dep(std::move(premise), std::move(conclusion));
    FormulaNode n = *d;
    n.kind = Kind::NegDep;
    return make(std::move(n));
}

Formula conj(Formula l, Formula r) {
    if (!l || !r) throw Error("null operand");
    return make({Kind::And, {}, {}, {}, std::move(l), std::move(r)});
}

Formula disj(Formula l, Formula r) {
    if (!l || !r) throw Error("null operand");
    return make({Kind::Or, {}, {}, {}, std::move(l), std::move(r)});
}

bool structurally_equal(const Formula& a, const Formula& b) {
    if (a.get() == b.get()) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
    case Kind::Top:
    case Kind::Bot:
        return true;
    case Kind::Var:
    case Kind::NegVar:
        return a->name == b->name;
    case Kind::Dep:
    case Kind::NegDep:
        return a->premise == b->premise && a->conclusion == b->conclusion;
    case Kind::And:
    case Kind::Or:
        return structurally_equal(a->left, b->left) && structurally_equal(a->right, b->right);
    }
    return false;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct Token {
    enum Type { Ident, KwTop, KwBot, Amp, Pipe, Bang, LParen, RParen, Semi, Comma, End } type;
    std::string text;
    int line, col;
};

std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> toks;
    size_t pos = 0;
    int line = 1, col = 1;
    auto advance = [&] {
        if (s[pos] == '\n') { ++line; col = 1; } else { ++col; }
        ++pos;
    };
    while (true) {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
            advance();
        int tl = line, tc = col;
        if (pos >= s.size()) {
            toks.push_back({Token::End, "", tl, tc});
            return toks;
        }
        char c = s[pos];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string id;
            while (pos < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) {
                id += s[pos];
                advance();
            }
            Token::Type t = id == "T" ? Token::KwTop : id == "F" ? Token::KwBot : Token::Ident;
            toks.push_back({t, id, tl, tc});
            continue;
        }
        advance();
        switch (c) {
        case '&': toks.push_back({Token::Amp, "&", tl, tc}); break;
        case '|': toks.push_back({Token::Pipe, "|", tl, tc}); break;
        case '!': toks.push_back({Token::Bang, "!", tl, tc}); break;
        case '(': toks.push_back({Token::LParen, "(", tl, tc}); break;
        case ')': toks.push_back({Token::RParen, ")", tl, tc}); break;
        case ';': toks.push_back({Token::Semi, ";", tl, tc}); break;
        case ',': toks.push_back({Token::Comma, ",", tl, tc}); break;
        default:
            throw ParseError(std::string("unknown token '") + c + "'", tl, tc);
        }
    }
}

// Recursive descent over the token list. "dep" is a contextual keyword: it
// starts a dep atom only when immediately followed by '('.
class Parser {
public:
    explicit Parser(const std::string& s) : toks_(tokenize(s)) {}

    Formula formula() {
        Formula f = disj_rule();
        if (cur().type != Token::End) fail("end of input");
        return f;
    }

private:
    const Token& cur() const { return toks_[i_]; }
    const Token& peek() const { return toks_[std::min(i_ + 1, toks_.size() - 1)]; }
    void bump() { if (i_ + 1 < toks_.size()) ++i_; }

    [[noreturn]] void fail(const std::string& what) {
        throw ParseError("expected " + what + ", got '" +
                             (cur().type == Token::End ? "<end>" : cur().text) + "'",
                         cur().line, cur().col);
    }

    void expect(Token::Type t, const std::string& what) {
        if (cur().type != t) fail(what);
        bump();
    }

    Formula disj_rule() {
        Formula f = conj_rule();
        while (cur().type == Token::Pipe) {
            bump();
            f = disj(std::move(f), conj_rule());
        }
        return f;
    }

    Formula conj_rule() {
        Formula f = unit_rule();
        while (cur().type == Token::Amp) {
            bump();
            f = conj(std::move(f), unit_rule());
        }
        return f;
    }

    Formula unit_rule() {
        switch (cur().type) {
        case Token::KwTop: bump(); return top();
        case Token::KwBot: bump(); return bot();
        case Token::LParen: {
            bump();
            Formula f = disj_rule();
            expect(Token::RParen, "')'");
            return f;
        }
        case Token::Bang: {
            bump();
            if (cur().type != Token::Ident) fail("variable or dep atom after '!'");
            if (cur().text == "dep" && peek().type == Token::LParen) {
                auto [p, q] = dep_atom();
                return negdep(std::move(p), std::move(q));
            }
            std::string name = cur().text;
            bump();
            return negvar(name);
        }
        case Token::Ident: {
            if (cur().text == "dep" && peek().type == Token::LParen) {
                auto [p, q] = dep_atom();
                return dep(std::move(p), std::move(q));
            }
            std::string name = cur().text;
            bump();
            return var(name);
        }
        default:
            fail("formula");
        }
    }

    std::pair<std::vector<std::string>, std::vector<std::string>> dep_atom() {
        Token depTok = cur();
        bump(); // "dep"
        expect(Token::LParen, "'('");
        std::vector<std::string> premise, conclusion;
        if (cur().type == Token::Ident) premise = identlist();
        expect(Token::Semi, "';' in dep atom");
        if (cur().type != Token::Ident)
            throw ParseError("dep atom needs a non-empty conclusion", depTok.line, depTok.col);
        conclusion = identlist();
        expect(Token::RParen, "')'");
        return {std::move(premise), std::move(conclusion)};
    }

    std::vector<std::string> identlist() {
        std::vector<std::string> out;
        out.push_back(cur().text);
        bump();
        while (cur().type == Token::Comma) {
            bump();
            if (cur().type != Token::Ident) fail("identifier after ','");
            out.push_back(cur().text);
            bump();
        }
        return out;
    }

    std::vector<Token> toks_;
    size_t i_ = 0;
};

} // namespace

Formula parse(const std::string& text) {
    Parser p(text);
    return p.formula();
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

int precedence(Kind k) {
    switch (k) {
    case Kind::Or: return 0;
    case Kind::And: return 1;
    default: return 2;
    }
}

void join_names(std::ostringstream& os, const std::vector<std::string>& v) {
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << v[i];
    }
}

void render_rec(std::ostringstream& os, const Formula& f, int parent_prec, bool right_side) {
    int p = precedence(f->kind);
    // the parser folds chains to the left, so a right operand of equal
    // precedence must keep its parentheses
    bool parens = p < parent_prec || (right_side && p == parent_prec && p < 2);
    if (parens) os << '(';
    switch (f->kind) {
    case Kind::Top: os << 'T'; break;
    case Kind::Bot: os << 'F'; break;
    case Kind::Var: os << f->name; break;
    case Kind::NegVar: os << '!' << f->name; break;
    case Kind::NegDep: os << '!'; [[fallthrough]];
    case Kind::Dep:
        os << "dep(";
        join_names(os, f->premise);
        os << ';';
        join_names(os, f->conclusion);
        os << ')';
        break;
    case Kind::And:
        render_rec(os, f->left, 1, false);
        os << " & ";
        render_rec(os, f->right, 1, true);
        break;
    case Kind::Or:
        render_rec(os, f->left, 0, false);
        os << " | ";
        render_rec(os, f->right, 0, true);
        break;
    }
    if (parens) os << ')';
}

} // namespace

std::string render(const Formula& f) {
    if (!f) throw Error("null formula");
    std::ostringstream os;
    render_rec(os, f, 0, false);
    return os.str();
}

// ---------------------------------------------------------------------------
// Structure queries

OccurrenceList flatten(const Formula& f) {
    OccurrenceList out;
    struct Item { const FormulaNode* n; int parent; bool is_right; };
    std::vector<Item> stack{{f.get(), -1, false}};
    while (!stack.empty()) {
        auto [n, par, is_right] = stack.back();
        stack.pop_back();
        int id = out.size();
        out.node.push_back(n);
        out.left.push_back(-1);
        out.right.push_back(-1);
        out.parent.push_back(par);
        if (par >= 0) (is_right ? out.right : out.left)[par] = id;
        if (!n->is_leaf()) {
            // push right first so the left subtree gets consecutive pre-order ids
            stack.push_back({n->right.get(), id, true});
            stack.push_back({n->left.get(), id, false});
        }
    }
    return out;
}

std::vector<Formula> subformulas(const Formula& f) {
    std::vector<Formula> out;
    std::vector<Formula> stack{f};
    while (!stack.empty()) {
        Formula n = std::move(stack.back());
        stack.pop_back();
        if (!n->is_leaf()) {
            stack.push_back(n->right);
            stack.push_back(n->left);
        } else if (n->kind == Kind::Dep || n->kind == Kind::NegDep) {
            out.push_back(n);
            for (const auto& v : n->premise) out.push_back(var(v));
            for (const auto& v : n->conclusion) out.push_back(var(v));
            continue;
        }
        out.push_back(std::move(n));
    }
    return out;
}

std::vector<std::string> variables_of(const Formula& f) {
    std::set<std::string> vars;
    OccurrenceList occ = flatten(f);
    for (const FormulaNode* n : occ.node) {
        switch (n->kind) {
        case Kind::Var:
        case Kind::NegVar:
            vars.insert(n->name);
            break;
        case Kind::Dep:
        case Kind::NegDep:
            vars.insert(n->premise.begin(), n->premise.end());
            vars.insert(n->conclusion.begin(), n->conclusion.end());
            break;
        default:
            break;
        }
    }
    return {vars.begin(), vars.end()};
}

ParameterReport parameters(const Formula& f) {
    ParameterReport r;
    OccurrenceList occ = flatten(f);
    r.variable_count = static_cast<long long>(variables_of(f).size());
    std::vector<long long> depth(occ.size(), 0);
    for (int i = 0; i < occ.size(); ++i) {
        if (occ.parent[i] >= 0) depth[i] = depth[occ.parent[i]] + 1;
        const FormulaNode* n = occ.node[i];
        r.formula_size += 1;
        long long node_depth = depth[i];
        if (n->kind == Kind::Dep || n->kind == Kind::NegDep) {
            // premise/conclusion variables are occurrences below the atom
            r.formula_size += static_cast<long long>(n->premise.size() + n->conclusion.size());
            node_depth += 1;
            r.arity = std::max(r.arity, static_cast<long long>(n->premise.size()));
        }
        if (n->kind == Kind::Or) ++r.splits;
        r.formula_depth = std::max(r.formula_depth, node_depth);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Hash-consed circuit

namespace {

struct CircuitBuilder {
    Circuit c;
    std::unordered_map<std::string, int> ids;

    int intern(const std::string& key, Circuit::NodeKind kind, std::string label,
               std::vector<int> children, int premise_count = 0) {
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        int id = c.size();
        c.nodes.push_back({kind, std::move(label), std::move(children), premise_count});
        ids.emplace(key, id);
        return id;
    }

    int variable(const std::string& name) {
        return intern("v:" + name, Circuit::NodeKind::Var, name, {});
    }

    int dep_node(const FormulaNode* n) {
        std::string key = "d:";
        for (const auto& v : n->premise) key += v + ",";
        key += ";";
        for (const auto& v : n->conclusion) key += v + ",";
        std::vector<int> kids;
        for (const auto& v : n->premise) kids.push_back(variable(v));
        for (const auto& v : n->conclusion) kids.push_back(variable(v));
        std::ostringstream label;
        label << "dep(";
        join_names(label, n->premise);
        label << ';';
        join_names(label, n->conclusion);
        label << ')';
        return intern(key, Circuit::NodeKind::Dep, label.str(), std::move(kids),
                      static_cast<int>(n->premise.size()));
    }

    int build(const FormulaNode* n) {
        switch (n->kind) {
        case Kind::Top:
            return intern("T", Circuit::NodeKind::Top, "T", {});
        case Kind::Bot:
            return intern("F", Circuit::NodeKind::Bot, "F", {});
        case Kind::Var:
            return variable(n->name);
        case Kind::NegVar: {
            int child = variable(n->name);
            return intern("n:" + std::to_string(child), Circuit::NodeKind::Not, "!", {child});
        }
        case Kind::Dep:
            return dep_node(n);
        case Kind::NegDep: {
            int child = dep_node(n);
            return intern("n:" + std::to_string(child), Circuit::NodeKind::Not, "!", {child});
        }
        case Kind::And:
        case Kind::Or: {
            int l = build(n->left.get());
            int r = build(n->right.get());
            bool is_and = n->kind == Kind::And;
            std::string key = (is_and ? "a:" : "o:") + std::to_string(l) + "," + std::to_string(r);
            return intern(key, is_and ? Circuit::NodeKind::And : Circuit::NodeKind::Or,
                          is_and ? "&" : "|", {l, r});
        }
        }
        throw Error("bad formula node");
    }
};

} // namespace

Circuit hash_cons(const Formula& f) {
    if (!f) throw Error("null formula");
    CircuitBuilder b;
    b.c.root = b.build(f.get());
    return std::move(b.c);
}

long long circuit_occurrence_count(const Formula& f) {
    long long total = 0;
    OccurrenceList occ = flatten(f);
    for (const FormulaNode* n : occ.node) {
        switch (n->kind) {
        case Kind::Var:
        case Kind::Top:
        case Kind::Bot:
        case Kind::And:
        case Kind::Or:
            total += 1;
            break;
        case Kind::NegVar:
            total += 2;
            break;
        case Kind::Dep:
            total += 1 + static_cast<long long>(n->premise.size() + n->conclusion.size());
            break;
        case Kind::NegDep:
            total += 2 + static_cast<long long>(n->premise.size() + n->conclusion.size());
            break;
        }
    }
    return total;
}

} // namespace pdl

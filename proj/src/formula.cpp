#include "ms4lab/formula.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <set>
#include <unordered_set>

namespace ms4lab {

struct Formula::Node {
    Op op;
    std::string name;
    Formula a;
    Formula b;
    std::size_t hash = 0;
    std::size_t count = 1;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Formula Formula::var(std::string name) {
    auto n = std::make_shared<Node>();
    n->op = Op::Var;
    n->hash = mix(static_cast<std::size_t>(Op::Var), std::hash<std::string>{}(name));
    n->name = std::move(name);
    return Formula(std::move(n));
}

Formula Formula::top() {
    static const Formula t = [] {
        auto n = std::make_shared<Node>();
        n->op = Op::Top;
        n->hash = mix(static_cast<std::size_t>(Op::Top), 0);
        return Formula(std::move(n));
    }();
    return t;
}

Formula Formula::bot() {
    static const Formula t = [] {
        auto n = std::make_shared<Node>();
        n->op = Op::Bot;
        n->hash = mix(static_cast<std::size_t>(Op::Bot), 0);
        return Formula(std::move(n));
    }();
    return t;
}

namespace {

template <typename NodeT>
std::shared_ptr<NodeT> make_node(Op op, std::size_t ha, std::size_t hb, std::size_t count) {
    auto n = std::make_shared<NodeT>();
    n->op = op;
    n->hash = mix(mix(static_cast<std::size_t>(op) * 31 + 7, ha), hb);
    n->count = count;
    return n;
}

}  // namespace

Formula Formula::neg(Formula a) {
    auto n = make_node<Node>(Op::Not, a.hash(), 0, a.node_count() + 1);
    n->a = std::move(a);
    return Formula(std::move(n));
}

Formula Formula::conj(Formula a, Formula b) {
    auto n = make_node<Node>(Op::And, a.hash(), b.hash(), a.node_count() + b.node_count() + 1);
    n->a = std::move(a);
    n->b = std::move(b);
    return Formula(std::move(n));
}

Formula Formula::disj(Formula a, Formula b) {
    auto n = make_node<Node>(Op::Or, a.hash(), b.hash(), a.node_count() + b.node_count() + 1);
    n->a = std::move(a);
    n->b = std::move(b);
    return Formula(std::move(n));
}

Formula Formula::imp(Formula a, Formula b) {
    auto n = make_node<Node>(Op::Imp, a.hash(), b.hash(), a.node_count() + b.node_count() + 1);
    n->a = std::move(a);
    n->b = std::move(b);
    return Formula(std::move(n));
}

Formula Formula::dia(Formula a) {
    auto n = make_node<Node>(Op::Dia, a.hash(), 0, a.node_count() + 1);
    n->a = std::move(a);
    return Formula(std::move(n));
}

Formula Formula::ex(Formula a) {
    auto n = make_node<Node>(Op::Ex, a.hash(), 0, a.node_count() + 1);
    n->a = std::move(a);
    return Formula(std::move(n));
}

Formula Formula::box(Formula a) { return neg(dia(neg(std::move(a)))); }
Formula Formula::all(Formula a) { return neg(ex(neg(std::move(a)))); }
Formula Formula::bdia(Formula a) { return dia(ex(std::move(a))); }
Formula Formula::bbox(Formula a) { return neg(bdia(neg(std::move(a)))); }
Formula Formula::sdia(Formula a) { return disj(dia(a), ex(a)); }

Formula Formula::sdia_power(Formula a, int times) {
    for (int i = 0; i < times; ++i) a = sdia(a);
    return a;
}

Op Formula::op() const { return node_->op; }
const std::string& Formula::name() const { return node_->name; }
const Formula& Formula::left() const { return node_->a; }
const Formula& Formula::right() const { return node_->b; }
std::size_t Formula::hash() const { return node_->hash; }
std::size_t Formula::node_count() const { return node_->count; }

bool Formula::is_unary() const {
    const Op o = op();
    return o == Op::Not || o == Op::Dia || o == Op::Ex;
}

bool Formula::is_binary() const {
    const Op o = op();
    return o == Op::And || o == Op::Or || o == Op::Imp;
}

bool operator==(const Formula& x, const Formula& y) {
    if (x.node_ == y.node_) return true;
    if (x.hash() != y.hash() || x.op() != y.op() || x.node_count() != y.node_count()) return false;
    switch (x.op()) {
        case Op::Var: return x.name() == y.name();
        case Op::Top:
        case Op::Bot: return true;
        case Op::Not:
        case Op::Dia:
        case Op::Ex: return x.left() == y.left();
        default: return x.left() == y.left() && x.right() == y.right();
    }
}

// ---------------------------------------------------------------- parsing

namespace {

enum class Tok {
    End, Ident, True, False, LParen, RParen, Not, And, Or, Imp,
    Dia, Box, Ex, All, BDia, BBox, SDia
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

struct Symbol {
    std::string_view spelling;
    Tok kind;
};

// Longest spellings first where prefixes overlap.
constexpr std::array kSymbols{
    Symbol{"<#>", Tok::BDia},   Symbol{"[#]", Tok::BBox},   Symbol{"<+>", Tok::SDia},
    Symbol{"<>", Tok::Dia},     Symbol{"[]", Tok::Box},     Symbol{"->", Tok::Imp},
    Symbol{"~", Tok::Not},      Symbol{"&", Tok::And},      Symbol{"|", Tok::Or},
    Symbol{"(", Tok::LParen},   Symbol{")", Tok::RParen},
    Symbol{"¬", Tok::Not}, Symbol{"∧", Tok::And}, Symbol{"∨", Tok::Or},
    Symbol{"→", Tok::Imp}, Symbol{"⊤", Tok::True}, Symbol{"⊥", Tok::False},
    Symbol{"◊", Tok::Dia}, Symbol{"◇", Tok::Dia}, Symbol{"□", Tok::Box},
    Symbol{"∃", Tok::Ex},  Symbol{"∀", Tok::All}, Symbol{"⧫", Tok::BDia},
    Symbol{"■", Tok::BBox}, Symbol{"◆", Tok::SDia}, Symbol{"♢", Tok::SDia},
};

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const auto c = static_cast<unsigned char>(s[i]);
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        if (std::islower(c) || c == '_') {
            std::size_t j = i + 1;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            std::string word(s.substr(i, j - i));
            Tok kind = word == "true" ? Tok::True : word == "false" ? Tok::False : Tok::Ident;
            out.push_back({kind, std::move(word), i});
            i = j;
            continue;
        }
        if (c == 'E' || c == 'A') {
            out.push_back({c == 'E' ? Tok::Ex : Tok::All, std::string(1, s[i]), i});
            ++i;
            continue;
        }
        bool matched = false;
        for (const auto& sym : kSymbols) {
            if (s.substr(i, sym.spelling.size()) == sym.spelling) {
                out.push_back({sym.kind, std::string(sym.spelling), i});
                i += sym.spelling.size();
                matched = true;
                break;
            }
        }
        if (!matched) throw ParseError("unexpected character '" + std::string(1, s[i]) + "'", i);
    }
    out.push_back({Tok::End, "", s.size()});
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Formula run() {
        Formula f = implication();
        if (peek().kind != Tok::End) throw ParseError("trailing input '" + peek().text + "'", peek().pos);
        return f;
    }

private:
    const Token& peek() const { return toks_[at_]; }
    const Token& take() { return toks_[at_++]; }

    Formula implication() {
        Formula lhs = disjunction();
        if (peek().kind == Tok::Imp) {
            take();
            return Formula::imp(std::move(lhs), implication());
        }
        return lhs;
    }

    Formula disjunction() {
        Formula f = conjunction();
        while (peek().kind == Tok::Or) {
            take();
            f = Formula::disj(std::move(f), conjunction());
        }
        return f;
    }

    Formula conjunction() {
        Formula f = unary();
        while (peek().kind == Tok::And) {
            take();
            f = Formula::conj(std::move(f), unary());
        }
        return f;
    }

    Formula unary() {
        switch (peek().kind) {
            case Tok::Not: take(); return Formula::neg(unary());
            case Tok::Dia: take(); return Formula::dia(unary());
            case Tok::Box: take(); return Formula::box(unary());
            case Tok::Ex: take(); return Formula::ex(unary());
            case Tok::All: take(); return Formula::all(unary());
            case Tok::BDia: take(); return Formula::bdia(unary());
            case Tok::BBox: take(); return Formula::bbox(unary());
            case Tok::SDia: take(); return Formula::sdia(unary());
            default: return atom();
        }
    }

    Formula atom() {
        const Token& t = take();
        switch (t.kind) {
            case Tok::True: return Formula::top();
            case Tok::False: return Formula::bot();
            case Tok::Ident: return Formula::var(t.text);
            case Tok::LParen: {
                Formula f = implication();
                if (peek().kind != Tok::RParen) throw ParseError("expected ')'", peek().pos);
                take();
                return f;
            }
            case Tok::End: throw ParseError("unexpected end of input", t.pos);
            default: throw ParseError("unexpected token '" + t.text + "'", t.pos);
        }
    }

    std::vector<Token> toks_;
    std::size_t at_ = 0;
};

// ---------------------------------------------------------------- printing

void print_into(const Formula& f, std::string& out);

void print_operand(const Formula& f, std::string& out) {
    if (f.is_binary()) {
        out += '(';
        print_into(f, out);
        out += ')';
    } else {
        print_into(f, out);
    }
}

void print_prefix(std::string_view op, const Formula& arg, std::string& out) {
    out += op;
    // Letter operators need a separator before identifiers and other letters.
    if (op == "E" || op == "A") out += ' ';
    print_operand(arg, out);
}

void print_into(const Formula& f, std::string& out) {
    switch (f.op()) {
        case Op::Var: out += f.name(); return;
        case Op::Top: out += "true"; return;
        case Op::Bot: out += "false"; return;
        case Op::Not: {
            const Formula& c = f.left();
            if (c.op() == Op::Dia && c.left().op() == Op::Ex && c.left().left().op() == Op::Not)
                return print_prefix("[#]", c.left().left().left(), out);
            if (c.op() == Op::Dia && c.left().op() == Op::Not)
                return print_prefix("[]", c.left().left(), out);
            if (c.op() == Op::Ex && c.left().op() == Op::Not)
                return print_prefix("A", c.left().left(), out);
            return print_prefix("~", c, out);
        }
        case Op::Dia:
            if (f.left().op() == Op::Ex) return print_prefix("<#>", f.left().left(), out);
            return print_prefix("<>", f.left(), out);
        case Op::Ex: return print_prefix("E", f.left(), out);
        case Op::Or:
            if (f.left().op() == Op::Dia && f.right().op() == Op::Ex && f.left().left() == f.right().left())
                return print_prefix("<+>", f.left().left(), out);
            [[fallthrough]];
        case Op::And:
        case Op::Imp: {
            print_operand(f.left(), out);
            out += f.op() == Op::And ? " & " : f.op() == Op::Or ? " | " : " -> ";
            print_operand(f.right(), out);
            return;
        }
    }
}

}  // namespace

Formula parse(std::string_view text) { return Parser(tokenize(text)).run(); }

std::string print(const Formula& f) {
    std::string out;
    print_into(f, out);
    return out;
}

std::vector<std::string> variables(const Formula& f) {
    std::set<std::string> names;
    std::function<void(const Formula&)> walk = [&](const Formula& g) {
        if (g.op() == Op::Var) names.insert(g.name());
        if (g.is_unary() || g.is_binary()) walk(g.left());
        if (g.is_binary()) walk(g.right());
    };
    walk(f);
    return {names.begin(), names.end()};
}

std::vector<Formula> subterms(const Formula& f) {
    std::vector<Formula> out;
    std::unordered_set<Formula, FormulaHash> seen;
    std::function<void(const Formula&)> walk = [&](const Formula& g) {
        if (seen.count(g)) return;
        if (g.is_unary() || g.is_binary()) walk(g.left());
        if (g.is_binary()) walk(g.right());
        if (seen.insert(g).second) out.push_back(g);
    };
    walk(f);
    return out;
}

namespace {

template <typename Leaf>
Formula rebuild(const Formula& f, const Leaf& leaf, bool zero) {
    switch (f.op()) {
        case Op::Var: return leaf(f);
        case Op::Top:
        case Op::Bot: return f;
        case Op::Not: return Formula::neg(rebuild(f.left(), leaf, zero));
        case Op::Dia: {
            Formula c = rebuild(f.left(), leaf, zero);
            return zero ? Formula::bdia(std::move(c)) : Formula::dia(std::move(c));
        }
        case Op::Ex: return Formula::ex(rebuild(f.left(), leaf, zero));
        case Op::And: return Formula::conj(rebuild(f.left(), leaf, zero), rebuild(f.right(), leaf, zero));
        case Op::Or: return Formula::disj(rebuild(f.left(), leaf, zero), rebuild(f.right(), leaf, zero));
        case Op::Imp: return Formula::imp(rebuild(f.left(), leaf, zero), rebuild(f.right(), leaf, zero));
    }
    return f;
}

}  // namespace

Formula zero_transform(const Formula& f) {
    return rebuild(f, [](const Formula& v) { return v; }, true);
}

Formula substitute(const Formula& f, const std::map<std::string, Formula>& sub) {
    return rebuild(
        f,
        [&](const Formula& v) {
            auto it = sub.find(v.name());
            return it == sub.end() ? v : it->second;
        },
        false);
}

// ---------------------------------------------------------------- axioms

AxiomName parse_axiom_name(std::string_view text) {
    std::string s(text);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    using K = AxiomName::Kind;
    if (s == "ms4" || s == "ms4ax") return {K::MS4Ax, 0};
    if (s == "bar") return {K::Bar, 0};
    if (s == "mcas" || s == "m+cas" || s == "mcasplus") return {K::MCasPlus, 0};
    if (s == "grz") return {K::Grz, 0};
    if (s == "sc") return {K::Sc, 0};
    if (s == "ed") return {K::Ed, 0};

    auto number = [&](std::size_t from) {
        std::string_view digits = std::string_view(s).substr(from);
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit) || digits.size() > 4)
            throw std::invalid_argument("unknown axiom name '" + std::string(text) + "'");
        return std::stoi(std::string(digits));
    };
    if (s.rfind("p0_", 0) == 0) return {K::P0, number(3)};
    if (s.rfind("rp_", 0) == 0) return {K::Rp, number(3)};
    if (s.rfind("rp", 0) == 0) return {K::Rp, number(2)};
    if (s.rfind("p", 0) == 0) return {K::P, number(1)};
    throw std::invalid_argument("unknown axiom name '" + std::string(text) + "'");
}

std::string to_string(const AxiomName& a) {
    using K = AxiomName::Kind;
    switch (a.kind) {
        case K::MS4Ax: return "MS4";
        case K::Bar: return "bar";
        case K::MCasPlus: return "M+Cas";
        case K::Grz: return "grz";
        case K::Sc: return "sc";
        case K::Ed: return "ed";
        case K::P: return "P" + std::to_string(a.index);
        case K::P0: return "P0_" + std::to_string(a.index);
        case K::Rp: return "rp" + std::to_string(a.index);
    }
    return "?";
}

namespace {

Formula depth_formula(int n) {
    using F = Formula;
    F q = F::var("q1");
    F acc = F::imp(F::dia(F::box(q)), F::box(q));
    for (int k = 2; k <= n; ++k) {
        F qk = F::var("q" + std::to_string(k));
        acc = F::imp(F::dia(F::conj(F::box(qk), F::neg(acc))), F::box(qk));
    }
    return acc;
}

Formula reducible_path_formula(int m) {
    using F = Formula;
    auto p = [](int i) { return F::var("p" + std::to_string(i)); };
    F chain = F::sdia(p(m + 1));
    for (int i = m; i >= 1; --i) chain = F::sdia(F::conj(p(i), chain));
    F antecedent = F::conj(p(0), chain);

    std::vector<F> disjuncts;
    for (int i = 0; i <= m + 1; ++i)
        for (int j = i + 1; j <= m + 1; ++j) disjuncts.push_back(F::sdia_power(F::conj(p(i), p(j)), i));
    for (int i = 0; i <= m; ++i)
        for (int j = i + 1; j <= m; ++j)
            disjuncts.push_back(F::sdia_power(F::conj(p(i), F::sdia(p(j + 1))), i));
    F consequent = disjuncts.front();
    for (std::size_t k = 1; k < disjuncts.size(); ++k) consequent = F::disj(consequent, disjuncts[k]);
    return F::imp(antecedent, consequent);
}

}  // namespace

Formula build_axiom(const AxiomName& a) {
    using F = Formula;
    using K = AxiomName::Kind;
    const F p = F::var("p");
    const F q = F::var("q");
    switch (a.kind) {
        case K::MS4Ax: return F::imp(F::ex(F::dia(p)), F::dia(F::ex(p)));
        case K::Bar: return F::imp(F::dia(F::ex(p)), F::ex(F::dia(p)));
        case K::MCasPlus: {
            F inner = F::imp(F::box(F::imp(F::box(p), F::bbox(p))), F::bbox(p));
            return F::imp(F::bbox(inner), F::bbox(p));
        }
        case K::Grz: return F::imp(F::box(F::imp(F::box(F::imp(p, F::box(p))), p)), p);
        case K::Sc: return F::disj(F::box(F::imp(F::box(p), q)), F::box(F::imp(F::box(q), p)));
        case K::Ed: return F::imp(F::ex(p), F::dia(p));
        case K::P:
        case K::P0:
        case K::Rp:
            if (a.index < 1)
                throw std::invalid_argument("axiom index must be positive in " + to_string(a));
            if (a.kind == K::P) return depth_formula(a.index);
            if (a.kind == K::P0) return zero_transform(depth_formula(a.index));
            return reducible_path_formula(a.index);
    }
    throw std::invalid_argument("unknown axiom");
}

}  // namespace ms4lab

#include "proofforge/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace proofforge {

struct TermNode {
    TermKind kind;
    std::string name;
    std::uint64_t value = 0;
    int small = 0;   // offset delta / triple flag / symbol
    std::optional<Term> a;
    std::optional<Term> b;
    std::size_t hash = 0;
};

struct FormulaNode {
    FormulaKind kind;
    Relation rel = Relation::Eq;
    std::optional<Term> lhs;
    std::optional<Term> rhs;
    std::optional<Formula> left;
    std::optional<Formula> right;
    std::string var;
    std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

char symbol_glyph(TapeSymbol s) {
    switch (s) {
        case TapeSymbol::Zero: return '0';
        case TapeSymbol::One: return '1';
        case TapeSymbol::Blank: return '_';
        case TapeSymbol::LeftEnd: return '>';
    }
    return '?';
}

std::optional<TapeSymbol> symbol_from_glyph(char c) {
    switch (c) {
        case '0': return TapeSymbol::Zero;
        case '1': return TapeSymbol::One;
        case '_': return TapeSymbol::Blank;
        case '>': return TapeSymbol::LeftEnd;
        default: return std::nullopt;
    }
}

// ---------------------------------------------------------------------------
// Term

Term Term::variable(std::string name) {
    auto n = std::make_shared<TermNode>();
    n->kind = TermKind::Variable;
    n->name = std::move(name);
    n->hash = mix(1, std::hash<std::string>{}(n->name));
    return Term(std::move(n));
}

Term Term::numeral(std::uint64_t value) {
    auto n = std::make_shared<TermNode>();
    n->kind = TermKind::Numeral;
    n->value = value;
    n->hash = mix(2, std::hash<std::uint64_t>{}(value));
    return Term(std::move(n));
}

Term Term::offset(Term base, int delta) {
    if (delta != 1 && delta != -1) throw std::invalid_argument("offset must be +1 or -1");
    if (base.kind() == TermKind::Numeral) {
        if (delta > 0) return numeral(base.value() + 1);
        if (base.value() > 0) return numeral(base.value() - 1);
    }
    auto n = std::make_shared<TermNode>();
    n->kind = TermKind::Offset;
    n->small = delta;
    n->hash = mix(mix(3, base.hash()), static_cast<std::size_t>(delta + 2));
    n->a = std::move(base);
    return Term(std::move(n));
}

Term Term::square(Term row, Term col) {
    auto n = std::make_shared<TermNode>();
    n->kind = TermKind::Square;
    n->hash = mix(mix(4, row.hash()), col.hash());
    n->a = std::move(row);
    n->b = std::move(col);
    return Term(std::move(n));
}

Term Term::triple(Term symbol, std::string state, int flag) {
    if (flag != 0 && flag != 1) throw std::invalid_argument("triple flag must be 0 or 1");
    auto n = std::make_shared<TermNode>();
    n->kind = TermKind::Triple;
    n->name = std::move(state);
    n->small = flag;
    n->hash = mix(mix(mix(5, symbol.hash()), std::hash<std::string>{}(n->name)), static_cast<std::size_t>(flag));
    n->a = std::move(symbol);
    return Term(std::move(n));
}

Term Term::projection(Term inner) {
    if (inner.kind() == TermKind::Triple) return inner.first();
    auto n = std::make_shared<TermNode>();
    n->kind = TermKind::Projection;
    n->hash = mix(6, inner.hash());
    n->a = std::move(inner);
    return Term(std::move(n));
}

Term Term::symbol(TapeSymbol s) {
    auto n = std::make_shared<TermNode>();
    n->kind = TermKind::Symbol;
    n->small = static_cast<int>(s);
    n->hash = mix(7, static_cast<std::size_t>(s));
    return Term(std::move(n));
}

TermKind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
std::uint64_t Term::value() const { return node_->value; }
int Term::delta() const { return node_->small; }
int Term::flag() const { return node_->small; }
TapeSymbol Term::tape_symbol() const { return static_cast<TapeSymbol>(node_->small); }
const Term& Term::first() const { return *node_->a; }
const Term& Term::second() const { return *node_->b; }
std::size_t Term::hash() const { return node_->hash; }

bool operator==(const Term& x, const Term& y) {
    if (x.node_ == y.node_) return true;
    const TermNode& a = *x.node_;
    const TermNode& b = *y.node_;
    if (a.hash != b.hash || a.kind != b.kind) return false;
    switch (a.kind) {
        case TermKind::Variable: return a.name == b.name;
        case TermKind::Numeral: return a.value == b.value;
        case TermKind::Offset: return a.small == b.small && *a.a == *b.a;
        case TermKind::Square: return *a.a == *b.a && *a.b == *b.b;
        case TermKind::Triple: return a.small == b.small && a.name == b.name && *a.a == *b.a;
        case TermKind::Projection: return *a.a == *b.a;
        case TermKind::Symbol: return a.small == b.small;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Formula

const char* relation_text(Relation r) {
    switch (r) {
        case Relation::Eq: return "=";
        case Relation::Ne: return "!=";
        case Relation::Lt: return "<";
        case Relation::Le: return "<=";
        case Relation::Gt: return ">";
        case Relation::Ge: return ">=";
    }
    return "?";
}

Formula::Formula() : Formula(compare(Term::numeral(0), Relation::Eq, Term::numeral(0))) {}

Formula Formula::compare(Term lhs, Relation rel, Term rhs) {
    auto n = std::make_shared<FormulaNode>();
    n->kind = FormulaKind::Compare;
    n->rel = rel;
    n->hash = mix(mix(mix(11, lhs.hash()), static_cast<std::size_t>(rel)), rhs.hash());
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return Formula(std::move(n));
}

Formula Formula::negation(Formula f) {
    auto n = std::make_shared<FormulaNode>();
    n->kind = FormulaKind::Not;
    n->hash = mix(12, f.hash());
    n->left = std::move(f);
    return Formula(std::move(n));
}

namespace {

std::shared_ptr<FormulaNode> binary_node(FormulaKind kind, Formula a, Formula b) {
    auto n = std::make_shared<FormulaNode>();
    n->kind = kind;
    n->hash = mix(mix(20 + static_cast<std::size_t>(kind), a.hash()), b.hash());
    n->left = std::move(a);
    n->right = std::move(b);
    return n;
}

std::shared_ptr<FormulaNode> quant_node(FormulaKind kind, std::string var, Formula body) {
    auto n = std::make_shared<FormulaNode>();
    n->kind = kind;
    n->hash = mix(mix(30 + static_cast<std::size_t>(kind), std::hash<std::string>{}(var)), body.hash());
    n->var = std::move(var);
    n->left = std::move(body);
    return n;
}

}  // namespace

Formula Formula::conjunction(Formula a, Formula b) {
    return Formula(binary_node(FormulaKind::And, std::move(a), std::move(b)));
}
Formula Formula::disjunction(Formula a, Formula b) {
    return Formula(binary_node(FormulaKind::Or, std::move(a), std::move(b)));
}
Formula Formula::implication(Formula a, Formula b) {
    return Formula(binary_node(FormulaKind::Implies, std::move(a), std::move(b)));
}
Formula Formula::forall(std::string var, Formula body) {
    return Formula(quant_node(FormulaKind::Forall, std::move(var), std::move(body)));
}
Formula Formula::exists(std::string var, Formula body) {
    return Formula(quant_node(FormulaKind::Exists, std::move(var), std::move(body)));
}

Formula Formula::square_is(Term row, Term col, Term symbol, const std::string& state, int flag) {
    return compare(Term::square(std::move(row), std::move(col)), Relation::Eq,
                   Term::triple(std::move(symbol), state, flag));
}

FormulaKind Formula::kind() const { return node_->kind; }
Relation Formula::relation() const { return node_->rel; }
const Term& Formula::lhs_term() const { return *node_->lhs; }
const Term& Formula::rhs_term() const { return *node_->rhs; }
const Formula& Formula::left() const { return *node_->left; }
const Formula& Formula::right() const { return *node_->right; }
const std::string& Formula::var() const { return node_->var; }
std::size_t Formula::hash() const { return node_->hash; }

bool Formula::is_binary() const {
    auto k = node_->kind;
    return k == FormulaKind::And || k == FormulaKind::Or || k == FormulaKind::Implies;
}
bool Formula::is_quantifier() const {
    return node_->kind == FormulaKind::Forall || node_->kind == FormulaKind::Exists;
}

bool operator==(const Formula& x, const Formula& y) {
    if (x.node_ == y.node_) return true;
    const FormulaNode& a = *x.node_;
    const FormulaNode& b = *y.node_;
    if (a.hash != b.hash || a.kind != b.kind) return false;
    switch (a.kind) {
        case FormulaKind::Compare: return a.rel == b.rel && *a.lhs == *b.lhs && *a.rhs == *b.rhs;
        case FormulaKind::Not: return *a.left == *b.left;
        case FormulaKind::And:
        case FormulaKind::Or:
        case FormulaKind::Implies: return *a.left == *b.left && *a.right == *b.right;
        case FormulaKind::Forall:
        case FormulaKind::Exists: return a.var == b.var && *a.left == *b.left;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Sequences

void FormulaSequence::append(const FormulaSequence& other) {
    items_.insert(items_.end(), other.items_.begin(), other.items_.end());
}

FormulaSequence seq_concat(const std::vector<FormulaSequence>& parts) {
    FormulaSequence out;
    for (const auto& p : parts) out.append(p);
    return out;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

// Appends tokens, inserting a single space only where a control word would
// otherwise run into a following letter, or a bound variable into a
// following letter or digit.
class Writer {
public:
    void control(std::string_view word) {
        out_ += word;
        after_ = After::Control;
    }
    void text(std::string_view s) {
        if (s.empty()) return;
        unsigned char c = static_cast<unsigned char>(s.front());
        if ((after_ == After::Control && std::isalpha(c)) || (after_ == After::Bound && std::isalnum(c))) out_ += ' ';
        out_ += s;
        after_ = After::Other;
    }
    void bound(std::string_view var) {
        text(var);
        after_ = After::Bound;
    }
    void ch(char c) { text(std::string_view(&c, 1)); }
    std::string take() { return std::move(out_); }

private:
    enum class After { Other, Control, Bound };
    std::string out_;
    After after_ = After::Other;
};

void write_term(Writer& w, const Term& t) {
    switch (t.kind()) {
        case TermKind::Variable: w.text(t.name()); break;
        case TermKind::Numeral: w.text(std::to_string(t.value())); break;
        case TermKind::Offset:
            write_term(w, t.first());
            w.text(t.delta() > 0 ? "+1" : "-1");
            break;
        case TermKind::Square:
            w.text("t_{");
            write_term(w, t.first());
            w.ch(',');
            write_term(w, t.second());
            w.ch('}');
            break;
        case TermKind::Triple:
            w.ch('(');
            write_term(w, t.first());
            w.ch(',');
            w.text(t.name());
            w.ch(',');
            w.ch(t.flag() ? '1' : '0');
            w.ch(')');
            break;
        case TermKind::Projection:
            w.control("\\pi_M");
            w.ch('(');
            write_term(w, t.first());
            w.ch(')');
            break;
        case TermKind::Symbol: w.ch(symbol_glyph(t.tape_symbol())); break;
    }
}

void write_formula(Writer& w, const Formula& f) {
    switch (f.kind()) {
        case FormulaKind::Compare:
            write_term(w, f.lhs_term());
            w.text(relation_text(f.relation()));
            write_term(w, f.rhs_term());
            break;
        case FormulaKind::Not:
            w.control("\\neg");
            write_formula(w, f.left());
            break;
        case FormulaKind::And:
        case FormulaKind::Or:
        case FormulaKind::Implies:
            w.ch('(');
            write_formula(w, f.left());
            w.control(f.kind() == FormulaKind::And ? "\\wedge" : f.kind() == FormulaKind::Or ? "\\vee" : "\\to");
            write_formula(w, f.right());
            w.ch(')');
            break;
        case FormulaKind::Forall:
        case FormulaKind::Exists:
            w.control(f.kind() == FormulaKind::Forall ? "\\forall" : "\\exists");
            w.bound(f.var());
            write_formula(w, f.body());
            break;
    }
}

}  // namespace

CanonicalText CanonicalText::of(std::string s) {
    CanonicalText c;
    c.ascii_len = proofforge::ascii_len(s);
    c.bin_len = 7 * c.ascii_len;
    c.text = std::move(s);
    return c;
}

std::size_t ascii_len(std::string_view s) { return s.size(); }

std::string to_text(const Formula& f) {
    Writer w;
    w.ch('$');
    write_formula(w, f);
    w.ch('$');
    return w.take();
}

std::string to_text(const Term& t) {
    Writer w;
    write_term(w, t);
    return w.take();
}

CanonicalText serialize(const Formula& f) { return CanonicalText::of(to_text(f)); }

std::size_t formula_ascii_len(const Formula& f) { return to_text(f).size(); }

std::size_t seq_ascii_len(const FormulaSequence& seq) {
    std::size_t total = 0;
    for (const auto& f : seq) total += formula_ascii_len(f);
    return total;
}

Order string_cmp(std::string_view x, std::string_view y) {
    if (x.size() != y.size()) return x.size() < y.size() ? Order::Precedes : Order::Follows;
    int c = x.compare(y);
    if (c == 0) return Order::Equal;
    return c < 0 ? Order::Precedes : Order::Follows;
}

std::string join_texts(const FormulaSequence& seq) {
    std::string out;
    for (const auto& f : seq) out += to_text(f);
    return out;
}

Order seq_cmp(const FormulaSequence& a, const FormulaSequence& b) {
    return string_cmp(join_texts(a), join_texts(b));
}

// ---------------------------------------------------------------------------
// Variables, substitution

bool term_has_var(const Term& t, std::string_view var) {
    switch (t.kind()) {
        case TermKind::Variable: return t.name() == var;
        case TermKind::Numeral:
        case TermKind::Symbol: return false;
        case TermKind::Offset:
        case TermKind::Projection:
        case TermKind::Triple: return term_has_var(t.first(), var);
        case TermKind::Square: return term_has_var(t.first(), var) || term_has_var(t.second(), var);
    }
    return false;
}

bool occurs_free(const Formula& f, std::string_view var) {
    switch (f.kind()) {
        case FormulaKind::Compare: return term_has_var(f.lhs_term(), var) || term_has_var(f.rhs_term(), var);
        case FormulaKind::Not: return occurs_free(f.left(), var);
        case FormulaKind::And:
        case FormulaKind::Or:
        case FormulaKind::Implies: return occurs_free(f.left(), var) || occurs_free(f.right(), var);
        case FormulaKind::Forall:
        case FormulaKind::Exists: return f.var() != var && occurs_free(f.body(), var);
    }
    return false;
}

namespace {

void collect_term_vars(const Term& t, std::vector<std::string>& out, const std::vector<std::string>& bound) {
    switch (t.kind()) {
        case TermKind::Variable:
            if (std::find(bound.begin(), bound.end(), t.name()) == bound.end() &&
                std::find(out.begin(), out.end(), t.name()) == out.end())
                out.push_back(t.name());
            break;
        case TermKind::Numeral:
        case TermKind::Symbol: break;
        case TermKind::Offset:
        case TermKind::Projection:
        case TermKind::Triple: collect_term_vars(t.first(), out, bound); break;
        case TermKind::Square:
            collect_term_vars(t.first(), out, bound);
            collect_term_vars(t.second(), out, bound);
            break;
    }
}

void collect_free(const Formula& f, std::vector<std::string>& out, std::vector<std::string>& bound) {
    switch (f.kind()) {
        case FormulaKind::Compare:
            collect_term_vars(f.lhs_term(), out, bound);
            collect_term_vars(f.rhs_term(), out, bound);
            break;
        case FormulaKind::Not: collect_free(f.left(), out, bound); break;
        case FormulaKind::And:
        case FormulaKind::Or:
        case FormulaKind::Implies:
            collect_free(f.left(), out, bound);
            collect_free(f.right(), out, bound);
            break;
        case FormulaKind::Forall:
        case FormulaKind::Exists:
            bound.push_back(f.var());
            collect_free(f.body(), out, bound);
            bound.pop_back();
            break;
    }
}

const Term* lookup(const std::vector<Binding>& b, const std::string& name) {
    for (const auto& x : b)
        if (x.var == name) return &x.value;
    return nullptr;
}

Term subst_term(const Term& t, const std::vector<Binding>& b) {
    switch (t.kind()) {
        case TermKind::Variable: {
            const Term* v = lookup(b, t.name());
            return v ? *v : t;
        }
        case TermKind::Numeral:
        case TermKind::Symbol: return t;
        case TermKind::Offset: return Term::offset(subst_term(t.first(), b), t.delta());
        case TermKind::Square: return Term::square(subst_term(t.first(), b), subst_term(t.second(), b));
        case TermKind::Triple: return Term::triple(subst_term(t.first(), b), t.name(), t.flag());
        case TermKind::Projection: return Term::projection(subst_term(t.first(), b));
    }
    return t;
}

Formula subst_formula(const Formula& f, const std::vector<Binding>& b) {
    if (b.empty()) return f;
    switch (f.kind()) {
        case FormulaKind::Compare:
            return Formula::compare(subst_term(f.lhs_term(), b), f.relation(), subst_term(f.rhs_term(), b));
        case FormulaKind::Not: return Formula::negation(subst_formula(f.left(), b));
        case FormulaKind::And: return Formula::conjunction(subst_formula(f.left(), b), subst_formula(f.right(), b));
        case FormulaKind::Or: return Formula::disjunction(subst_formula(f.left(), b), subst_formula(f.right(), b));
        case FormulaKind::Implies:
            return Formula::implication(subst_formula(f.left(), b), subst_formula(f.right(), b));
        case FormulaKind::Forall:
        case FormulaKind::Exists: {
            std::vector<Binding> inner;
            for (const auto& x : b)
                if (x.var != f.var()) inner.push_back(x);
            Formula body = subst_formula(f.body(), inner);
            return f.kind() == FormulaKind::Forall ? Formula::forall(f.var(), body) : Formula::exists(f.var(), body);
        }
    }
    return f;
}

bool subst_ok(const Formula& f, const std::string& var, const Term& value, std::vector<std::string>& bound) {
    switch (f.kind()) {
        case FormulaKind::Compare:
            if (term_has_var(f.lhs_term(), var) || term_has_var(f.rhs_term(), var)) {
                for (const auto& v : bound)
                    if (term_has_var(value, v)) return false;
            }
            return true;
        case FormulaKind::Not: return subst_ok(f.left(), var, value, bound);
        case FormulaKind::And:
        case FormulaKind::Or:
        case FormulaKind::Implies:
            return subst_ok(f.left(), var, value, bound) && subst_ok(f.right(), var, value, bound);
        case FormulaKind::Forall:
        case FormulaKind::Exists: {
            if (f.var() == var) return true;
            bound.push_back(f.var());
            bool ok = subst_ok(f.body(), var, value, bound);
            bound.pop_back();
            return ok;
        }
    }
    return true;
}

std::size_t count_term_numerals(const Term& t) {
    switch (t.kind()) {
        case TermKind::Numeral: return 1;
        case TermKind::Variable:
        case TermKind::Symbol: return 0;
        case TermKind::Offset:
        case TermKind::Projection:
        case TermKind::Triple: return count_term_numerals(t.first());
        case TermKind::Square: return count_term_numerals(t.first()) + count_term_numerals(t.second());
    }
    return 0;
}

void leaves(const Formula& f, std::vector<Formula>& out) {
    if (f.kind() == FormulaKind::And) {
        leaves(f.left(), out);
        leaves(f.right(), out);
    } else {
        out.push_back(f);
    }
}

}  // namespace

std::vector<std::string> free_variables(const Formula& f) {
    std::vector<std::string> out, bound;
    collect_free(f, out, bound);
    return out;
}

Formula substitute(const Formula& f, const std::vector<Binding>& bindings) { return subst_formula(f, bindings); }

Formula substitute(const Formula& f, const std::string& var, const Term& value) {
    return subst_formula(f, {Binding{var, value}});
}

bool substitutable(const Formula& f, const std::string& var, const Term& value) {
    std::vector<std::string> bound;
    return subst_ok(f, var, value, bound);
}

std::size_t count_numerals(const Formula& f) {
    switch (f.kind()) {
        case FormulaKind::Compare: return count_term_numerals(f.lhs_term()) + count_term_numerals(f.rhs_term());
        case FormulaKind::Not:
        case FormulaKind::Forall:
        case FormulaKind::Exists: return count_numerals(f.left());
        default: return count_numerals(f.left()) + count_numerals(f.right());
    }
}

std::vector<Formula> conjunct_leaves(const Formula& f) {
    std::vector<Formula> out;
    leaves(f, out);
    return out;
}

Formula fold_conjunction(const std::vector<Formula>& parts) {
    if (parts.empty()) throw std::invalid_argument("empty conjunction");
    Formula acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = Formula::conjunction(acc, parts[i]);
    return acc;
}

Formula fold_disjunction(const std::vector<Formula>& parts) {
    if (parts.empty()) throw std::invalid_argument("empty disjunction");
    Formula acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = Formula::disjunction(acc, parts[i]);
    return acc;
}

}  // namespace proofforge

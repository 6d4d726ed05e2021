#include "proofforge/formula.hpp"

#include <cctype>

namespace proofforge {

ParseError::ParseError(Kind kind, std::size_t offset, const std::string& msg)
    : std::runtime_error(msg + " at offset " + std::to_string(offset)), kind_(kind), offset_(offset) {}

namespace {

struct Failure {
    std::size_t offset;
    std::string message;
    bool fatal = false;
};

class Parser {
public:
    Parser(std::string_view text, bool allow_free) : s_(text), allow_free_(allow_free) {}

    Formula parse_top() {
        try {
            skip();
            bool dollar = eat('$');
            Formula f = formula();
            skip();
            if (dollar && !eat('$')) fail("expected closing '$'");
            skip();
            if (pos_ != s_.size()) fail("unexpected trailing input");
            if (!allow_free_ && !unbound_.empty())
                throw ParseError(ParseError::Kind::UnboundVariable, unbound_.front().second,
                                 "unbound variable '" + unbound_.front().first + "'");
            return f;
        } catch (const Failure& e) {
            std::size_t off = e.fatal ? e.offset : std::max(e.offset, furthest_.offset);
            const std::string& msg = e.fatal || e.offset >= furthest_.offset ? e.message : furthest_.message;
            throw ParseError(ParseError::Kind::Syntax, off, msg);
        }
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
    bool allow_free_;
    std::vector<std::string> scope_;
    std::vector<std::pair<std::string, std::size_t>> unbound_;
    Failure furthest_{0, "syntax error"};

    [[noreturn]] void fail(const std::string& msg) { throw Failure{pos_, msg}; }
    [[noreturn]] void fatal(std::size_t at, const std::string& msg) { throw Failure{at, msg, true}; }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }
    bool eat_word(std::string_view w) {
        skip();
        if (s_.substr(pos_, w.size()) != w) return false;
        std::size_t end = pos_ + w.size();
        // Control words must not run into further letters (\tox is not \to).
        if (w.front() == '\\' && std::isalpha(static_cast<unsigned char>(w.back())) && end < s_.size() &&
            std::isalpha(static_cast<unsigned char>(s_[end])))
            return false;
        pos_ = end;
        return true;
    }

    template <class F>
    auto attempt(F&& f) -> std::optional<decltype(f())> {
        std::size_t saved = pos_;
        std::size_t saved_unbound = unbound_.size();
        std::size_t saved_scope = scope_.size();
        try {
            return f();
        } catch (const Failure& e) {
            if (e.fatal) throw;
            if (e.offset >= furthest_.offset) furthest_ = e;
            pos_ = saved;
            unbound_.resize(saved_unbound);
            scope_.resize(saved_scope);
            return std::nullopt;
        }
    }

    Formula formula() {
        skip();
        if (eat_word("\\neg")) return Formula::negation(formula());
        if (eat_word("\\forall")) return quantified(true);
        if (eat_word("\\exists")) return quantified(false);
        if (peek() == '(') {
            if (auto c = attempt([&] { return comparison(); })) return *c;
            if (auto p = attempt([&] { return parenthesized(); })) return *p;
            throw Failure{furthest_.offset, furthest_.message};
        }
        return comparison();
    }

    Formula quantified(bool universal) {
        std::string v = variable_name();
        scope_.push_back(v);
        Formula body = formula();
        scope_.pop_back();
        return universal ? Formula::forall(v, body) : Formula::exists(v, body);
    }

    Formula parenthesized() {
        expect('(');
        Formula a = formula();
        if (eat(')')) return a;
        FormulaKind k;
        if (eat_word("\\wedge"))
            k = FormulaKind::And;
        else if (eat_word("\\vee"))
            k = FormulaKind::Or;
        else if (eat_word("\\to"))
            k = FormulaKind::Implies;
        else
            fail("expected connective or ')'");
        Formula b = formula();
        expect(')');
        switch (k) {
            case FormulaKind::And: return Formula::conjunction(a, b);
            case FormulaKind::Or: return Formula::disjunction(a, b);
            default: return Formula::implication(a, b);
        }
    }

    Formula comparison() {
        Term lhs = term();
        Relation rel = relation();
        Term rhs = term();
        return Formula::compare(lhs, rel, rhs);
    }

    Relation relation() {
        skip();
        if (eat_word("!=")) return Relation::Ne;
        if (eat_word("<=")) return Relation::Le;
        if (eat_word(">=")) return Relation::Ge;
        if (eat_word("<")) return Relation::Lt;
        if (eat_word(">")) return Relation::Gt;
        if (eat_word("=")) return Relation::Eq;
        fail("expected relation");
    }

    Term term() {
        Term t = primary();
        for (;;) {
            char c = peek();
            if (c != '+' && c != '-') break;
            ++pos_;
            skip();
            std::size_t at = pos_;
            std::uint64_t n = number();
            if (n != 1) fatal(at, "offset must be 1");
            t = Term::offset(t, c == '+' ? 1 : -1);
        }
        return t;
    }

    std::uint64_t number() {
        skip();
        std::size_t start = pos_;
        std::uint64_t v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + static_cast<std::uint64_t>(s_[pos_] - '0');
            ++pos_;
        }
        if (pos_ == start) fail("expected number");
        return v;
    }

    Term primary() {
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) return Term::numeral(number());
        if (eat_word("\\pi_M")) {
            expect('(');
            Term inner = term();
            expect(')');
            return Term::projection(inner);
        }
        if (c == 't' && s_.substr(pos_, 3) == "t_{") {
            pos_ += 3;
            std::size_t at = pos_;
            try {
                Term row = term();
                expect(',');
                Term col = term();
                expect('}');
                return Term::square(row, col);
            } catch (const Failure& e) {
                if (e.fatal) throw;
                fatal(at, "unclosed subscript");
            }
        }
        if (c == '(') {
            if (auto t = attempt([&] { return triple(); })) return *t;
            if (auto g = attempt([&] {
                    expect('(');
                    Term inner = term();
                    expect(')');
                    return inner;
                }))
                return *g;
            throw Failure{furthest_.offset, furthest_.message};
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t at = pos_;
            std::string v = variable_name();
            bool bound = false;
            for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
                if (*it == v) bound = true;
            if (!bound) unbound_.emplace_back(v, at);
            return Term::variable(v);
        }
        fail("expected term");
    }

    Term triple() {
        expect('(');
        skip();
        Term sym = Term::symbol(TapeSymbol::Blank);
        if (eat_word("\\pi_M")) {
            expect('(');
            Term inner = term();
            expect(')');
            sym = Term::projection(inner);
        } else {
            auto g = pos_ < s_.size() ? symbol_from_glyph(s_[pos_]) : std::nullopt;
            if (!g) fail("expected tape symbol");
            ++pos_;
            sym = Term::symbol(*g);
        }
        expect(',');
        skip();
        std::size_t start = pos_;
        if (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
            while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        }
        if (pos_ == start) fail("expected state name");
        std::string state(s_.substr(start, pos_ - start));
        expect(',');
        skip();
        int flag;
        if (eat('0'))
            flag = 0;
        else if (eat('1'))
            flag = 1;
        else
            fail("expected flag 0 or 1");
        expect(')');
        return Term::triple(sym, state, flag);
    }

    std::string variable_name() {
        skip();
        std::size_t start = pos_;
        if (pos_ >= s_.size() || !std::isalpha(static_cast<unsigned char>(s_[pos_]))) fail("expected variable");
        ++pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            fail("variable names are one letter plus optional digits");
        return std::string(s_.substr(start, pos_ - start));
    }
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text, false).parse_top(); }

Formula parse_open_formula(std::string_view text) { return Parser(text, true).parse_top(); }

}  // namespace proofforge

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace proofforge {

// Tape alphabet {0, 1, blank, left-end}. Canonical glyphs: 0 1 _ >
enum class TapeSymbol : std::uint8_t { Zero = 0, One = 1, Blank = 2, LeftEnd = 3 };

inline constexpr TapeSymbol kAllSymbols[] = {TapeSymbol::Zero, TapeSymbol::One, TapeSymbol::Blank,
                                             TapeSymbol::LeftEnd};

char symbol_glyph(TapeSymbol s);
std::optional<TapeSymbol> symbol_from_glyph(char c);

enum class TermKind : std::uint8_t { Variable, Numeral, Offset, Square, Triple, Projection, Symbol };

struct TermNode;

/// Immutable handle to a term tree. Copying shares structure.
///
/// Smart constructors keep terms normalized: an offset applied to a numeral
/// is folded (`5+1` becomes `6`, `0-1` is kept as written) and a projection
/// of a literal triple reduces to the triple's symbol slot.
class Term {
public:
    static Term variable(std::string name);
    static Term numeral(std::uint64_t value);
    static Term offset(Term base, int delta);
    static Term square(Term row, Term col);
    static Term triple(Term symbol, std::string state, int flag);
    static Term projection(Term inner);
    static Term symbol(TapeSymbol s);

    TermKind kind() const;
    const std::string& name() const;       // variable name or triple state
    std::uint64_t value() const;           // numeral value
    int delta() const;                     // offset: +1 / -1
    int flag() const;                      // triple flag
    TapeSymbol tape_symbol() const;        // symbol literal
    const Term& first() const;             // offset base, square row, triple symbol, projection inner
    const Term& second() const;            // square col
    std::size_t hash() const;

    friend bool operator==(const Term& a, const Term& b);
    friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

private:
    explicit Term(std::shared_ptr<const TermNode> n) : node_(std::move(n)) {}
    std::shared_ptr<const TermNode> node_;
};

enum class Relation : std::uint8_t { Eq, Ne, Lt, Le, Gt, Ge };
enum class FormulaKind : std::uint8_t { Compare, Not, And, Or, Implies, Forall, Exists };

const char* relation_text(Relation r);

struct FormulaNode;

/// Immutable handle to a formula tree of the tableau language.
/// Equality is structural and is the equality every checker uses.
class Formula {
public:
    /// The ground fact 0=0.
    Formula();
    static Formula compare(Term lhs, Relation rel, Term rhs);
    static Formula negation(Formula f);
    static Formula conjunction(Formula a, Formula b);
    static Formula disjunction(Formula a, Formula b);
    static Formula implication(Formula a, Formula b);
    static Formula forall(std::string var, Formula body);
    static Formula exists(std::string var, Formula body);

    // t_{row,col} = (sym,state,flag)
    static Formula square_is(Term row, Term col, Term symbol, const std::string& state, int flag);

    FormulaKind kind() const;
    Relation relation() const;
    const Term& lhs_term() const;
    const Term& rhs_term() const;
    const Formula& left() const;   // Not: operand; binary: left; quantifier: body
    const Formula& right() const;
    const Formula& body() const { return left(); }
    const std::string& var() const;
    std::size_t hash() const;

    bool is_binary() const;
    bool is_quantifier() const;

    friend bool operator==(const Formula& a, const Formula& b);
    friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

private:
    explicit Formula(std::shared_ptr<const FormulaNode> n) : node_(std::move(n)) {}
    std::shared_ptr<const FormulaNode> node_;
};

struct FormulaHash {
    std::size_t operator()(const Formula& f) const noexcept { return f.hash(); }
};
struct TermHash {
    std::size_t operator()(const Term& t) const noexcept { return t.hash(); }
};

/// Ordered list of formulas, indexable from 0.
class FormulaSequence {
public:
    FormulaSequence() = default;
    FormulaSequence(std::initializer_list<Formula> items) : items_(items) {}
    explicit FormulaSequence(std::vector<Formula> items) : items_(std::move(items)) {}

    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }
    const Formula& operator[](std::size_t i) const { return items_[i]; }
    const Formula& at(std::size_t i) const { return items_.at(i); }
    const Formula& back() const { return items_.back(); }
    auto begin() const { return items_.begin(); }
    auto end() const { return items_.end(); }
    const std::vector<Formula>& items() const { return items_; }

    void push_back(Formula f) { items_.push_back(std::move(f)); }
    void append(const FormulaSequence& other);

    friend FormulaSequence operator+(FormulaSequence a, const FormulaSequence& b) {
        a.append(b);
        return a;
    }
    friend bool operator==(const FormulaSequence& a, const FormulaSequence& b) { return a.items_ == b.items_; }

private:
    std::vector<Formula> items_;
};

FormulaSequence seq_concat(const std::vector<FormulaSequence>& parts);

// ---------------------------------------------------------------------------
// Canonical text and lengths

struct CanonicalText {
    std::string text;
    std::size_t ascii_len = 0;
    std::size_t bin_len = 0;   // 7 bits per ASCII character

    static CanonicalText of(std::string s);
};

std::size_t ascii_len(std::string_view s);
inline std::size_t bin_len(std::string_view s) { return 7 * ascii_len(s); }

/// Minimal-whitespace rendering wrapped in `$...$`.
CanonicalText serialize(const Formula& f);
std::string to_text(const Formula& f);
std::string to_text(const Term& t);

std::size_t formula_ascii_len(const Formula& f);
std::size_t seq_ascii_len(const FormulaSequence& seq);

enum class Order { Precedes, Equal, Follows };

/// Shorter strings first; equal lengths by byte-wise dictionary order.
Order string_cmp(std::string_view x, std::string_view y);
/// string_cmp applied to the concatenated canonical texts.
Order seq_cmp(const FormulaSequence& a, const FormulaSequence& b);
std::string join_texts(const FormulaSequence& seq);

// ---------------------------------------------------------------------------
// Parsing

class ParseError : public std::runtime_error {
public:
    enum class Kind { Syntax, UnboundVariable };
    ParseError(Kind kind, std::size_t offset, const std::string& msg);
    Kind kind() const { return kind_; }
    std::size_t offset() const { return offset_; }

private:
    Kind kind_;
    std::size_t offset_;
};

/// Parses a closed formula. Unbound variables are an error.
Formula parse_formula(std::string_view text);
/// Parses a formula that may contain free variables (proof lines).
Formula parse_open_formula(std::string_view text);

// ---------------------------------------------------------------------------
// Variables and substitution

bool occurs_free(const Formula& f, std::string_view var);
bool term_has_var(const Term& t, std::string_view var);
std::vector<std::string> free_variables(const Formula& f);

/// Simultaneous substitution of free occurrences, with normalization.
struct Binding {
    std::string var;
    Term value;
};
Formula substitute(const Formula& f, const std::vector<Binding>& bindings);
Formula substitute(const Formula& f, const std::string& var, const Term& value);

/// True iff `value` may replace free `var` in `f` without capture.
bool substitutable(const Formula& f, const std::string& var, const Term& value);

/// Number of numeral nodes in the formula (used for length bounds).
std::size_t count_numerals(const Formula& f);

/// Flattens a left- or right-nested conjunction tree into its leaves.
std::vector<Formula> conjunct_leaves(const Formula& f);

Formula fold_conjunction(const std::vector<Formula>& parts);
Formula fold_disjunction(const std::vector<Formula>& parts);

}  // namespace proofforge

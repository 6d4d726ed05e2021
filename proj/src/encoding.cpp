#include "proofforge/encoding.hpp"

namespace proofforge {

namespace {

Term var(const char* n) { return Term::variable(n); }
Term num(std::uint64_t v) { return Term::numeral(v); }
Term sym(TapeSymbol s) { return Term::symbol(s); }

Formula cmp(Term a, Relation r, Term b) { return Formula::compare(std::move(a), r, std::move(b)); }

// t_{row,col} = (\pi_M(t_{src_row,src_col}), state, flag)
Formula carried(Term row, Term col, Term src_row, Term src_col, const std::string& state, int flag) {
    return Formula::square_is(std::move(row), std::move(col),
                              Term::projection(Term::square(std::move(src_row), std::move(src_col))), state, flag);
}

}  // namespace

Membership literal_scan(const FormulaSequence& seq, const Formula& f) {
    Membership m;
    for (const auto& g : seq) {
        ++m.comparisons;
        if (g == f) {
            m.member = true;
            return m;
        }
    }
    return m;
}

Membership ExplicitTheory::member(const Formula& f) const { return literal_scan(items_, f); }

Formula left_end_formula(const TuringMachine& m) {
    std::vector<Formula> cases;
    for (const auto& q : m.states())
        for (int flag : {0, 1})
            cases.push_back(Formula::square_is(var("i"), num(0), sym(TapeSymbol::LeftEnd), q, flag));
    return Formula::forall("i", fold_disjunction(cases));
}

Formula unique_head_formula(const TuringMachine& m) {
    std::vector<Formula> reading, idle;
    for (const auto& q : m.states()) {
        reading.push_back(carried(var("i"), var("k"), var("i"), var("k"), q, 1));
        idle.push_back(carried(var("i"), var("j"), var("i"), var("j"), q, 0));
    }
    Formula others =
        Formula::forall("j", Formula::implication(cmp(var("j"), Relation::Ne, var("k")), fold_disjunction(idle)));
    return Formula::forall("i", Formula::exists("k", Formula::conjunction(fold_disjunction(reading), others)));
}

Formula transition_formula(const Transition& t) {
    Term i = var("i"), j = var("j"), k = var("k");
    Term next = Term::offset(i, 1);
    Formula reads = Formula::square_is(i, j, sym(t.read), t.state, 1);
    Formula body;
    if (t.move == Move::Stay) {
        Formula here = Formula::square_is(next, j, sym(t.write), t.next, 1);
        Formula frame = Formula::forall(
            "k", Formula::implication(cmp(k, Relation::Ne, j), carried(next, k, i, k, t.next, 0)));
        body = Formula::conjunction(here, frame);
    } else {
        Term side = Term::offset(j, t.move == Move::Right ? 1 : -1);
        Formula here = Formula::square_is(next, j, sym(t.write), t.next, 0);
        Formula head = carried(next, side, i, side, t.next, 1);
        Formula cond = Formula::conjunction(cmp(k, Relation::Ne, j), cmp(k, Relation::Ne, side));
        Formula frame = Formula::forall("k", Formula::implication(cond, carried(next, k, i, k, t.next, 0)));
        body = Formula::conjunction(Formula::conjunction(here, head), frame);
    }
    return Formula::forall("i", Formula::forall("j", Formula::implication(reads, body)));
}

Formula blank_tail_existence(const std::string& start) {
    Term j = var("j"), m = var("m");
    Formula blank = Formula::square_is(num(0), j, sym(TapeSymbol::Blank), start, 0);
    Formula before = Formula::forall(
        "j", Formula::implication(cmp(j, Relation::Lt, m),
                                  Formula::compare(Term::square(num(0), j), Relation::Ne,
                                                   Term::triple(sym(TapeSymbol::Blank), start, 0))));
    Formula after = Formula::forall("j", Formula::implication(cmp(j, Relation::Ge, m), blank));
    return Formula::exists("m", Formula::conjunction(before, after));
}

Formula tail_formula(std::uint64_t bound, const std::string& start) {
    Term j = var("j");
    return Formula::forall("j", Formula::implication(cmp(j, Relation::Gt, num(bound)),
                                                     Formula::square_is(num(0), j, sym(TapeSymbol::Blank), start, 0)));
}

FormulaSequence build_def_m(const TuringMachine& m) {
    FormulaSequence out;
    out.push_back(left_end_formula(m));
    out.push_back(unique_head_formula(m));
    for (const auto& t : m.transitions()) out.push_back(transition_formula(t));
    out.push_back(blank_tail_existence(m.name(m.start())));
    return out;
}

FormulaSequence build_input(std::string_view s, const std::string& start) {
    FormulaSequence out;
    const std::uint64_t n = s.size();
    out.push_back(tail_formula(n + 1, start));
    out.push_back(Formula::square_is(num(0), num(0), sym(TapeSymbol::LeftEnd), start, 1));
    for (std::uint64_t b = 1; b <= n; ++b) {
        char c = s[b - 1];
        if (c != '0' && c != '1') throw std::invalid_argument("input must be a bit string");
        out.push_back(Formula::square_is(num(0), num(b), sym(c == '0' ? TapeSymbol::Zero : TapeSymbol::One), start, 0));
    }
    out.push_back(Formula::square_is(num(0), num(n + 1), sym(TapeSymbol::Blank), start, 0));
    return out;
}

MachineEncoding::MachineEncoding(TuringMachine m) : machine_(std::move(m)), def_(build_def_m(machine_)) {
    for (std::size_t i = 0; i < def_.size(); ++i) first_.emplace(def_[i], i);
}

std::size_t MachineEncoding::transition_index(StateId q, TapeSymbol a) const {
    // Transition formulas follow the two boundary formulas, states in order,
    // symbols in alphabet order, skipping undefined rules.
    std::size_t idx = 2;
    for (StateId p = 0; p < machine_.states().size(); ++p)
        for (TapeSymbol b : kAllSymbols) {
            if (!machine_.rule(p, b)) continue;
            if (p == q && b == a) return idx;
            ++idx;
        }
    throw std::out_of_range("no transition for the given state and symbol");
}

EncodingPtr encode_machine(const TuringMachine& m) { return std::make_shared<const MachineEncoding>(m); }

TableauTheory::TableauTheory(EncodingPtr enc, Bits input)
    : enc_(std::move(enc)), input_(std::move(input)), input_part_(build_input(input_, enc_->start_name())) {
    combined_ = enc_->def_part() + input_part_;
}

std::optional<std::uint64_t> row0_column(const Formula& f) {
    if (f.kind() != FormulaKind::Compare || f.relation() != Relation::Eq) return std::nullopt;
    const Term& sq = f.lhs_term();
    if (sq.kind() != TermKind::Square || sq.first().kind() != TermKind::Numeral || sq.first().value() != 0 ||
        sq.second().kind() != TermKind::Numeral)
        return std::nullopt;
    return sq.second().value();
}

std::optional<std::uint64_t> tail_bound(const Formula& f) {
    if (f.kind() != FormulaKind::Forall) return std::nullopt;
    const Formula& body = f.body();
    if (body.kind() != FormulaKind::Implies) return std::nullopt;
    const Formula& guard = body.left();
    if (guard.kind() != FormulaKind::Compare || guard.relation() != Relation::Gt) return std::nullopt;
    if (guard.lhs_term().kind() != TermKind::Variable || guard.rhs_term().kind() != TermKind::Numeral)
        return std::nullopt;
    return guard.rhs_term().value();
}

std::optional<std::size_t> TableauTheory::input_position(const Formula& f) const {
    const std::size_t k = this->k();
    if (auto b = row0_column(f)) {
        if (*b <= last_explicit_column() && combined_[k + 2 + *b] == f) return k + 2 + *b;
        return std::nullopt;
    }
    if (tail_bound(f) && combined_[k + 1] == f) return k + 1;
    return std::nullopt;
}

Membership TableauTheory::member(const Formula& f) const {
    const std::size_t k = this->k();
    if (auto b = row0_column(f)) {
        if (*b > last_explicit_column()) return {false, 0};
        return {combined_[k + 2 + *b] == f, 1};
    }
    if (tail_bound(f)) return {combined_[k + 1] == f, 1};
    return enc_->def_member(f);
}

Membership MachineEncoding::def_member(const Formula& f) const {
    auto it = first_.find(f);
    if (it == first_.end()) return {false, def_.size()};
    return {true, it->second + 1};
}

}  // namespace proofforge

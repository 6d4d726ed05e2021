#include "proofforge/synthesis.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

namespace proofforge {

namespace {

Term num(std::uint64_t v) { return Term::numeral(v); }

Formula implies(Formula a, Formula b) { return Formula::implication(std::move(a), std::move(b)); }

}  // namespace

Formula goal_formula(int value, const std::string& halt) {
    Term i = Term::variable("i");
    return Formula::exists("i", Formula::square_is(i, num(1), Term::symbol(value ? TapeSymbol::One : TapeSymbol::Zero),
                                                   halt, 1));
}

Formula cell_formula(const ComputationTable& table, const TuringMachine& m, std::size_t row, std::size_t col) {
    const TapeSquare& sq = table.at(row, col);
    return Formula::square_is(num(row), num(col), Term::symbol(sq.symbol), m.name(sq.state), sq.flag);
}

FormulaSequence instantiate_lines(const Transition& rule, std::size_t conjunct, std::uint64_t row, std::uint64_t col,
                                  KernelMode mode) {
    const Formula gamma = transition_formula(rule);
    const Formula& inner = gamma.body().body();   // A \to B
    const Formula& reads = inner.left();
    auto leaves = conjunct_leaves(inner.right());
    const Formula& chosen = leaves.at(conjunct);
    const std::vector<Binding> at{{"i", num(row)}, {"j", num(col)}};

    FormulaSequence out;
    out.push_back(gamma);
    if (mode == KernelMode::Paper) {
        Formula weak = Formula::forall("i", Formula::forall("j", implies(reads, chosen)));
        Formula inst = substitute(implies(reads, chosen), at);
        out.push_back(implies(gamma, weak));
        out.push_back(weak);
        out.push_back(implies(weak, inst));
        out.push_back(inst);
        out.push_back(inst.right());
    } else {
        Formula over_j = substitute(gamma.body(), "i", num(row));
        Formula full = substitute(inner, at);
        Formula inst = substitute(implies(reads, chosen), at);
        out.push_back(implies(gamma, over_j));
        out.push_back(over_j);
        out.push_back(implies(over_j, full));
        out.push_back(full);
        out.push_back(implies(full, inst));
        out.push_back(inst);
        out.push_back(inst.right());
    }
    return out;
}

FormulaSequence pick_column_lines(const Formula& frame, std::uint64_t col) {
    Formula inst = substitute(frame.body(), frame.var(), num(col));
    return FormulaSequence{implies(frame, inst), inst, inst.left(), inst.right()};
}

FormulaSequence resolve_lines(const Formula& carried, const Formula& previous, KernelMode mode) {
    const Term& cell = carried.lhs_term();
    const Term& slot = carried.rhs_term();
    const Term& known = previous.rhs_term();
    Formula resolved = Formula::compare(cell, Relation::Eq, Term::triple(known.first(), slot.name(), slot.flag()));
    if (mode == KernelMode::Paper) {
        Formula step = implies(carried, resolved);
        return FormulaSequence{implies(previous, step), step, resolved};
    }
    Term x = Term::variable("x"), y = Term::variable("y");
    auto with = [&](const Term& v) {
        return Formula::compare(cell, Relation::Eq, Term::triple(Term::projection(v), slot.name(), slot.flag()));
    };
    Formula e1 = implies(Formula::compare(x, Relation::Eq, y), implies(with(x), with(y)));
    Formula over_y = Formula::forall("y", e1);
    Formula over_xy = Formula::forall("x", over_y);
    Formula at_x = substitute(over_y, "x", previous.lhs_term());
    Formula at_xy = substitute(at_x.body(), "y", known);
    Formula step = implies(carried, resolved);
    return FormulaSequence{e1,    over_y, over_xy, implies(over_xy, at_x), at_x, implies(at_x, at_xy),
                           at_xy, step,   resolved};
}

FormulaSequence blank_tail_lines(std::uint64_t col, std::uint64_t bound, const std::string& start) {
    Formula guard = Formula::compare(num(col), Relation::Gt, num(bound));
    Formula tail = tail_formula(bound, start);
    Formula inst = substitute(tail.body(), "j", num(col));
    return FormulaSequence{guard, tail, implies(tail, inst), inst, inst.right()};
}

FormulaSequence closing_lines(std::uint64_t d, int value, const std::string& halt) {
    Formula goal = goal_formula(value, halt);
    Formula fact = substitute(goal.body(), "i", num(d));
    return FormulaSequence{implies(fact, goal), goal};
}

namespace {

Transition rule_at(const TuringMachine& m, StateId q, TapeSymbol a) {
    const auto& r = m.rule(q, a);
    if (!r) throw std::logic_error("transition undefined for state " + m.name(q));
    return Transition{m.name(q), a, m.name(r->next), r->write, r->move};
}

std::size_t frame_conjunct(Move mv) { return mv == Move::Stay ? 1 : 2; }

}  // namespace

ProofSection build_sec(const ComputationTable& table, const TableauTheory& theory, std::size_t row, std::size_t col,
                       KernelMode mode) {
    const TuringMachine& m = theory.machine();
    ProofSection sec;
    sec.row = row;
    sec.col = col;
    sec.target = cell_formula(table, m, row, col);
    if (row == 0) {
        if (col <= theory.last_explicit_column()) {
            sec.kind = ProofSection::Kind::AxiomCell;
            sec.lines.push_back(sec.target);
        } else {
            sec.kind = ProofSection::Kind::BlankTailCell;
            sec.lines = blank_tail_lines(col, theory.last_explicit_column(), m.name(m.start()));
        }
        return sec;
    }
    sec.kind = ProofSection::Kind::TransitionCell;
    const std::size_t h = table.head(row - 1);
    const TapeSquare& reading = table.at(row - 1, h);
    Transition rule = rule_at(m, reading.state, reading.symbol);
    const std::size_t side = rule.move == Move::Right ? h + 1 : rule.move == Move::Left ? h - 1 : h;
    if (col == h) {
        sec.lines = instantiate_lines(rule, 0, row - 1, h, mode);
    } else if (rule.move != Move::Stay && col == side) {
        sec.lines = instantiate_lines(rule, 1, row - 1, h, mode);
        sec.lines.append(resolve_lines(sec.lines.back(), cell_formula(table, m, row - 1, col), mode));
    } else {
        sec.lines = instantiate_lines(rule, frame_conjunct(rule.move), row - 1, h, mode);
        sec.lines.append(pick_column_lines(sec.lines.back(), col));
        sec.lines.append(resolve_lines(sec.lines.back(), cell_formula(table, m, row - 1, col), mode));
    }
    if (sec.lines.back() != sec.target)
        throw std::logic_error("section for cell (" + std::to_string(row) + "," + std::to_string(col) +
                               ") does not reach the table value");
    return sec;
}

SpecialProof build_special_proof(const TableauTheory& theory, std::size_t cap, KernelMode mode) {
    const TuringMachine& m = theory.machine();
    RunResult run_result = run(m, theory.input(), cap);
    if (run_result.verdict == Verdict::StepCapExceeded) throw CapExceeded(theory.input());
    if (run_result.verdict != Verdict::Halted)
        throw std::invalid_argument("machine halted without an output on column 1");
    ComputationTable table = build_table(m, theory.input(), cap);

    SpecialProof sp;
    sp.f = run_result.steps;
    sp.value = run_result.value;
    const TapeSquare answer{sp.value ? TapeSymbol::One : TapeSymbol::Zero, m.halt(), 1};
    sp.d = 0;
    while (table.at(sp.d, 1) != answer) ++sp.d;

    for (std::size_t i = 0; i < table.size(); ++i)
        for (std::size_t j = 0; j < table.size(); ++j) {
            sp.sections.push_back(build_sec(table, theory, i, j, mode));
            sp.proof.append(sp.sections.back().lines);
        }
    FormulaSequence tail = closing_lines(sp.d, sp.value, m.name(m.halt()));
    sp.closing = tail[0];
    sp.goal = tail[1];
    sp.proof.append(tail);
    return sp;
}

SpecialProof build_special_proof(const TuringMachine& m, const Bits& s, std::size_t cap, KernelMode mode) {
    return build_special_proof(TableauTheory(m, s), cap, mode);
}

std::size_t fs_upper(const TuringMachine& m, const Bits& s, std::size_t cap, KernelMode mode) {
    return seq_ascii_len(build_special_proof(m, s, cap, mode).proof);
}

LengthConstants fit_length_constants(const TuringMachine& m, KernelMode mode) {
    // Placeholder numerals are single digits; a real numeral n <= f+1 has
    // at most f extra digits, so length <= L0 + numerals * f.
    constexpr std::uint64_t a = 1, h = 3, frame_col = 6, bound = 1, blank_col = 5;
    std::size_t max_len = 0, max_numerals = 0;
    auto measure = [&](const FormulaSequence& lines) {
        std::size_t n = 0;
        for (const auto& f : lines) n += count_numerals(f);
        max_len = std::max(max_len, seq_ascii_len(lines));
        max_numerals = std::max(max_numerals, n);
    };
    const std::string& start = m.name(m.start());
    const Term zero = Term::symbol(TapeSymbol::Zero);
    for (const auto& rule : m.transitions()) {
        auto before = [&](std::uint64_t col) { return Formula::square_is(num(a), num(col), zero, rule.state, 0); };
        measure(instantiate_lines(rule, 0, a, h, mode));
        if (rule.move != Move::Stay) {
            FormulaSequence lines = instantiate_lines(rule, 1, a, h, mode);
            std::uint64_t side = rule.move == Move::Right ? h + 1 : h - 1;
            lines.append(resolve_lines(lines.back(), before(side), mode));
            measure(lines);
        }
        FormulaSequence lines = instantiate_lines(rule, frame_conjunct(rule.move), a, h, mode);
        lines.append(pick_column_lines(lines.back(), frame_col));
        lines.append(resolve_lines(lines.back(), before(frame_col), mode));
        measure(lines);
    }
    measure(blank_tail_lines(blank_col, bound, start));
    measure(FormulaSequence{Formula::square_is(num(0), num(blank_col), zero, start, 0)});
    measure(closing_lines(2, 1, m.name(m.halt())));
    return LengthConstants{max_numerals, max_len + 1};
}

// ---------------------------------------------------------------------------
// Shortest proofs over a pool

FsSearch fs_exact(const Theory& theory, const Formula& goal, const std::vector<Formula>& pool, std::size_t max_len,
                  std::size_t budget, std::size_t max_lines, KernelMode mode) {
    FsSearch out;
    if (pool.empty() || max_lines == 0) return out;
    std::vector<std::string> texts;
    std::vector<std::size_t> lens;
    for (const auto& f : pool) {
        texts.push_back(to_text(f));
        lens.push_back(texts.back().size());
    }
    const std::size_t shortest = *std::min_element(lens.begin(), lens.end());
    const std::size_t longest = *std::max_element(lens.begin(), lens.end());
    if (max_lines != kUnbounded) max_len = std::min(max_len, max_lines * longest + 1);

    for (std::size_t total = shortest; total < max_len; ++total) {
        // All pool sequences whose concatenation has exactly `total` characters.
        std::vector<std::vector<std::size_t>> bucket;
        std::vector<std::size_t> cur;
        bool overflow = false;
        std::function<void(std::size_t)> grow = [&](std::size_t left) {
            if (overflow) return;
            if (left == 0) {
                bucket.push_back(cur);
                if (out.tried + bucket.size() > budget) overflow = true;
                return;
            }
            if (cur.size() == max_lines) return;
            for (std::size_t p = 0; p < pool.size(); ++p) {
                if (lens[p] > left) continue;
                cur.push_back(p);
                grow(left - lens[p]);
                cur.pop_back();
            }
        };
        grow(total);

        if (overflow) {
            out.tried += bucket.size();
            out.budget_exhausted = true;
            return out;
        }

        std::vector<std::pair<std::string, std::size_t>> order;
        order.reserve(bucket.size());
        for (std::size_t b = 0; b < bucket.size(); ++b) {
            std::string joined;
            for (std::size_t p : bucket[b]) joined += texts[p];
            order.emplace_back(std::move(joined), b);
        }
        std::sort(order.begin(), order.end());
        for (const auto& [joined, b] : order) {
            ++out.tried;
            const auto& idx = bucket[b];
            if (pool[idx.back()] != goal) continue;
            FormulaSequence seq;
            for (std::size_t p : idx) seq.push_back(pool[p]);
            if (verify(theory, seq, goal, mode).ok) {
                out.length = total;
                out.proof = std::move(seq);
                return out;
            }
        }
    }
    return out;
}

FsSearch fs_exact(const TuringMachine& m, const Bits& s, int value, const std::vector<Formula>& pool,
                  std::size_t max_len, std::size_t budget, KernelMode mode) {
    TableauTheory theory(m, s);
    return fs_exact(theory, goal_formula(value, m.name(m.halt())), pool, max_len, budget, kUnbounded, mode);
}

std::vector<Formula> default_pool(const SpecialProof& p) {
    std::vector<Formula> out;
    std::unordered_set<Formula, FormulaHash> seen;
    for (const auto& f : p.proof)
        if (seen.insert(f).second) out.push_back(f);
    return out;
}

ApfResult apf(const TuringMachine& m, std::size_t n, ApfMode mode, const ApfCaps& caps, KernelMode kmode) {
    ApfResult best;
    best.value = 0;
    bool first = true;
    for (const auto& s : strings_of_length(n)) {
        SpecialProof sp = build_special_proof(m, s, caps.step_cap, kmode);
        std::size_t upper = seq_ascii_len(sp.proof);
        std::size_t v = upper;
        if (mode == ApfMode::Exact) {
            FsSearch fs = fs_exact(TableauTheory(m, s), sp.goal, default_pool(sp), upper + 1, caps.budget, kUnbounded,
                                   kmode);
            if (!fs.length) return ApfResult{std::nullopt, s};
            v = *fs.length;
        }
        if (first || v > *best.value) {
            best.value = v;
            best.witness = s;
            first = false;
        }
    }
    return best;
}

}  // namespace proofforge

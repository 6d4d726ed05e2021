#pragma once

#include "proofforge/formula.hpp"
#include "proofforge/machine.hpp"

#include <memory>
#include <unordered_map>

namespace proofforge {

struct Membership {
    bool member = false;
    std::size_t comparisons = 0;
};

/// A recursive theory: an ordered formula sequence plus a membership procedure.
class Theory {
public:
    virtual ~Theory() = default;
    virtual Membership member(const Formula& f) const = 0;
    virtual const FormulaSequence& formulas() const = 0;
};

/// Finite theory decided by a literal scan with early stop.
class ExplicitTheory : public Theory {
public:
    explicit ExplicitTheory(FormulaSequence items) : items_(std::move(items)) {}
    Membership member(const Formula& f) const override;
    const FormulaSequence& formulas() const override { return items_; }

private:
    FormulaSequence items_;
};

Membership literal_scan(const FormulaSequence& seq, const Formula& f);

// Building blocks of def_M and input_s.
Formula left_end_formula(const TuringMachine& m);
Formula unique_head_formula(const TuringMachine& m);
Formula transition_formula(const Transition& t);
Formula blank_tail_existence(const std::string& start);
Formula tail_formula(std::uint64_t bound, const std::string& start);

FormulaSequence build_def_m(const TuringMachine& m);
FormulaSequence build_input(std::string_view s, const std::string& start = "q0");

/// def_M of one machine, shared by all of its tableau theories.
class MachineEncoding {
public:
    explicit MachineEncoding(TuringMachine m);

    const TuringMachine& machine() const { return machine_; }
    const FormulaSequence& def_part() const { return def_; }
    std::size_t k() const { return def_.size() - 1; }
    const std::string& start_name() const { return machine_.name(machine_.start()); }
    const std::string& halt_name() const { return machine_.name(machine_.halt()); }
    /// Position of the transition formula for (q, a) inside def_part.
    std::size_t transition_index(StateId q, TapeSymbol a) const;
    /// Same answer and comparison count as literal_scan(def_part(), f).
    Membership def_member(const Formula& f) const;

private:
    TuringMachine machine_;
    FormulaSequence def_;
    std::unordered_map<Formula, std::size_t, FormulaHash> first_;
};

using EncodingPtr = std::shared_ptr<const MachineEncoding>;

EncodingPtr encode_machine(const TuringMachine& m);

/// T<M,s> = def_M followed by input_s.
///
/// member() is the position-arithmetic fast path; member_literal() is the
/// plain left-to-right scan. Both return the same answer on every formula.
class TableauTheory : public Theory {
public:
    TableauTheory(EncodingPtr enc, Bits input);
    TableauTheory(const TuringMachine& m, Bits input) : TableauTheory(encode_machine(m), std::move(input)) {}

    Membership member(const Formula& f) const override;
    Membership member_literal(const Formula& f) const { return literal_scan(combined_, f); }
    const FormulaSequence& formulas() const override { return combined_; }

    const EncodingPtr& encoding() const { return enc_; }
    const TuringMachine& machine() const { return enc_->machine(); }
    const Bits& input() const { return input_; }
    std::size_t k() const { return enc_->k(); }
    const FormulaSequence& def_part() const { return enc_->def_part(); }
    const FormulaSequence& input_part() const { return input_part_; }
    const FormulaSequence& combined() const { return combined_; }
    /// Largest column with an explicit row-0 formula: |s| + 1.
    std::uint64_t last_explicit_column() const { return input_.size() + 1; }

    /// Index in combined() when f is an input formula of this theory.
    std::optional<std::size_t> input_position(const Formula& f) const;

private:
    EncodingPtr enc_;
    Bits input_;
    FormulaSequence input_part_;
    FormulaSequence combined_;
};

/// Matches t_{0,b} = ... with a numeral column; returns b.
std::optional<std::uint64_t> row0_column(const Formula& f);
/// Matches the tail shape \forall j((j>N)\to ...); returns N.
std::optional<std::uint64_t> tail_bound(const Formula& f);

}  // namespace proofforge

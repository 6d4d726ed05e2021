#pragma once

#include "proofforge/formula.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace proofforge {

enum class Move : std::uint8_t { Left, Stay, Right };

char move_glyph(Move m);

using StateId = std::uint32_t;

struct Action {
    StateId next;
    TapeSymbol write;
    Move move;
};

/// One rule of the transition function, by name.
struct Transition {
    std::string state;
    TapeSymbol read;
    std::string next;
    TapeSymbol write;
    Move move;
};

/// Deterministic single-tape machine over {0, 1, blank, left-end}.
///
/// States are kept in insertion order; that order fixes the order of the
/// transition formulas in the encoded theory. The transition table may be
/// partial while a machine is being built; validate_machine() reports gaps.
class TuringMachine {
public:
    TuringMachine(std::string start, std::string halt);

    StateId add_state(const std::string& name);
    void set_rule(const Transition& t);

    StateId start() const { return start_; }
    StateId halt() const { return halt_; }
    const std::string& name(StateId s) const { return names_.at(s); }
    const std::vector<std::string>& states() const { return names_; }
    std::optional<StateId> find_state(std::string_view name) const;

    const std::optional<Action>& rule(StateId q, TapeSymbol a) const {
        return delta_[q * 4 + static_cast<std::size_t>(a)];
    }
    std::vector<Transition> transitions() const;

private:
    StateId start_;
    StateId halt_;
    std::vector<std::string> names_;
    std::vector<std::optional<Action>> delta_;
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool valid() const { return violations.empty(); }
};

ValidationReport validate_machine(const TuringMachine& m);

/// Machine text format: `start: q`, `halt: q`, then `q a -> p b M` per rule.
TuringMachine parse_machine(std::string_view text);
std::string format_machine(const TuringMachine& m);

using Bits = std::string;   // over {'0','1'}

enum class Verdict : std::uint8_t {
    Halted,           // halted with the head on column 1 reading a bit
    MalformedHalt,    // halted but the output convention is violated
    StepCapExceeded,
};

struct RunResult {
    Verdict verdict = Verdict::StepCapExceeded;
    int value = -1;                 // 0/1 when Halted
    std::size_t steps = 0;          // delta applications up to halting
    std::size_t max_column = 0;     // rightmost column the head visited

    bool halted_with(int v) const { return verdict == Verdict::Halted && value == v; }
    friend bool operator==(const RunResult&, const RunResult&) = default;
};

RunResult run(const TuringMachine& m, std::string_view input, std::size_t cap);

struct TapeSquare {
    TapeSymbol symbol;
    StateId state;
    int flag;
    friend bool operator==(const TapeSquare&, const TapeSquare&) = default;
};

/// Rows 0..f+1 by columns 0..f+1 where f is the halting step count.
class ComputationTable {
public:
    ComputationTable(std::size_t size, std::vector<std::vector<TapeSquare>> rows, std::vector<std::size_t> heads)
        : size_(size), rows_(std::move(rows)), heads_(std::move(heads)) {}

    std::size_t size() const { return size_; }
    const TapeSquare& at(std::size_t row, std::size_t col) const { return rows_.at(row).at(col); }
    const std::vector<TapeSquare>& row(std::size_t r) const { return rows_.at(r); }
    std::size_t head(std::size_t row) const { return heads_.at(row); }

private:
    std::size_t size_;
    std::vector<std::vector<TapeSquare>> rows_;
    std::vector<std::size_t> heads_;
};

class CapExceeded : public std::runtime_error {
public:
    explicit CapExceeded(Bits input)
        : std::runtime_error("step cap exceeded on input \"" + input + "\""), input_(std::move(input)) {}
    const Bits& input() const { return input_; }

private:
    Bits input_;
};

/// Throws CapExceeded when the run does not halt within cap.
ComputationTable build_table(const TuringMachine& m, std::string_view input, std::size_t cap);

/// Maximum step count over all 2^n inputs of length n.
std::size_t time_profile(const TuringMachine& m, std::size_t n, std::size_t cap);

/// All bit strings of length n in dictionary order.
std::vector<Bits> strings_of_length(std::size_t n);
/// All bit strings of length <= n in string order (shorter first).
std::vector<Bits> strings_up_to(std::size_t n);

struct PrefixStability {
    bool certified = false;
    std::size_t k = 0;
    std::optional<Bits> witness;   // set on refutation
};

/// Certifies that on every input of length k the machine halts without the
/// head ever reaching column k, the column of the last input bit. Then the
/// first k-1 bits decide every input of length >= k.
PrefixStability prefix_stability(const TuringMachine& m, std::size_t k, std::size_t cap);

/// Smallest k in [1, k_max] with a certificate, if any.
std::optional<std::size_t> prefix_threshold(const TuringMachine& m, std::size_t k_max, std::size_t cap);

struct AllOnesReport {
    enum class Kind { AllOnes, Counterexample, CapExceeded } kind = Kind::AllOnes;
    std::optional<Bits> input;
    RunResult result;
};

/// Runs every input with |s| <= k in string order and stops at the first
/// one that does not halt with output 1.
AllOnesReport exhaustive_all_ones(const TuringMachine& m, std::size_t k, std::size_t cap);

namespace fixtures {

TuringMachine const1();     // writes 1 on column 1 regardless of input
TuringMachine firstbit();   // returns the first input bit, 1 on empty input
TuringMachine allzero();    // 1 iff the input contains no 1
TuringMachine scanner();    // walks to the first blank and back, returns 1

}  // namespace fixtures

}  // namespace proofforge

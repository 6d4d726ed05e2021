#pragma once

#include "proofforge/kernel.hpp"

#include <limits>

namespace proofforge {

struct ProofSection {
    enum class Kind { AxiomCell, BlankTailCell, TransitionCell };
    std::size_t row = 0;
    std::size_t col = 0;
    Formula target;
    FormulaSequence lines;
    Kind kind = Kind::AxiomCell;
};

struct SpecialProof {
    std::vector<ProofSection> sections;   // row-major over the table window
    Formula closing;                      // t_{d,1}=(v,halt,1) \to \exists i t_{i,1}=(v,halt,1)
    Formula goal;
    FormulaSequence proof;
    std::size_t f = 0;                    // halting step count
    std::size_t d = 0;                    // first row with the answer on column 1
    int value = 0;
};

Formula goal_formula(int value, const std::string& halt);
Formula cell_formula(const ComputationTable& table, const TuringMachine& m, std::size_t row, std::size_t col);

// Section templates. Each returns the lines in proof order; the kernel
// infers the justifications, so lines only need their premises earlier.

/// From the transition formula of `rule`, derives conjunct `conjunct` of its
/// consequent instantiated at i:=row, j:=col. Needs t_{row,col}=(read,q,1).
FormulaSequence instantiate_lines(const Transition& rule, std::size_t conjunct, std::uint64_t row, std::uint64_t col,
                                  KernelMode mode);
/// From \forall k(cond\to F) derives F at k:=col.
FormulaSequence pick_column_lines(const Formula& frame, std::uint64_t col);
/// Replaces \pi_M(t_{a-1,b}) by its known value: needs `carried` and `previous`.
FormulaSequence resolve_lines(const Formula& carried, const Formula& previous, KernelMode mode);
FormulaSequence blank_tail_lines(std::uint64_t col, std::uint64_t bound, const std::string& start);
FormulaSequence closing_lines(std::uint64_t d, int value, const std::string& halt);

ProofSection build_sec(const ComputationTable& table, const TableauTheory& theory, std::size_t row, std::size_t col,
                       KernelMode mode = KernelMode::Paper);

SpecialProof build_special_proof(const TableauTheory& theory, std::size_t cap, KernelMode mode = KernelMode::Paper);
SpecialProof build_special_proof(const TuringMachine& m, const Bits& s, std::size_t cap,
                                 KernelMode mode = KernelMode::Paper);

std::size_t fs_upper(const TuringMachine& m, const Bits& s, std::size_t cap, KernelMode mode = KernelMode::Paper);

struct LengthConstants {
    std::size_t K = 0;
    std::size_t C = 0;
    friend bool operator==(const LengthConstants&, const LengthConstants&) = default;
};

/// Every section and the closing pair have length < K*f + C for all inputs.
LengthConstants fit_length_constants(const TuringMachine& m, KernelMode mode = KernelMode::Paper);

struct FsSearch {
    std::optional<std::size_t> length;
    std::optional<FormulaSequence> proof;
    std::size_t tried = 0;
    bool budget_exhausted = false;
};

inline constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

/// Shortest proof of `goal` over sequences of pool formulas, in sequence
/// order, with total length < max_len and at most max_lines lines.
FsSearch fs_exact(const Theory& theory, const Formula& goal, const std::vector<Formula>& pool, std::size_t max_len,
                  std::size_t budget, std::size_t max_lines = kUnbounded, KernelMode mode = KernelMode::Paper);

FsSearch fs_exact(const TuringMachine& m, const Bits& s, int value, const std::vector<Formula>& pool,
                  std::size_t max_len, std::size_t budget, KernelMode mode = KernelMode::Paper);

/// Distinct lines of the special proof, in first-occurrence order.
std::vector<Formula> default_pool(const SpecialProof& p);

enum class ApfMode { Upper, Exact };

struct ApfCaps {
    std::size_t step_cap = 10000;
    std::size_t budget = 2000;
};

struct ApfResult {
    std::optional<std::size_t> value;   // empty when an exact search ran out of budget
    Bits witness;                       // input attaining the maximum
};

ApfResult apf(const TuringMachine& m, std::size_t n, ApfMode mode, const ApfCaps& caps,
              KernelMode kmode = KernelMode::Paper);

}  // namespace proofforge

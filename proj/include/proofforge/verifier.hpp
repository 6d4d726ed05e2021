#pragma once

#include "proofforge/synthesis.hpp"

#include <functional>
#include <json.hpp>

namespace proofforge {

struct StoredChecker {
    AdjointChecker checker;
    Bits witness;                    // input whose theory the proof came from
    std::vector<Formula> keyset;
    std::uint64_t reach = 0;         // largest constrained input column, plus 1
    std::size_t cost_bound = 0;      // fast-path replay cost bound
};

/// Ordered set of adjoint checkers. Re-inserting an identical checker is a
/// no-op; distinct proofs of equal type are kept since they accept
/// different theories.
class CheckerSet {
public:
    bool insert(StoredChecker c);
    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }
    const StoredChecker& operator[](std::size_t i) const { return items_[i]; }
    auto begin() const { return items_.begin(); }
    auto end() const { return items_.end(); }

private:
    std::vector<StoredChecker> items_;
};

inline constexpr std::size_t kDispatchCost = 1;

struct CostReport {
    std::vector<std::size_t> per_checker;
    std::size_t total = 0;
    std::size_t static_bound = 0;
};

struct VerifierRun {
    int value = 0;
    CostReport cost;
};

/// F_C: accepts s iff some checker accepts T<M,s>.
class GeneratedVerifier {
public:
    explicit GeneratedVerifier(EncodingPtr enc) : enc_(std::move(enc)) {}

    /// Wraps a proof verified against T<M,witness>. Returns false if already present.
    bool add(const FormulaSequence& proof, const Bits& witness, KernelMode mode = KernelMode::Paper);
    bool add(const AdjointChecker& ck, const Bits& witness);

    const EncodingPtr& encoding() const { return enc_; }
    const TuringMachine& machine() const { return enc_->machine(); }
    const CheckerSet& checkers() const { return set_; }
    std::uint64_t input_reach() const;

private:
    EncodingPtr enc_;
    CheckerSet set_;
};

std::size_t checker_cost_bound(const AdjointChecker& ck, const MachineEncoding& enc);
std::size_t static_bound(const GeneratedVerifier& v);

/// Evaluates every checker; the result is their disjunction.
VerifierRun run_verifier(const GeneratedVerifier& v, const Bits& s);

struct EquivalenceReport {
    std::size_t checked = 0;
    std::vector<Bits> divergences;
    bool ok() const { return divergences.empty(); }
};

EquivalenceReport disjunction_equiv_check(const GeneratedVerifier& v, std::size_t max_len);

/// Supplies a normal proof of M(r)=1, or nothing to fall back to the built-in search.
using ProofSupplier = std::function<std::optional<FormulaSequence>(const TuringMachine&, const Bits&)>;

struct DiscoveryCaps {
    std::size_t step_cap = 10000;
    std::size_t k_cap = 8;
    std::size_t pool_budget = 2000;
    std::size_t max_iterations = 4096;
    KernelMode mode = KernelMode::Paper;
};

struct DiscoveryIteration {
    std::uint64_t K = 0;
    Bits witness;
    std::string source;   // supplier, shortest, special
    std::size_t lines = 0;
    std::size_t length = 0;
    std::size_t fs_tried = 0;
    std::vector<Formula> keyset;
    std::uint64_t reach = 0;
};

struct DiscoveryOutcome {
    enum class Kind { ProvedAllOnes, Counterexample, Exhausted };
    Kind kind = Kind::Exhausted;
    GeneratedVerifier verifier;
    std::uint64_t K = 0;
    std::optional<Bits> counterexample;
    RunResult counter_run;
    std::string cap;                 // which cap tripped
    std::optional<Bits> cap_input;   // input that hit the step cap
    std::vector<DiscoveryIteration> iterations;
};

DiscoveryOutcome discover(const TuringMachine& m, const DiscoveryCaps& caps, const ProofSupplier& supplier = {});

const char* outcome_name(DiscoveryOutcome::Kind k);

/// Configurations of a run, one line per step: `i: state head tape`.
std::vector<std::string> run_trace(const TuringMachine& m, const Bits& s, std::size_t cap);

std::string transcript_text(const DiscoveryOutcome& out, const DiscoveryCaps& caps);
nlohmann::json transcript_json(const DiscoveryOutcome& out, const DiscoveryCaps& caps);

}  // namespace proofforge

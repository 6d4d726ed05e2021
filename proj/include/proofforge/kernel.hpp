#pragma once

#include "proofforge/encoding.hpp"

#include <optional>
#include <string>
#include <vector>

namespace proofforge {

/// Strict admits only the seven literal axiom groups. Paper additionally
/// admits iterated instantiation, quantified tautological weakening and
/// equality replacement with arbitrary terms.
enum class KernelMode { Paper, Strict };

const char* mode_name(KernelMode m);
std::optional<KernelMode> parse_mode(std::string_view s);

struct CheckerStep {
    enum class Kind : std::uint8_t { In, Lambda, Zfc, Mp, Gen };
    Kind kind = Kind::In;
    std::size_t j = 0;
    std::size_t k = 0;
    std::string var;

    static CheckerStep in() { return {Kind::In, 0, 0, {}}; }
    static CheckerStep lambda() { return {Kind::Lambda, 0, 0, {}}; }
    static CheckerStep zfc() { return {Kind::Zfc, 0, 0, {}}; }
    static CheckerStep mp(std::size_t j, std::size_t k) { return {Kind::Mp, j, k, {}}; }
    static CheckerStep gen(std::size_t j, std::string v) { return {Kind::Gen, j, 0, std::move(v)}; }

    friend bool operator==(const CheckerStep&, const CheckerStep&) = default;
};

std::string format_step(const CheckerStep& s);
std::optional<CheckerStep> parse_step(std::string_view text);

struct ProofType {
    std::vector<CheckerStep> steps;
    bool empty() const { return steps.empty(); }
    std::size_t size() const { return steps.size(); }
    friend bool operator==(const ProofType&, const ProofType&) = default;
};

bool same_type(const ProofType& a, const ProofType& b);

struct LambdaVerdict {
    bool ok = false;
    int group = 0;            // 1..7; 0 when rejected
    bool extended = false;    // matched only a paper-mode schema
    std::string reason;
};

LambdaVerdict lambda_verdict(const Formula& f, KernelMode mode);
bool check_lambda(const Formula& f, KernelMode mode = KernelMode::Paper);

/// Ground propositional combinations of numeral comparisons and literal
/// triple (in)equalities, evaluated by computation.
std::optional<bool> evaluate_ground(const Formula& f);
bool check_zfc(const Formula& f);

/// Truth constant standing for an empty conjunction.
Formula truth_constant();

struct VerifyResult {
    bool ok = false;
    ProofType type;                         // empty on failure
    std::optional<std::size_t> failed_line;
    std::string reason;
    std::size_t comparisons = 0;            // membership cost over all lines
};

/// Infers one justification per line in the priority In, Lambda, Zfc, Mp, Gen.
VerifyResult verify(const Theory& theory, const FormulaSequence& proof, const std::optional<Formula>& goal,
                    KernelMode mode = KernelMode::Paper);

/// Re-checks stored justifications as written.
VerifyResult check_justified(const Theory& theory, const FormulaSequence& proof, const ProofType& type,
                             const std::optional<Formula>& goal, KernelMode mode = KernelMode::Paper);

/// A proof together with its type, replayable against other theories.
/// Steps that do not consult the theory are validated once here.
class AdjointChecker {
public:
    AdjointChecker(FormulaSequence proof, ProofType type, KernelMode mode = KernelMode::Paper);

    const FormulaSequence& proof() const { return proof_; }
    const ProofType& type() const { return type_; }
    KernelMode mode() const { return mode_; }
    const std::vector<std::size_t>& in_lines() const { return in_lines_; }
    bool structurally_valid() const { return structural_ok_; }

    friend bool operator==(const AdjointChecker& a, const AdjointChecker& b) {
        return a.type_ == b.type_ && a.proof_ == b.proof_;
    }

private:
    FormulaSequence proof_;
    ProofType type_;
    KernelMode mode_;
    std::vector<std::size_t> in_lines_;
    bool structural_ok_ = false;
};

/// Verifies the proof against its own theory and wraps it. Throws on failure.
AdjointChecker make_checker(const Theory& theory, const FormulaSequence& proof, KernelMode mode = KernelMode::Paper);

struct AdjointResult {
    bool accepted = false;
    std::size_t comparisons = 0;
};

/// Every In step is replayed (no short circuit), so the cost depends only on
/// the proof and the membership procedure.
AdjointResult adjoint_check(const AdjointChecker& ck, const Theory& theory);

struct KeyInfo {
    std::vector<Formula> keyset;   // in theory order
    Formula keyinfo;
};

KeyInfo key_info(const FormulaSequence& proof, const TableauTheory& theory);

struct ProofFile {
    std::optional<Formula> goal;
    FormulaSequence proof;
    ProofType type;
    std::vector<std::string> comments;   // leading '#' lines, without the '#'
};

std::string format_proof(const FormulaSequence& proof, const ProofType& type, const std::optional<Formula>& goal);
ProofFile parse_proof(std::string_view text);

}  // namespace proofforge

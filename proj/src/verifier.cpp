#include "proofforge/verifier.hpp"

#include <algorithm>
#include <sstream>

namespace proofforge {

bool CheckerSet::insert(StoredChecker c) {
    for (const auto& x : items_)
        if (x.checker == c.checker) return false;
    items_.push_back(std::move(c));
    return true;
}

std::size_t checker_cost_bound(const AdjointChecker& ck, const MachineEncoding& enc) {
    std::size_t bound = 0;
    for (std::size_t i : ck.in_lines()) {
        const Formula& f = ck.proof()[i];
        if (row0_column(f) || tail_bound(f))
            bound += 1;
        else
            bound += literal_scan(enc.def_part(), f).comparisons;
    }
    return bound;
}

namespace {

std::uint64_t keyset_reach(const std::vector<Formula>& keyset) {
    std::uint64_t reach = 0;
    for (const auto& f : keyset) {
        if (auto b = row0_column(f)) reach = std::max<std::uint64_t>(reach, *b + 1);
        if (auto n = tail_bound(f)) reach = std::max<std::uint64_t>(reach, *n + 1);
    }
    return reach;
}

}  // namespace

bool GeneratedVerifier::add(const AdjointChecker& ck, const Bits& witness) {
    TableauTheory origin(enc_, witness);
    StoredChecker sc{ck, witness, key_info(ck.proof(), origin).keyset, 0, checker_cost_bound(ck, *enc_)};
    sc.reach = keyset_reach(sc.keyset);
    return set_.insert(std::move(sc));
}

bool GeneratedVerifier::add(const FormulaSequence& proof, const Bits& witness, KernelMode mode) {
    return add(make_checker(TableauTheory(enc_, witness), proof, mode), witness);
}

std::uint64_t GeneratedVerifier::input_reach() const {
    std::uint64_t reach = 0;
    for (const auto& c : set_) reach = std::max(reach, c.reach);
    return reach;
}

std::size_t static_bound(const GeneratedVerifier& v) {
    std::size_t total = kDispatchCost;
    for (const auto& c : v.checkers()) total += c.cost_bound;
    return total;
}

VerifierRun run_verifier(const GeneratedVerifier& v, const Bits& s) {
    VerifierRun out;
    out.cost.static_bound = static_bound(v);
    if (v.checkers().empty()) return out;
    TableauTheory theory(v.encoding(), s);
    for (const auto& c : v.checkers()) {
        AdjointResult r = adjoint_check(c.checker, theory);
        out.cost.per_checker.push_back(r.comparisons);
        out.cost.total += r.comparisons;
        if (r.accepted) out.value = 1;
    }
    return out;
}

EquivalenceReport disjunction_equiv_check(const GeneratedVerifier& v, std::size_t max_len) {
    EquivalenceReport rep;
    for (const auto& s : strings_up_to(max_len)) {
        ++rep.checked;
        TableauTheory theory(v.encoding(), s);
        bool any = false;
        for (const auto& c : v.checkers()) any = any || adjoint_check(c.checker, theory).accepted;
        if ((run_verifier(v, s).value == 1) != any) rep.divergences.push_back(s);
    }
    return rep;
}

const char* outcome_name(DiscoveryOutcome::Kind k) {
    switch (k) {
        case DiscoveryOutcome::Kind::ProvedAllOnes: return "proved-all-ones";
        case DiscoveryOutcome::Kind::Counterexample: return "counterexample";
        case DiscoveryOutcome::Kind::Exhausted: return "exhausted";
    }
    return "?";
}

DiscoveryOutcome discover(const TuringMachine& m, const DiscoveryCaps& caps, const ProofSupplier& supplier) {
    DiscoveryOutcome out{DiscoveryOutcome::Kind::Exhausted, GeneratedVerifier(encode_machine(m)), 0, {}, {}, {}, {},
                         {}};
    GeneratedVerifier& v = out.verifier;
    const Formula goal = goal_formula(1, m.name(m.halt()));
    // strings_up_to is length-then-lex ordered, so raising K only appends.
    std::vector<Bits> inputs;
    std::vector<char> covered;
    std::size_t ran = 0;
    for (;;) {
        out.K = v.input_reach();
        if (out.K > caps.k_cap) {
            out.cap = "k-cap";
            return out;
        }
        std::size_t have = inputs.size();
        if (inputs.empty() || inputs.back().size() < out.K) {
            inputs = strings_up_to(out.K);
            covered.resize(inputs.size(), 0);
        }
        for (; ran < inputs.size(); ++ran) {
            const Bits& s = inputs[ran];
            RunResult r = run(m, s, caps.step_cap);
            if (r.verdict == Verdict::StepCapExceeded) {
                out.cap = "step-cap";
                out.cap_input = s;
                return out;
            }
            if (!r.halted_with(1)) {
                out.kind = DiscoveryOutcome::Kind::Counterexample;
                out.counterexample = s;
                out.counter_run = r;
                return out;
            }
        }
        for (std::size_t i = have; i < inputs.size(); ++i) covered[i] = run_verifier(v, inputs[i]).value == 1;
        std::optional<Bits> uncovered;
        for (std::size_t i = 0; i < inputs.size(); ++i)
            if (!covered[i]) {
                uncovered = inputs[i];
                break;
            }
        if (!uncovered) {
            out.kind = DiscoveryOutcome::Kind::ProvedAllOnes;
            return out;
        }
        if (out.iterations.size() >= caps.max_iterations) {
            out.cap = "iterations";
            return out;
        }

        const Bits& r = *uncovered;
        TableauTheory theory(v.encoding(), r);
        DiscoveryIteration it;
        it.K = out.K;
        it.witness = r;
        std::optional<FormulaSequence> proof;
        if (supplier) {
            proof = supplier(m, r);
            if (proof && verify(theory, *proof, goal, caps.mode).ok)
                it.source = "supplier";
            else
                proof.reset();
        }
        if (!proof) {
            SpecialProof sp = build_special_proof(theory, caps.step_cap, caps.mode);
            std::size_t upper = seq_ascii_len(sp.proof);
            if (caps.pool_budget > 0) {
                FsSearch fs = fs_exact(theory, goal, default_pool(sp), upper, caps.pool_budget, kUnbounded, caps.mode);
                it.fs_tried = fs.tried;
                if (fs.proof) {
                    proof = std::move(fs.proof);
                    it.source = "shortest";
                }
            }
            if (!proof) {
                proof = std::move(sp.proof);
                it.source = "special";
            }
        }
        AdjointChecker ck = make_checker(theory, *proof, caps.mode);
        if (!adjoint_check(ck, theory).accepted) throw std::logic_error("new checker rejects its own theory");
        it.lines = proof->size();
        it.length = seq_ascii_len(*proof);
        v.add(ck, r);
        const StoredChecker& added = *(v.checkers().end() - 1);
        for (std::size_t i = 0; i < inputs.size(); ++i)
            if (!covered[i]) covered[i] = adjoint_check(added.checker, TableauTheory(v.encoding(), inputs[i])).accepted;
        it.keyset = added.keyset;
        it.reach = added.reach;
        out.iterations.push_back(std::move(it));
    }
}

std::vector<std::string> run_trace(const TuringMachine& m, const Bits& s, std::size_t cap) {
    std::vector<std::string> out;
    ComputationTable t = build_table(m, s, cap);
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        std::string tape;
        for (const auto& sq : t.row(i)) tape += symbol_glyph(sq.symbol);
        out.push_back(std::to_string(i) + ": " + m.name(t.at(i, 0).state) + " " + std::to_string(t.head(i)) + " " +
                      tape);
    }
    return out;
}

std::string transcript_text(const DiscoveryOutcome& out, const DiscoveryCaps& caps) {
    std::ostringstream os;
    const TuringMachine& m = out.verifier.machine();
    os << "discover: step-cap " << caps.step_cap << ", k-cap " << caps.k_cap << ", pool-budget " << caps.pool_budget
       << ", mode " << mode_name(caps.mode) << "\n";
    for (std::size_t n = 0; n < out.iterations.size(); ++n) {
        const auto& it = out.iterations[n];
        os << "iteration " << n << ": K=" << it.K << " witness \"" << it.witness << "\" proof " << it.source << " ("
           << it.lines << " lines, length " << it.length << ") reach " << it.reach << "\n";
        Formula info = it.keyset.empty() ? truth_constant() : fold_conjunction(it.keyset);
        os << "  keyinfo " << to_text(info) << "\n";
    }
    os << "outcome: " << outcome_name(out.kind) << "\n";
    switch (out.kind) {
        case DiscoveryOutcome::Kind::ProvedAllOnes:
            os << "certificate: " << out.verifier.checkers().size() << " checkers, K=" << out.K
               << ", every input of length <= K returns 1 and is accepted\n";
            break;
        case DiscoveryOutcome::Kind::Counterexample: {
            os << "counterexample: \"" << *out.counterexample << "\"";
            if (out.counter_run.verdict == Verdict::Halted)
                os << " returns " << out.counter_run.value << " after " << out.counter_run.steps << " steps\n";
            else
                os << " halts without an output on column 1\n";
            for (const auto& line : run_trace(m, *out.counterexample, caps.step_cap)) os << "  " << line << "\n";
            break;
        }
        case DiscoveryOutcome::Kind::Exhausted:
            os << "exhausted: " << out.cap;
            if (out.cap_input) os << " on input \"" << *out.cap_input << "\"";
            os << " with " << out.verifier.checkers().size() << " checkers, K=" << out.K << "\n";
            break;
    }
    return os.str();
}

nlohmann::json transcript_json(const DiscoveryOutcome& out, const DiscoveryCaps& caps) {
    nlohmann::json j;
    j["outcome"] = outcome_name(out.kind);
    j["K"] = out.K;
    j["checkers"] = out.verifier.checkers().size();
    j["caps"] = {{"step_cap", caps.step_cap},
                 {"k_cap", caps.k_cap},
                 {"pool_budget", caps.pool_budget},
                 {"mode", mode_name(caps.mode)}};
    nlohmann::json its = nlohmann::json::array();
    for (const auto& it : out.iterations) {
        nlohmann::json keys = nlohmann::json::array();
        for (const auto& f : it.keyset) keys.push_back(to_text(f));
        its.push_back({{"K", it.K},
                       {"witness", it.witness},
                       {"source", it.source},
                       {"lines", it.lines},
                       {"length", it.length},
                       {"reach", it.reach},
                       {"keyset", keys}});
    }
    j["iterations"] = its;
    if (out.counterexample) {
        j["counterexample"] = *out.counterexample;
        j["value"] = out.counter_run.value;
    }
    if (out.kind == DiscoveryOutcome::Kind::Exhausted) j["cap"] = out.cap;
    if (out.cap_input) j["cap_input"] = *out.cap_input;
    return j;
}

}  // namespace proofforge

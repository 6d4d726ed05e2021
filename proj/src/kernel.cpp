#include "proofforge/kernel.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

namespace proofforge {

const char* mode_name(KernelMode m) { return m == KernelMode::Paper ? "paper" : "strict"; }

std::optional<KernelMode> parse_mode(std::string_view s) {
    if (s == "paper") return KernelMode::Paper;
    if (s == "strict") return KernelMode::Strict;
    return std::nullopt;
}

std::string format_step(const CheckerStep& s) {
    switch (s.kind) {
        case CheckerStep::Kind::In: return "IN";
        case CheckerStep::Kind::Lambda: return "LAMBDA";
        case CheckerStep::Kind::Zfc: return "ZFC";
        case CheckerStep::Kind::Mp: return "MP " + std::to_string(s.j) + " " + std::to_string(s.k);
        case CheckerStep::Kind::Gen: return "GEN " + std::to_string(s.j) + " " + s.var;
    }
    return "?";
}

std::optional<CheckerStep> parse_step(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string word, extra;
    if (!(in >> word)) return std::nullopt;
    CheckerStep s;
    if (word == "IN")
        s = CheckerStep::in();
    else if (word == "LAMBDA")
        s = CheckerStep::lambda();
    else if (word == "ZFC")
        s = CheckerStep::zfc();
    else if (word == "MP") {
        std::size_t j, k;
        if (!(in >> j >> k)) return std::nullopt;
        s = CheckerStep::mp(j, k);
    } else if (word == "GEN") {
        std::size_t j;
        std::string v;
        if (!(in >> j >> v)) return std::nullopt;
        s = CheckerStep::gen(j, v);
    } else {
        return std::nullopt;
    }
    if (in >> extra) return std::nullopt;
    return s;
}

bool same_type(const ProofType& a, const ProofType& b) { return a == b; }

Formula truth_constant() { return Formula::compare(Term::numeral(0), Relation::Eq, Term::numeral(0)); }

// ---------------------------------------------------------------------------
// Propositional skeleton

namespace {

constexpr std::size_t kMaxAtoms = 20;

bool is_connective(const Formula& f) {
    switch (f.kind()) {
        case FormulaKind::Not:
        case FormulaKind::And:
        case FormulaKind::Or:
        case FormulaKind::Implies: return true;
        default: return false;
    }
}

using AtomMap = std::unordered_map<Formula, std::size_t, FormulaHash>;

void collect_atoms(const Formula& f, AtomMap& atoms) {
    if (!is_connective(f)) {
        atoms.emplace(f, atoms.size());
        return;
    }
    collect_atoms(f.left(), atoms);
    if (f.kind() != FormulaKind::Not) collect_atoms(f.right(), atoms);
}

bool eval_skeleton(const Formula& f, const AtomMap& atoms, std::uint32_t mask) {
    switch (f.kind()) {
        case FormulaKind::Not: return !eval_skeleton(f.left(), atoms, mask);
        case FormulaKind::And: return eval_skeleton(f.left(), atoms, mask) && eval_skeleton(f.right(), atoms, mask);
        case FormulaKind::Or: return eval_skeleton(f.left(), atoms, mask) || eval_skeleton(f.right(), atoms, mask);
        case FormulaKind::Implies:
            return !eval_skeleton(f.left(), atoms, mask) || eval_skeleton(f.right(), atoms, mask);
        default: return (mask >> atoms.at(f)) & 1U;
    }
}

enum class Taut { Yes, No, TooLarge };

Taut tautology(const Formula& f) {
    AtomMap atoms;
    collect_atoms(f, atoms);
    if (atoms.size() > kMaxAtoms) return Taut::TooLarge;
    const std::uint32_t rows = 1U << atoms.size();
    for (std::uint32_t mask = 0; mask < rows; ++mask)
        if (!eval_skeleton(f, atoms, mask)) return Taut::No;
    return Taut::Yes;
}

// ---------------------------------------------------------------------------
// Instance matching: proposes bindings, which callers confirm by substitution.

using Bindings = std::map<std::string, Term>;

bool active(const std::vector<std::string>& vars, const std::string& v) {
    return std::find(vars.begin(), vars.end(), v) != vars.end();
}

void match_term(const Term& p, const Term& t, const std::vector<std::string>& vars, Bindings& out) {
    if (p.kind() == TermKind::Variable && active(vars, p.name())) {
        out.try_emplace(p.name(), t);
        return;
    }
    if (p.kind() == TermKind::Offset && t.kind() == TermKind::Numeral) {
        if (p.delta() > 0 && t.value() == 0) return;
        match_term(p.first(), Term::numeral(p.delta() > 0 ? t.value() - 1 : t.value() + 1), vars, out);
        return;
    }
    if (p.kind() != t.kind()) return;
    switch (p.kind()) {
        case TermKind::Offset:
            if (p.delta() == t.delta()) match_term(p.first(), t.first(), vars, out);
            break;
        case TermKind::Square:
            match_term(p.first(), t.first(), vars, out);
            match_term(p.second(), t.second(), vars, out);
            break;
        case TermKind::Triple:
        case TermKind::Projection: match_term(p.first(), t.first(), vars, out); break;
        default: break;
    }
}

void match_formula(const Formula& p, const Formula& t, std::vector<std::string> vars, Bindings& out) {
    if (p.kind() != t.kind() || vars.empty()) return;
    switch (p.kind()) {
        case FormulaKind::Compare:
            match_term(p.lhs_term(), t.lhs_term(), vars, out);
            match_term(p.rhs_term(), t.rhs_term(), vars, out);
            break;
        case FormulaKind::Not: match_formula(p.left(), t.left(), vars, out); break;
        case FormulaKind::And:
        case FormulaKind::Or:
        case FormulaKind::Implies:
            match_formula(p.left(), t.left(), vars, out);
            match_formula(p.right(), t.right(), vars, out);
            break;
        case FormulaKind::Forall:
        case FormulaKind::Exists:
            if (p.var() != t.var()) return;
            std::erase(vars, p.var());
            match_formula(p.body(), t.body(), vars, out);
            break;
    }
}

// True iff `instance` is body[t_i/x_i] for some terms t_i substitutable for x_i.
bool is_instance(const Formula& body, const std::vector<std::string>& vars, const Formula& instance) {
    Bindings found;
    match_formula(body, instance, vars, found);
    std::vector<Binding> bindings;
    for (const auto& v : vars) {
        auto it = found.find(v);
        Term value = it == found.end() ? Term::variable(v) : it->second;
        if (!substitutable(body, v, value)) return false;
        if (vars.size() > 1)
            for (const auto& w : vars)
                if (term_has_var(value, w) && !(value.kind() == TermKind::Variable && value.name() == v)) return false;
        bindings.push_back({v, value});
    }
    return substitute(body, bindings) == instance;
}

// ---------------------------------------------------------------------------
// Equality replacement

Term replace_all(const Term& t, const Term& from, const Term& to) {
    if (t == from) return to;
    switch (t.kind()) {
        case TermKind::Offset: return Term::offset(replace_all(t.first(), from, to), t.delta());
        case TermKind::Square: return Term::square(replace_all(t.first(), from, to), replace_all(t.second(), from, to));
        case TermKind::Triple: return Term::triple(replace_all(t.first(), from, to), t.name(), t.flag());
        case TermKind::Projection: return Term::projection(replace_all(t.first(), from, to));
        default: return t;
    }
}

bool replaces_some(const Term& p, const Term& q, const Term& x, const Term& y) {
    if (p == q) return true;
    if (p == x && q == y) return true;
    if (p.kind() != q.kind()) return false;
    switch (p.kind()) {
        case TermKind::Offset: return p.delta() == q.delta() && replaces_some(p.first(), q.first(), x, y);
        case TermKind::Square:
            return replaces_some(p.first(), q.first(), x, y) && replaces_some(p.second(), q.second(), x, y);
        case TermKind::Triple:
            return p.name() == q.name() && p.flag() == q.flag() && replaces_some(p.first(), q.first(), x, y);
        case TermKind::Projection: return replaces_some(p.first(), q.first(), x, y);
        default: return false;
    }
}

// ---------------------------------------------------------------------------
// The seven groups

bool group3(const Formula& f) {
    // \forall x(a\to b)\to(\forall x a\to\forall x b)
    const Formula& l = f.left();
    const Formula& r = f.right();
    if (l.kind() != FormulaKind::Forall || l.body().kind() != FormulaKind::Implies) return false;
    if (r.kind() != FormulaKind::Implies) return false;
    const Formula& ra = r.left();
    const Formula& rb = r.right();
    if (ra.kind() != FormulaKind::Forall || rb.kind() != FormulaKind::Forall) return false;
    return ra.var() == l.var() && rb.var() == l.var() && ra.body() == l.body().left() &&
           rb.body() == l.body().right();
}

bool group4(const Formula& f) {
    const Formula& r = f.right();
    return r.kind() == FormulaKind::Forall && r.body() == f.left() && !occurs_free(f.left(), r.var());
}

bool group5(const Formula& f, KernelMode mode) {
    if (f.kind() != FormulaKind::Compare || f.relation() != Relation::Eq || f.lhs_term() != f.rhs_term())
        return false;
    return mode == KernelMode::Paper || f.lhs_term().kind() == TermKind::Variable;
}

bool group6(const Formula& f, KernelMode mode, bool& extended) {
    const Formula& eq = f.left();
    const Formula& r = f.right();
    if (eq.kind() != FormulaKind::Compare || eq.relation() != Relation::Eq) return false;
    if (r.kind() != FormulaKind::Implies) return false;
    const Formula& a = r.left();
    const Formula& b = r.right();
    if (a.kind() != FormulaKind::Compare || b.kind() != FormulaKind::Compare) return false;
    const Term& x = eq.lhs_term();
    const Term& y = eq.rhs_term();
    bool vars = x.kind() == TermKind::Variable && y.kind() == TermKind::Variable;
    if (mode == KernelMode::Strict && !vars) return false;
    if (a.relation() == b.relation() && replaces_some(a.lhs_term(), b.lhs_term(), x, y) &&
        replaces_some(a.rhs_term(), b.rhs_term(), x, y)) {
        extended = !vars;
        return true;
    }
    if (mode == KernelMode::Paper) {
        Formula all = Formula::compare(replace_all(a.lhs_term(), x, y), a.relation(), replace_all(a.rhs_term(), x, y));
        if (all == b) {
            extended = true;
            return true;
        }
    }
    return false;
}

std::vector<std::string> forall_prefix(const Formula& f) {
    std::vector<std::string> vars;
    const Formula* cur = &f;
    while (cur->kind() == FormulaKind::Forall) {
        vars.push_back(cur->var());
        cur = &cur->body();
    }
    return vars;
}

const Formula& strip(const Formula& f, std::size_t n) {
    const Formula* cur = &f;
    for (std::size_t i = 0; i < n; ++i) cur = &cur->body();
    return *cur;
}

// Group 2, and with mode Paper the iterated form over the first m quantifiers.
bool group2(const Formula& f, KernelMode mode, bool& extended) {
    const Formula& l = f.left();
    if (l.kind() != FormulaKind::Forall) return false;
    auto prefix = forall_prefix(l);
    std::size_t depth = mode == KernelMode::Paper ? prefix.size() : 1;
    for (std::size_t m = 1; m <= depth; ++m) {
        std::vector<std::string> vars(prefix.begin(), prefix.begin() + static_cast<std::ptrdiff_t>(m));
        auto sorted = vars;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) break;
        if (is_instance(strip(l, m), vars, f.right())) {
            extended = m > 1;
            return true;
        }
    }
    return false;
}

bool group7(const Formula& f) {
    const Formula& r = f.right();
    if (r.kind() != FormulaKind::Exists) return false;
    return is_instance(r.body(), {r.var()}, f.left());
}

// \forall x..(P)\to\forall x..(Q) with the same prefix and P\to Q a tautology.
bool quantified_weakening(const Formula& f) {
    const Formula* l = &f.left();
    const Formula* r = &f.right();
    std::size_t depth = 0;
    while (l->kind() == FormulaKind::Forall && r->kind() == FormulaKind::Forall && l->var() == r->var()) {
        l = &l->body();
        r = &r->body();
        ++depth;
    }
    return depth > 0 && tautology(Formula::implication(*l, *r)) == Taut::Yes;
}

}  // namespace

LambdaVerdict lambda_verdict(const Formula& f, KernelMode mode) {
    LambdaVerdict v;
    auto accept = [&](int group, bool extended = false) {
        v.ok = true;
        v.group = group;
        v.extended = extended;
        return v;
    };
    if (is_connective(f)) {
        Taut t = tautology(f);
        if (t == Taut::Yes) return accept(1);
        if (t == Taut::TooLarge) v.reason = "skeleton too large";
    }
    if (group5(f, mode)) return accept(5, f.lhs_term().kind() != TermKind::Variable);
    if (f.kind() == FormulaKind::Implies) {
        bool ext = false;
        if (group2(f, mode, ext)) return accept(2, ext);
        if (group3(f)) return accept(3);
        if (group4(f)) return accept(4);
        if (group6(f, mode, ext)) return accept(6, ext);
        if (group7(f)) return accept(7);
        if (mode == KernelMode::Paper && quantified_weakening(f)) return accept(1, true);
    }
    if (v.reason.empty()) v.reason = "not a logical axiom";
    return v;
}

bool check_lambda(const Formula& f, KernelMode mode) { return lambda_verdict(f, mode).ok; }

// ---------------------------------------------------------------------------
// Ground facts

namespace {

bool literal_triple(const Term& t) { return t.kind() == TermKind::Triple && t.first().kind() == TermKind::Symbol; }

}  // namespace

std::optional<bool> evaluate_ground(const Formula& f) {
    switch (f.kind()) {
        case FormulaKind::Compare: {
            const Term& a = f.lhs_term();
            const Term& b = f.rhs_term();
            if (a.kind() == TermKind::Numeral && b.kind() == TermKind::Numeral) {
                auto x = a.value(), y = b.value();
                switch (f.relation()) {
                    case Relation::Eq: return x == y;
                    case Relation::Ne: return x != y;
                    case Relation::Lt: return x < y;
                    case Relation::Le: return x <= y;
                    case Relation::Gt: return x > y;
                    case Relation::Ge: return x >= y;
                }
            }
            bool literals = (literal_triple(a) && literal_triple(b)) ||
                            (a.kind() == TermKind::Symbol && b.kind() == TermKind::Symbol);
            if (!literals) return std::nullopt;
            if (f.relation() == Relation::Eq) return a == b;
            if (f.relation() == Relation::Ne) return a != b;
            return std::nullopt;
        }
        case FormulaKind::Not: {
            auto x = evaluate_ground(f.left());
            if (!x) return std::nullopt;
            return !*x;
        }
        case FormulaKind::And:
        case FormulaKind::Or:
        case FormulaKind::Implies: {
            auto x = evaluate_ground(f.left());
            auto y = evaluate_ground(f.right());
            if (!x || !y) return std::nullopt;
            if (f.kind() == FormulaKind::And) return *x && *y;
            if (f.kind() == FormulaKind::Or) return *x || *y;
            return !*x || *y;
        }
        default: return std::nullopt;
    }
}

bool check_zfc(const Formula& f) { return evaluate_ground(f).value_or(false); }

// ---------------------------------------------------------------------------
// Verification

namespace {

// Line lookups shared by inference and re-checking.
class LineIndex {
public:
    void add(const Formula& f, std::size_t i) {
        first_.try_emplace(f, i);
        if (f.kind() == FormulaKind::Implies) by_consequent_[f.right()].push_back(i);
    }

    std::optional<CheckerStep> modus_ponens(const FormulaSequence& proof, const Formula& f) const {
        auto it = by_consequent_.find(f);
        if (it == by_consequent_.end()) return std::nullopt;
        for (std::size_t j : it->second) {
            auto k = first_.find(proof[j].left());
            if (k != first_.end()) return CheckerStep::mp(j, k->second);
        }
        return std::nullopt;
    }

    std::optional<CheckerStep> generalization(const Formula& f) const {
        if (f.kind() != FormulaKind::Forall) return std::nullopt;
        auto it = first_.find(f.body());
        if (it == first_.end()) return std::nullopt;
        return CheckerStep::gen(it->second, f.var());
    }

private:
    std::unordered_map<Formula, std::size_t, FormulaHash> first_;
    std::unordered_map<Formula, std::vector<std::size_t>, FormulaHash> by_consequent_;
};

// Theory-independent justification verdicts, memoized per formula.
class AxiomCache {
public:
    explicit AxiomCache(KernelMode mode) : mode_(mode) {}

    bool lambda(const Formula& f) {
        auto [it, fresh] = lambda_.try_emplace(f, false);
        if (fresh) it->second = check_lambda(f, mode_);
        return it->second;
    }
    bool zfc(const Formula& f) {
        auto [it, fresh] = zfc_.try_emplace(f, false);
        if (fresh) it->second = check_zfc(f);
        return it->second;
    }

private:
    KernelMode mode_;
    std::unordered_map<Formula, bool, FormulaHash> lambda_;
    std::unordered_map<Formula, bool, FormulaHash> zfc_;
};

bool step_holds(const CheckerStep& s, std::size_t i, const FormulaSequence& proof, AxiomCache& cache) {
    const Formula& f = proof[i];
    switch (s.kind) {
        case CheckerStep::Kind::In: return false;
        case CheckerStep::Kind::Lambda: return cache.lambda(f);
        case CheckerStep::Kind::Zfc: return cache.zfc(f);
        case CheckerStep::Kind::Mp:
            return s.j < i && s.k < i && proof[s.j] == Formula::implication(proof[s.k], f);
        case CheckerStep::Kind::Gen:
            return s.j < i && f.kind() == FormulaKind::Forall && f.var() == s.var && f.body() == proof[s.j];
    }
    return false;
}

VerifyResult fail_at(VerifyResult r, std::size_t i, std::string reason) {
    r.ok = false;
    r.type.steps.clear();
    r.failed_line = i;
    r.reason = std::move(reason);
    return r;
}

VerifyResult finish_goal(VerifyResult r, const FormulaSequence& proof, const std::optional<Formula>& goal) {
    if (goal) {
        if (proof.empty()) return fail_at(std::move(r), 0, "empty proof");
        if (proof.back() != *goal) return fail_at(std::move(r), proof.size() - 1, "last line is not the goal");
    }
    r.ok = true;
    return r;
}

}  // namespace

VerifyResult verify(const Theory& theory, const FormulaSequence& proof, const std::optional<Formula>& goal,
                    KernelMode mode) {
    VerifyResult r;
    LineIndex index;
    AxiomCache cache(mode);
    std::unordered_map<Formula, Membership, FormulaHash> members;
    r.type.steps.reserve(proof.size());
    for (std::size_t i = 0; i < proof.size(); ++i) {
        const Formula& f = proof[i];
        auto [mit, fresh] = members.try_emplace(f);
        if (fresh) mit->second = theory.member(f);
        r.comparisons += mit->second.comparisons;
        std::optional<CheckerStep> step;
        if (mit->second.member)
            step = CheckerStep::in();
        else if (cache.lambda(f))
            step = CheckerStep::lambda();
        else if (cache.zfc(f))
            step = CheckerStep::zfc();
        else if (auto mp = index.modus_ponens(proof, f))
            step = mp;
        else if (auto gen = index.generalization(f))
            step = gen;
        if (!step) return fail_at(std::move(r), i, "no justification for line " + std::to_string(i));
        r.type.steps.push_back(*step);
        index.add(f, i);
    }
    return finish_goal(std::move(r), proof, goal);
}

VerifyResult check_justified(const Theory& theory, const FormulaSequence& proof, const ProofType& type,
                             const std::optional<Formula>& goal, KernelMode mode) {
    VerifyResult r;
    if (type.size() != proof.size())
        return fail_at(std::move(r), std::min(type.size(), proof.size()), "justification count mismatch");
    AxiomCache cache(mode);
    for (std::size_t i = 0; i < proof.size(); ++i) {
        const CheckerStep& s = type.steps[i];
        bool ok;
        if (s.kind == CheckerStep::Kind::In) {
            Membership m = theory.member(proof[i]);
            r.comparisons += m.comparisons;
            ok = m.member;
        } else {
            ok = step_holds(s, i, proof, cache);
        }
        if (!ok) return fail_at(std::move(r), i, "line " + std::to_string(i) + " is not " + format_step(s));
    }
    r.type = type;
    return finish_goal(std::move(r), proof, goal);
}

AdjointChecker::AdjointChecker(FormulaSequence proof, ProofType type, KernelMode mode)
    : proof_(std::move(proof)), type_(std::move(type)), mode_(mode) {
    structural_ok_ = !type_.empty() && type_.size() == proof_.size();
    if (!structural_ok_) return;
    AxiomCache cache(mode_);
    for (std::size_t i = 0; i < proof_.size(); ++i) {
        const CheckerStep& s = type_.steps[i];
        if (s.kind == CheckerStep::Kind::In)
            in_lines_.push_back(i);
        else if (!step_holds(s, i, proof_, cache))
            structural_ok_ = false;
    }
}

AdjointChecker make_checker(const Theory& theory, const FormulaSequence& proof, KernelMode mode) {
    VerifyResult r = verify(theory, proof, std::nullopt, mode);
    if (!r.ok) throw std::invalid_argument("proof does not verify: " + r.reason);
    return AdjointChecker(proof, std::move(r.type), mode);
}

AdjointResult adjoint_check(const AdjointChecker& ck, const Theory& theory) {
    AdjointResult r;
    bool all = ck.structurally_valid();
    for (std::size_t i : ck.in_lines()) {
        Membership m = theory.member(ck.proof()[i]);
        r.comparisons += m.comparisons;
        all = all && m.member;
    }
    r.accepted = all;
    return r;
}

KeyInfo key_info(const FormulaSequence& proof, const TableauTheory& theory) {
    std::map<std::size_t, Formula> found;
    for (const auto& f : proof)
        if (auto pos = theory.input_position(f)) found.try_emplace(*pos, f);
    KeyInfo info{{}, truth_constant()};
    for (const auto& [pos, f] : found) info.keyset.push_back(f);
    if (!info.keyset.empty()) info.keyinfo = fold_conjunction(info.keyset);
    return info;
}

// ---------------------------------------------------------------------------
// Proof files

std::string format_proof(const FormulaSequence& proof, const ProofType& type, const std::optional<Formula>& goal) {
    std::string out;
    if (goal) out += "goal: " + to_text(*goal) + "\n";
    for (std::size_t i = 0; i < proof.size(); ++i) {
        out += std::to_string(i) + " | " + to_text(proof[i]);
        if (i < type.size()) out += " | " + format_step(type.steps[i]);
        out += '\n';
    }
    return out;
}

namespace {

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace

ProofFile parse_proof(std::string_view text) {
    ProofFile pf;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    bool any_steps = false, missing_steps = false;
    auto error = [&](const std::string& msg) {
        return std::invalid_argument("proof line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '#') {
            pf.comments.push_back(trim(std::string_view(line).substr(1)));
            continue;
        }
        if (line.rfind("goal:", 0) == 0) {
            pf.goal = parse_formula(trim(std::string_view(line).substr(5)));
            continue;
        }
        auto bar1 = line.find('|');
        if (bar1 == std::string::npos) throw error("expected '<i> | <formula> | <justification>'");
        auto bar2 = line.find('|', bar1 + 1);
        std::string idx = trim(std::string_view(line).substr(0, bar1));
        std::string formula = trim(std::string_view(line).substr(bar1 + 1, bar2 == std::string::npos
                                                                               ? std::string::npos
                                                                               : bar2 - bar1 - 1));
        if (idx != std::to_string(pf.proof.size())) throw error("expected line number " + std::to_string(pf.proof.size()));
        pf.proof.push_back(parse_open_formula(formula));
        if (bar2 == std::string::npos) {
            missing_steps = true;
            continue;
        }
        auto step = parse_step(trim(std::string_view(line).substr(bar2 + 1)));
        if (!step) throw error("bad justification");
        pf.type.steps.push_back(*step);
        any_steps = true;
    }
    if (any_steps && missing_steps) throw std::invalid_argument("justifications must be given for all lines or none");
    return pf;
}

}  // namespace proofforge

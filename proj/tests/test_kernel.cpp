#include "support.hpp"

#include <doctest.h>

#include <functional>

using namespace pftest;

namespace {

Formula P(const std::string& s) { return parse_open_formula(s); }

// Truth-table oracle over the atoms a0..a3, independent of the kernel.
bool eval(const Formula& f, const std::vector<Formula>& atoms, unsigned mask) {
    switch (f.kind()) {
        case FormulaKind::Not: return !eval(f.left(), atoms, mask);
        case FormulaKind::And: return eval(f.left(), atoms, mask) && eval(f.right(), atoms, mask);
        case FormulaKind::Or: return eval(f.left(), atoms, mask) || eval(f.right(), atoms, mask);
        case FormulaKind::Implies: return !eval(f.left(), atoms, mask) || eval(f.right(), atoms, mask);
        default:
            for (std::size_t i = 0; i < atoms.size(); ++i)
                if (atoms[i] == f) return mask >> i & 1;
            throw std::logic_error("unknown atom");
    }
}

Formula rand_prop(std::mt19937& g, const std::vector<Formula>& atoms, int depth) {
    int k = std::uniform_int_distribution<int>(0, depth > 0 ? 4 : 0)(g);
    switch (k) {
        case 0: return atoms[std::uniform_int_distribution<std::size_t>(0, atoms.size() - 1)(g)];
        case 1: return Formula::negation(rand_prop(g, atoms, depth - 1));
        case 2: return Formula::conjunction(rand_prop(g, atoms, depth - 1), rand_prop(g, atoms, depth - 1));
        case 3: return Formula::disjunction(rand_prop(g, atoms, depth - 1), rand_prop(g, atoms, depth - 1));
        default: return Formula::implication(rand_prop(g, atoms, depth - 1), rand_prop(g, atoms, depth - 1));
    }
}

}  // namespace

TEST_CASE("logical axioms by group") {
    Formula phi = P("$t_{0,0}=(>,q0,1)$");
    CHECK(lambda_verdict(Formula::implication(phi, phi), KernelMode::Strict).group == 1);
    LambdaVerdict g2 = lambda_verdict(P("$(\\forall j(j>3\\to t_{0,j}=(_,q0,0))\\to(5>3\\to t_{0,5}=(_,q0,0)))$"),
                                      KernelMode::Strict);
    CHECK(g2.ok);
    CHECK(g2.group == 2);
    CHECK_FALSE(check_lambda(phi));
    CHECK(lambda_verdict(P("$(\\forall j(j>1\\to j>0)\\to(\\forall j j>1\\to\\forall j j>0))$"), KernelMode::Strict)
              .group == 3);
    CHECK(lambda_verdict(P("$(2>1\\to\\forall j 2>1)$"), KernelMode::Strict).group == 4);
    CHECK_FALSE(check_lambda(P("$(j>1\\to\\forall j j>1)$"), KernelMode::Strict));
    CHECK(lambda_verdict(P("$x=x$"), KernelMode::Strict).group == 5);
    CHECK_FALSE(check_lambda(P("$t_{0,1}=t_{0,1}$"), KernelMode::Strict));
    CHECK(check_lambda(P("$t_{0,1}=t_{0,1}$"), KernelMode::Paper));
    CHECK(lambda_verdict(P("$(x=y\\to(t_{x,0}=(0,q0,0)\\to t_{y,0}=(0,q0,0)))$"), KernelMode::Strict).group == 6);
    CHECK(lambda_verdict(P("$(t_{2,1}=(1,qh,1)\\to\\exists i t_{i,1}=(1,qh,1))$"), KernelMode::Strict).group == 7);
    CHECK_FALSE(check_lambda(P("$(t_{2,1}=(1,qh,1)\\to\\exists i t_{i,2}=(1,qh,1))$"), KernelMode::Strict));
}

TEST_CASE("paper-mode schemas") {
    Formula iter = P("$(\\forall i\\forall j(t_{i,j}=(0,q0,1)\\to j>0)\\to(t_{3,4}=(0,q0,1)\\to 4>0))$");
    CHECK_FALSE(check_lambda(iter, KernelMode::Strict));
    LambdaVerdict v = lambda_verdict(iter, KernelMode::Paper);
    CHECK(v.ok);
    CHECK(v.extended);
    Formula weak = P("$(\\forall k(k>1\\to(k>0\\wedge k!=1))\\to\\forall k(k>1\\to k>0))$");
    CHECK_FALSE(check_lambda(weak, KernelMode::Strict));
    CHECK(check_lambda(weak, KernelMode::Paper));
}

TEST_CASE("skeleton size limit") {
    std::vector<Formula> atoms;
    for (int i = 0; i < 21; ++i) atoms.push_back(Formula::compare(Term::numeral(i), Relation::Eq, Term::numeral(i)));
    Formula f = atoms[0];
    for (int i = 1; i < 21; ++i) f = Formula::disjunction(f, atoms[i]);
    f = Formula::implication(f, f);
    LambdaVerdict v = lambda_verdict(f, KernelMode::Strict);
    CHECK_FALSE(v.ok);
    CHECK(v.reason == "skeleton too large");
}

TEST_CASE("group 1 agrees with a truth-table oracle") {
    std::vector<Formula> atoms{P("$t_{0,0}=(0,q0,0)$"), P("$t_{0,1}=(1,q0,0)$"), P("$3>2$"),
                               P("$\\forall j t_{0,j}=(_,q0,0)$")};
    std::mt19937 g(5);
    int taut = 0;
    for (int n = 0; n < 3000; ++n) {
        Formula f = rand_prop(g, atoms, 4);
        if (f.kind() == FormulaKind::Compare || f.kind() == FormulaKind::Forall) continue;
        bool all = true;
        for (unsigned mask = 0; mask < 16; ++mask) all = all && eval(f, atoms, mask);
        taut += all;
        CHECK_MESSAGE(check_lambda(f, KernelMode::Strict) == all, to_text(f));
    }
    CHECK(taut > 50);
}

TEST_CASE("ground facts") {
    CHECK(check_zfc(P("$102>6$")));
    CHECK(check_zfc(P("$(0,q,1)!=(1,q,1)$")));
    CHECK_FALSE(check_zfc(P("$3>5$")));
    CHECK_FALSE(check_zfc(P("$t_{0,0}=(>,q0,1)$")));
    CHECK(check_zfc(P("$(2>1\\wedge\\neg 1>2)$")));
    CHECK(truth_constant() == P("$0=0$"));
}

TEST_CASE("verify infers justifications") {
    Formula a = P("$t_{0,0}=(>,q0,1)$"), b = P("$t_{0,1}=(0,q0,0)$");
    Formula ab = Formula::implication(a, b);
    ExplicitTheory th({a, ab});
    VerifyResult r = verify(th, {a, ab, b}, b);
    REQUIRE(r.ok);
    CHECK(r.type.steps == std::vector<CheckerStep>{CheckerStep::in(), CheckerStep::in(), CheckerStep::mp(1, 0)});

    VerifyResult bad = verify(th, {b}, b);
    CHECK_FALSE(bad.ok);
    CHECK(bad.failed_line == 0u);
    CHECK(bad.type.empty());

    VerifyResult wrong_goal = verify(th, {a}, b);
    CHECK_FALSE(wrong_goal.ok);

    VerifyResult gen = verify(th, {a, Formula::forall("x", a)}, std::nullopt);
    REQUIRE(gen.ok);
    CHECK(gen.type.steps[1] == CheckerStep::gen(0, "x"));

    VerifyResult rejust = check_justified(th, {a, ab, b}, r.type, b);
    CHECK(rejust.ok);
    ProofType swapped = r.type;
    swapped.steps[2] = CheckerStep::mp(0, 1);
    CHECK_FALSE(check_justified(th, {a, ab, b}, swapped, b).ok);
}

TEST_CASE("proof types of the special proof") {
    TuringMachine m = fixtures::const1();
    auto enc = encode_machine(m);
    TableauTheory t00(enc, "00"), t01(enc, "01");
    SpecialProof p00 = build_special_proof(t00, 100), p01 = build_special_proof(t01, 100);
    VerifyResult r00 = verify(t00, p00.proof, p00.goal), r01 = verify(t01, p01.proof, p01.goal);
    REQUIRE(r00.ok);
    REQUIRE(r01.ok);
    CHECK(same_type(r00.type, r01.type));
    CHECK(same_type(r00.type, r00.type));
    ProofType tweaked = r00.type;
    for (auto& s : tweaked.steps)
        if (s.kind == CheckerStep::Kind::Mp) {
            ++s.k;
            break;
        }
    CHECK_FALSE(same_type(r00.type, tweaked));
    CHECK(verify(t00, p00.proof, p00.goal).type == r00.type);
}

TEST_CASE("adjoint checkers") {
    TuringMachine m = fixtures::firstbit();
    auto enc = encode_machine(m);
    TableauTheory r1(enc, "1");
    SpecialProof sp = build_special_proof(r1, 100);
    AdjointChecker ck = make_checker(r1, sp.proof);
    CHECK(ck.structurally_valid());
    CHECK(adjoint_check(ck, r1).accepted);
    CHECK_FALSE(adjoint_check(ck, TableauTheory(enc, "0")).accepted);

    KeyInfo ki = key_info(sp.proof, r1);
    CHECK(std::find(ki.keyset.begin(), ki.keyset.end(), P("$t_{0,1}=(1,q0,0)$")) != ki.keyset.end());

    // acceptance is exactly prooftype equality, for every input up to length 8
    for (const auto& s : strings_up_to(8)) {
        TableauTheory th(enc, s);
        bool accepted = adjoint_check(ck, th).accepted;
        VerifyResult vr = check_justified(th, sp.proof, ck.type(), sp.goal);
        CHECK(accepted == vr.ok);
        CHECK(accepted == all_members(th, ki.keyset));
        if (accepted) CHECK(s[0] == '1');
    }
    CHECK_THROWS(make_checker(TableauTheory(enc, "0"), sp.proof));
}

TEST_CASE("key information") {
    TuringMachine m = fixtures::const1();
    TableauTheory th(m, "");
    SpecialProof sp = build_special_proof(th, 100);
    KeyInfo ki = key_info(sp.proof, th);
    auto has = [&](const std::string& t) {
        return std::find(ki.keyset.begin(), ki.keyset.end(), P(t)) != ki.keyset.end();
    };
    CHECK(has("$t_{0,0}=(>,q0,1)$"));
    CHECK(has("$\\forall j(j>1\\to t_{0,j}=(_,q0,0))$"));
    for (const auto& f : ki.keyset) CHECK(literal_scan(th.input_part(), f).member);
    CHECK(ki.keyinfo == fold_conjunction(ki.keyset));

    FormulaSequence only_def{th.def_part()[0]};
    KeyInfo none = key_info(only_def, th);
    CHECK(none.keyset.empty());
    CHECK(none.keyinfo == truth_constant());
}

TEST_CASE("proof files round trip") {
    TuringMachine m = fixtures::allzero();
    TableauTheory th(m, "0");
    SpecialProof sp = build_special_proof(th, 100);
    VerifyResult r = verify(th, sp.proof, sp.goal);
    REQUIRE(r.ok);
    std::string text = format_proof(sp.proof, r.type, sp.goal);
    ProofFile pf = parse_proof("# a comment\n" + text);
    CHECK(pf.comments == std::vector<std::string>{"a comment"});
    CHECK(pf.goal == sp.goal);
    CHECK(pf.proof == sp.proof);
    CHECK(pf.type == r.type);
    CHECK(format_proof(pf.proof, pf.type, pf.goal) == text);
    for (const auto& s : {CheckerStep::in(), CheckerStep::lambda(), CheckerStep::zfc(), CheckerStep::mp(4, 2),
                          CheckerStep::gen(3, "x1")})
        CHECK(parse_step(format_step(s)) == s);
    CHECK_FALSE(parse_step("MP 1"));
    CHECK_THROWS(parse_proof("0 | $1=1$ | IN\n2 | $1=1$ | IN\n"));
}

TEST_CASE("mutated proofs fail at the mutated line") {
    TuringMachine m = fixtures::const1();
    TableauTheory th(m, "1");
    SpecialProof sp = build_special_proof(th, 100);
    std::mt19937 g(3);
    Formula junk = P("$t_{7,7}=(0,q0,0)$");
    for (int n = 0; n < 25; ++n) {
        std::size_t i = std::uniform_int_distribution<std::size_t>(0, sp.proof.size() - 2)(g);
        std::vector<Formula> lines = sp.proof.items();
        lines[i] = junk;
        VerifyResult r = verify(th, FormulaSequence(lines), sp.goal);
        CHECK_FALSE(r.ok);
        REQUIRE(r.failed_line);
        CHECK(*r.failed_line == i);
    }
}

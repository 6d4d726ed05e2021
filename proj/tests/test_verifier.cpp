#include "support.hpp"

#include <doctest.h>

using namespace pftest;

TEST_CASE("empty verifier") {
    GeneratedVerifier v(encode_machine(fixtures::const1()));
    VerifierRun r = run_verifier(v, "0110");
    CHECK(r.value == 0);
    CHECK(r.cost.total == 0);
    CHECK(static_bound(v) == kDispatchCost);
    CHECK(v.input_reach() == 0);
    EquivalenceReport eq = disjunction_equiv_check(v, 4);
    CHECK(eq.ok());
    CHECK(eq.checked == 31);
}

TEST_CASE("single checker from the empty input") {
    TuringMachine m = fixtures::const1();
    auto enc = encode_machine(m);
    GeneratedVerifier v(enc);
    TableauTheory origin(enc, "");
    SpecialProof sp = build_special_proof(origin, 100);
    CHECK(v.add(sp.proof, ""));
    CHECK_FALSE(v.add(sp.proof, ""));
    CHECK(v.checkers().size() == 1);
    CHECK(run_verifier(v, "").value == 1);
    CHECK(static_bound(v) == v.checkers()[0].cost_bound + kDispatchCost);

    // acceptance follows key-set membership, whatever that gives on a longer input
    const auto& keyset = v.checkers()[0].keyset;
    for (const auto& s : {"", "0", "0110", "1111"}) {
        TableauTheory th(enc, s);
        CHECK(run_verifier(v, s).value == (all_members(th, keyset) ? 1 : 0));
    }
    CHECK(run_verifier(v, "0110").value == 0);
    CHECK(disjunction_equiv_check(v, 8).ok());
}

TEST_CASE("cost stays under the static bound") {
    TuringMachine m = fixtures::allzero();
    auto enc = encode_machine(m);
    GeneratedVerifier v(enc);
    for (const auto& r : {"", "0", "00", "000"}) v.add(build_special_proof(TableauTheory(enc, r), 100).proof, r);
    std::size_t bound = static_bound(v);
    for (const auto& s : strings_up_to(10)) {
        VerifierRun run_r = run_verifier(v, s);
        CHECK(run_r.cost.total <= bound);
        CHECK(run_r.cost.per_checker.size() == v.checkers().size());
    }
}

TEST_CASE("output depends only on the first input_reach bits") {
    TuringMachine m = fixtures::firstbit();
    auto enc = encode_machine(m);
    GeneratedVerifier v(enc);
    for (const auto& r : {"1", "10", "11"}) v.add(build_special_proof(TableauTheory(enc, r), 100).proof, r);
    std::size_t reach = v.input_reach();
    REQUIRE(reach >= 1);
    for (std::size_t len = reach; len <= reach + 4; ++len)
        for (const auto& s : strings_of_length(len)) {
            std::string t = s.substr(0, reach) + std::string(len - reach, s.back() == '0' ? '1' : '0');
            CHECK(run_verifier(v, s).value == run_verifier(v, t).value);
        }
}

TEST_CASE("discover outcomes") {
    DiscoveryCaps caps;
    DiscoveryOutcome c1 = discover(fixtures::const1(), caps);
    REQUIRE(c1.kind == DiscoveryOutcome::Kind::ProvedAllOnes);
    CHECK(c1.verifier.checkers().size() >= 1);
    for (const auto& s : strings_up_to(c1.K + 4)) CHECK(run(fixtures::const1(), s, 1000).halted_with(1));
    for (const auto& s : strings_up_to(c1.K)) CHECK(run_verifier(c1.verifier, s).value == 1);
    CHECK(exhaustive_all_ones(fixtures::const1(), c1.K, 1000).kind == AllOnesReport::Kind::AllOnes);

    DiscoveryOutcome fb = discover(fixtures::firstbit(), caps);
    CHECK(fb.kind == DiscoveryOutcome::Kind::Counterexample);
    CHECK(fb.counterexample == Bits("0"));

    DiscoveryOutcome az = discover(fixtures::allzero(), caps);
    CHECK(az.kind == DiscoveryOutcome::Kind::Counterexample);
    CHECK(az.counterexample == Bits("1"));

    DiscoveryCaps small = caps;
    small.k_cap = 4;
    DiscoveryOutcome sc = discover(fixtures::scanner(), small);
    CHECK(sc.kind == DiscoveryOutcome::Kind::Exhausted);
    CHECK(sc.cap == "k-cap");
    CHECK(transcript_text(sc, small).find("exhausted: k-cap") != std::string::npos);

    DiscoveryCaps tiny = caps;
    tiny.step_cap = 3;
    DiscoveryOutcome st = discover(fixtures::scanner(), tiny);
    CHECK(st.kind == DiscoveryOutcome::Kind::Exhausted);
    CHECK(st.cap == "step-cap");

    DiscoveryCaps few = caps;
    few.max_iterations = 2;
    CHECK(discover(fixtures::const1(), few).cap == "iterations");
}

TEST_CASE("discover is deterministic and makes progress") {
    DiscoveryCaps caps;
    caps.pool_budget = 50;
    DiscoveryOutcome a = discover(fixtures::const1(), caps), b = discover(fixtures::const1(), caps);
    CHECK(transcript_text(a, caps) == transcript_text(b, caps));
    CHECK(transcript_json(a, caps) == transcript_json(b, caps));
    auto enc = a.verifier.encoding();
    for (std::size_t i = 0; i < a.iterations.size(); ++i) {
        const auto& it = a.iterations[i];
        CHECK(adjoint_check(a.verifier.checkers()[i].checker, TableauTheory(enc, it.witness)).accepted);
        if (i > 0) CHECK(string_cmp(a.iterations[i - 1].witness, it.witness) == Order::Precedes);
    }
}

TEST_CASE("replay cost is constant beyond the reach") {
    DiscoveryOutcome o = discover(fixtures::const1(), DiscoveryCaps{});
    REQUIRE(o.kind == DiscoveryOutcome::Kind::ProvedAllOnes);
    std::size_t reach = o.verifier.input_reach();
    std::optional<std::size_t> cost;
    for (const auto& s : strings_up_to(12)) {
        if (s.size() < reach) continue;
        std::size_t c = run_verifier(o.verifier, s).cost.total;
        if (!cost) cost = c;
        CHECK(c == *cost);
    }
}

TEST_CASE("proof supplier") {
    DiscoveryCaps caps;
    caps.pool_budget = 0;
    int calls = 0;
    ProofSupplier good = [&](const TuringMachine& m, const Bits& r) -> std::optional<FormulaSequence> {
        ++calls;
        return build_special_proof(m, r, 1000).proof;
    };
    DiscoveryOutcome o = discover(fixtures::const1(), caps, good);
    CHECK(o.kind == DiscoveryOutcome::Kind::ProvedAllOnes);
    CHECK(calls == static_cast<int>(o.iterations.size()));
    for (const auto& it : o.iterations) CHECK(it.source == "supplier");

    ProofSupplier bad = [](const TuringMachine&, const Bits&) -> std::optional<FormulaSequence> {
        return FormulaSequence{atom("$3>5$")};
    };
    DiscoveryOutcome f = discover(fixtures::const1(), caps, bad);
    CHECK(f.kind == DiscoveryOutcome::Kind::ProvedAllOnes);
    for (const auto& it : f.iterations) CHECK(it.source == "special");
}

TEST_CASE("transcripts") {
    DiscoveryCaps caps;
    DiscoveryOutcome c1 = discover(fixtures::const1(), caps);
    std::string t = transcript_text(c1, caps);
    CHECK(t.find("outcome: proved-all-ones") != std::string::npos);
    CHECK(t.find("keyinfo $") != std::string::npos);
    DiscoveryOutcome fb = discover(fixtures::firstbit(), caps);
    std::string tf = transcript_text(fb, caps);
    CHECK(tf.find("counterexample: \"0\" returns 0") != std::string::npos);
    CHECK(tf.find("2: qh 1 >0") != std::string::npos);
    auto j = transcript_json(fb, caps);
    CHECK(j["outcome"] == "counterexample");
    CHECK(j["counterexample"] == "0");
    CHECK(run_trace(fixtures::const1(), "", 100).size() == 3);
}

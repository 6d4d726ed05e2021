#include "support.hpp"

#include <doctest.h>

#include <map>

using namespace pftest;

namespace {

// Reference simulator over a sparse tape, written independently of run().
struct Ref {
    bool halted = false;
    int value = -1;
    std::size_t steps = 0;
};

Ref ref_run(const TuringMachine& m, const std::string& s, std::size_t cap) {
    std::map<std::size_t, char> tape{{0, '>'}};
    for (std::size_t i = 0; i < s.size(); ++i) tape[i + 1] = s[i];
    std::map<std::pair<std::string, char>, Transition> rules;
    for (const auto& t : m.transitions()) rules[{t.state, symbol_glyph(t.read)}] = t;
    std::string q = m.name(m.start()), halt = m.name(m.halt());
    std::size_t head = 0;
    Ref r;
    while (q != halt) {
        if (r.steps == cap) return r;
        char a = tape.count(head) ? tape[head] : '_';
        const Transition& t = rules.at({q, a});
        tape[head] = symbol_glyph(t.write);
        if (t.move == Move::Right) ++head;
        if (t.move == Move::Left) --head;
        q = t.next;
        ++r.steps;
    }
    r.halted = true;
    if (head == 1 && (tape[1] == '0' || tape[1] == '1')) r.value = tape[1] - '0';
    return r;
}

TuringMachine all_fixtures(int i) {
    switch (i) {
        case 0: return fixtures::const1();
        case 1: return fixtures::firstbit();
        case 2: return fixtures::allzero();
        default: return fixtures::scanner();
    }
}

void add_halt_rules(TuringMachine& m, const std::string& h) {
    for (TapeSymbol a : kAllSymbols) m.set_rule({h, a, h, a, Move::Stay});
}

}  // namespace

TEST_CASE("fixtures are valid") {
    for (int i = 0; i < 4; ++i) {
        ValidationReport rep = validate_machine(all_fixtures(i));
        CHECK_MESSAGE(rep.valid(), i);
    }
}

TEST_CASE("validation catches each clause") {
    TuringMachine m("q0", "qh");
    add_halt_rules(m, "qh");
    m.set_rule({"q0", TapeSymbol::LeftEnd, "q0", TapeSymbol::LeftEnd, Move::Right});
    m.set_rule({"q0", TapeSymbol::Zero, "qh", TapeSymbol::LeftEnd, Move::Stay});
    m.set_rule({"q0", TapeSymbol::One, "qh", TapeSymbol::One, Move::Stay});
    m.set_rule({"q0", TapeSymbol::Blank, "qh", TapeSymbol::One, Move::Stay});
    ValidationReport rep = validate_machine(m);
    CHECK_FALSE(rep.valid());

    TuringMachine two("q0", "qh");
    add_halt_rules(two, "qh");
    add_halt_rules(two, "z");
    two.set_rule({"q0", TapeSymbol::LeftEnd, "q0", TapeSymbol::LeftEnd, Move::Right});
    for (TapeSymbol a : {TapeSymbol::Zero, TapeSymbol::One, TapeSymbol::Blank}) two.set_rule({"q0", a, "qh", a, Move::Stay});
    CHECK_FALSE(validate_machine(two).valid());

    TuringMachine partial("q0", "qh");
    add_halt_rules(partial, "qh");
    partial.set_rule({"q0", TapeSymbol::LeftEnd, "q0", TapeSymbol::LeftEnd, Move::Right});
    CHECK_FALSE(validate_machine(partial).valid());
}

TEST_CASE("machine text round trip") {
    for (int i = 0; i < 4; ++i) {
        TuringMachine m = all_fixtures(i);
        std::string text = format_machine(m);
        CHECK(format_machine(parse_machine(text)) == text);
    }
    CHECK_THROWS(parse_machine("q0 0 -> q0 0 R\n"));
    CHECK_THROWS(parse_machine("start: q0\nhalt: qh\nq0 9 -> q0 0 R\n"));
}

TEST_CASE("run matches the reference simulator") {
    for (int i = 0; i < 4; ++i) {
        TuringMachine m = all_fixtures(i);
        for (const auto& s : strings_up_to(6)) {
            RunResult r = run(m, s, 1000);
            Ref o = ref_run(m, s, 1000);
            REQUIRE(r.verdict == Verdict::Halted);
            CHECK(o.halted);
            CHECK(r.steps == o.steps);
            CHECK(r.value == o.value);
            CHECK(run(m, s, 1000) == r);
        }
    }
    CHECK(run(fixtures::const1(), "", 100).halted_with(1));
    CHECK(run(fixtures::const1(), "", 100).steps == 2);
    CHECK(run(fixtures::const1(), "0110", 100).steps == 2);
    for (const auto& s : strings_up_to(6)) {
        int expect = s.empty() ? 1 : s[0] - '0';
        CHECK(run(fixtures::firstbit(), s, 100).halted_with(expect));
        CHECK(run(fixtures::allzero(), s, 100).halted_with(s.find('1') == std::string::npos ? 1 : 0));
    }
    CHECK(run(fixtures::scanner(), "0000", 3).verdict == Verdict::StepCapExceeded);
}

TEST_CASE("computation table invariants") {
    TuringMachine m = fixtures::const1();
    ComputationTable t0 = build_table(m, "", 100);
    CHECK(t0.size() == 4);
    CHECK(t0.at(0, 0) == TapeSquare{TapeSymbol::LeftEnd, m.start(), 1});
    CHECK(t0.at(0, 1) == TapeSquare{TapeSymbol::Blank, m.start(), 0});

    for (int i = 0; i < 4; ++i) {
        TuringMachine mm = all_fixtures(i);
        for (const auto& s : strings_up_to(4)) {
            RunResult r = run(mm, s, 1000);
            ComputationTable t = build_table(mm, s, 1000);
            REQUIRE(t.size() == r.steps + 2);
            for (std::size_t row = 0; row < t.size(); ++row) {
                int heads = 0;
                for (std::size_t c = 0; c < t.size(); ++c) heads += t.at(row, c).flag;
                CHECK(heads == 1);
                CHECK(t.at(row, 0).symbol == TapeSymbol::LeftEnd);
                CHECK(t.at(row, t.head(row)).flag == 1);
            }
            // replay each row through delta
            for (std::size_t row = 0; row + 1 < t.size(); ++row) {
                std::size_t h = t.head(row);
                const TapeSquare& sq = t.at(row, h);
                const Action& act = *mm.rule(sq.state, sq.symbol);
                std::size_t nh = act.move == Move::Right ? h + 1 : act.move == Move::Left ? h - 1 : h;
                CHECK(t.head(row + 1) == nh);
                CHECK(t.at(row + 1, nh).state == act.next);
                for (std::size_t c = 0; c < t.size(); ++c) {
                    TapeSymbol expect = c == h ? act.write : t.at(row, c).symbol;
                    CHECK(t.at(row + 1, c).symbol == expect);
                    CHECK(t.at(row + 1, c).state == act.next);
                }
            }
            const TapeSquare& last = t.at(t.size() - 1, 1);
            CHECK(last.flag == 1);
            CHECK(last.state == mm.halt());
            CHECK(static_cast<int>(last.symbol) == r.value);
        }
    }
    CHECK_THROWS_AS(build_table(fixtures::scanner(), "0000", 3), CapExceeded);
}

TEST_CASE("time profile equals the exhaustive maximum") {
    CHECK(time_profile(fixtures::const1(), 5, 100) == 2);
    CHECK(time_profile(fixtures::const1(), 0, 100) == 2);
    for (int i = 0; i < 4; ++i) {
        TuringMachine m = all_fixtures(i);
        for (std::size_t n = 0; n <= 6; ++n) {
            std::size_t worst = 0;
            for (const auto& s : strings_of_length(n)) worst = std::max(worst, ref_run(m, s, 1000).steps);
            CHECK(time_profile(m, n, 1000) == worst);
        }
    }
}

TEST_CASE("string enumeration order") {
    CHECK(strings_up_to(2) == std::vector<Bits>{"", "0", "1", "00", "01", "10", "11"});
    CHECK(strings_of_length(3).size() == 8);
    CHECK(strings_up_to(8).size() == 511);
}

TEST_CASE("prefix stability") {
    CHECK(prefix_stability(fixtures::const1(), 2, 100).certified);
    CHECK(prefix_stability(fixtures::firstbit(), 2, 100).certified);
    PrefixStability sc = prefix_stability(fixtures::scanner(), 3, 1000);
    CHECK_FALSE(sc.certified);
    REQUIRE(sc.witness);
    CHECK(*sc.witness == "000");
    CHECK(prefix_threshold(fixtures::const1(), 6, 100) == 2);
    CHECK(prefix_threshold(fixtures::firstbit(), 6, 100) == 2);
    CHECK_FALSE(prefix_threshold(fixtures::scanner(), 6, 1000));

    for (auto mk : {fixtures::const1, fixtures::firstbit}) {
        TuringMachine m = mk();
        const std::size_t K = 2;
        for (std::size_t len = K; len <= K + 4; ++len)
            for (const auto& r : strings_of_length(len)) {
                std::string padded = r.substr(0, K - 1) + std::string(len - (K - 1), '0');
                CHECK(run(m, r, 1000) == run(m, padded, 1000));
            }
    }
}

TEST_CASE("exhaustive all-ones") {
    CHECK(exhaustive_all_ones(fixtures::const1(), 4, 100).kind == AllOnesReport::Kind::AllOnes);
    AllOnesReport fb = exhaustive_all_ones(fixtures::firstbit(), 3, 100);
    CHECK(fb.kind == AllOnesReport::Kind::Counterexample);
    CHECK(fb.input == Bits("0"));
    AllOnesReport az = exhaustive_all_ones(fixtures::allzero(), 3, 100);
    CHECK(az.input == Bits("1"));
    CHECK(exhaustive_all_ones(fixtures::firstbit(), 0, 100).kind == AllOnesReport::Kind::AllOnes);
    CHECK(exhaustive_all_ones(fixtures::scanner(), 3, 4).kind == AllOnesReport::Kind::CapExceeded);
}

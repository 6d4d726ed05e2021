#include "proofforge/machine.hpp"

#include <algorithm>
#include <sstream>

namespace proofforge {

char move_glyph(Move m) {
    switch (m) {
        case Move::Left: return 'L';
        case Move::Stay: return 'S';
        case Move::Right: return 'R';
    }
    return '?';
}

TuringMachine::TuringMachine(std::string start, std::string halt) {
    start_ = add_state(start);
    halt_ = add_state(halt);
    if (start_ == halt_) throw std::invalid_argument("start and halt states must differ");
}

StateId TuringMachine::add_state(const std::string& name) {
    if (auto s = find_state(name)) return *s;
    names_.push_back(name);
    delta_.resize(names_.size() * 4);
    return static_cast<StateId>(names_.size() - 1);
}

std::optional<StateId> TuringMachine::find_state(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<StateId>(i);
    return std::nullopt;
}

void TuringMachine::set_rule(const Transition& t) {
    StateId q = add_state(t.state);
    StateId p = add_state(t.next);
    delta_[q * 4 + static_cast<std::size_t>(t.read)] = Action{p, t.write, t.move};
}

std::vector<Transition> TuringMachine::transitions() const {
    std::vector<Transition> out;
    for (StateId q = 0; q < names_.size(); ++q)
        for (TapeSymbol a : kAllSymbols)
            if (const auto& r = rule(q, a)) out.push_back({names_[q], a, names_[r->next], r->write, r->move});
    return out;
}

ValidationReport validate_machine(const TuringMachine& m) {
    ValidationReport rep;
    auto where = [&](StateId q, TapeSymbol a) {
        return "delta(" + m.name(q) + "," + symbol_glyph(a) + ")";
    };
    for (StateId q = 0; q < m.states().size(); ++q) {
        for (TapeSymbol a : kAllSymbols) {
            const auto& r = m.rule(q, a);
            if (!r) {
                rep.violations.push_back("totality: " + where(q, a) + " is undefined");
                continue;
            }
            if (q == m.halt()) {
                if (r->next != q || r->write != a || r->move != Move::Stay)
                    rep.violations.push_back("halt: " + where(q, a) + " must be (" + m.name(q) + "," +
                                             symbol_glyph(a) + ",S)");
                continue;
            }
            if (a == TapeSymbol::LeftEnd) {
                if (r->write != TapeSymbol::LeftEnd || r->move != Move::Right)
                    rep.violations.push_back("left-end: " + where(q, a) + " must keep > and move R");
            } else if (r->write == TapeSymbol::LeftEnd) {
                rep.violations.push_back("left-end: " + where(q, a) + " writes > off the left end");
            }
        }
    }
    // No state other than halt may behave like halt on the working symbols.
    for (StateId q = 0; q < m.states().size(); ++q) {
        if (q == m.halt()) continue;
        bool halt_like = true;
        for (TapeSymbol a : {TapeSymbol::Zero, TapeSymbol::One, TapeSymbol::Blank}) {
            const auto& r = m.rule(q, a);
            if (!r || r->write != a || r->move != Move::Stay || (r->next != q && r->next != m.halt()))
                halt_like = false;
        }
        if (halt_like) rep.violations.push_back("uniqueness: state " + m.name(q) + " is a halt-like fixed point");
    }
    return rep;
}

namespace {

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

TapeSymbol parse_symbol(const std::string& tok, std::size_t line) {
    if (tok.size() == 1)
        if (auto g = symbol_from_glyph(tok[0])) return *g;
    throw std::invalid_argument("line " + std::to_string(line) + ": bad tape symbol '" + tok + "'");
}

}  // namespace

TuringMachine parse_machine(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    std::optional<std::string> start, halt;
    std::vector<std::pair<Transition, std::size_t>> rules;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(raw.substr(0, raw.find('#')));
        if (line.empty()) continue;
        if (line.rfind("start:", 0) == 0) {
            start = trim(line.substr(6));
            continue;
        }
        if (line.rfind("halt:", 0) == 0) {
            halt = trim(line.substr(5));
            continue;
        }
        std::istringstream ls(line);
        std::string q, a, arrow, p, b, mv, extra;
        if (!(ls >> q >> a >> arrow >> p >> b >> mv) || arrow != "->" || (ls >> extra))
            throw std::invalid_argument("line " + std::to_string(lineno) + ": expected '<q> <a> -> <p> <b> <L|S|R>'");
        Move move;
        if (mv == "L")
            move = Move::Left;
        else if (mv == "S")
            move = Move::Stay;
        else if (mv == "R")
            move = Move::Right;
        else
            throw std::invalid_argument("line " + std::to_string(lineno) + ": bad move '" + mv + "'");
        rules.push_back({Transition{q, parse_symbol(a, lineno), p, parse_symbol(b, lineno), move}, lineno});
    }
    if (!start || !halt) throw std::invalid_argument("machine file needs 'start:' and 'halt:' headers");
    TuringMachine m(*start, *halt);
    for (const auto& [t, line] : rules) {
        if (auto q = m.find_state(t.state); q && m.rule(*q, t.read))
            throw std::invalid_argument("line " + std::to_string(line) + ": duplicate rule for (" + t.state + "," +
                                        symbol_glyph(t.read) + ")");
        m.set_rule(t);
    }
    return m;
}

std::string format_machine(const TuringMachine& m) {
    std::string out = "start: " + m.name(m.start()) + "\nhalt: " + m.name(m.halt()) + "\n";
    for (const auto& t : m.transitions()) {
        out += t.state + ' ' + symbol_glyph(t.read) + " -> " + t.next + ' ' + symbol_glyph(t.write) + ' ' +
               move_glyph(t.move) + '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Simulation

namespace {

struct Simulation {
    std::vector<TapeSymbol> tape;
    std::size_t head = 0;
    StateId state;
    std::size_t steps = 0;
    std::size_t max_column = 0;
};

Simulation start_config(const TuringMachine& m, std::string_view input) {
    Simulation sim;
    sim.state = m.start();
    sim.tape.reserve(input.size() + 2);
    sim.tape.push_back(TapeSymbol::LeftEnd);
    for (char c : input) {
        if (c != '0' && c != '1') throw std::invalid_argument("input must be a bit string");
        sim.tape.push_back(c == '0' ? TapeSymbol::Zero : TapeSymbol::One);
    }
    return sim;
}

TapeSymbol read(const Simulation& sim, std::size_t col) {
    return col < sim.tape.size() ? sim.tape[col] : TapeSymbol::Blank;
}

void step(const TuringMachine& m, Simulation& sim) {
    const auto& r = m.rule(sim.state, read(sim, sim.head));
    if (!r) throw std::logic_error("transition undefined for state " + m.name(sim.state));
    if (sim.head >= sim.tape.size()) sim.tape.resize(sim.head + 1, TapeSymbol::Blank);
    sim.tape[sim.head] = r->write;
    sim.state = r->next;
    if (r->move == Move::Left) {
        if (sim.head == 0) throw std::logic_error("head moved off the left end");
        --sim.head;
    } else if (r->move == Move::Right) {
        ++sim.head;
    }
    sim.max_column = std::max(sim.max_column, sim.head);
    ++sim.steps;
}

RunResult finish(const TuringMachine& m, const Simulation& sim) {
    RunResult res;
    res.steps = sim.steps;
    res.max_column = sim.max_column;
    if (sim.state != m.halt()) {
        res.verdict = Verdict::StepCapExceeded;
        return res;
    }
    TapeSymbol v = read(sim, sim.head);
    if (sim.head == 1 && (v == TapeSymbol::Zero || v == TapeSymbol::One)) {
        res.verdict = Verdict::Halted;
        res.value = v == TapeSymbol::One ? 1 : 0;
    } else {
        res.verdict = Verdict::MalformedHalt;
    }
    return res;
}

}  // namespace

RunResult run(const TuringMachine& m, std::string_view input, std::size_t cap) {
    Simulation sim = start_config(m, input);
    while (sim.state != m.halt() && sim.steps < cap) step(m, sim);
    return finish(m, sim);
}

ComputationTable build_table(const TuringMachine& m, std::string_view input, std::size_t cap) {
    Simulation sim = start_config(m, input);
    std::vector<Simulation> configs;
    configs.push_back(sim);
    while (sim.state != m.halt()) {
        if (sim.steps >= cap) throw CapExceeded(Bits(input));
        step(m, sim);
        configs.push_back(sim);
    }
    const std::size_t f = sim.steps;
    const std::size_t size = f + 2;
    configs.push_back(sim);   // halt rule keeps the configuration fixed
    std::vector<std::vector<TapeSquare>> rows;
    std::vector<std::size_t> heads;
    rows.reserve(size);
    for (std::size_t i = 0; i < size; ++i) {
        const Simulation& c = configs[i];
        std::vector<TapeSquare> row;
        row.reserve(size);
        for (std::size_t col = 0; col < size; ++col)
            row.push_back(TapeSquare{read(c, col), c.state, col == c.head ? 1 : 0});
        rows.push_back(std::move(row));
        heads.push_back(c.head);
    }
    return ComputationTable(size, std::move(rows), std::move(heads));
}

std::vector<Bits> strings_of_length(std::size_t n) {
    std::vector<Bits> out;
    const std::size_t count = std::size_t{1} << n;
    out.reserve(count);
    for (std::size_t v = 0; v < count; ++v) {
        Bits s(n, '0');
        for (std::size_t i = 0; i < n; ++i)
            if (v >> (n - 1 - i) & 1) s[i] = '1';
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<Bits> strings_up_to(std::size_t n) {
    std::vector<Bits> out;
    for (std::size_t len = 0; len <= n; ++len) {
        auto part = strings_of_length(len);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

std::size_t time_profile(const TuringMachine& m, std::size_t n, std::size_t cap) {
    std::size_t worst = 0;
    for (const auto& s : strings_of_length(n)) {
        RunResult r = run(m, s, cap);
        if (r.verdict == Verdict::StepCapExceeded) throw CapExceeded(s);
        worst = std::max(worst, r.steps);
    }
    return worst;
}

PrefixStability prefix_stability(const TuringMachine& m, std::size_t k, std::size_t cap) {
    if (k == 0) throw std::invalid_argument("prefix_stability needs k >= 1");
    PrefixStability out;
    out.k = k;
    for (const auto& s : strings_of_length(k)) {
        RunResult r = run(m, s, cap);
        if (r.verdict == Verdict::StepCapExceeded || r.max_column >= k) {
            out.witness = s;
            return out;
        }
    }
    out.certified = true;
    return out;
}

std::optional<std::size_t> prefix_threshold(const TuringMachine& m, std::size_t k_max, std::size_t cap) {
    for (std::size_t k = 1; k <= k_max; ++k)
        if (prefix_stability(m, k, cap).certified) return k;
    return std::nullopt;
}

AllOnesReport exhaustive_all_ones(const TuringMachine& m, std::size_t k, std::size_t cap) {
    AllOnesReport rep;
    for (const auto& s : strings_up_to(k)) {
        RunResult r = run(m, s, cap);
        if (r.verdict == Verdict::StepCapExceeded) {
            rep.kind = AllOnesReport::Kind::CapExceeded;
            rep.input = s;
            rep.result = r;
            return rep;
        }
        if (!r.halted_with(1)) {
            rep.kind = AllOnesReport::Kind::Counterexample;
            rep.input = s;
            rep.result = r;
            return rep;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Fixtures

namespace fixtures {

namespace {

constexpr TapeSymbol Z = TapeSymbol::Zero, O = TapeSymbol::One, B = TapeSymbol::Blank, E = TapeSymbol::LeftEnd;

void halt_rules(TuringMachine& m) {
    const std::string& h = m.name(m.halt());
    for (TapeSymbol a : kAllSymbols) m.set_rule({h, a, h, a, Move::Stay});
}

// The start state only ever runs on the left-end square.
void start_rules(TuringMachine& m, const std::string& next) {
    m.set_rule({"q0", E, next, E, Move::Right});
    for (TapeSymbol a : {Z, O, B}) m.set_rule({"q0", a, "q0", a, Move::Right});
}

}  // namespace

TuringMachine const1() {
    TuringMachine m("q0", "qh");
    start_rules(m, "q1");
    for (TapeSymbol a : {Z, O, B}) m.set_rule({"q1", a, "qh", O, Move::Stay});
    m.set_rule({"q1", E, "q1", E, Move::Right});
    halt_rules(m);
    return m;
}

TuringMachine firstbit() {
    TuringMachine m("q0", "qh");
    start_rules(m, "q1");
    m.set_rule({"q1", Z, "qh", Z, Move::Stay});
    m.set_rule({"q1", O, "qh", O, Move::Stay});
    m.set_rule({"q1", B, "qh", O, Move::Stay});
    m.set_rule({"q1", E, "q1", E, Move::Right});
    halt_rules(m);
    return m;
}

TuringMachine allzero() {
    TuringMachine m("q0", "qh");
    start_rules(m, "q1");
    // q1 scans right; q2 returns after a 1; q3 returns after the end blank.
    m.set_rule({"q1", Z, "q1", Z, Move::Right});
    m.set_rule({"q1", O, "q2", O, Move::Left});
    m.set_rule({"q1", B, "q3", B, Move::Left});
    m.set_rule({"q1", E, "q1", E, Move::Right});
    for (TapeSymbol a : {Z, O, B}) {
        m.set_rule({"q2", a, "q2", a, Move::Left});
        m.set_rule({"q3", a, "q3", a, Move::Left});
    }
    m.set_rule({"q2", E, "q4", E, Move::Right});
    m.set_rule({"q3", E, "q5", E, Move::Right});
    // q4 / q5 write the answer on column 1.
    for (TapeSymbol a : {Z, O, B}) {
        m.set_rule({"q4", a, "qh", Z, Move::Stay});
        m.set_rule({"q5", a, "qh", O, Move::Stay});
    }
    m.set_rule({"q4", E, "q4", E, Move::Right});
    m.set_rule({"q5", E, "q5", E, Move::Right});
    halt_rules(m);
    return m;
}

TuringMachine scanner() {
    TuringMachine m("q0", "qh");
    start_rules(m, "q1");
    m.set_rule({"q1", Z, "q1", Z, Move::Right});
    m.set_rule({"q1", O, "q1", O, Move::Right});
    m.set_rule({"q1", B, "q2", B, Move::Left});
    m.set_rule({"q1", E, "q1", E, Move::Right});
    for (TapeSymbol a : {Z, O, B}) m.set_rule({"q2", a, "q2", a, Move::Left});
    m.set_rule({"q2", E, "q3", E, Move::Right});
    for (TapeSymbol a : {Z, O, B}) m.set_rule({"q3", a, "qh", O, Move::Stay});
    m.set_rule({"q3", E, "q3", E, Move::Right});
    halt_rules(m);
    return m;
}

}  // namespace fixtures

}  // namespace proofforge

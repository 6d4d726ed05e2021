#pragma once

#include "proofforge/verifier.hpp"

#include <random>

namespace pftest {

using namespace proofforge;

inline Term rand_term(std::mt19937& g, const std::vector<std::string>& vars, int depth) {
    std::uniform_int_distribution<int> pick(0, depth > 0 ? 4 : 1);
    switch (pick(g)) {
        case 0: return Term::numeral(std::uniform_int_distribution<int>(0, 300)(g));
        case 1:
            if (!vars.empty()) return Term::variable(vars[std::uniform_int_distribution<std::size_t>(0, vars.size() - 1)(g)]);
            return Term::numeral(7);
        case 2: return Term::offset(rand_term(g, vars, depth - 1), std::uniform_int_distribution<int>(0, 1)(g) ? 1 : -1);
        case 3: return Term::projection(Term::square(rand_term(g, vars, depth - 1), rand_term(g, vars, depth - 1)));
        default: return Term::numeral(std::uniform_int_distribution<int>(0, 9)(g));
    }
}

inline Formula rand_atom(std::mt19937& g, const std::vector<std::string>& vars) {
    if (std::uniform_int_distribution<int>(0, 1)(g)) {
        static const char* states[] = {"q0", "qh", "p", "q12"};
        return Formula::square_is(rand_term(g, vars, 1), rand_term(g, vars, 1),
                                  Term::symbol(kAllSymbols[std::uniform_int_distribution<int>(0, 3)(g)]),
                                  states[std::uniform_int_distribution<int>(0, 3)(g)],
                                  std::uniform_int_distribution<int>(0, 1)(g));
    }
    auto rel = static_cast<Relation>(std::uniform_int_distribution<int>(0, 5)(g));
    return Formula::compare(rand_term(g, vars, 1), rel, rand_term(g, vars, 1));
}

inline Formula rand_formula(std::mt19937& g, std::vector<std::string> vars, int depth) {
    std::uniform_int_distribution<int> pick(0, depth > 0 ? 6 : 0);
    switch (pick(g)) {
        case 0: return rand_atom(g, vars);
        case 1: return Formula::negation(rand_formula(g, vars, depth - 1));
        case 2: return Formula::conjunction(rand_formula(g, vars, depth - 1), rand_formula(g, vars, depth - 1));
        case 3: return Formula::disjunction(rand_formula(g, vars, depth - 1), rand_formula(g, vars, depth - 1));
        case 4: return Formula::implication(rand_formula(g, vars, depth - 1), rand_formula(g, vars, depth - 1));
        default: {
            static const char* names[] = {"i", "j", "k", "m", "x1", "y"};
            std::string v = names[std::uniform_int_distribution<int>(0, 5)(g)];
            vars.push_back(v);
            Formula body = rand_formula(g, vars, depth - 1);
            return pick(g) % 2 ? Formula::forall(v, body) : Formula::exists(v, body);
        }
    }
}

inline Formula atom(const std::string& text) { return parse_formula(text); }

inline bool all_members(const Theory& t, const std::vector<Formula>& fs) {
    for (const auto& f : fs)
        if (!literal_scan(t.formulas(), f).member) return false;
    return true;
}

}  // namespace pftest

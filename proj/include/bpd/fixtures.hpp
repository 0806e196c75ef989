#pragma once

// Small machines used by the test suite and the acceptance checks.

#include "bpd/machine.hpp"

#include <random>

namespace bpd::fixtures {

// One state, one stack symbol, uniform bets: the smallest legal gambler.
inline machine g_uni() {
    machine m;
    m.kind = machine_kind::gambler;
    m.input = binary_alphabet();
    m.stack_syms = alphabet("Z");
    m.start_stack = 'Z';
    m.add_state("q");
    m.start_state = 0;
    m.add_trans("q", '0', 'Z', "q", "Z");
    m.add_trans("q", '1', 'Z', "q", "Z");
    return m;
}

// Bets everything on 0 every step.
inline machine g_all0() {
    machine m = g_uni();
    m.set_bet("q", 'Z', {rational(1), rational(0)});
    return m;
}

// Copies its input to the output.
inline machine c_id() {
    machine m;
    m.kind = machine_kind::compressor;
    m.input = binary_alphabet();
    m.stack_syms = alphabet("Z");
    m.start_stack = 'Z';
    m.add_state("q");
    m.start_state = 0;
    m.add_trans("q", '0', 'Z', "q", "Z");
    m.add_trans("q", '1', 'Z', "q", "Z");
    m.set_out("q", '0', 'Z', "0");
    m.set_out("q", '1', 'Z', "1");
    return m;
}

// Erases 0s, keeps 1s. Not information-lossless.
inline machine c_drop0() {
    machine m = c_id();
    m.set_out("q", '0', 'Z', "");
    return m;
}

// Pushes every input symbol; the stack is the reversed input.
inline machine push_machine() {
    machine m;
    m.kind = machine_kind::gambler;
    m.input = binary_alphabet();
    m.stack_syms = alphabet("Z01");
    m.start_stack = 'Z';
    m.add_state("q");
    m.start_state = 0;
    for (char b : {'0', '1'})
        for (char top : {'Z', '0', '1'})
            m.add_trans("q", b, top, "q", std::string(1, b) + std::string(1, top));
    return m;
}

// One lambda-move from the start state, then a self-loop. The bet at the
// pre-lambda state differs from the post-lambda one, pinning where step()
// samples the distribution.
inline machine lambda_chain() {
    machine m;
    m.kind = machine_kind::gambler;
    m.input = binary_alphabet();
    m.stack_syms = alphabet("Z");
    m.start_stack = 'Z';
    m.lambda_bound = 1;
    m.add_state("p");
    m.add_state("r");
    m.start_state = 0;
    m.add_trans("p", std::nullopt, 'Z', "r", "Z");
    m.add_trans("r", '0', 'Z', "r", "Z");
    m.add_trans("r", '1', 'Z', "r", "Z");
    m.set_bet("p", 'Z', {rational(3, 4), rational(1, 4)});
    return m;
}

// Two chained lambda-moves; rejected by constructions that require a
// lambda budget of at most one.
inline machine lambda_chain2() {
    machine m;
    m.kind = machine_kind::gambler;
    m.input = binary_alphabet();
    m.stack_syms = alphabet("Z");
    m.start_stack = 'Z';
    m.lambda_bound = 2;
    m.add_state("s0");
    m.add_state("s1");
    m.add_state("s2");
    m.start_state = 0;
    m.add_trans("s0", std::nullopt, 'Z', "s1", "Z");
    m.add_trans("s1", std::nullopt, 'Z', "s2", "Z");
    m.add_trans("s2", '0', 'Z', "s2", "Z");
    m.add_trans("s2", '1', 'Z', "s2", "Z");
    return m;
}

// Bets summing to 9/10: fails validation.
inline machine g_bad_bets() {
    machine m = g_uni();
    m.set_bet("q", 'Z', {rational(1, 2), rational(2, 5)});
    return m;
}

// Lambda- and input-transitions on the same (state, top): fails validation.
inline machine m_exclusivity_violation() {
    machine m = g_uni();
    m.add_state("r");
    m.add_trans("q", std::nullopt, 'Z', "r", "Z");
    return m;
}

// Pops the bottom symbol: fails validation.
inline machine m_pops_bottom() {
    machine m = g_uni();
    m.add_trans("q", '0', 'Z', "q", "");
    return m;
}

// Seeded random total compressor: two states, never pops, pushes at most
// two symbols per step, outputs at most two symbols per step, no lambda.
inline machine random_compressor(unsigned seed = 7) {
    machine m;
    m.kind = machine_kind::compressor;
    m.input = binary_alphabet();
    m.stack_syms = alphabet("Zab");
    m.start_stack = 'Z';
    m.add_state("r0");
    m.add_state("r1");
    m.start_state = 0;
    std::mt19937 rng(seed);
    const char pushable[] = {'a', 'b'};
    for (const char* st : {"r0", "r1"}) {
        for (char b : {'0', '1'}) {
            for (char top : {'Z', 'a', 'b'}) {
                std::string next = rng() % 2 ? "r1" : "r0";
                std::string v;
                size_t vlen = rng() % 3;
                for (size_t i = 0; i < vlen; ++i) v += pushable[rng() % 2];
                m.add_trans(st, b, top, next, v + std::string(1, top));
                std::string out;
                size_t olen = rng() % 3;
                for (size_t i = 0; i < olen; ++i) out += rng() % 2 ? '1' : '0';
                m.set_out(st, b, top, out);
            }
        }
    }
    return m;
}

}  // namespace bpd::fixtures

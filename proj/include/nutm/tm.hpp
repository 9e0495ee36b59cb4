#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nutm/thue.hpp"

namespace nutm {

struct TmTransition {
    std::string state, read, next, write;
    int move = 1;  // +1 right, -1 left
};

// Deterministic single-tape machine, semi-infinite to the right, partial
// transition table (a missing entry halts), accepting states are terminal.
struct TuringMachine {
    std::string name;
    std::vector<std::string> states;
    std::vector<std::string> alphabet;  // blank included
    std::string blank;
    std::string initial;
    std::vector<std::string> accepting;
    std::vector<TmTransition> transitions;

    static TuringMachine from_json_file(const std::string& path);
    void validate() const;
    const TmTransition* find(const std::string& state, const std::string& read) const;
};

// Rewrite system whose strings are head-in-string configurations:
// left marker, tape before the head, state, tape from the head on, right
// marker. Every machine step is exactly one rule application; the rules that
// fire against the right marker mint the blank they consume.
struct TmCompilation {
    RuleSet rules;
    std::string left_end = "<", right_end = ">";
    std::string blank;
    std::vector<std::string> accepting;

    Tape config(const std::vector<std::string>& tape, const std::string& state,
                std::size_t head) const;
    AcceptSpec accept_spec() const;  // an accepting state symbol is present
};

TmCompilation compile_tm(const TuringMachine& tm);

// Directly executable machine state.
struct TmRun {
    const TuringMachine* tm = nullptr;
    std::vector<std::string> tape;
    std::string state;
    std::size_t head = 0;
    bool halted = false;

    bool step();  // false when no move was possible
    bool accepted() const;
};

TmRun start_run(const TuringMachine& tm, const std::vector<std::string>& input);

struct CosimReport {
    std::size_t steps = 0;  // machine steps taken before halting or the bound
    bool tm_accepted = false;
    bool agreed = true;
    std::size_t divergence_step = 0;
    std::string note;
};

// Runs the machine and its compiled rewrite system side by side, demanding
// exactly one applicable rewrite per live step and equal configurations.
CosimReport cosimulate(const TuringMachine& tm, const std::vector<std::string>& input,
                       std::size_t max_steps);

TuringMachine builtin_tm(const std::string& name);
std::vector<std::string> builtin_tm_names();

} // namespace nutm

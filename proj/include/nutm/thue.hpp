#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nutm/common.hpp"

namespace nutm {

using Symbol = std::string;

struct Tape {
    std::vector<Symbol> syms;
    auto operator<=>(const Tape&) const = default;

    // Single-letter alphabets print packed, anything else space separated.
    std::string to_string() const;
    static Tape parse(const std::string& text);
};

enum class RuleMode { Symmetric, Directed };
enum class Direction { Forward, Reverse };

struct ThueRule {
    int id = 0;
    std::vector<Symbol> lhs, rhs;
    RuleMode mode = RuleMode::Symmetric;

    const std::vector<Symbol>& pattern(Direction d) const;
    const std::vector<Symbol>& replacement(Direction d) const;
};

struct RuleSet {
    std::vector<ThueRule> rules;

    static RuleSet universal();
    static RuleSet from_json_file(const std::string& path);
    const ThueRule& by_id(int id) const;
};

struct RewriteEvent {
    int rule_id = 0;
    Direction dir = Direction::Forward;
    std::size_t position = 0;
    Tape before, after;
};

// Every start index of pattern inside tape, ascending, overlaps included.
std::vector<std::size_t> matches(const Tape& tape, const std::vector<Symbol>& pattern);

// Replace pattern(dir) at position with replacement(dir). Throws when the
// pattern does not sit there or the direction is illegal for the rule.
Tape apply_at(const Tape& tape, const ThueRule& rule, Direction dir, std::size_t position);

// All single-application rewrites, ordered by (rule id, direction, position).
std::vector<RewriteEvent> successors(const Tape& tape, const RuleSet& rules);

struct AcceptSpec {
    enum class Kind { Exact, Certificate, Predicate };
    Kind kind = Kind::Certificate;
    Tape exact;
    std::vector<Symbol> certificate;  // must appear as a contiguous run
    std::function<bool(const Tape&)> predicate;

    static AcceptSpec exact_tape(Tape t);
    static AcceptSpec contains(std::vector<Symbol> cert);
    static AcceptSpec pred(std::function<bool(const Tape&)> fn);
    bool accepts(const Tape& t) const;
};

enum class Outcome { Accepted, Exhausted, DepthBound };

struct ExecutionTrace {
    // frontiers[d] holds the tapes first discovered at depth d, sorted.
    std::vector<std::vector<Tape>> frontiers;
};

struct BfsResult {
    Outcome outcome = Outcome::Exhausted;
    std::optional<Tape> accepted;
    std::vector<RewriteEvent> witness;  // root to accepted tape, one event per step
    std::size_t depth = 0;              // depth reached (accepting depth on success)
    ExecutionTrace trace;
};

// Breadth-first closure over single rewrites with global dedup. Stops at the
// first depth containing an accepting tape and reports the lexicographically
// smallest one, with a deterministic witness chain.
BfsResult bfs_run(const Tape& program, const RuleSet& rules, const AcceptSpec& accept,
                  std::size_t max_depth);

// Per-depth population counts. dedup=true collapses identical tapes within a
// depth (rediscoveries at later depths still count); dedup=false counts every
// rewrite walk. Index 0 is the program itself.
std::vector<std::uint64_t> count_states(const Tape& program, const RuleSet& rules,
                                        std::size_t max_depth, bool dedup = true);

} // namespace nutm

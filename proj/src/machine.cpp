#include "nutm/machine.hpp"

#include <algorithm>
#include <map>

namespace nutm {

Machine::Machine(RuleSet rules, CodeBook cb, MachineConfig cfg)
    : rules_(std::move(rules)), cb_(std::move(cb)), cfg_(cfg) {
    for (const ThueRule& r : rules_.rules) {
        chambers_.push_back({r.id, Direction::Forward,
                             compile_rule(r, Direction::Forward, cb_)});
        if (r.mode == RuleMode::Symmetric)
            chambers_.push_back({r.id, Direction::Reverse,
                                 compile_rule(r, Direction::Reverse, cb_)});
    }
}

namespace {

struct Candidate {
    RewriteEvent event;
};

// Within a cycle the recorded parent of a fresh tape is the least event by
// rule, direction, position, then parent tape.
bool cand_less(const RewriteEvent& a, const RewriteEvent& b) {
    if (a.rule_id != b.rule_id) return a.rule_id < b.rule_id;
    if (a.dir != b.dir) return a.dir == Direction::Forward;
    if (a.position != b.position) return a.position < b.position;
    return a.before < b.before;
}

void fold_in(std::map<Tape, RewriteEvent>& fresh, RewriteEvent ev) {
    auto [it, inserted] = fresh.emplace(ev.after, ev);
    if (!inserted && cand_less(ev, it->second)) it->second = ev;
}

// Symbolic realization of one chamber over the whole vessel.
void symbolic_products(const ThueRule& rule, Direction dir, const std::set<Tape>& vessel,
                       std::map<Tape, RewriteEvent>& fresh) {
    for (const Tape& t : vessel)
        for (std::size_t pos : matches(t, rule.pattern(dir))) {
            Tape child = apply_at(t, rule, dir, pos);
            if (vessel.count(child)) continue;
            fold_in(fresh, {rule.id, dir, pos, t, child});
        }
}

// Molecular realization: encode the vessel, run the chamber's reactions,
// decode what comes out. A starved step means the chamber sat idle.
void molecular_products(const Chamber& ch, const ThueRule& rule, const CodeBook& cb,
                        const std::set<Tape>& vessel, std::map<Tape, RewriteEvent>& fresh) {
    Pool pool;
    for (const Tape& t : vessel) pool.add({cb.encode(t.syms), Strandedness::Double});
    Pool products;
    try {
        products = run_microprogram(ch.program, pool).products;
    } catch (const StepFailure&) {
        return;
    }
    for (const Strand& st : products.strands) {
        Tape child{cb.decode(st.seq).symbols};
        if (vessel.count(child)) continue;
        // Recover the least (position, parent) pair that explains the child.
        std::optional<RewriteEvent> best;
        for (const Tape& t : vessel)
            for (std::size_t pos : matches(t, rule.pattern(ch.dir))) {
                if (!(apply_at(t, rule, ch.dir, pos) == child)) continue;
                RewriteEvent ev{rule.id, ch.dir, pos, t, child};
                if (!best || cand_less(ev, *best)) best = ev;
            }
        if (!best)
            throw Error("machine: chamber rule " + std::to_string(rule.id) +
                        " emitted an underivable string");
        fold_in(fresh, *best);
    }
}

} // namespace

MachineResult Machine::run(const Tape& program, const AcceptSpec& accept) const {
    MachineResult res;
    std::set<Tape> vessel{program};
    std::set<Tape> shadow{program};  // symbolic mirror for oracle checks
    std::map<Tape, RewriteEvent> parent_of;
    res.snapshots.push_back({0, 1, 1});
    auto finish = [&](MachineOutcome oc) {
        res.outcome = oc;
        res.vessel.assign(vessel.begin(), vessel.end());
        return res;
    };
    if (accept.accepts(program)) {
        res.accepted = program;
        return finish(MachineOutcome::Accepted);
    }
    bool oracle = cfg_.oracle_check && cfg_.level == ChamberLevel::Molecular;
    for (std::size_t cycle = 1; cycle <= cfg_.max_cycles; ++cycle) {
        res.cycles = cycle;
        std::map<Tape, RewriteEvent> fresh;
        for (const Chamber& ch : chambers_) {
            const ThueRule& rule = rules_.by_id(ch.rule_id);
            if (cfg_.level == ChamberLevel::Symbolic)
                symbolic_products(rule, ch.dir, vessel, fresh);
            else
                molecular_products(ch, rule, cb_, vessel, fresh);
        }
        if (oracle) {
            std::map<Tape, RewriteEvent> expect;
            for (const Chamber& ch : chambers_)
                symbolic_products(rules_.by_id(ch.rule_id), ch.dir, shadow, expect);
            bool same = fresh.size() == expect.size() &&
                        std::equal(fresh.begin(), fresh.end(), expect.begin(),
                                   [](const auto& a, const auto& b) { return a.first == b.first; });
            if (!same)
                throw Error("machine: cycle " + std::to_string(cycle) +
                            " molecular vessel diverged from the symbolic one");
            for (const auto& [t, ev] : expect) {
                (void)ev;
                shadow.insert(t);
            }
        }
        if (fresh.empty()) return finish(MachineOutcome::Converged);
        std::optional<Tape> hit;
        for (const auto& [t, ev] : fresh) {
            vessel.insert(t);
            parent_of.emplace(t, ev);
            if (!hit && accept.accepts(t)) hit = t;  // map order gives the least tape
        }
        res.snapshots.push_back({cycle, vessel.size(), fresh.size()});
        if (hit) {
            res.accepted = *hit;
            Tape cur = *hit;
            while (!(cur == program)) {
                const RewriteEvent& ev = parent_of.at(cur);
                res.witness.push_back(ev);
                cur = ev.before;
            }
            std::reverse(res.witness.begin(), res.witness.end());
            return finish(MachineOutcome::Accepted);
        }
        if (vessel.size() > cfg_.cap) {
            auto it = vessel.begin();
            std::advance(it, cfg_.cap);
            vessel.erase(it, vessel.end());
            res.truncated = true;
            res.snapshots.back().states = vessel.size();
            return finish(MachineOutcome::CapExceeded);
        }
    }
    return finish(MachineOutcome::CycleBound);
}

} // namespace nutm

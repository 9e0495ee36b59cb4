#include "nutm/thue.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace nutm {

std::string Tape::to_string() const {
    bool packed = std::all_of(syms.begin(), syms.end(),
                              [](const Symbol& s) { return s.size() == 1; });
    std::string out;
    for (std::size_t i = 0; i < syms.size(); ++i) {
        if (!packed && i) out += ' ';
        out += syms[i];
    }
    return out;
}

Tape Tape::parse(const std::string& text) {
    Tape t;
    if (text.find(' ') != std::string::npos) {
        std::istringstream in(text);
        Symbol s;
        while (in >> s) t.syms.push_back(s);
    } else {
        for (char c : text) t.syms.push_back(std::string(1, c));
    }
    return t;
}

const std::vector<Symbol>& ThueRule::pattern(Direction d) const {
    return d == Direction::Forward ? lhs : rhs;
}

const std::vector<Symbol>& ThueRule::replacement(Direction d) const {
    return d == Direction::Forward ? rhs : lhs;
}

RuleSet RuleSet::universal() {
    auto sym = [](std::initializer_list<const char*> xs) {
        std::vector<Symbol> v;
        for (auto x : xs) v.emplace_back(x);
        return v;
    };
    RuleSet rs;
    rs.rules = {
        {1, sym({"a", "c"}), sym({"c", "a"}), RuleMode::Symmetric},
        {2, sym({"a", "d"}), sym({"d", "a"}), RuleMode::Symmetric},
        {3, sym({"b", "c"}), sym({"c", "b"}), RuleMode::Symmetric},
        {4, sym({"b", "d"}), sym({"d", "b"}), RuleMode::Symmetric},
        {5, sym({"c", "e"}), sym({"e", "c", "a"}), RuleMode::Symmetric},
        {6, sym({"d", "e"}), sym({"e", "d", "b"}), RuleMode::Symmetric},
        {7, sym({"c", "d", "c", "a"}), sym({"c", "d", "c", "a", "e"}), RuleMode::Symmetric},
    };
    return rs;
}

RuleSet RuleSet::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("ruleset: cannot open " + path);
    nlohmann::json j;
    in >> j;
    RuleSet rs;
    for (auto& jr : j.at("rules")) {
        ThueRule r;
        r.id = jr.at("id").get<int>();
        r.lhs = jr.at("lhs").get<std::vector<Symbol>>();
        r.rhs = jr.at("rhs").get<std::vector<Symbol>>();
        std::string mode = jr.value("mode", "symmetric");
        if (mode == "symmetric") r.mode = RuleMode::Symmetric;
        else if (mode == "directed") r.mode = RuleMode::Directed;
        else throw Error("ruleset: bad mode '" + mode + "'");
        if (r.lhs.empty() || r.rhs.empty()) throw Error("ruleset: empty rule side");
        rs.rules.push_back(std::move(r));
    }
    return rs;
}

const ThueRule& RuleSet::by_id(int id) const {
    for (auto& r : rules)
        if (r.id == id) return r;
    throw Error("ruleset: no rule " + std::to_string(id));
}

std::vector<std::size_t> matches(const Tape& tape, const std::vector<Symbol>& pattern) {
    if (pattern.empty()) throw Error("matches: empty pattern");
    std::vector<std::size_t> out;
    if (pattern.size() > tape.syms.size()) return out;
    for (std::size_t i = 0; i + pattern.size() <= tape.syms.size(); ++i)
        if (std::equal(pattern.begin(), pattern.end(), tape.syms.begin() + i))
            out.push_back(i);
    return out;
}

Tape apply_at(const Tape& tape, const ThueRule& rule, Direction dir, std::size_t position) {
    if (dir == Direction::Reverse && rule.mode == RuleMode::Directed)
        throw Error("apply_at: rule " + std::to_string(rule.id) + " is one way");
    const auto& pat = rule.pattern(dir);
    if (position + pat.size() > tape.syms.size() ||
        !std::equal(pat.begin(), pat.end(), tape.syms.begin() + position))
        throw Error("apply_at: rule " + std::to_string(rule.id) + " does not match at " +
                    std::to_string(position));
    const auto& rep = rule.replacement(dir);
    Tape out;
    out.syms.reserve(tape.syms.size() - pat.size() + rep.size());
    out.syms.insert(out.syms.end(), tape.syms.begin(), tape.syms.begin() + position);
    out.syms.insert(out.syms.end(), rep.begin(), rep.end());
    out.syms.insert(out.syms.end(), tape.syms.begin() + position + pat.size(), tape.syms.end());
    return out;
}

std::vector<RewriteEvent> successors(const Tape& tape, const RuleSet& rules) {
    std::vector<RewriteEvent> out;
    for (const auto& r : rules.rules) {
        for (Direction d : {Direction::Forward, Direction::Reverse}) {
            if (d == Direction::Reverse && r.mode == RuleMode::Directed) continue;
            for (std::size_t pos : matches(tape, r.pattern(d)))
                out.push_back({r.id, d, pos, tape, apply_at(tape, r, d, pos)});
        }
    }
    // Rules iterate in set order; enforce the documented ordering regardless.
    std::stable_sort(out.begin(), out.end(), [](const RewriteEvent& a, const RewriteEvent& b) {
        if (a.rule_id != b.rule_id) return a.rule_id < b.rule_id;
        if (a.dir != b.dir) return a.dir == Direction::Forward;
        return a.position < b.position;
    });
    return out;
}

AcceptSpec AcceptSpec::exact_tape(Tape t) {
    AcceptSpec s;
    s.kind = Kind::Exact;
    s.exact = std::move(t);
    return s;
}

AcceptSpec AcceptSpec::contains(std::vector<Symbol> cert) {
    AcceptSpec s;
    s.kind = Kind::Certificate;
    s.certificate = std::move(cert);
    return s;
}

AcceptSpec AcceptSpec::pred(std::function<bool(const Tape&)> fn) {
    AcceptSpec s;
    s.kind = Kind::Predicate;
    s.predicate = std::move(fn);
    return s;
}

bool AcceptSpec::accepts(const Tape& t) const {
    switch (kind) {
        case Kind::Exact: return t == exact;
        case Kind::Certificate:
            if (certificate.empty()) throw Error("accept: empty certificate");
            return !matches(t, certificate).empty();
        case Kind::Predicate:
            if (!predicate) throw Error("accept: no predicate");
            return predicate(t);
    }
    return false;
}

namespace {

struct Provenance {
    Tape parent;
    RewriteEvent event;
};

// Smaller provenance wins the parent slot: earliest rule, forward before
// reverse, leftmost position, then smallest parent tape.
bool prov_less(const Provenance& a, const Provenance& b) {
    if (a.event.rule_id != b.event.rule_id) return a.event.rule_id < b.event.rule_id;
    if (a.event.dir != b.event.dir) return a.event.dir == Direction::Forward;
    if (a.event.position != b.event.position) return a.event.position < b.event.position;
    return a.parent < b.parent;
}

} // namespace

BfsResult bfs_run(const Tape& program, const RuleSet& rules, const AcceptSpec& accept,
                  std::size_t max_depth) {
    BfsResult res;
    res.trace.frontiers.push_back({program});
    if (accept.accepts(program)) {
        res.outcome = Outcome::Accepted;
        res.accepted = program;
        res.depth = 0;
        return res;
    }
    std::set<Tape> visited{program};
    std::vector<Tape> frontier{program};
    std::map<Tape, Provenance> parent_of;
    for (std::size_t depth = 1; depth <= max_depth; ++depth) {
        std::map<Tape, Provenance> fresh;
        for (const Tape& t : frontier) {
            for (RewriteEvent& ev : successors(t, rules)) {
                if (visited.count(ev.after)) continue;
                Provenance p{t, ev};
                auto [it, inserted] = fresh.emplace(ev.after, p);
                if (!inserted && prov_less(p, it->second)) it->second = p;
            }
        }
        if (fresh.empty()) {
            res.outcome = Outcome::Exhausted;
            res.depth = depth - 1;
            return res;
        }
        std::vector<Tape> next;
        std::optional<Tape> hit;
        for (auto& [tape, prov] : fresh) {
            visited.insert(tape);
            parent_of.emplace(tape, prov);
            next.push_back(tape);
            if (!hit && accept.accepts(tape)) hit = tape;  // map order is lexicographic
        }
        res.trace.frontiers.push_back(next);
        if (hit) {
            res.outcome = Outcome::Accepted;
            res.accepted = *hit;
            res.depth = depth;
            Tape cur = *hit;
            while (!(cur == program)) {
                const Provenance& p = parent_of.at(cur);
                res.witness.push_back(p.event);
                cur = p.parent;
            }
            std::reverse(res.witness.begin(), res.witness.end());
            return res;
        }
        frontier = std::move(next);
    }
    res.outcome = Outcome::DepthBound;
    res.depth = max_depth;
    return res;
}

std::vector<std::uint64_t> count_states(const Tape& program, const RuleSet& rules,
                                        std::size_t max_depth, bool dedup) {
    std::vector<std::uint64_t> out;
    if (dedup) {
        std::set<Tape> layer{program};
        out.push_back(layer.size());
        for (std::size_t d = 1; d <= max_depth; ++d) {
            std::set<Tape> next;
            for (const Tape& t : layer)
                for (RewriteEvent& ev : successors(t, rules)) next.insert(std::move(ev.after));
            out.push_back(next.size());
            layer = std::move(next);
            if (layer.empty()) break;
        }
        return out;
    }
    std::map<Tape, std::uint64_t> walks{{program, 1}};
    out.push_back(1);
    for (std::size_t d = 1; d <= max_depth; ++d) {
        std::map<Tape, std::uint64_t> next;
        for (auto& [t, n] : walks)
            for (RewriteEvent& ev : successors(t, rules)) next[std::move(ev.after)] += n;
        std::uint64_t total = 0;
        for (auto& [t, n] : next) {
            (void)t;
            total += n;
        }
        out.push_back(total);
        walks = std::move(next);
        if (walks.empty()) break;
    }
    return out;
}

} // namespace nutm

#include "nutm/tm.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <json.hpp>

namespace nutm {

TuringMachine TuringMachine::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("tm: cannot open " + path);
    nlohmann::json j;
    in >> j;
    TuringMachine tm;
    tm.name = j.value("name", "tm");
    tm.states = j.at("states").get<std::vector<std::string>>();
    tm.alphabet = j.at("alphabet").get<std::vector<std::string>>();
    tm.blank = j.at("blank").get<std::string>();
    tm.initial = j.at("initial").get<std::string>();
    tm.accepting = j.at("accepting").get<std::vector<std::string>>();
    for (const auto& jt : j.at("transitions")) {
        TmTransition t;
        t.state = jt.at("state").get<std::string>();
        t.read = jt.at("read").get<std::string>();
        t.next = jt.at("next").get<std::string>();
        t.write = jt.at("write").get<std::string>();
        std::string mv = jt.at("move").get<std::string>();
        if (mv == "R") t.move = 1;
        else if (mv == "L") t.move = -1;
        else throw Error("tm: bad move '" + mv + "'");
        tm.transitions.push_back(std::move(t));
    }
    tm.validate();
    return tm;
}

void TuringMachine::validate() const {
    std::set<std::string> st(states.begin(), states.end());
    std::set<std::string> al(alphabet.begin(), alphabet.end());
    if (st.size() != states.size()) throw Error("tm: duplicate state");
    if (al.size() != alphabet.size()) throw Error("tm: duplicate tape symbol");
    for (const auto& s : states)
        if (al.count(s)) throw Error("tm: '" + s + "' is both state and tape symbol");
    for (const auto& n : {std::string("<"), std::string(">")})
        if (st.count(n) || al.count(n)) throw Error("tm: end marker name '" + n + "' in use");
    if (!al.count(blank)) throw Error("tm: blank not in alphabet");
    if (!st.count(initial)) throw Error("tm: unknown initial state");
    std::set<std::string> acc(accepting.begin(), accepting.end());
    for (const auto& a : accepting)
        if (!st.count(a)) throw Error("tm: unknown accepting state " + a);
    std::set<std::pair<std::string, std::string>> keys;
    for (const auto& t : transitions) {
        if (!st.count(t.state) || !st.count(t.next)) throw Error("tm: unknown state in table");
        if (!al.count(t.read) || !al.count(t.write)) throw Error("tm: unknown symbol in table");
        if (acc.count(t.state)) throw Error("tm: accepting state " + t.state + " has outgoing moves");
        if (!keys.insert({t.state, t.read}).second)
            throw Error("tm: table is nondeterministic at (" + t.state + ", " + t.read + ")");
        if (t.move != 1 && t.move != -1) throw Error("tm: bad move");
    }
}

const TmTransition* TuringMachine::find(const std::string& state, const std::string& read) const {
    for (const auto& t : transitions)
        if (t.state == state && t.read == read) return &t;
    return nullptr;
}

Tape TmCompilation::config(const std::vector<std::string>& tape, const std::string& state,
                           std::size_t head) const {
    if (head > tape.size()) throw Error("tm: head beyond tape");
    Tape t;
    t.syms.push_back(left_end);
    t.syms.insert(t.syms.end(), tape.begin(), tape.begin() + head);
    t.syms.push_back(state);
    t.syms.insert(t.syms.end(), tape.begin() + head, tape.end());
    t.syms.push_back(right_end);
    return t;
}

AcceptSpec TmCompilation::accept_spec() const {
    std::set<std::string> acc(accepting.begin(), accepting.end());
    return AcceptSpec::pred([acc](const Tape& t) {
        return std::any_of(t.syms.begin(), t.syms.end(),
                           [&](const Symbol& s) { return acc.count(s) != 0; });
    });
}

TmCompilation compile_tm(const TuringMachine& tm) {
    tm.validate();
    TmCompilation c;
    c.blank = tm.blank;
    c.accepting = tm.accepting;
    int id = 0;
    auto rule = [&](std::vector<Symbol> lhs, std::vector<Symbol> rhs) {
        c.rules.rules.push_back({++id, std::move(lhs), std::move(rhs), RuleMode::Directed});
    };
    const std::string L = c.left_end, R = c.right_end;
    for (const TmTransition& t : tm.transitions) {
        if (t.move > 0) {
            rule({t.state, t.read}, {t.write, t.next});
        } else {
            for (const std::string& x : tm.alphabet)
                rule({x, t.state, t.read}, {t.next, x, t.write});
            rule({L, t.state, t.read}, {L, t.next, tm.blank, t.write});
        }
        if (t.read == tm.blank) {
            // The same move when the head has run onto the right marker.
            if (t.move > 0) {
                rule({t.state, R}, {t.write, t.next, R});
            } else {
                for (const std::string& x : tm.alphabet)
                    rule({x, t.state, R}, {t.next, x, t.write, R});
                rule({L, t.state, R}, {L, t.next, tm.blank, t.write, R});
            }
        }
    }
    return c;
}

TmRun start_run(const TuringMachine& tm, const std::vector<std::string>& input) {
    TmRun r;
    r.tm = &tm;
    r.tape = input;
    r.state = tm.initial;
    return r;
}

bool TmRun::step() {
    if (halted) return false;
    std::string read = head < tape.size() ? tape[head] : tm->blank;
    const TmTransition* t = tm->find(state, read);
    if (!t) {
        halted = true;
        return false;
    }
    if (head == tape.size()) tape.push_back(t->write);
    else tape[head] = t->write;
    state = t->next;
    if (t->move > 0) {
        ++head;
    } else if (head == 0) {
        tape.insert(tape.begin(), tm->blank);  // the tape grows a cell leftward
    } else {
        --head;
    }
    return true;
}

bool TmRun::accepted() const {
    return std::find(tm->accepting.begin(), tm->accepting.end(), state) != tm->accepting.end();
}

CosimReport cosimulate(const TuringMachine& tm, const std::vector<std::string>& input,
                       std::size_t max_steps) {
    TmCompilation comp = compile_tm(tm);
    TmRun run = start_run(tm, input);
    Tape cfg = comp.config(run.tape, run.state, run.head);
    CosimReport rep;
    auto fail = [&](const std::string& why) {
        rep.agreed = false;
        rep.divergence_step = rep.steps;
        rep.note = why;
        return rep;
    };
    for (std::size_t i = 0; i < max_steps; ++i) {
        std::vector<RewriteEvent> evs = successors(cfg, comp.rules);
        bool live = tm.find(run.state, run.head < run.tape.size() ? run.tape[run.head]
                                                                  : tm.blank) != nullptr;
        if (!live) {
            if (!evs.empty()) return fail("halted machine still has a rewrite");
            break;
        }
        if (evs.size() != 1)
            return fail("expected one rewrite, found " + std::to_string(evs.size()));
        run.step();
        cfg = evs.front().after;
        ++rep.steps;
        if (!(comp.config(run.tape, run.state, run.head) == cfg))
            return fail("configurations diverged");
    }
    rep.tm_accepted = run.accepted();
    return rep;
}

std::vector<std::string> builtin_tm_names() { return {"increment", "parity", "copier"}; }

TuringMachine builtin_tm(const std::string& name) {
    TuringMachine tm;
    tm.name = name;
    auto t = [&](const char* q, const char* r, const char* n, const char* w, int m) {
        tm.transitions.push_back({q, r, n, w, m});
    };
    if (name == "increment") {
        // Appends one mark to a unary numeral.
        tm.states = {"q0", "q_acc"};
        tm.alphabet = {"1", "_"};
        tm.blank = "_";
        tm.initial = "q0";
        tm.accepting = {"q_acc"};
        t("q0", "1", "q0", "1", 1);
        t("q0", "_", "q_acc", "1", 1);
    } else if (name == "parity") {
        // Accepts exactly the words with an even number of ones.
        tm.states = {"q_even", "q_odd", "q_acc"};
        tm.alphabet = {"0", "1", "_"};
        tm.blank = "_";
        tm.initial = "q_even";
        tm.accepting = {"q_acc"};
        t("q_even", "0", "q_even", "0", 1);
        t("q_even", "1", "q_odd", "1", 1);
        t("q_even", "_", "q_acc", "_", 1);
        t("q_odd", "0", "q_odd", "0", 1);
        t("q_odd", "1", "q_even", "1", 1);
    } else if (name == "copier") {
        // Copies the word before the separator to the region after it,
        // marking source cells as it goes.
        tm.states = {"q0", "qa", "qb", "qr", "q_acc"};
        tm.alphabet = {"a", "b", "#", "A", "B", "_"};
        tm.blank = "_";
        tm.initial = "q0";
        tm.accepting = {"q_acc"};
        t("q0", "a", "qa", "A", 1);
        t("q0", "b", "qb", "B", 1);
        t("q0", "#", "q_acc", "#", 1);
        t("qa", "a", "qa", "a", 1);
        t("qa", "b", "qa", "b", 1);
        t("qa", "#", "qa", "#", 1);
        t("qa", "_", "qr", "a", -1);
        t("qb", "a", "qb", "a", 1);
        t("qb", "b", "qb", "b", 1);
        t("qb", "#", "qb", "#", 1);
        t("qb", "_", "qr", "b", -1);
        t("qr", "a", "qr", "a", -1);
        t("qr", "b", "qr", "b", -1);
        t("qr", "#", "qr", "#", -1);
        t("qr", "A", "q0", "A", 1);
        t("qr", "B", "q0", "B", 1);
    } else {
        throw Error("no builtin machine named '" + name + "'");
    }
    tm.validate();
    return tm;
}

} // namespace nutm

#include "nutm/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>

#include <json.hpp>

namespace nutm {

NnTable NnTable::unified() {
    NnTable t;
    t.stacks = {
        {"AA", -1.00}, {"AT", -0.88}, {"TA", -0.58}, {"CA", -1.45}, {"AC", -1.44},
        {"AG", -1.28}, {"GA", -1.30}, {"CG", -2.17}, {"GC", -2.24}, {"CC", -1.84},
    };
    return t;
}

NnTable NnTable::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("nn table: cannot open " + path);
    nlohmann::json j;
    in >> j;
    NnTable t;
    for (auto& [k, v] : j.at("stacks").items()) t.stacks[canon(k)] = v.get<double>();
    t.init_gc = j.value("init_gc", t.init_gc);
    t.init_at = j.value("init_at", t.init_at);
    t.mismatch_penalty = j.value("mismatch_penalty", t.mismatch_penalty);
    t.loop_per_base = j.value("loop_per_base", t.loop_per_base);
    return t;
}

std::string NnTable::canon(const std::string& dinuc) {
    if (dinuc.size() != 2) throw Error("nn table: bad step '" + dinuc + "'");
    return std::min(dinuc, revcomp(dinuc));
}

double NnTable::stack(const std::string& dinuc) const {
    auto it = stacks.find(canon(dinuc));
    if (it == stacks.end()) throw Error("nn table: no step " + dinuc);
    return it->second;
}

namespace {
double init_term(char base, const NnTable& t) {
    return (base == 'G' || base == 'C') ? t.init_gc : t.init_at;
}
} // namespace

double duplex_dg(const std::string& word, const NnTable& t) {
    if (word.size() < 2) throw Error("duplex_dg: word too short");
    double dg = init_term(word.front(), t) + init_term(word.back(), t);
    for (std::size_t i = 0; i + 1 < word.size(); ++i) dg += t.stack(word.substr(i, 2));
    return dg;
}

double hybrid_dg(const std::string& probe, const std::string& site, const NnTable& t) {
    if (probe.size() != site.size()) throw Error("hybrid_dg: length mismatch");
    if (probe.size() < 2) throw Error("hybrid_dg: word too short");
    double dg = 0.0;
    auto paired = [&](std::size_t i) { return probe[i] == site[i]; };
    if (paired(0)) dg += init_term(site.front(), t);
    if (paired(probe.size() - 1)) dg += init_term(site.back(), t);
    for (std::size_t i = 0; i < probe.size(); ++i)
        if (!paired(i)) dg += t.mismatch_penalty;
    for (std::size_t i = 0; i + 1 < probe.size(); ++i)
        if (paired(i) && paired(i + 1)) dg += t.stack(site.substr(i, 2));
    return dg;
}

double boltzmann_ratio(double dg_a, double dg_b, const ThermoEnv& env) {
    return std::exp(-(dg_a - dg_b) / (env.gas_constant * env.temperature));
}

SpecificityRow specificity_verify(const std::vector<Symbol>& antecedent, const CodeBook& cb,
                                  const NnTable& t) {
    SpecificityRow row;
    row.antecedent = antecedent;
    std::string word = cb.encode_region(antecedent);
    row.self_dg = hybrid_dg(word, word, t);
    row.worst_dg = std::numeric_limits<double>::infinity();
    std::vector<Symbol> alphabet;
    for (auto& [sym, tri] : cb.words()) {
        (void)tri;
        alphabet.push_back(sym);
    }
    std::vector<Symbol> combo(antecedent.size(), alphabet.front());
    auto consider = [&]() {
        if (combo == antecedent) return;
        double dg = hybrid_dg(word, cb.encode_region(combo), t);
        if (dg < row.worst_dg) {
            row.worst_dg = dg;
            row.worst_competitor = combo;
        }
    };
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == combo.size()) {
            consider();
            return;
        }
        for (auto& a : alphabet) {
            combo[i] = a;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    row.margin = row.worst_dg - row.self_dg;
    row.pass = row.margin > 0.0;
    return row;
}

std::vector<SpecificityRow> specificity_report(const RuleSet& rules, const CodeBook& cb,
                                               const NnTable& t) {
    std::vector<SpecificityRow> rows;
    for (const auto& r : rules.rules) {
        rows.push_back(specificity_verify(r.lhs, cb, t));
        rows.push_back(specificity_verify(r.rhs, cb, t));
    }
    return rows;
}

std::vector<std::size_t> rank_sites(const std::vector<double>& dgs) {
    std::vector<std::size_t> idx(dgs.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return dgs[a] < dgs[b]; });
    return idx;
}

} // namespace nutm

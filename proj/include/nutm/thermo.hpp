#pragma once

#include <map>
#include <string>
#include <vector>

#include "nutm/codec.hpp"
#include "nutm/thue.hpp"

namespace nutm {

// Nearest-neighbor free energy parameters at 37 C, kcal/mol. Stacks are keyed
// by the canonical dinucleotide (the smaller of a duplex step and its
// reverse complement), so each physical step appears once.
struct NnTable {
    std::map<std::string, double> stacks;
    double init_gc = 0.98;
    double init_at = 1.03;
    double mismatch_penalty = 1.0;  // per mismatched pair, adjacent stacks voided
    double loop_per_base = 0.5;     // per unpaired base in a bulge

    static NnTable unified();
    static NnTable from_json_file(const std::string& path);
    static std::string canon(const std::string& dinuc);
    double stack(const std::string& dinuc) const;  // throws on unknown step
};

struct ThermoEnv {
    double temperature = 328.0;       // kelvin
    double gas_constant = 0.0019872;  // kcal/(mol*K)
};

// Free energy of word bound to its exact complement.
double duplex_dg(const std::string& word, const NnTable& t);

// Positional alignment of probe against the word it was designed to equal
// (both sense strand, equal length). Positions that differ are mismatches.
double hybrid_dg(const std::string& probe, const std::string& site, const NnTable& t);

// Occupancy ratio between two binding energies: exp(-(dg_a - dg_b) / RT).
double boltzmann_ratio(double dg_a, double dg_b, const ThermoEnv& env = {});

struct SpecificityRow {
    std::vector<Symbol> antecedent;
    std::vector<Symbol> worst_competitor;  // empty when no competitor exists
    double self_dg = 0.0;
    double worst_dg = 0.0;  // +inf sentinel when no competitor exists
    double margin = 0.0;    // worst_dg - self_dg, must be strictly positive
    bool pass = false;
};

// The recognition word for antecedent against every other same-length symbol
// combination, spacers held fixed. Pass means the true site binds strictly
// tightest.
SpecificityRow specificity_verify(const std::vector<Symbol>& antecedent, const CodeBook& cb,
                                  const NnTable& t);

// One row per rule side, rule order, pattern before replacement.
std::vector<SpecificityRow> specificity_report(const RuleSet& rules, const CodeBook& cb,
                                               const NnTable& t);

// Indices of dgs sorted ascending (tightest binder first), ties kept stable.
std::vector<std::size_t> rank_sites(const std::vector<double>& dgs);

} // namespace nutm

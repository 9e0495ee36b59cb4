#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nutm/codec.hpp"
#include "nutm/thermo.hpp"
#include "nutm/thue.hpp"

namespace nutm {

enum class Strandedness { Single, Double };

struct Strand {
    std::string seq;  // sense frame; a double strand also carries its reverse complement
    Strandedness form = Strandedness::Double;
    auto operator<=>(const Strand&) const = default;
};

struct Pool {
    std::vector<Strand> strands;

    void add(Strand s) { strands.push_back(std::move(s)); }
    void canonicalize();  // sort, drop exact duplicates
    bool empty() const { return strands.empty(); }
};

enum class PrimerRole { Start, End, Edit, Megaprimer };

struct Primer {
    std::string seq;  // 5' to 3', tail included
    PrimerRole role = PrimerRole::Edit;
    std::size_t tail_len = 0;  // declared unpaired 5' overhang (a clamp, usually)

    std::string core() const { return seq.substr(tail_len); }
};

struct BindingPolicy {
    std::size_t anchor = 6;            // 3'-terminal run that must pair exactly
    std::size_t loop_max = 6;          // largest tolerated bulge, either strand
    std::size_t mismatch_budget = 6;   // mismatches allowed outside the anchor
    std::optional<double> dg_ceiling;  // optional thermodynamic gate on the site
};

enum class LoopSide { None, Primer, Template };

struct BindingSite {
    std::size_t strand_index = 0;
    // Forward: the core reads as the stored sequence (anneals its complement).
    // Reverse: the core anneals the stored sequence itself.
    Direction orientation = Direction::Forward;
    std::size_t begin = 0, end = 0;  // paired interval, stored-sequence coordinates
    std::size_t mismatches = 0;
    LoopSide loop = LoopSide::None;
    std::size_t loop_len = 0;
};

// Every placement the policy allows, ordered by strand, orientation, position.
// Forward sites require a double-stranded template; reverse sites do not.
std::vector<BindingSite> find_binding_sites(const Primer& p, const Pool& pool,
                                            const BindingPolicy& policy = {});

// Exponential-phase products over every compatible pairing of primer sites.
// The primers' own bases override the template wherever they sit.
Pool symmetric_pcr(const Pool& templates, const Primer& fwd, const Primer& rev,
                   const BindingPolicy& policy = {});

// Single primer, linear amplification, single-stranded products.
Pool asymmetric_pcr(const Pool& templates, const Primer& p,
                    const BindingPolicy& policy = {});

// One primer slot of a reaction step. Either a literal reagent or every
// product of an earlier step (megaprimer hand-off). A declared context pins
// the designed annealing window instead of a policy search: the primer's
// paired span starts context_offset bases into each exact occurrence of the
// context and ends with it.
struct OpPrimer {
    Primer primer;
    std::string from_step;
    bool reverse_molecule = false;  // referenced product enters as its reverse complement
    // With reverse_molecule, occurrences survive only where the template
    // after the context equals the referenced product from ref_split on.
    std::size_t ref_split = 0;
    std::optional<std::string> context;
    std::size_t context_offset = 0;
};

struct PcrOp {
    std::string label;
    enum class Kind { Symmetric, Asymmetric } kind = Kind::Symmetric;
    OpPrimer fwd, rev;  // rev is ignored for asymmetric ops
    std::string template_step;  // empty: the pool the run started from
    std::optional<BindingPolicy> policy;
    // Designed product window, for the stepwise alignment table.
    std::optional<std::size_t> window_begin;
    std::size_t window_len = 0;
    std::vector<std::size_t> window_columns;  // table column of each window cell
};

struct Microprogram {
    std::string name;
    std::vector<PcrOp> ops;
    std::size_t table_width = 0;

    void validate() const;  // unique labels, references only reach backwards
};

struct StepTrace {
    std::string label;
    std::vector<BindingSite> fwd_sites, rev_sites;
    Pool products;
};

struct MicroprogramResult {
    Pool products;  // the final op's output
    std::vector<StepTrace> steps;
};

// Runs ops in order, each reading templates and primers from earlier pools.
// A step with no product throws StepFailure carrying the step label.
MicroprogramResult run_microprogram(const Microprogram& mp, const Pool& initial);

// Stepwise window table: one (label, row) per op that declares a window, the
// row sliced from the op's first product and gapped to the shared layout.
std::vector<std::pair<std::string, std::string>> alignment_table(const Microprogram& mp,
                                                                 const MicroprogramResult& r);

// The mutagenesis cascade realizing one rewrite rule in one direction:
// flank-swap recognition, per-cell edits, flank restoration, then two splice
// steps that graft the rebuilt window back between its original prefix and
// suffix at every site.
Microprogram compile_rule(const ThueRule& rule, Direction dir, const CodeBook& cb);

Microprogram builtin_microprogram(const std::string& name, const CodeBook& cb);
std::vector<std::string> builtin_microprogram_names();

// compile_rule + run: every single-application rewrite of every pool member.
Pool apply_rule_pool(const Pool& programs, const ThueRule& rule, Direction dir,
                     const CodeBook& cb);

// Recognition assay: clamp-tailed window primer paired with the end primer,
// perfect annealing only. One product per antecedent occurrence.
Pool recognize(const Pool& programs, const std::vector<Symbol>& antecedent, const CodeBook& cb);

Primer start_primer(const CodeBook& cb);
Primer end_primer(const CodeBook& cb);

} // namespace nutm

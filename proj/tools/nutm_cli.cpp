#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nutm/io.hpp"
#include "nutm/machine.hpp"
#include "nutm/tm.hpp"

using namespace nutm;

namespace {

struct Defaults {
    std::string codebook_path;
    std::string ruleset_path;
    std::size_t max_cycles = 64;
    std::size_t cap = 1000000;
    std::string level = "symbolic";
};

// Optional config file named by NUTM_CONFIG; flags always win over it.
Defaults load_defaults() {
    Defaults d;
    const char* env = std::getenv("NUTM_CONFIG");
    if (!env || !*env) return d;
    std::ifstream in(env);
    if (!in) throw Error(std::string("config: cannot open ") + env);
    nlohmann::json j;
    in >> j;
    d.codebook_path = j.value("codebook", d.codebook_path);
    d.ruleset_path = j.value("ruleset", d.ruleset_path);
    d.max_cycles = j.value("max_cycles", d.max_cycles);
    d.cap = j.value("cap", d.cap);
    d.level = j.value("level", d.level);
    return d;
}

CodeBook load_codebook(const std::string& flag, const Defaults& d) {
    if (!flag.empty()) return CodeBook::from_json_file(flag);
    if (!d.codebook_path.empty()) return CodeBook::from_json_file(d.codebook_path);
    std::string bundled = std::string(NUTM_DATA_DIR) + "/codebook.json";
    if (std::filesystem::exists(bundled)) return CodeBook::from_json_file(bundled);
    return CodeBook::figure_defaults();
}

RuleSet load_ruleset(const std::string& flag, const Defaults& d) {
    if (!flag.empty()) return RuleSet::from_json_file(flag);
    if (!d.ruleset_path.empty()) return RuleSet::from_json_file(d.ruleset_path);
    return RuleSet::universal();
}

Tape load_program(const std::string& text) {
    if (text == "fig4") return Tape::parse("badecedbae");
    if (text == "fig5b") return Tape::parse("ec");
    return Tape::parse(text);
}

std::string ruleset_json(const RuleSet& rs) {
    nlohmann::ordered_json j;
    j["rules"] = nlohmann::ordered_json::array();
    for (const ThueRule& r : rs.rules)
        j["rules"].push_back({{"id", r.id},
                              {"lhs", r.lhs},
                              {"rhs", r.rhs},
                              {"mode", r.mode == RuleMode::Symmetric ? "symmetric" : "directed"}});
    return j.dump(2) + "\n";
}

int run_cmd(const std::string& program_text, const std::string& certificate,
            const std::string& accept_exact, const Defaults& d, const std::string& cb_flag,
            const std::string& rs_flag, std::size_t max_cycles, std::size_t cap,
            const std::string& level, bool oracle, const std::string& out,
            const std::string& format) {
    CodeBook cb = load_codebook(cb_flag, d);
    RuleSet rs = load_ruleset(rs_flag, d);
    Tape program = load_program(program_text);
    AcceptSpec spec;
    if (!accept_exact.empty())
        spec = AcceptSpec::exact_tape(Tape::parse(accept_exact));
    else if (!certificate.empty())
        spec = AcceptSpec::contains(Tape::parse(certificate).syms);
    else {
        std::cerr << "run: need --certificate or --accept-exact\n";
        return 2;
    }
    MachineConfig mc;
    mc.max_cycles = max_cycles;
    mc.cap = cap;
    mc.level = level == "molecular" ? ChamberLevel::Molecular : ChamberLevel::Symbolic;
    mc.oracle_check = oracle;
    Machine machine(rs, cb, mc);
    MachineResult res = machine.run(program, spec);
    if (!out.empty()) {
        std::filesystem::create_directories(out);
        write_file(out + "/report.json", machine_report_json(res, program));
        write_file(out + "/snapshots.csv", snapshots_csv(res.snapshots));
        write_file(out + "/witness.dot", witness_dot(res.witness, program));
        write_file(out + "/vessel.fasta", vessel_fasta(res.vessel, cb));
        std::cout << outcome_name(res.outcome) << " after " << res.cycles
                  << " cycle(s); reports in " << out << "\n";
        return 0;
    }
    if (format == "csv") std::cout << snapshots_csv(res.snapshots);
    else if (format == "dot") std::cout << witness_dot(res.witness, program);
    else if (format == "fasta") std::cout << vessel_fasta(res.vessel, cb);
    else if (format == "txt") {
        std::cout << outcome_name(res.outcome) << " after " << res.cycles << " cycle(s)\n";
        if (res.accepted) std::cout << "accepted: " << res.accepted->to_string() << "\n";
        for (const RewriteEvent& ev : res.witness)
            std::cout << "  " << ev.before.to_string() << " -> " << ev.after.to_string() << "  ["
                      << ev.rule_id << "/" << direction_name(ev.dir) << "@" << ev.position
                      << "]\n";
    } else {
        std::cout << machine_report_json(res, program);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"replicating rewrite machinery, in simulation"};
    app.require_subcommand(1);

    std::string program_text, certificate, accept_exact, cb_flag, rs_flag;
    std::string level = "symbolic", out, format = "json";
    std::size_t max_cycles = 0, cap = 0;
    bool oracle = false;

    auto* c_run = app.add_subcommand("run", "exhaust rewrites of a program in the vessel");
    c_run->add_option("--program", program_text, "tape text or fixture (fig4, fig5b)")
        ->required();
    c_run->add_option("--certificate", certificate, "accept any tape containing this run");
    c_run->add_option("--accept-exact", accept_exact, "accept exactly this tape");
    c_run->add_option("--codebook", cb_flag, "codebook json");
    c_run->add_option("--ruleset", rs_flag, "ruleset json");
    c_run->add_option("--max-cycles", max_cycles, "cycle bound");
    c_run->add_option("--cap", cap, "vessel population cap");
    c_run->add_option("--level", level, "symbolic or molecular")
        ->check(CLI::IsMember({"symbolic", "molecular"}));
    c_run->add_flag("--oracle-check", oracle, "shadow molecular cycles symbolically");
    c_run->add_option("--out", out, "directory for the full report set");
    c_run->add_option("--format", format, "stdout format")
        ->check(CLI::IsMember({"json", "csv", "dot", "fasta", "txt"}));

    std::string antecedent;
    std::size_t match_window = 6, loop_max = 0;
    auto* c_rec = app.add_subcommand("recognize", "probe a program for an antecedent");
    c_rec->add_option("--program", program_text, "tape text or fixture")->required();
    c_rec->add_option("--antecedent", antecedent, "symbol run to probe for")->required();
    c_rec->add_option("--codebook", cb_flag, "codebook json");
    c_rec->add_option("--match-window", match_window, "3' bases that must pair exactly");
    c_rec->add_option("--loop-max", loop_max, "largest tolerated bulge");

    std::string mp_name, direction = "fwd";
    int rule_id = 0;
    auto* c_mp = app.add_subcommand("microprogram", "run a mutagenesis cascade");
    c_mp->add_option("--name", mp_name, "builtin workflow name");
    c_mp->add_option("--rule", rule_id, "rule id to compile");
    c_mp->add_option("--direction", direction, "fwd or rev")
        ->check(CLI::IsMember({"fwd", "rev"}));
    c_mp->add_option("--program", program_text, "tape text or fixture")->required();
    c_mp->add_option("--codebook", cb_flag, "codebook json");
    c_mp->add_option("--ruleset", rs_flag, "ruleset json");
    c_mp->add_option("--out", out, "file for the step report");

    auto* c_spec = app.add_subcommand("specificity", "rank every recognition window");
    c_spec->add_option("--codebook", cb_flag, "codebook json");
    c_spec->add_option("--ruleset", rs_flag, "ruleset json");
    c_spec->add_option("--out", out, "csv file");

    std::string tm_name, tm_file, tm_input, emit_ruleset;
    std::size_t tm_steps = 100;
    auto* c_tm = app.add_subcommand("compile-tm", "rewrite rules from a machine table");
    c_tm->add_option("--tm", tm_name, "builtin machine (increment, parity, copier)");
    c_tm->add_option("--tm-file", tm_file, "machine json");
    c_tm->add_option("--input", tm_input, "initial tape");
    c_tm->add_option("--steps", tm_steps, "lockstep bound");
    c_tm->add_option("--emit-ruleset", emit_ruleset, "write the compiled rules here");

    std::string tape_text, dna_text;
    bool lenient = false;
    auto* c_enc = app.add_subcommand("encode", "tape to strand");
    c_enc->add_option("--tape", tape_text, "tape text")->required();
    c_enc->add_option("--codebook", cb_flag, "codebook json");
    auto* c_dec = app.add_subcommand("decode", "strand to tape");
    c_dec->add_option("--dna", dna_text, "strand text")->required();
    c_dec->add_flag("--lenient", lenient, "tolerate work-in-progress marks");
    c_dec->add_option("--codebook", cb_flag, "codebook json");

    std::size_t audit_len = 4, audit_seed = 1;
    auto* c_audit = app.add_subcommand("audit-codebook", "hunt delimiter collisions");
    c_audit->add_option("--max-len", audit_len, "longest program to try");
    c_audit->add_option("--seed", audit_seed, "sampling seed");
    c_audit->add_option("--codebook", cb_flag, "codebook json");

    std::size_t depth = 8;
    bool walks = false;
    auto* c_count = app.add_subcommand("count", "population per rewrite depth");
    c_count->add_option("--program", program_text, "tape text or fixture")->required();
    c_count->add_option("--depth", depth, "depth bound");
    c_count->add_flag("--walks", walks, "count rewrite walks instead of distinct tapes");
    c_count->add_option("--ruleset", rs_flag, "ruleset json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Defaults d = load_defaults();
        if (max_cycles == 0) max_cycles = d.max_cycles;
        if (cap == 0) cap = d.cap;
        if (!c_run->count("--level")) level = d.level;

        if (c_run->parsed())
            return run_cmd(program_text, certificate, accept_exact, d, cb_flag, rs_flag,
                           max_cycles, cap, level, oracle, out, format);

        if (c_rec->parsed()) {
            CodeBook cb = load_codebook(cb_flag, d);
            Tape program = load_program(program_text);
            Pool pool;
            pool.add({cb.encode(program.syms), Strandedness::Double});
            std::vector<Symbol> ante = Tape::parse(antecedent).syms;
            Pool hits = recognize(pool, ante, cb);
            Primer probe{cb.clamp() + cb.encode_region(ante), PrimerRole::Edit,
                         cb.clamp().size()};
            auto sites = find_binding_sites(probe, pool,
                                            BindingPolicy{match_window, loop_max, 0, {}});
            std::cout << "products: " << hits.strands.size() << "\n";
            for (const Strand& s : hits.strands) std::cout << s.seq << "\n";
            std::cout << "sites: " << sites.size() << "\n";
            for (const BindingSite& s : sites)
                std::cout << "  strand " << s.strand_index << " "
                          << (s.orientation == Direction::Forward ? "fwd" : "rev") << " ["
                          << s.begin << "," << s.end << ") mismatches " << s.mismatches << "\n";
            return 0;
        }

        if (c_mp->parsed()) {
            CodeBook cb = load_codebook(cb_flag, d);
            Microprogram mp;
            if (!mp_name.empty()) {
                mp = builtin_microprogram(mp_name, cb);
            } else if (rule_id != 0) {
                RuleSet rs = load_ruleset(rs_flag, d);
                mp = compile_rule(rs.by_id(rule_id),
                                  direction == "rev" ? Direction::Reverse : Direction::Forward,
                                  cb);
            } else {
                std::cerr << "microprogram: need --name or --rule\n";
                return 2;
            }
            Tape program = load_program(program_text);
            Pool pool;
            pool.add({cb.encode(program.syms), Strandedness::Double});
            MicroprogramResult res = run_microprogram(mp, pool);
            std::string txt = microprogram_txt(mp, res);
            if (!out.empty()) {
                write_file(out, txt);
                std::cout << "report in " << out << "\n";
            } else {
                std::cout << txt;
            }
            return 0;
        }

        if (c_spec->parsed()) {
            CodeBook cb = load_codebook(cb_flag, d);
            RuleSet rs = load_ruleset(rs_flag, d);
            std::string csv = specificity_csv(specificity_report(rs, cb, NnTable::unified()));
            if (!out.empty()) {
                write_file(out, csv);
                std::cout << "report in " << out << "\n";
            } else {
                std::cout << csv;
            }
            return 0;
        }

        if (c_tm->parsed()) {
            TuringMachine tm =
                tm_file.empty() ? builtin_tm(tm_name) : TuringMachine::from_json_file(tm_file);
            if (!emit_ruleset.empty())
                write_file(emit_ruleset, ruleset_json(compile_tm(tm).rules));
            if (!tm_input.empty() || emit_ruleset.empty()) {
                CosimReport rep = cosimulate(tm, Tape::parse(tm_input).syms, tm_steps);
                std::cout << "steps: " << rep.steps << "\n"
                          << "agreed: " << (rep.agreed ? "yes" : "no") << "\n"
                          << "accepted: " << (rep.tm_accepted ? "yes" : "no") << "\n";
                if (!rep.agreed) {
                    std::cout << "divergence at step " << rep.divergence_step << ": " << rep.note
                              << "\n";
                    return 1;
                }
            }
            return 0;
        }

        if (c_enc->parsed()) {
            CodeBook cb = load_codebook(cb_flag, d);
            std::cout << cb.encode(load_program(tape_text).syms) << "\n";
            return 0;
        }

        if (c_dec->parsed()) {
            CodeBook cb = load_codebook(cb_flag, d);
            DecodeResult res = cb.decode(dna_text, !lenient);
            Tape t{res.symbols};
            std::cout << t.to_string() << "\n";
            for (const DecodedMarker& m : res.markers) {
                const char* kind = "?";
                switch (m.kind) {
                    case DecodedMarker::Kind::Start: kind = "start"; break;
                    case DecodedMarker::Kind::End: kind = "end"; break;
                    case DecodedMarker::Kind::AltSpacer: kind = "alt-spacer"; break;
                    case DecodedMarker::Kind::Clamp: kind = "clamp"; break;
                    case DecodedMarker::Kind::Intermediate: kind = "intermediate"; break;
                }
                std::cout << "marker " << kind << " @" << m.offset << " " << m.text << "\n";
            }
            if (!res.residue.empty()) std::cout << "residue: " << res.residue << "\n";
            return 0;
        }

        if (c_audit->parsed()) {
            CodeBook cb = load_codebook(cb_flag, d);
            auto bad = cb.audit(audit_len, audit_seed);
            if (bad.empty()) {
                std::cout << "ok\n";
                return 0;
            }
            for (const std::string& s : bad) std::cout << s << "\n";
            return 1;
        }

        if (c_count->parsed()) {
            RuleSet rs = load_ruleset(rs_flag, d);
            Tape program = load_program(program_text);
            std::cout << counts_csv(count_states(program, rs, depth, !walks));
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

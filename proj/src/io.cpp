#include "nutm/io.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace nutm {

std::string outcome_name(MachineOutcome oc) {
    switch (oc) {
        case MachineOutcome::Accepted: return "accepted";
        case MachineOutcome::Converged: return "converged";
        case MachineOutcome::CycleBound: return "cycle-bound";
        case MachineOutcome::CapExceeded: return "cap-exceeded";
    }
    return "?";
}

std::string direction_name(Direction d) {
    return d == Direction::Forward ? "fwd" : "rev";
}

namespace {

nlohmann::ordered_json event_json(const RewriteEvent& ev) {
    return {{"rule", ev.rule_id},
            {"dir", direction_name(ev.dir)},
            {"pos", ev.position},
            {"from", ev.before.to_string()},
            {"to", ev.after.to_string()}};
}

std::string fixed4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

} // namespace

std::string machine_report_json(const MachineResult& r, const Tape& program) {
    nlohmann::ordered_json j;
    j["program"] = program.to_string();
    j["outcome"] = outcome_name(r.outcome);
    j["cycles"] = r.cycles;
    j["truncated"] = r.truncated;
    if (r.accepted) j["accepted"] = r.accepted->to_string();
    j["witness"] = nlohmann::ordered_json::array();
    for (const RewriteEvent& ev : r.witness) j["witness"].push_back(event_json(ev));
    j["snapshots"] = nlohmann::ordered_json::array();
    for (const VesselSnapshot& s : r.snapshots)
        j["snapshots"].push_back({{"cycle", s.cycle}, {"states", s.states}, {"fresh", s.fresh}});
    j["vessel"] = nlohmann::ordered_json::array();
    for (const Tape& t : r.vessel) j["vessel"].push_back(t.to_string());
    return j.dump(2) + "\n";
}

std::string snapshots_csv(const std::vector<VesselSnapshot>& snaps) {
    std::string out = "cycle,states,fresh\n";
    for (const VesselSnapshot& s : snaps)
        out += std::to_string(s.cycle) + "," + std::to_string(s.states) + "," +
               std::to_string(s.fresh) + "\n";
    return out;
}

std::string witness_dot(const std::vector<RewriteEvent>& witness, const Tape& program) {
    std::string out = "digraph derivation {\n  rankdir=LR;\n";
    auto node = [](const Tape& t) { return "\"" + t.to_string() + "\""; };
    out += "  " + node(program) + ";\n";
    for (const RewriteEvent& ev : witness)
        out += "  " + node(ev.before) + " -> " + node(ev.after) + " [label=\"" +
               std::to_string(ev.rule_id) + "/" + direction_name(ev.dir) + "@" +
               std::to_string(ev.position) + "\"];\n";
    out += "}\n";
    return out;
}

std::string vessel_fasta(const std::vector<Tape>& vessel, const CodeBook& cb) {
    std::string out;
    for (std::size_t i = 0; i < vessel.size(); ++i)
        out += ">s" + std::to_string(i) + " " + vessel[i].to_string() + "\n" +
               cb.encode(vessel[i].syms) + "\n";
    return out;
}

std::string microprogram_txt(const Microprogram& mp, const MicroprogramResult& r) {
    std::string out = mp.name + "\n";
    for (const StepTrace& st : r.steps) {
        out += st.label + ": " + std::to_string(st.products.strands.size()) + " product(s), " +
               std::to_string(st.fwd_sites.size()) + "+" + std::to_string(st.rev_sites.size()) +
               " sites\n";
        for (const Strand& s : st.products.strands) out += "  " + s.seq + "\n";
    }
    auto rows = alignment_table(mp, r);
    if (!rows.empty()) {
        out += "window table:\n";
        std::size_t w = 0;
        for (const auto& [label, row] : rows) w = std::max(w, label.size());
        for (const auto& [label, row] : rows)
            out += "  " + label + std::string(w - label.size() + 2, ' ') + row + "\n";
    }
    return out;
}

std::string specificity_csv(const std::vector<SpecificityRow>& rows) {
    std::string out = "antecedent,worst_competitor,self_dg,worst_dg,margin,pass\n";
    for (const SpecificityRow& r : rows) {
        Tape a{r.antecedent}, c{r.worst_competitor};
        out += a.to_string() + "," + c.to_string() + "," + fixed4(r.self_dg) + "," +
               fixed4(r.worst_dg) + "," + fixed4(r.margin) + "," + (r.pass ? "yes" : "no") +
               "\n";
    }
    return out;
}

std::string counts_csv(const std::vector<std::uint64_t>& counts) {
    std::string out = "depth,count\n";
    for (std::size_t d = 0; d < counts.size(); ++d)
        out += std::to_string(d) + "," + std::to_string(counts[d]) + "\n";
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << content;
    if (!out) throw Error("short write to " + path);
}

} // namespace nutm

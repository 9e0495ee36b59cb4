#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nutm/codec.hpp"
#include "nutm/machine.hpp"
#include "nutm/pcr.hpp"
#include "nutm/thermo.hpp"
#include "nutm/thue.hpp"

namespace nutm {

std::string outcome_name(MachineOutcome oc);
std::string direction_name(Direction d);

// All emitters are pure string builders so identical inputs give identical
// bytes; nothing here stamps times or paths into the output.
std::string machine_report_json(const MachineResult& r, const Tape& program);
std::string snapshots_csv(const std::vector<VesselSnapshot>& snaps);
std::string witness_dot(const std::vector<RewriteEvent>& witness, const Tape& program);
std::string vessel_fasta(const std::vector<Tape>& vessel, const CodeBook& cb);
std::string microprogram_txt(const Microprogram& mp, const MicroprogramResult& r);
std::string specificity_csv(const std::vector<SpecificityRow>& rows);
std::string counts_csv(const std::vector<std::uint64_t>& counts);

void write_file(const std::string& path, const std::string& content);

} // namespace nutm

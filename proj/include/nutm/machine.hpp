#pragma once

#include <optional>
#include <set>
#include <vector>

#include "nutm/codec.hpp"
#include "nutm/pcr.hpp"
#include "nutm/thue.hpp"

namespace nutm {

enum class ChamberLevel { Symbolic, Molecular };

// One rule in one direction. Fourteen of these ring the vessel for the
// standard rule set: seven rules, both ways each.
struct Chamber {
    int rule_id = 0;
    Direction dir = Direction::Forward;
    Microprogram program;  // the molecular realization of this rewrite
};

enum class MachineOutcome { Accepted, Converged, CycleBound, CapExceeded };

struct VesselSnapshot {
    std::size_t cycle = 0;
    std::size_t states = 0;  // vessel population after the cycle
    std::size_t fresh = 0;   // members first seen this cycle
};

struct MachineConfig {
    std::size_t max_cycles = 64;
    std::size_t cap = 1000000;  // vessel population ceiling
    ChamberLevel level = ChamberLevel::Symbolic;
    bool oracle_check = false;  // shadow molecular cycles with symbolic ones
};

struct MachineResult {
    MachineOutcome outcome = MachineOutcome::Converged;
    std::optional<Tape> accepted;
    std::vector<RewriteEvent> witness;
    std::vector<Tape> vessel;  // final population, sorted
    std::vector<VesselSnapshot> snapshots;
    std::size_t cycles = 0;
    bool truncated = false;
};

// The vessel accumulates every string ever derived; each cycle every chamber
// reads the whole vessel and its products are folded back in. Members are
// unique up to decoded tape.
class Machine {
public:
    Machine(RuleSet rules, CodeBook cb, MachineConfig cfg = {});

    const std::vector<Chamber>& chambers() const { return chambers_; }
    const MachineConfig& config() const { return cfg_; }

    MachineResult run(const Tape& program, const AcceptSpec& accept) const;

private:
    RuleSet rules_;
    CodeBook cb_;
    MachineConfig cfg_;
    std::vector<Chamber> chambers_;
};

} // namespace nutm

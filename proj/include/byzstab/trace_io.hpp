#pragma once

#include <iosfwd>

#include <json.hpp>

#include "byzstab/engine.hpp"

namespace byzstab {

/// JSONL trace: a header record, one record per step
///   {"i":..., "activated":[names], "byz_writes":{name:{prnt,level,dist}},
///    "changed":{name:{prnt,level,dist}}}
/// and a full state snapshot every `snapshot_every` steps plus one at the end.
void write_trace_jsonl(std::ostream& os, const WeightedSystem& system,
                       const ExecutionTrace& trace, int snapshot_every = 100);

nlohmann::json state_json(const WeightedSystem& system, ProcessId v, const ProcessState& st);
nlohmann::json snapshot_json(const WeightedSystem& system, const Configuration& config);

}  // namespace byzstab

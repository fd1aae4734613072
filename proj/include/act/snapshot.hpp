#pragma once

#include <string>

#include "act/ct.hpp"
#include "act/tracker.hpp"

namespace act {

// Versioned binary snapshots of tracker state. Little-endian fixed-width
// fields, doubles stored by bit pattern, so a reloaded state is bit-identical
// and a resumed run reproduces the original exactly.
void save_act_snapshot(const ActState& state, const std::string& path);
ActState load_act_snapshot(const std::string& path);

void save_ct_snapshot(const CtTrackerState& state, const std::string& path);
CtTrackerState load_ct_snapshot(const std::string& path);

}  // namespace act

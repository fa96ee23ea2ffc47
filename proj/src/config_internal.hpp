#pragma once

#include "kvconfig.hpp"
#include "risbeam/scenario.hpp"

namespace risbeam {

// Shared between the scenario and sweep config parsers.
Scenario scenario_from_kv(const kv::KvFile& f);

} // namespace risbeam

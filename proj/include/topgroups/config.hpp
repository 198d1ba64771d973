#pragma once

#include <thread>

#include "topgroups/group.hpp"
#include "topgroups/lattice.hpp"

namespace topgroups {

/// Caps and parallelism shared by the CLI and the probe pipeline.
struct RunConfig {
  int order_cap = 512;                    // construction + lattice ceiling, <= kHardOrderCap
  long long subgroup_budget = 1'000'000;
  int iso_cap = 256;
  int workers = 0;                        // 0 = hardware concurrency

  int effective_workers() const {
    if (workers > 0) return workers;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
  }

  LatticeOptions lattice_options() const { return {order_cap, subgroup_budget}; }
};

}  // namespace topgroups

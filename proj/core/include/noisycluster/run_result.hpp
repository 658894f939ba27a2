#pragma once

#include <string>
#include <utility>
#include <vector>

#include "noisycluster/clustering.hpp"
#include "noisycluster/oracle.hpp"

namespace noisycluster {

struct PhaseEvent {
  int phase;
  std::string event;
};

struct RunResult {
  Clustering clustering;                        // full partition of [n]
  QueryStats stats;                             // oracle counters at finish
  std::vector<std::vector<int>> recovered_large;  // clusters grown via the active list
  std::vector<std::vector<int>> residual;         // clusters from the residual step
  std::vector<PhaseEvent> phase_log;

  // Size threshold above which the algorithm claims recovery; harness metrics
  // count truth clusters of at least this size appearing verbatim.
  int min_recoverable = 1;

  // Unknown-k only: number of distinct guesses of k tried (2, 4, 8, ...).
  int doubling_rounds = 0;

  // Non-adaptive runners only: executed queries in issue order.
  std::vector<std::pair<int, int>> query_log;
};

}  // namespace noisycluster

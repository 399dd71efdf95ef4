#pragma once

#include <ctime>

namespace greedyrb {

// Cumulative process CPU time (user + system, all threads), nanosecond
// clock. Chosen over wall time so the construction-cost metric reflects the
// number of operations performed.
inline double cpu_time_seconds() {
  timespec t{};
  clock_gettime(CLOCK_PROCESS_CPUTIME_ID, &t);
  return static_cast<double>(t.tv_sec) + 1e-9 * static_cast<double>(t.tv_nsec);
}

}  // namespace greedyrb

#pragma once

#include <optional>

namespace ynls {

/// Worker threads used by the data-parallel loops (output modes, frequency
/// columns, trials). Every parallel loop writes disjoint outputs, so results
/// do not depend on this value.
int thread_count();

/// n <= 0 selects all hardware threads.
void set_thread_count(int n);

/// Flag value if present, else $YNLS_THREADS, else all hardware threads.
int resolve_thread_count(std::optional<int> flag);

}  // namespace ynls

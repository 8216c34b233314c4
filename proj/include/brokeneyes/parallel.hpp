#pragma once

#include <cstddef>
#include <functional>

namespace brokeneyes {

/// 0 means one worker per hardware thread.
unsigned resolve_threads(unsigned requested) noexcept;

/// Runs task(i) for every i in [0, count) on up to `threads` workers.
/// Tasks must write only to their own slot. If any task throws, the
/// exception from the lowest failing index is rethrown after all workers
/// stop, so the reported failure does not depend on scheduling.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& task);

} // namespace brokeneyes

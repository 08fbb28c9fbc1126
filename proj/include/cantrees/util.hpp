#pragma once

namespace cantrees {

// Worker threads for cell- and table-level parallelism: the value of the
// CANTREES_WORKERS environment variable when it is a positive integer,
// otherwise the hardware concurrency (at least 1).
int worker_count();

}  // namespace cantrees

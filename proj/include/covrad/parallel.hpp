#pragma once

namespace covrad {

// Worker count for parallelizable sweeps.  requested > 0 wins; otherwise the
// COVRAD_THREADS environment variable; otherwise 1.  All parallel paths in
// this library produce schedule-independent results, so the count only
// affects speed.
int resolve_threads(int requested);

}  // namespace covrad

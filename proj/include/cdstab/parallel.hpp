#pragma once

namespace cdstab {

// Thread-count control for the OpenMP kernels. 0 leaves the OpenMP runtime
// default untouched. All kernels parallelize over independent output
// elements only, so results are bit-identical for any thread count.
void set_threads(int n);
int max_threads();

}  // namespace cdstab

#pragma once

namespace litclust {

/// Worker threads for the OpenMP kernels; n <= 0 restores the runtime default.
void set_threads(int n);
int max_threads();

} // namespace litclust

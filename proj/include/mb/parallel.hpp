#pragma once

#include <functional>
#include <string>

namespace mb {

// Worker count: hardware concurrency, capped by the MB_THREADS environment variable.
int worker_count();

// Runs fn(i) for i in [0, n) on the worker pool. The first exception is rethrown.
void parallel_for(int n, const std::function<void(int)>& fn);

// Warnings go to stderr, each distinct message once per process.
void log_warning(const std::string& msg);

}  // namespace mb

#pragma once

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace redbench {

// Worker cap: RED_THREADS env var, where 0 or unset means "auto"
// (hardware concurrency). Always at least 1.
inline unsigned worker_count() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    const char* env = std::getenv("RED_THREADS");
    if (env != nullptr && *env != '\0') {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != nullptr && *end == '\0' && v > 0) {
            return static_cast<unsigned>(v);
        }
    }
    return hw;
}

// Runs fn(i) for i in [0, task_count). Each task writes only its own
// pre-assigned output slot, so results do not depend on scheduling.
template <typename Fn>
void parallel_for(std::size_t task_count, const Fn& fn) {
    unsigned workers = worker_count();
    if (workers <= 1 || task_count <= 1) {
        for (std::size_t i = 0; i < task_count; ++i) fn(i);
        return;
    }
    if (workers > task_count) workers = static_cast<unsigned>(task_count);
    std::atomic<std::size_t> cursor{0};
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        threads.emplace_back([&]() {
            for (;;) {
                std::size_t i = cursor.fetch_add(1);
                if (i >= task_count) break;
                fn(i);
            }
        });
    }
    for (auto& t : threads) t.join();
}

}  // namespace redbench

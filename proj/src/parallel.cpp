#include "gspec/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace gspec {

int worker_count() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    if (const char* env = std::getenv("GROUNDED_SPECTRA_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) hw = std::min(hw, cap);
    }
    return hw;
}

void parallel_for(int count, const std::function<void(int)>& fn) {
    parallel_chunks(count, [&fn](int begin, int end) {
        for (int i = begin; i < end; ++i) fn(i);
    });
}

void parallel_chunks(int count, const std::function<void(int, int)>& fn) {
    const int workers = std::min(worker_count(), std::max(count, 1));
    if (workers <= 1 || count <= 1) {
        if (count > 0) fn(0, count);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const int chunk = (count + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const int begin = w * chunk;
        const int end = std::min(count, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    for (auto& t : pool) t.join();
}

} // namespace gspec

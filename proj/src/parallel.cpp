#include "kuzlab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace kuzlab {

void run_chunks(u64 count, int workers,
                const std::function<void(u64, u64, u64)>& fn) {
    const u64 nch = chunk_count(count);
    if (nch == 0)
        return;
    if (workers <= 1 || nch == 1) {
        for (u64 c = 0; c < nch; ++c)
            fn(c, c * parallel_chunk, std::min(count, (c + 1) * parallel_chunk));
        return;
    }
    std::atomic<u64> next{0};
    std::exception_ptr first_error;
    std::mutex err_mtx;
    auto worker = [&] {
        for (;;) {
            u64 c = next.fetch_add(1);
            if (c >= nch)
                return;
            try {
                fn(c, c * parallel_chunk, std::min(count, (c + 1) * parallel_chunk));
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mtx);
                if (!first_error)
                    first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    int nw = static_cast<int>(std::min<u64>(workers, nch));
    pool.reserve(nw - 1);
    for (int i = 0; i < nw - 1; ++i)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

} // namespace kuzlab

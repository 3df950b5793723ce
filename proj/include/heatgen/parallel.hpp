#pragma once

#include <condition_variable>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace heatgen {

inline unsigned default_jobs() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Runs produce(0..n-1) on `jobs` worker threads and feeds the results to
// consume(i, result) on the calling thread in strictly ascending index order,
// holding at most `window` produced-but-unconsumed results. Output is
// therefore independent of the thread count. Exceptions from either side are
// rethrown on the calling thread.
template <typename R, typename Produce, typename Consume>
void ordered_parallel(std::size_t n, unsigned jobs, std::size_t window, Produce produce,
                      Consume consume) {
    if (n == 0) {
        return;
    }
    if (jobs <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            consume(i, produce(i));
        }
        return;
    }
    if (window < static_cast<std::size_t>(jobs) * 2) {
        window = static_cast<std::size_t>(jobs) * 2;
    }

    std::vector<std::optional<R>> ring(window);
    std::mutex mutex;
    std::condition_variable space_freed;
    std::condition_variable item_ready;
    std::size_t next_claim = 0;
    std::size_t next_consume = 0;
    std::exception_ptr failure;

    const auto worker = [&]() {
        for (;;) {
            std::size_t index = 0;
            {
                std::unique_lock lock(mutex);
                for (;;) {
                    if (failure || next_claim >= n) {
                        return;
                    }
                    if (next_claim < next_consume + window) {
                        index = next_claim++;
                        break;
                    }
                    space_freed.wait(lock);
                }
            }
            try {
                R result = produce(index);
                {
                    std::lock_guard lock(mutex);
                    ring[index % window] = std::move(result);
                }
                item_ready.notify_all();
            } catch (...) {
                {
                    std::lock_guard lock(mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                }
                item_ready.notify_all();
                space_freed.notify_all();
                return;
            }
        }
    };

    std::vector<std::thread> threads;
    threads.reserve(jobs);
    for (unsigned j = 0; j < jobs; ++j) {
        threads.emplace_back(worker);
    }

    {
        std::unique_lock lock(mutex);
        while (next_consume < n && !failure) {
            auto& slot = ring[next_consume % window];
            if (!slot.has_value()) {
                item_ready.wait(lock);
                continue;
            }
            R result = std::move(*slot);
            slot.reset();
            const std::size_t index = next_consume++;
            lock.unlock();
            space_freed.notify_all();
            try {
                consume(index, std::move(result));
            } catch (...) {
                lock.lock();
                if (!failure) {
                    failure = std::current_exception();
                }
                break;
            }
            lock.lock();
        }
    }
    space_freed.notify_all();
    item_ready.notify_all();
    for (auto& thread : threads) {
        thread.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

}  // namespace heatgen

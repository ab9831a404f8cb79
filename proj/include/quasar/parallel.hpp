// Copyright 2026 The Quasar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QUASAR_PARALLEL_HPP_
#define QUASAR_PARALLEL_HPP_

#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <thread>
#include <vector>

namespace quasar {

// Minimal fork-join pool. Every parallel loop in the engine is expressed as
// parallel_for_chunks(n, fn) where fn(worker, begin, end) handles one
// contiguous chunk. Chunks are assigned statically, so the set of writes per
// worker is a pure function of (n, num_threads); combined with
// commutative-only shared updates this keeps all results bit-deterministic
// for any thread count.
class ThreadPool {
  public:
    explicit ThreadPool(unsigned threads) : target_(threads == 0 ? 1 : threads) {
        for (unsigned i = 1; i < target_; ++i)
            workers_.emplace_back([this, i] { worker_loop(i); });
    }

    ThreadPool(const ThreadPool &) = delete;
    ThreadPool &operator=(const ThreadPool &) = delete;

    ~ThreadPool() {
        {
            std::unique_lock<std::mutex> lk(m_);
            stop_ = true;
            ++epoch_;
        }
        cv_.notify_all();
        for (auto &t : workers_)
            t.join();
    }

    unsigned size() const { return target_; }

    // fn(worker_index, begin, end); worker 0 is the calling thread.
    void parallel_for_chunks(size_t n, const std::function<void(unsigned, size_t, size_t)> &fn) {
        if (n == 0)
            return;
        unsigned t = target_;
        if (t == 1 || n == 1) {
            fn(0, 0, n);
            return;
        }
        {
            std::unique_lock<std::mutex> lk(m_);
            job_ = &fn;
            job_n_ = n;
            pending_ = target_ - 1;
            ++epoch_;
        }
        cv_.notify_all();
        run_chunk(0, fn, n);
        std::unique_lock<std::mutex> lk(m_);
        done_cv_.wait(lk, [this] { return pending_ == 0; });
        job_ = nullptr;
    }

  private:
    void run_chunk(unsigned worker, const std::function<void(unsigned, size_t, size_t)> &fn,
                   size_t n) {
        size_t begin = n * worker / target_;
        size_t end = n * (worker + 1) / target_;
        if (begin < end)
            fn(worker, begin, end);
    }

    void worker_loop(unsigned worker) {
        uint64_t seen = 0;
        for (;;) {
            const std::function<void(unsigned, size_t, size_t)> *job = nullptr;
            size_t n = 0;
            {
                std::unique_lock<std::mutex> lk(m_);
                cv_.wait(lk, [&] { return epoch_ != seen; });
                seen = epoch_;
                if (stop_)
                    return;
                job = job_;
                n = job_n_;
            }
            if (job)
                run_chunk(worker, *job, n);
            {
                std::unique_lock<std::mutex> lk(m_);
                if (--pending_ == 0)
                    done_cv_.notify_one();
            }
        }
    }

    unsigned target_;
    std::vector<std::thread> workers_;
    std::mutex m_;
    std::condition_variable cv_;
    std::condition_variable done_cv_;
    const std::function<void(unsigned, size_t, size_t)> *job_ = nullptr;
    size_t job_n_ = 0;
    unsigned pending_ = 0;
    uint64_t epoch_ = 0;
    bool stop_ = false;
};

namespace detail {
inline unsigned &thread_count_ref() {
    static unsigned count = 0; // 0 = pick from hardware
    return count;
}
inline std::unique_ptr<ThreadPool> &pool_ref() {
    static std::unique_ptr<ThreadPool> pool;
    return pool;
}
inline std::mutex &pool_mutex() {
    static std::mutex m;
    return m;
}
} // namespace detail

inline unsigned num_threads() {
    unsigned c = detail::thread_count_ref();
    if (c == 0) {
        c = std::thread::hardware_concurrency();
        if (c == 0)
            c = 1;
    }
    return c;
}

inline void set_num_threads(unsigned count) {
    std::lock_guard<std::mutex> lk(detail::pool_mutex());
    detail::thread_count_ref() = count;
    detail::pool_ref().reset(); // rebuilt on next use
}

inline ThreadPool &global_pool() {
    std::lock_guard<std::mutex> lk(detail::pool_mutex());
    auto &pool = detail::pool_ref();
    if (!pool || pool->size() != num_threads())
        pool = std::make_unique<ThreadPool>(num_threads());
    return *pool;
}

// Convenience wrapper; fn(worker, begin, end) over [0, n).
template <typename F>
void parallel_for_chunks(size_t n, F &&fn) {
    std::function<void(unsigned, size_t, size_t)> f = std::forward<F>(fn);
    global_pool().parallel_for_chunks(n, f);
}

} // namespace quasar

#endif // QUASAR_PARALLEL_HPP_

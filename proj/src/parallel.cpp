#include "epm/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <cstdlib>
#include <mutex>
#include <thread>
#include <vector>

namespace epm {

int thread_count() {
  static const int n = [] {
    if (const char* env = std::getenv("EPM_THREADS")) {
      const int v = std::atoi(env);
      if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
  }();
  return n;
}

namespace {

class Pool {
 public:
  explicit Pool(int workers) {
    for (int t = 0; t < workers; ++t)
      threads_.emplace_back([this] { worker_loop(); });
  }

  ~Pool() {
    {
      std::unique_lock lk(mu_);
      stop_ = true;
    }
    cv_.notify_all();
    for (auto& t : threads_) t.join();
  }

  void run(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
    std::unique_lock lk(mu_);
    job_ = &fn;
    job_n_ = n;
    next_chunk_ = 0;
    pending_ = static_cast<int>(threads_.size());
    ++generation_;
    cv_.notify_all();
    done_cv_.wait(lk, [this] { return pending_ == 0; });
    job_ = nullptr;
  }

 private:
  void worker_loop() {
    std::uint64_t seen = 0;
    for (;;) {
      const std::function<void(std::size_t, std::size_t)>* job;
      std::size_t n;
      {
        std::unique_lock lk(mu_);
        cv_.wait(lk, [&] { return stop_ || generation_ != seen; });
        if (stop_) return;
        seen = generation_;
        job = job_;
        n = job_n_;
      }
      for (;;) {
        const std::size_t c = next_chunk_.fetch_add(1, std::memory_order_relaxed);
        const std::size_t begin = c * kParallelChunk;
        if (begin >= n) break;
        (*job)(begin, std::min(begin + kParallelChunk, n));
      }
      {
        std::unique_lock lk(mu_);
        if (--pending_ == 0) done_cv_.notify_all();
      }
    }
  }

  std::mutex mu_;
  std::condition_variable cv_, done_cv_;
  std::vector<std::thread> threads_;
  const std::function<void(std::size_t, std::size_t)>* job_ = nullptr;
  std::size_t job_n_ = 0;
  std::atomic<std::size_t> next_chunk_{0};
  int pending_ = 0;
  std::uint64_t generation_ = 0;
  bool stop_ = false;
};

}  // namespace

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
  if (n == 0) return;
  const int workers = thread_count();
  if (workers <= 1 || n <= kParallelChunk) {
    for (std::size_t c = 0; c * kParallelChunk < n; ++c)
      fn(c * kParallelChunk, std::min((c + 1) * kParallelChunk, n));
    return;
  }
  static Pool pool(thread_count());
  pool.run(n, fn);
}

}  // namespace epm

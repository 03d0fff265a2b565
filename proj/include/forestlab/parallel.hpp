#pragma once

#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace forestlab {

// Runs body(acc, i) for i in [0, tasks) on `workers` threads, worker w taking
// the tasks i = w mod workers into its own accumulator, and merges the
// accumulators in worker order. With integer-count accumulators the result
// does not depend on the worker count.
template <class Acc, class Body>
Acc parallel_accumulate(std::uint64_t tasks, unsigned workers, const Body& body) {
  if (workers == 0) workers = 1;
  if (tasks < workers) workers = static_cast<unsigned>(tasks == 0 ? 1 : tasks);
  std::vector<Acc> partial(workers);
  std::vector<std::exception_ptr> errors(workers);
  auto run = [&](unsigned w) {
    try {
      for (std::uint64_t i = w; i < tasks; i += workers) body(partial[w], i);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  Acc total = std::move(partial[0]);
  for (unsigned w = 1; w < workers; ++w) total.merge(partial[w]);
  return total;
}

}  // namespace forestlab

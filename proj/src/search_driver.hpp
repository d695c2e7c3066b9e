#pragma once

// Depth-first search over (in, out) mask nodes shared by the exact searches.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <vector>

#include "cornerlab/checkpoint.hpp"
#include "cornerlab/parallel.hpp"

namespace cornerlab::detail {

struct DriverOutcome {
  bool exhausted = true;
  std::uint64_t nodes = 0;
  std::vector<SearchNode> frontier;
};

// process(node, children) examines one node and appends its children in the order
// they should be explored. Must be safe to call concurrently.
template <class Process>
DriverOutcome run_driver(std::vector<SearchNode> tasks, std::uint64_t budget, std::uint64_t nodes_start,
                         int threads, Process&& process) {
  std::atomic<std::uint64_t> nodes{nodes_start};
  std::atomic<bool> stop{false};
  auto take_node = [&]() {
    const std::uint64_t n = nodes.fetch_add(1) + 1;
    if (budget != 0 && n > budget) {
      nodes.fetch_sub(1);
      stop = true;
      return false;
    }
    return true;
  };

  std::vector<SearchNode> children;
  // Split the top of the tree until every worker has several subtrees.
  if (threads > 1) {
    for (int round = 0; round < 6 && tasks.size() < static_cast<std::size_t>(8 * threads) && !stop; ++round) {
      std::vector<SearchNode> next;
      for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (stop || !take_node()) {
          next.insert(next.end(), tasks.begin() + static_cast<std::ptrdiff_t>(i), tasks.end());
          break;
        }
        children.clear();
        process(tasks[i], children);
        next.insert(next.end(), children.begin(), children.end());
      }
      tasks = std::move(next);
    }
  }

  std::vector<std::vector<SearchNode>> leftovers(tasks.size());
  parallel_tasks(tasks.size(), threads, [&](std::size_t t) {
    std::vector<SearchNode> stack{tasks[t]};
    std::vector<SearchNode> kids;
    while (!stack.empty()) {
      if (stop || !take_node()) break;
      const SearchNode node = stack.back();
      stack.pop_back();
      kids.clear();
      process(node, kids);
      for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
    }
    leftovers[t] = std::move(stack);
  });

  DriverOutcome out;
  out.nodes = nodes.load();
  // Frontier in stack order per task, tasks in their original order: resuming with a
  // single thread pops nodes exactly as the uninterrupted search would.
  for (auto& stack : leftovers) out.frontier.insert(out.frontier.end(), stack.rbegin(), stack.rend());
  out.exhausted = out.frontier.empty();
  return out;
}

}  // namespace cornerlab::detail

#include "redistrict/solver.hpp"

#include <algorithm>
#include <cstdlib>
#include <queue>

namespace redistrict {

SwapGraph::SwapGraph(const Instance& inst, const Allocation& current, const Allocation& target)
    : delta_(inst.num_schools()),
      out_degree_(inst.num_schools(), 0),
      in_degree_(inst.num_schools(), 0),
      out_edges_(inst.num_schools()) {
  for (StudentId j = 0; j < inst.num_students(); ++j) {
    if (inst.group_of(j) != Group::One) continue;
    const int id = static_cast<int>(edges_.size());
    edges_.push_back({j, current[j], target[j]});
    ++out_degree_[current[j]];
    ++in_degree_[target[j]];
    if (current[j] != target[j]) out_edges_[current[j]].push_back(id);
  }
  for (auto& list : out_edges_) {
    std::sort(list.begin(), list.end(), [this](int a, int b) {
      if (edges_[a].to != edges_[b].to) return edges_[a].to < edges_[b].to;
      return edges_[a].student < edges_[b].student;
    });
  }
  for (SchoolId k = 0; k < inst.num_schools(); ++k) {
    delta_[k] = current.delta(k);
    if (delta_[k] > 0) excess_.push_back(k);
    if (delta_[k] < 0) deficient_.push_back(k);
  }
}

std::int64_t SwapGraph::potential() const {
  std::int64_t phi = 0;
  for (int d : delta_) phi += std::abs(d);
  return phi;
}

std::optional<std::vector<int>> SwapGraph::path_to_deficient(SchoolId start) const {
  std::vector<int> via(num_schools(), -1);
  std::vector<bool> seen(num_schools(), false);
  std::queue<SchoolId> queue;
  seen[start] = true;
  queue.push(start);
  while (!queue.empty()) {
    const SchoolId v = queue.front();
    queue.pop();
    if (delta_[v] < 0) {
      std::vector<int> path;
      for (SchoolId u = v; u != start; u = edges_[via[u]].from) path.push_back(via[u]);
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (int id : out_edges_[v]) {
      const SchoolId w = edges_[id].to;
      if (seen[w]) continue;
      seen[w] = true;
      via[w] = id;
      queue.push(w);
    }
  }
  return std::nullopt;
}

}  // namespace redistrict

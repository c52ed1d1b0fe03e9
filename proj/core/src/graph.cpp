#include "dcm/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "dcm/rng.hpp"

namespace dcm {

Digraph sample_dcm(const DegreeSequence& seq, std::uint64_t seed) {
  const int n = seq.n();
  const std::int64_t m = seq.m();

  Digraph g;
  g.seq = seq;
  g.seed = seed;
  g.tail_offset.resize(n + 1);
  g.tail_offset[0] = 0;
  for (int x = 0; x < n; ++x) g.tail_offset[x + 1] = g.tail_offset[x] + seq.out_degrees[x];

  // head slot -> owning vertex
  std::vector<int> head_owner(m);
  {
    std::int64_t h = 0;
    for (int x = 0; x < n; ++x) {
      for (int k = 0; k < seq.in_degrees[x]; ++k) head_owner[h++] = x;
    }
  }

  // Fisher-Yates on head slots gives an exactly uniform tail->head bijection.
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng(seed);
  for (std::int64_t i = m - 1; i > 0; --i) {
    const std::int64_t j = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(i + 1)));
    std::swap(perm[i], perm[j]);
  }

  g.matching.assign(perm.begin(), perm.end());
  g.destination.resize(m);
  for (std::int64_t t = 0; t < m; ++t) g.destination[t] = head_owner[perm[t]];
  return g;
}

namespace {

// Iterative Tarjan SCC.
std::pair<std::vector<int>, int> strongly_connected_components(const Digraph& g) {
  const int n = g.n();
  std::vector<int> comp(n, -1), low(n), disc(n, -1), stack_mem;
  std::vector<char> on_stack(n, 0);
  stack_mem.reserve(n);
  int timer = 0, comp_count = 0;

  struct Frame {
    int v;
    int edge;
  };
  std::vector<Frame> call;
  for (int root = 0; root < n; ++root) {
    if (disc[root] != -1) continue;
    call.push_back({root, 0});
    while (!call.empty()) {
      auto& [v, edge] = call.back();
      if (edge == 0) {
        disc[v] = low[v] = timer++;
        stack_mem.push_back(v);
        on_stack[v] = 1;
      }
      if (edge < g.out_degree(v)) {
        const int w = g.neighbor(v, edge++);
        if (disc[w] == -1) {
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], disc[w]);
        }
      } else {
        if (low[v] == disc[v]) {
          for (;;) {
            const int w = stack_mem.back();
            stack_mem.pop_back();
            on_stack[w] = 0;
            comp[w] = comp_count;
            if (w == v) break;
          }
          ++comp_count;
        }
        const int finished = v;
        call.pop_back();
        if (!call.empty()) {
          const int parent = call.back().v;
          low[parent] = std::min(low[parent], low[finished]);
        }
      }
    }
  }
  return {std::move(comp), comp_count};
}

}  // namespace

ErgodicityReport ergodicity(const Digraph& g) {
  const int n = g.n();
  auto [comp, comp_count] = strongly_connected_components(g);

  // A class is recurrent iff none of its edges leave it.
  std::vector<char> has_exit(comp_count, 0);
  for (int x = 0; x < n; ++x) {
    for (int k = 0; k < g.out_degree(x); ++k) {
      if (comp[g.neighbor(x, k)] != comp[x]) has_exit[comp[x]] = 1;
    }
  }

  ErgodicityReport report;
  int recurrent = -1;
  for (int c = 0; c < comp_count; ++c) {
    if (!has_exit[c]) {
      ++report.recurrent_classes;
      recurrent = c;
    }
  }
  report.is_ergodic = (report.recurrent_classes == 1);
  if (report.is_ergodic) {
    for (int x = 0; x < n; ++x) {
      if (comp[x] == recurrent) report.giant_scc.push_back(x);
    }
    report.support = report.giant_scc;
    report.reason = "single recurrent class of size " + std::to_string(report.support.size());
  } else {
    report.reason = std::to_string(report.recurrent_classes) + " recurrent classes";
  }
  return report;
}

SampledGraph sample_ergodic_dcm(const DegreeSequence& seq, std::uint64_t seed,
                                NonErgodicPolicy policy, int retry_cap) {
  SampledGraph result;
  for (int attempt = 0; attempt <= retry_cap; ++attempt) {
    result.graph = sample_dcm(seq, seed + static_cast<std::uint64_t>(attempt));
    if (ergodicity(result.graph).is_ergodic) {
      result.retries = attempt;
      return result;
    }
    if (policy == NonErgodicPolicy::kFail) {
      throw std::runtime_error("sampled graph is not ergodic");
    }
  }
  throw std::runtime_error("no ergodic sample within retry cap");
}

TreeReport tree_neighborhoods(const Digraph& g, std::optional<int> depth) {
  const int n = g.n();
  TreeReport report;
  if (depth) {
    report.depth = *depth;
  } else {
    const double dmax = g.seq.out_degree_max();
    const double hbar = dmax > 1.0 ? std::log(static_cast<double>(n)) / (5.0 * std::log(dmax)) : 1.0;
    report.depth = std::max(1, static_cast<int>(std::floor(hbar)));
  }

  std::vector<int> seen_at(n, -1);
  std::vector<int> frontier, next;
  for (int v = 0; v < n; ++v) {
    bool is_tree = true;
    seen_at[v] = v;
    frontier.assign(1, v);
    for (int level = 0; level < report.depth && is_tree; ++level) {
      next.clear();
      for (int x : frontier) {
        for (int k = 0; k < g.out_degree(x); ++k) {
          const int w = g.neighbor(x, k);
          if (seen_at[w] == v) {  // revisit (or multi-edge, or loop back to v)
            is_tree = false;
            break;
          }
          seen_at[w] = v;
          next.push_back(w);
        }
        if (!is_tree) break;
      }
      frontier.swap(next);
    }
    if (is_tree) report.v_star.push_back(v);
  }
  report.fraction = static_cast<double>(report.v_star.size()) / n;
  return report;
}

void write_edges_csv(std::ostream& os, const Digraph& g) {
  os << "src,dst,multiplicity\n";
  std::map<std::pair<int, int>, int> mult;
  for (int x = 0; x < g.n(); ++x) {
    for (int k = 0; k < g.out_degree(x); ++k) ++mult[{x, g.neighbor(x, k)}];
  }
  for (const auto& [edge, count] : mult) {
    os << edge.first << ',' << edge.second << ',' << count << '\n';
  }
}

}  // namespace dcm

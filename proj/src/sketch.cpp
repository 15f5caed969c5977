#include "balcut/sketch.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "balcut/errors.hpp"
#include "balcut/rng.hpp"

namespace balcut {

const char* to_string(PeelMode m) { return m == PeelMode::kExact ? "exact" : "heuristic"; }

PeelMode peel_mode_from_string(const std::string& s) {
  if (s == "exact") return PeelMode::kExact;
  if (s == "heuristic") return PeelMode::kHeuristic;
  throw ArgumentError("unknown mode '" + s + "' (expected exact or heuristic)");
}

void check_sketch_weights(const DiGraph& g) {
  const double base = static_cast<double>(std::max<std::size_t>(g.num_vertices(), 2));
  const double cap = std::pow(base, kMaxWeightExponent);
  for (const Edge& e : g.edges()) {
    if (!(e.weight >= 1.0) || e.weight > cap) {
      throw DomainError("sketch weights must lie in [1, n^" + std::to_string(kMaxWeightExponent) +
                        "], got " + std::to_string(e.weight));
    }
  }
}

std::size_t samples_for_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ArgumentError("alpha must be positive and finite");
  const double r = std::round(alpha);
  if (std::abs(alpha - r) <= 1e-9 * std::max(1.0, r)) return static_cast<std::size_t>(std::max(1.0, r));
  return static_cast<std::size_t>(std::ceil(alpha));
}

SketchPart make_part(const DiGraph& g, std::vector<Vertex> members, const std::vector<EdgeId>& edges,
                     std::size_t samples_per_vertex, std::uint64_t seed, std::uint64_t tag_a,
                     std::uint64_t tag_b) {
  std::sort(members.begin(), members.end());
  SketchPart p;
  const std::size_t k = members.size();
  p.out_degree.assign(k, 0);
  p.in_degree.assign(k, 0);
  p.out_samples.assign(k, {});
  p.in_samples.assign(k, {});
  std::vector<std::vector<EdgeId>> outs(k), ins(k);
  auto local = [&members](Vertex v) {
    return static_cast<std::size_t>(std::lower_bound(members.begin(), members.end(), v) - members.begin());
  };
  std::vector<EdgeId> sorted = edges;
  std::sort(sorted.begin(), sorted.end());
  for (EdgeId e : sorted) {
    const Edge& ed = g.edge(e);
    outs[local(ed.tail)].push_back(e);
    ins[local(ed.head)].push_back(e);
  }
  for (std::size_t i = 0; i < k; ++i) {
    const Vertex u = members[i];
    p.out_degree[i] = static_cast<std::uint32_t>(outs[i].size());
    p.in_degree[i] = static_cast<std::uint32_t>(ins[i].size());
    for (int dir = 0; dir < 2; ++dir) {
      const std::vector<EdgeId>& pool = dir == 0 ? outs[i] : ins[i];
      if (pool.empty()) continue;
      auto& rec = dir == 0 ? p.out_samples[i] : p.in_samples[i];
      rec.reserve(samples_per_vertex);
      for (std::size_t j = 0; j < samples_per_vertex; ++j) {
        const std::uint64_t pick =
            keyed_below(seed, {tag_a, tag_b, u, static_cast<std::uint64_t>(dir), j}, pool.size());
        const Edge& ed = g.edge(pool[pick]);
        rec.push_back({dir == 0 ? ed.head : ed.tail, ed.weight});
      }
    }
  }
  p.members = std::move(members);
  return p;
}

double estimate_part(const SketchPart& part, const CutSet& s, std::size_t samples_per_vertex) {
  std::size_t inside = 0;
  for (Vertex v : part.members) inside += s.contains(v) ? 1 : 0;
  const std::size_t outside = part.members.size() - inside;
  const bool use_s = inside <= outside;
  const double c = static_cast<double>(samples_per_vertex);
  double total = 0.0;
  for (std::size_t i = 0; i < part.members.size(); ++i) {
    if (s.contains(part.members[i]) != use_s) continue;
    // Outgoing samples of u in S count edges landing outside S; incoming
    // samples of u outside S count edges arriving from S.
    const auto& rec = use_s ? part.out_samples[i] : part.in_samples[i];
    if (rec.empty()) continue;
    double sum = 0.0;
    for (const SampleRecord& r : rec) {
      if (s.contains(r.other) != use_s) sum += r.weight;
    }
    const double d = use_s ? part.out_degree[i] : part.in_degree[i];
    total += d / c * sum;
  }
  return total;
}

double stored_cut_weight(const std::vector<Edge>& edges, const CutSet& s) {
  double total = 0.0;
  for (const Edge& e : edges) {
    if (s.contains(e.tail) && !s.contains(e.head)) total += e.weight;
  }
  return total;
}

}  // namespace balcut

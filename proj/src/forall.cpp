#include "balcut/forall.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "balcut/errors.hpp"
#include "balcut/rng.hpp"

namespace balcut {

namespace {

void validate(const DiGraph& g, const SparsifyParams& p) {
  if (g.num_vertices() < 2) throw ArgumentError("sparsify needs n >= 2");
  if (!(p.beta >= 1.0)) throw ArgumentError("beta must be >= 1");
  if (!(p.eps > 0.0 && p.eps < 1.0)) throw ArgumentError("eps must lie in (0, 1)");
  if (!(p.d > 2.0)) throw ArgumentError("d must be > 2");
}

std::vector<double> probabilities(const DiGraph& g, const StrengthMap& sm, double rho) {
  if (sm.k.size() != g.num_edges()) throw ArgumentError("strength map does not cover every edge");
  std::vector<double> prob(g.num_edges());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const double u = g.edge(e).weight;
    prob[e] = u <= 0.0 ? 0.0 : std::min(1.0, rho * u / sm.k[e]);
  }
  return prob;
}

}  // namespace

double sparsify_rho(std::size_t n, const SparsifyParams& p) {
  return 3.0 * p.d * (p.beta + 1.0) * std::log(static_cast<double>(n)) / (p.eps * p.eps);
}

SparsifierResult sparsify(const DiGraph& g, const SparsifyParams& p) {
  validate(g, p);
  return sparsify(g, compute_strengths(g), p);
}

SparsifierResult sparsify(const DiGraph& g, const StrengthMap& strengths, const SparsifyParams& p) {
  validate(g, p);
  SparsifierResult r;
  r.params = p;
  r.rho = sparsify_rho(g.num_vertices(), p);
  r.probability = probabilities(g, strengths, r.rho);
  r.h = DiGraph(g.num_vertices());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const double pe = r.probability[e];
    r.expected_edges += pe;
    if (pe <= 0.0) continue;
    if (pe >= 1.0 || keyed_uniform(p.seed, {e}) < pe) {
      const Edge& ed = g.edge(e);
      r.h.add_edge(ed.tail, ed.head, ed.weight / pe);
      r.source.push_back(e);
    }
  }
  return r;
}

double guaranteed_tolerance(double alpha, double beta, double eps) {
  if (!(alpha >= 1.0) || !(beta >= 1.0)) throw ArgumentError("alpha and beta must be >= 1");
  if (std::isinf(alpha)) return std::numeric_limits<double>::infinity();
  return eps * std::sqrt((alpha + 1.0) / (beta + 1.0));
}

double expected_edges(const DiGraph& g, const SparsifyParams& p) {
  validate(g, p);
  return expected_edges(g, compute_strengths(g), p);
}

double expected_edges(const DiGraph& g, const StrengthMap& strengths, const SparsifyParams& p) {
  validate(g, p);
  double total = 0.0;
  for (double pe : probabilities(g, strengths, sparsify_rho(g.num_vertices(), p))) total += pe;
  return total;
}

}  // namespace balcut

// End-to-end acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance            run everything
//   acceptance 3 7        run only criteria 3 and 7
//
// Exit status is 0 only if every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "balcut/fast.hpp"
#include "balcut/forall.hpp"
#include "balcut/foreach.hpp"
#include "balcut/generators.hpp"
#include "balcut/graph.hpp"
#include "balcut/maxflow.hpp"
#include "balcut/oracle.hpp"
#include "balcut/rng.hpp"
#include "balcut/sketch_io.hpp"
#include "balcut/strength.hpp"

#ifndef BALCUT_CORPUS_DIR
#define BALCUT_CORPUS_DIR "tests/corpus"
#endif

using namespace balcut;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Runs f(i) for i in [0, count) on all cores; results by index.
template <class T, class F>
std::vector<T> parallel_map(std::size_t count, F&& f) {
  std::vector<T> out(count);
  const unsigned jobs = std::max(1U, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                         static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < jobs; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += jobs) out[i] = f(i);
    });
  for (auto& t : pool) t.join();
  return out;
}

struct Moments {
  double mean = 0.0;
  double var = 0.0;  // unbiased
};

Moments moments(const std::vector<double>& v) {
  Moments m;
  for (double x : v) m.mean += x;
  m.mean /= static_cast<double>(v.size());
  for (double x : v) m.var += (x - m.mean) * (x - m.mean);
  m.var /= static_cast<double>(v.size() - 1);
  return m;
}

CutSet first_half(std::size_t n) {
  CutSet s(n);
  for (Vertex v = 0; v < n / 2; ++v) s.insert(v);
  return s;
}

std::vector<CutSet> random_cuts(std::size_t n, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<CutSet> cuts;
  while (cuts.size() < count) {
    CutSet s(n);
    for (Vertex v = 0; v < n; ++v)
      if (rng() & 1U) s.insert(v);
    if (s.is_proper()) cuts.push_back(std::move(s));
  }
  return cuts;
}

// ------------------------------------------------------------------ 1

Outcome strength_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(2024);
  std::size_t mismatches = 0, edges = 0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 2 + rng() % 7;
    const std::size_t m = 1 + rng() % (n * (n - 1) + 4);
    const DiGraph g = gen_random_digraph(n, m, 5, rng());
    const StrengthMap sm = compute_strengths(g);
    const std::vector<double> brute = brute_strengths(g);
    for (EdgeId e = 0; e < g.num_edges(); ++e) mismatches += sm.k[e] == brute[e] ? 0 : 1;
    edges += g.num_edges();
  }
  const double secs = seconds_since(t0);
  return {mismatches == 0 && secs < 60.0,
          fmt("100 graphs, %zu edges, %zu mismatches, %.2f s (limit 60 s)", edges, mismatches, secs)};
}

// ------------------------------------------------------------------ 2

Outcome strength_sum_bound() {
  std::vector<std::string> files;
  for (const auto& e : std::filesystem::directory_iterator(BALCUT_CORPUS_DIR))
    if (e.path().extension() == ".txt") files.push_back(e.path().string());
  std::sort(files.begin(), files.end());
  std::size_t bad = 0;
  double worst = 0.0;
  for (const std::string& f : files) {
    const DiGraph g = read_edge_list_file(f);
    const double sum = strength_sum_check(g, compute_strengths(g));
    const double bound = static_cast<double>(g.num_vertices()) - 1.0;
    // Only floating-point summation slack.
    if (sum > bound * (1.0 + 1e-12)) ++bad;
    worst = std::max(worst, sum / bound);
  }
  return {!files.empty() && bad == 0,
          fmt("%zu corpus graphs, %zu over n-1, max sum/(n-1) = %.6f", files.size(), bad, worst)};
}

// ------------------------------------------------------------------ 3

Outcome forall_unbiased() {
  const DiGraph g = gen_eulerian(12, 600, 3);
  const StrengthMap sm = compute_strengths(g);
  SparsifyParams p;
  p.eps = 0.9;
  p.d = 2.5;
  const CutSet s = first_half(12);
  const double truth = cut_weight(g, s, Direction::kOut);
  double pmax = 0.0;
  for (double x : sparsify(g, sm, p).probability) pmax = std::max(pmax, x);
  const auto vals = parallel_map<double>(10000, [&](std::size_t i) {
    SparsifyParams q = p;
    q.seed = derive_seed(3, i);
    return cut_weight(sparsify(g, sm, q).h, s, Direction::kOut);
  });
  const Moments m = moments(vals);
  const double rel = std::abs(m.mean - truth) / truth;
  return {rel <= 0.01 && pmax < 1.0,
          fmt("truth %.1f, mean %.3f, rel err %.4f%% (limit 1%%), max p_e %.3f", truth, m.mean, 100 * rel, pmax)};
}

// ------------------------------------------------------------------ 4

Outcome forall_preservation() {
  const auto t0 = std::chrono::steady_clock::now();
  const DiGraph g = gen_eulerian(14, 12000, 4);
  const StrengthMap sm = compute_strengths(g);
  SparsifyParams p;
  p.eps = 0.25;
  p.d = 3;
  const auto tol = [&p](double balance) { return guaranteed_tolerance(balance, 1.0, p.eps); };
  const auto runs = parallel_map<int>(100, [&](std::size_t i) {
    SparsifyParams q = p;
    q.seed = derive_seed(4, i);
    const SparsifierResult r = sparsify(g, sm, q);
    return verify_for_all(g, r.h, tol).ok ? 1 : 0;
  });
  int ok = 0;
  for (int x : runs) ok += x;
  const double kept = expected_edges(g, sm, p);
  const double secs = seconds_since(t0);
  return {ok >= 90 && secs < 300.0, fmt("%d/100 runs pass (need 90), expected edges %.0f of %zu, %.1f s", ok, kept,
                                        g.num_edges(), secs)};
}

// ------------------------------------------------------------------ 5

Outcome foreach_unbiased_variance() {
  const DiGraph g = gen_eulerian(12, 96, 5);
  const double beta = exact_graph_balance(g);
  const double eps = 0.25;
  const CutSet s = first_half(12);
  const double truth = cut_weight(g, s, Direction::kOut);
  const ForEachSketch probe = build_sketch(g, beta, eps, 0);
  const auto est = parallel_map<CutEstimate>(10000, [&](std::size_t i) {
    return query_sketch(build_sketch(g, beta, eps, derive_seed(5, i)), s);
  });
  std::vector<double> total, sampled;
  for (const CutEstimate& e : est) {
    total.push_back(e.total);
    sampled.push_back(e.i_s);
  }
  const Moments mt = moments(total);
  const Moments ms = moments(sampled);
  const double rel = std::abs(mt.mean - truth) / truth;
  const double ceiling = 8.0 * (1.0 + beta) / (probe.alpha * probe.lambda) * truth * truth;
  return {rel <= 0.01 && ms.var <= ceiling && ms.var > 0.0,
          fmt("beta %.3g, truth %.1f, mean %.3f (rel %.3f%%), Var[I_S] %.2f <= ceiling %.2f", beta, truth, mt.mean,
              100 * rel, ms.var, ceiling)};
}

// ------------------------------------------------------------------ 6 / 8

// Fraction of trials within 5 eps w, minimised over cuts.
template <class Build, class Query>
double worst_cut_success(const DiGraph& g, double eps, const std::vector<CutSet>& cuts, std::size_t trials,
                         Build&& build, Query&& query) {
  const auto hits = parallel_map<std::vector<char>>(trials, [&](std::size_t t) {
    const auto sk = build(t);
    std::vector<char> h(cuts.size());
    for (std::size_t c = 0; c < cuts.size(); ++c) {
      const double w = cut_weight(g, cuts[c], Direction::kOut);
      h[c] = std::abs(query(sk, cuts[c]).total - w) <= 5.0 * eps * w ? 1 : 0;
    }
    return h;
  });
  double worst = 1.0;
  for (std::size_t c = 0; c < cuts.size(); ++c) {
    std::size_t ok = 0;
    for (const auto& h : hits) ok += static_cast<std::size_t>(h[c]);
    worst = std::min(worst, static_cast<double>(ok) / static_cast<double>(trials));
  }
  return worst;
}

Outcome foreach_success() {
  const DiGraph g = gen_skewed(14, 200, 4.0, 6);
  const double beta = exact_graph_balance(g);
  const double eps = 0.25;
  const auto cuts = random_cuts(14, 50, 6);
  const ForEachSketch probe = build_sketch(g, beta, eps, 0);
  std::size_t sampled_vertices = 0;
  for (const auto& c : probe.classes)
    for (const auto& p : c.parts) sampled_vertices += p.members.size();
  const double worst = worst_cut_success(
      g, eps, cuts, 300, [&](std::size_t t) { return build_sketch(g, beta, eps, derive_seed(6, t)); },
      [](const ForEachSketch& sk, const CutSet& s) { return query_sketch(sk, s); });
  return {worst >= 2.0 / 3.0 && beta <= 4.0,
          fmt("oracle balance %.3g, 50 cuts x 300 sketches, worst per-cut success %.3f (need 0.667), %zu sampled "
              "vertex slots",
              beta, worst, sampled_vertices)};
}

// ------------------------------------------------------------------ 7

Outcome size_scaling() {
  const double eps = 0.25;
  std::vector<double> cs;
  std::string rows;
  for (std::size_t n : {64, 128, 256}) {
    for (int beta : {1, 4, 16}) {
      const DiGraph g = gen_spread(n, 64, beta, derive_seed(7, n * 100 + beta));
      const ForEachSketch sk = build_sketch(g, beta, eps, 7, {PeelMode::kHeuristic, {}, {}});
      const double l = std::log2(static_cast<double>(n));
      const double shape = static_cast<double>(n) * std::sqrt(static_cast<double>(beta)) * l * l * l / eps;
      const double c = static_cast<double>(sketch_size_bits(sk)) / shape;
      cs.push_back(c);
      rows += fmt(" %zu/%d:%.2f", n, beta, c);
    }
  }
  const double hi = *std::max_element(cs.begin(), cs.end());
  const double lo = *std::min_element(cs.begin(), cs.end());
  return {hi / lo <= 2.0, fmt("fitted C = %.3f, spread max/min %.3f (limit 2); n/beta:C%s", hi, hi / lo, rows.c_str())};
}

// ------------------------------------------------------------------ 8

struct DecompositionAudit {
  std::size_t levels = 0;
  std::size_t retention_failures = 0;
  std::size_t parts_checked = 0;
  std::size_t conductance_failures = 0;
};

// Re-runs the per-class level structure and checks retention and brute conductance.
DecompositionAudit audit_decomposition(const DiGraph& g, double phi_star) {
  DecompositionAudit a;
  for (const WeightClassView& wc : weight_classes(g)) {
    std::vector<EdgeId> current = wc.edges;
    while (!current.empty()) {
      const ExpanderPartition ep = expander_decompose(g, current, phi_star);
      ++a.levels;
      if (2 * ep.intra_edges < ep.edges) ++a.retention_failures;
      std::vector<EdgeId> next;
      std::vector<std::vector<EdgeId>> inside(ep.parts.size());
      for (EdgeId e : current) {
        const int pa = ep.part_of[g.edge(e).tail];
        if (pa == ep.part_of[g.edge(e).head]) {
          inside[static_cast<std::size_t>(pa)].push_back(e);
        } else {
          next.push_back(e);
        }
      }
      for (std::size_t i = 0; i < ep.parts.size(); ++i) {
        const auto& part = ep.parts[i];
        if (part.size() < 2 || part.size() > kBruteConductanceLimit || inside[i].empty()) continue;
        std::vector<std::uint32_t> local(g.num_vertices(), 0);
        for (std::size_t j = 0; j < part.size(); ++j) local[part[j]] = static_cast<std::uint32_t>(j);
        DiGraph lg(part.size());
        for (EdgeId e : inside[i]) lg.add_edge(local[g.edge(e).tail], local[g.edge(e).head], 1.0);
        ++a.parts_checked;
        if (exact_conductance(lg).value < ep.phi_star) ++a.conductance_failures;
      }
      current = std::move(next);
    }
  }
  return a;
}

Outcome fast_parity() {
  const double eps = 0.25;
  // Unbiasedness and variance on an Eulerian instance.
  const DiGraph g = gen_eulerian(12, 240, 8);
  const double beta = exact_graph_balance(g);
  const CutSet s = first_half(12);
  const double truth = cut_weight(g, s, Direction::kOut);
  const FastSketch probe = build_fast_sketch(g, beta, eps, 0);
  const auto est = parallel_map<CutEstimate>(10000, [&](std::size_t i) {
    return query_fast(build_fast_sketch(g, beta, eps, derive_seed(8, i)), s);
  });
  std::vector<double> total, sampled;
  for (const CutEstimate& e : est) {
    total.push_back(e.total);
    sampled.push_back(e.i_s);
  }
  const Moments mt = moments(total);
  const Moments ms = moments(sampled);
  const double rel = std::abs(mt.mean - truth) / truth;
  const double l = std::log(12.0);
  const double fitted_c = ms.var / (beta * l * l * l / (probe.alpha * probe.alpha) * truth * truth);

  // Success probability on a skewed instance.
  const DiGraph h = gen_skewed(14, 600, 4.0, 8);
  const double hbeta = exact_graph_balance(h);
  const auto cuts = random_cuts(14, 50, 8);
  const double worst = worst_cut_success(
      h, eps, cuts, 300, [&](std::size_t t) { return build_fast_sketch(h, hbeta, eps, derive_seed(80, t)); },
      [](const FastSketch& sk, const CutSet& c) { return query_fast(sk, c); });

  // Decomposition audit on both instances.
  const DecompositionAudit a1 = audit_decomposition(g, default_phi_star(12));
  const DecompositionAudit a2 = audit_decomposition(h, default_phi_star(14));
  const std::size_t fails =
      a1.retention_failures + a2.retention_failures + a1.conductance_failures + a2.conductance_failures;
  const bool pass = rel <= 0.01 && ms.var > 0.0 && fitted_c <= 8.0 && worst >= 2.0 / 3.0 && fails == 0;
  return {pass, fmt("mean rel err %.3f%%, fitted variance C %.3f (limit 8), worst per-cut success %.3f, "
                    "%zu levels / %zu brute parts audited, %zu failures",
                    100 * rel, fitted_c, worst, a1.levels + a2.levels, a1.parts_checked + a2.parts_checked, fails)};
}

// ------------------------------------------------------------------ 9

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

Outcome lower_bound_decode() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n = 20;
  const double beta = 10.0, eps = 0.1;  // k = 10, two clusters, 100 bits
  const std::vector<bool> bits = random_bits(100, 9);
  const EncodedGraph enc = gen_foreach_lb(n, beta, eps, bits, 9);
  std::size_t exact_ok = 0;
  for (const DecodeQuery& q : enc.queries)
    exact_ok += decode_bit(q, cut_weight(enc.graph, q.cut, Direction::kOut)) == bits[q.bit] ? 1 : 0;
  const double sk_beta = exact_graph_balance(enc.graph);
  const auto sketches = parallel_map<ForEachSketch>(
      9, [&](std::size_t r) { return build_sketch(enc.graph, sk_beta, eps, derive_seed(9, r)); });
  std::size_t sketch_ok = 0;
  for (const DecodeQuery& q : enc.queries) {
    std::vector<double> vals;
    for (const ForEachSketch& sk : sketches) vals.push_back(query_sketch(sk, q.cut).total);
    sketch_ok += decode_bit(q, median(vals)) == bits[q.bit] ? 1 : 0;
  }
  std::size_t stored = 0;
  for (const auto& c : sketches[0].classes) stored += c.sparse_edges.size();
  const double secs = seconds_since(t0);
  return {exact_ok == 100 && sketch_ok >= 95 && secs < 300.0,
          fmt("exact decode %zu/100, median-of-9 sketch decode %zu/100 (need 95), sketch beta %.3g, "
              "%zu of %zu edges stored exactly, %.1f s",
              exact_ok, sketch_ok, sk_beta, stored, enc.graph.num_edges(), secs)};
}

// ------------------------------------------------------------------ 10

Outcome maxflow_exactness() {
  std::mt19937_64 rng(10);
  std::size_t mismatches = 0, observed = 0, bound_failures = 0, small = 0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 4 + rng() % 47;  // 4..50
    const std::size_t m = n + rng() % (3 * n);
    const DiGraph g = gen_random_undirected(n, m, 1 + static_cast<int>(rng() % 10), rng());
    const Vertex s = 0, t = static_cast<Vertex>(n - 1);
    const double exact = undirected_max_flow(g, s, t);
    FlowObserver obs;
    if (n <= 14) {
      ++small;
      obs = [&](const FlowState& fs) {
        const double gamma = exact > 0 ? (exact - fs.value) / exact : 0.0;
        if (gamma <= 1e-12) return;  // bound is vacuous at the optimum
        ++observed;
        if (!residual_balance_bound(fs, gamma).ok) ++bound_failures;
      };
    }
    const KargerLevineResult r = karger_levine(g, s, t, rng(), obs);
    if (std::abs(r.value - exact) > 1e-9 * std::max(1.0, exact)) ++mismatches;
  }
  return {mismatches == 0 && bound_failures == 0 && observed > 0,
          fmt("100 instances, %zu value mismatches; %zu intermediate states on %zu small instances, %zu over 2/gamma",
              mismatches, observed, small, bound_failures)};
}

// ------------------------------------------------------------------ 11

Outcome gamma_refutation() {
  const std::size_t n = 40;
  const DiGraph g = gen_gamma_counterexample(n);
  const std::vector<double> gamma = directed_connectivities(g);
  const double l = std::log(static_cast<double>(n));
  const double rho = l * l / 4.0;
  int deviating = 0;
  double least = INFINITY;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const GammaTrial tr = gamma_sampling_trial(g, gamma, rho, derive_seed(11, seed));
    if (tr.deviation >= 2.0) ++deviating;
    least = std::min(least, tr.deviation);
  }
  return {deviating >= 9, fmt("%d/10 runs with witness-cut deviation >= 2 (need 9), smallest %.2f", deviating, least)};
}

// ------------------------------------------------------------------ 12

Outcome generator_balance() {
  std::size_t total = 0, within = 0;
  double worst_ratio = 0.0;
  for (std::size_t n = 8; n <= 12; ++n) {
    const auto balances = parallel_map<double>(
        10, [&](std::size_t s) { return exact_graph_balance(gen_matching_family(n, derive_seed(12, n * 100 + s))); });
    for (double b : balances) {
      ++total;
      within += b <= 8.0 * static_cast<double>(n) ? 1 : 0;
      worst_ratio = std::max(worst_ratio, b / (8.0 * static_cast<double>(n)));
    }
  }
  const double frac = static_cast<double>(within) / static_cast<double>(total);
  struct Config {
    std::size_t n;
    double beta, eps;
  };
  std::size_t lb_total = 0, lb_ok = 0;
  double lb_worst = 0.0;
  for (const Config c : {Config{12, 1.6, 0.1}, Config{10, 2.5, 0.1}, Config{12, 3.6, 0.1}}) {
    const std::size_t k = static_cast<std::size_t>(std::lround(std::sqrt(c.beta / c.eps)));
    const std::size_t count = k * k * (c.n / k - 1);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const EncodedGraph enc = gen_foreach_lb(c.n, c.beta, c.eps, random_bits(count, seed), derive_seed(120, seed));
      const double b = exact_graph_balance(enc.graph);
      ++lb_total;
      lb_ok += b <= 3.0 * c.beta ? 1 : 0;
      lb_worst = std::max(lb_worst, b / (3.0 * c.beta));
    }
  }
  return {frac >= 0.9 && lb_ok == lb_total,
          fmt("matching family %zu/%zu within 8n (worst balance/8n %.3f); encoding %zu/%zu within 3 beta "
              "(worst balance/3beta %.3f)",
              within, total, worst_ratio, lb_ok, lb_total, lb_worst)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"strength oracle equivalence", strength_equivalence},
      {"strength sum bound", strength_sum_bound},
      {"for-all unbiasedness", forall_unbiased},
      {"for-all preservation", forall_preservation},
      {"for-each unbiasedness and variance", foreach_unbiased_variance},
      {"for-each success probability", foreach_success},
      {"sketch size scaling", size_scaling},
      {"fast sketch parity", fast_parity},
      {"lower-bound decode", lower_bound_decode},
      {"max flow exactness", maxflow_exactness},
      {"1/gamma sampling counterexample", gamma_refutation},
      {"generator balance", generator_balance},
  };
  std::vector<bool> selected(criteria.size(), argc <= 1);
  for (int i = 1; i < argc; ++i) {
    const int k = std::atoi(argv[i]);
    if (k < 1 || k > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "unknown criterion '%s'\n", argv[i]);
      return 2;
    }
    selected[static_cast<std::size_t>(k - 1)] = true;
  }
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!selected[i]) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %2zu %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}

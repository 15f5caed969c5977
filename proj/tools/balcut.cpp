// balcut: command-line front end for the balcut library.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "balcut/errors.hpp"
#include "balcut/fast.hpp"
#include "balcut/forall.hpp"
#include "balcut/foreach.hpp"
#include "balcut/generators.hpp"
#include "balcut/maxflow.hpp"
#include "balcut/oracle.hpp"
#include "balcut/rng.hpp"
#include "balcut/sketch_io.hpp"
#include "balcut/strength.hpp"
#include "json.hpp"

#ifndef BALCUT_CORPUS_DIR
#define BALCUT_CORPUS_DIR "tests/corpus"
#endif

namespace fs = std::filesystem;
using namespace balcut;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitUsage = 2;

struct Globals {
  std::uint64_t seed = 1;
  double eps = 0.25;
  double beta = 1.0;
  std::string mode = "exact";
  std::string format = "text";
  CLI::Option* beta_opt = nullptr;

  bool json_out() const { return format == "json"; }
  PeelMode peel() const { return peel_mode_from_string(mode); }
};

void announce_seed(const Globals& g) { std::cerr << "seed: " << g.seed << "\n"; }

DiGraph load_graph(const std::string& path) {
  if (path.empty() || path == "-") return read_edge_list(std::cin);
  return read_edge_list_file(path);
}

std::vector<std::uint8_t> load_bytes(const std::string& path) {
  if (path.empty() || path == "-") {
    std::cin >> std::noskipws;
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Runs `body` with a stream bound to `path` ("" or "-" means stdout).
template <class F>
void with_output(const std::string& path, bool binary, F&& body) {
  if (path.empty() || path == "-") {
    body(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw ArgumentError("cannot write " + path);
  body(out);
}

std::size_t to_size(const std::string& s, const char* what) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || s.empty() || s[0] == '-') throw ArgumentError(std::string("bad ") + what + ": '" + s + "'");
  return static_cast<std::size_t>(v);
}

// "0,1,2" or "@file" whose lines are 0/1 strings of length n.
std::vector<CutSet> parse_cuts(const std::string& spec, std::size_t n) {
  std::vector<CutSet> cuts;
  if (!spec.empty() && spec[0] == '@') {
    std::ifstream in(spec.substr(1));
    if (!in) throw ArgumentError("cannot open cut file " + spec.substr(1));
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      if (line.size() != n) throw ParseError(lineno, "cut bit string must have length " + std::to_string(n));
      CutSet s(n);
      for (std::size_t v = 0; v < n; ++v) {
        if (line[v] == '1') {
          s.insert(static_cast<Vertex>(v));
        } else if (line[v] != '0') {
          throw ParseError(lineno, "cut bit strings may only contain 0 and 1");
        }
      }
      cuts.push_back(std::move(s));
    }
    return cuts;
  }
  CutSet s(n);
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    const std::size_t v = to_size(tok, "vertex");
    if (v >= n) throw ArgumentError("vertex " + tok + " out of range for n = " + std::to_string(n));
    s.insert(static_cast<Vertex>(v));
  }
  cuts.push_back(std::move(s));
  return cuts;
}

std::string members_string(const CutSet& s) {
  std::string out;
  for (Vertex v : s.members()) {
    if (!out.empty()) out += ',';
    out += std::to_string(v);
  }
  return out;
}

json members_json(const CutSet& s) {
  json a = json::array();
  for (Vertex v : s.members()) a.push_back(v);
  return a;
}

// Evaluates f(i) for i in [0, count) across `jobs` threads; results land by index.
template <class F>
std::vector<double> parallel_trials(std::size_t count, unsigned jobs, F&& f) {
  std::vector<double> out(count, 0.0);
  jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < jobs; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += jobs) out[i] = f(i);
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

AnySketch build_any(const DiGraph& g, const Globals& gl, bool fast, std::uint64_t seed,
                    std::optional<double> alpha, std::optional<double> lambda, std::optional<double> phi) {
  if (fast) {
    FastOptions o;
    o.alpha = alpha;
    o.phi_star = phi;
    return build_fast_sketch(g, gl.beta, gl.eps, seed, o);
  }
  ForEachOptions o;
  o.mode = gl.peel();
  o.alpha = alpha;
  o.lambda = lambda;
  return build_sketch(g, gl.beta, gl.eps, seed, o);
}

// ---------------------------------------------------------------- gen

int cmd_gen(const Globals& gl, const std::string& family, const std::vector<std::string>& params,
            const std::string& output, std::string queries_path) {
  announce_seed(gl);
  auto need = [&](std::size_t count, const char* usage) {
    if (params.size() != count) throw ArgumentError("usage: gen " + family + " " + usage);
  };
  DiGraph g;
  std::optional<EncodedGraph> enc;
  std::vector<bool> bits;
  if (family == "eulerian") {
    need(2, "N M");
    g = gen_eulerian(to_size(params[0], "n"), to_size(params[1], "m"), gl.seed);
  } else if (family == "skewed") {
    need(2, "N M (balance from --beta)");
    g = gen_skewed(to_size(params[0], "n"), to_size(params[1], "m"), gl.beta, gl.seed);
  } else if (family == "spread") {
    need(2, "N DEGREE (integer balance from --beta)");
    g = gen_spread(to_size(params[0], "n"), to_size(params[1], "degree"), static_cast<int>(gl.beta), gl.seed);
  } else if (family == "random") {
    need(3, "N M MAX_WEIGHT");
    g = gen_random_digraph(to_size(params[0], "n"), to_size(params[1], "m"),
                           static_cast<int>(to_size(params[2], "max weight")), gl.seed);
  } else if (family == "matching") {
    need(1, "N");
    g = gen_matching_family(to_size(params[0], "n"), gl.seed);
  } else if (family == "forall_lb") {
    need(1, "N (uses --beta, --eps)");
    g = gen_forall_lb_chain(to_size(params[0], "n"), gl.beta, gl.eps, gl.seed);
  } else if (family == "foreach_lb" || family == "foreach_lb_simple") {
    const std::size_t n = [&] {
      need(1, "N");
      return to_size(params[0], "n");
    }();
    std::size_t count = 0;
    if (family == "foreach_lb") {
      const double kd = std::round(std::sqrt(gl.beta / gl.eps));
      const auto k = static_cast<std::size_t>(std::max(1.0, kd));
      count = n % k == 0 && n >= 2 * k ? k * k * (n / k - 1) : 0;
      bits = random_bits(count, derive_seed(gl.seed, 1));
      enc = gen_foreach_lb(n, gl.beta, gl.eps, bits, gl.seed);
    } else {
      bits = random_bits((n / 2) * (n / 2), derive_seed(gl.seed, 1));
      enc = gen_foreach_lb_simple(n, bits, gl.seed);
    }
    g = enc->graph;
    if (queries_path.empty()) {
      if (output.empty() || output == "-") throw ArgumentError("gen " + family + " needs --queries or --output");
      queries_path = output + ".queries.json";
    }
  } else if (family == "gamma") {
    need(1, "N");
    g = gen_gamma_counterexample(to_size(params[0], "n"));
  } else {
    throw ArgumentError("unknown family '" + family + "'");
  }
  with_output(output, false, [&](std::ostream& out) { write_edge_list(out, g); });
  if (enc) {
    json j;
    j["family"] = family;
    j["n"] = g.num_vertices();
    j["beta"] = gl.beta;
    j["eps"] = gl.eps;
    j["seed"] = gl.seed;
    j["k"] = enc->k;
    j["clusters"] = enc->clusters;
    json qs = json::array();
    for (const DecodeQuery& q : enc->queries) {
      json e;
      e["bit"] = q.bit;
      e["value"] = bits[q.bit] ? 1 : 0;
      e["u"] = q.u;
      e["v"] = q.v;
      e["baseline"] = q.baseline;
      e["cut"] = members_json(q.cut);
      qs.push_back(std::move(e));
    }
    j["queries"] = std::move(qs);
    with_output(queries_path, false, [&](std::ostream& out) { out << j.dump(2) << "\n"; });
  }
  return kExitOk;
}

// ---------------------------------------------------------------- sparsify

int cmd_sparsify(const Globals& gl, const std::string& input, const std::string& output, double d) {
  announce_seed(gl);
  const DiGraph g = load_graph(input);
  SparsifyParams p;
  p.beta = gl.beta;
  p.eps = gl.eps;
  p.d = d;
  p.seed = gl.seed;
  const SparsifierResult r = sparsify(g, p);
  if (gl.json_out()) {
    json j;
    j["n"] = g.num_vertices();
    j["m"] = g.num_edges();
    j["rho"] = r.rho;
    j["expected_edges"] = r.expected_edges;
    j["kept_edges"] = r.h.num_edges();
    j["seed"] = gl.seed;
    json edges = json::array();
    for (const Edge& e : r.h.edges()) edges.push_back({e.tail, e.head, e.weight});
    j["edges"] = std::move(edges);
    with_output(output, false, [&](std::ostream& out) { out << j.dump(2) << "\n"; });
    return kExitOk;
  }
  with_output(output, false, [&](std::ostream& out) {
    out << "# rho=" << format_weight(r.rho) << " kept=" << r.h.num_edges() << " of " << g.num_edges()
        << " expected=" << format_weight(r.expected_edges) << " seed=" << gl.seed << "\n";
    write_edge_list(out, r.h);
  });
  return kExitOk;
}

// ---------------------------------------------------------------- sketch / query

int cmd_sketch(const Globals& gl, const std::string& input, const std::string& output, bool fast,
               std::optional<double> alpha, std::optional<double> lambda, std::optional<double> phi) {
  announce_seed(gl);
  const DiGraph g = load_graph(input);
  const AnySketch sk = build_any(g, gl, fast, gl.seed, alpha, lambda, phi);
  if (gl.json_out()) {
    const std::string text = std::visit([](const auto& s) { return sketch_json(s); }, sk);
    with_output(output, false, [&](std::ostream& out) { out << text << "\n"; });
  } else {
    const auto bytes = std::visit([](const auto& s) { return serialize(s); }, sk);
    with_output(output, true, [&](std::ostream& out) {
      out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    });
  }
  const std::uint64_t bits = std::visit([](const auto& s) { return sketch_size_bits(s); }, sk);
  std::cerr << "sketch bits: " << bits << "\n";
  return kExitOk;
}

int cmd_query(const Globals& gl, const std::string& input, const std::string& cut_spec) {
  const AnySketch sk = deserialize(load_bytes(input));
  const std::vector<CutSet> cuts = parse_cuts(cut_spec, sketch_vertices(sk));
  json arr = json::array();
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const CutEstimate est = query_any(sk, cuts[i]);
    if (gl.json_out()) {
      arr.push_back({{"cut", members_json(cuts[i])}, {"estimate", est.total}, {"sampled", est.i_s},
                     {"stored", est.j_s}});
    } else {
      std::cout << format_weight(est.total) << "\n";
    }
  }
  if (gl.json_out()) std::cout << arr.dump(2) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- verify

int cmd_verify_forall(const Globals& gl, const std::string& gpath, const std::string& hpath) {
  const DiGraph g = load_graph(gpath);
  const DiGraph h = load_graph(hpath);
  const ForAllReport r = verify_for_all(g, h, gl.eps);
  if (gl.json_out()) {
    json j{{"ok", r.ok},           {"cuts_checked", r.cuts_checked}, {"worst_ratio", r.worst_ratio},
           {"worst_excess", r.worst_excess}, {"worst_cut", members_json(r.worst_cut)}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << (r.ok ? "ok" : "FAILED") << " cuts=" << r.cuts_checked << " worst_ratio=" << r.worst_ratio
              << " worst_cut=" << members_string(r.worst_cut) << "\n";
  }
  return r.ok ? kExitOk : kExitVerify;
}

int cmd_verify_foreach(const Globals& gl, const std::string& gpath, const std::string& spath,
                       const std::string& cut_spec, double factor, double min_fraction) {
  const DiGraph g = load_graph(gpath);
  const AnySketch sk = deserialize(load_bytes(spath));
  if (sketch_vertices(sk) != g.num_vertices()) throw ArgumentError("sketch and graph disagree on n");
  std::vector<CutSet> cuts;
  if (!cut_spec.empty()) {
    cuts = parse_cuts(cut_spec, g.num_vertices());
  } else {
    for (const CutSet& s : enumerate_cuts(g.num_vertices())) {
      cuts.push_back(s);
      cuts.push_back(s.complement());
    }
  }
  const double eps = std::visit([](const auto& s) { return s.eps; }, sk);
  std::size_t good = 0, checked = 0;
  double worst = 0.0;
  for (const CutSet& s : cuts) {
    const double w = cut_weight(g, s, Direction::kOut);
    const double est = query_any(sk, s).total;
    ++checked;
    const double err = std::abs(est - w);
    if (err <= factor * eps * w + 1e-9 * std::max(1.0, w)) ++good;
    if (w > 0) worst = std::max(worst, err / w);
  }
  const double frac = checked ? static_cast<double>(good) / static_cast<double>(checked) : 1.0;
  const bool ok = frac >= min_fraction;
  if (gl.json_out()) {
    std::cout << json{{"ok", ok}, {"cuts", checked}, {"within", good}, {"fraction", frac}, {"worst_relative_error", worst}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << (ok ? "ok" : "FAILED") << " within=" << good << "/" << checked << " worst_rel_err=" << worst << "\n";
  }
  return ok ? kExitOk : kExitVerify;
}

int cmd_verify_strength(const Globals& gl, std::vector<std::string> paths) {
  if (paths.empty()) {
    for (const auto& entry : fs::directory_iterator(BALCUT_CORPUS_DIR))
      if (entry.path().extension() == ".txt") paths.push_back(entry.path().string());
    std::sort(paths.begin(), paths.end());
    if (paths.empty()) throw ArgumentError("no corpus graphs found in " BALCUT_CORPUS_DIR);
  }
  bool all_ok = true;
  json arr = json::array();
  for (const std::string& p : paths) {
    const DiGraph g = read_edge_list_file(p);
    const StrengthMap sm = compute_strengths(g);
    const double sum = strength_sum_check(g, sm);
    const double bound = static_cast<double>(g.num_vertices()) - 1.0;
    bool ok = sum <= bound + 1e-9 * std::max(1.0, bound);
    bool brute_checked = false;
    if (g.num_vertices() <= kMaxBruteStrengthVertices) {
      brute_checked = true;
      const std::vector<double> brute = brute_strengths(g);
      for (EdgeId e = 0; e < g.num_edges(); ++e) ok = ok && brute[e] == sm.k[e];
    }
    all_ok = all_ok && ok;
    if (gl.json_out()) {
      arr.push_back({{"file", fs::path(p).filename().string()}, {"n", g.num_vertices()}, {"m", g.num_edges()},
                     {"sum", sum}, {"bound", bound}, {"brute_checked", brute_checked}, {"ok", ok}});
    } else {
      std::cout << (ok ? "ok     " : "FAILED ") << fs::path(p).filename().string() << " n=" << g.num_vertices()
                << " m=" << g.num_edges() << " sum=" << format_weight(sum) << " bound=" << bound
                << (brute_checked ? " brute=match" : "") << "\n";
    }
  }
  if (gl.json_out()) std::cout << arr.dump(2) << "\n";
  return all_ok ? kExitOk : kExitVerify;
}

int cmd_verify_balance(const Globals& gl, const std::string& path) {
  const DiGraph g = load_graph(path);
  const double b = exact_graph_balance(g);
  const bool limited = gl.beta_opt != nullptr && gl.beta_opt->count() > 0;
  const bool ok = !limited || b <= gl.beta * (1 + 1e-12);
  if (gl.json_out()) {
    json j{{"balance", std::isinf(b) ? json("inf") : json(b)}, {"ok", ok}};
    if (limited) j["beta"] = gl.beta;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "balance " << (std::isinf(b) ? std::string("inf") : format_weight(b));
    if (limited) std::cout << (ok ? " <= " : " > ") << format_weight(gl.beta);
    std::cout << "\n";
  }
  return ok ? kExitOk : kExitVerify;
}

int cmd_verify_maxflow(const Globals& gl, const std::string& path, Vertex s, Vertex t) {
  announce_seed(gl);
  const DiGraph g = load_graph(path);
  const double kl = karger_levine(g, s, t, gl.seed).value;
  const double exact = undirected_max_flow(g, s, t);
  const bool ok = std::abs(kl - exact) <= 1e-9 * std::max(1.0, exact);
  if (gl.json_out()) {
    std::cout << json{{"karger_levine", kl}, {"exact", exact}, {"ok", ok}}.dump(2) << "\n";
  } else {
    std::cout << (ok ? "ok" : "FAILED") << " karger_levine=" << format_weight(kl) << " exact=" << format_weight(exact)
              << "\n";
  }
  return ok ? kExitOk : kExitVerify;
}

// ---------------------------------------------------------------- strength / maxflow

int cmd_strength(const Globals& gl, const std::string& path) {
  const DiGraph g = load_graph(path);
  const StrengthMap sm = compute_strengths(g);
  const double sum = strength_sum_check(g, sm);
  if (gl.json_out()) {
    json j;
    j["strengths"] = sm.k;
    j["sum"] = sum;
    j["bound"] = static_cast<double>(g.num_vertices()) - 1.0;
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    std::cout << ed.tail << " " << ed.head << " " << format_weight(ed.weight) << " " << format_weight(sm.k[e]) << "\n";
  }
  std::cout << "# sum u/k = " << format_weight(sum) << " (n - 1 = " << g.num_vertices() - 1 << ")\n";
  return kExitOk;
}

int cmd_maxflow(const Globals& gl, const std::string& path, Vertex s, Vertex t) {
  announce_seed(gl);
  const DiGraph g = load_graph(path);
  const KargerLevineResult r = karger_levine(g, s, t, gl.seed);
  if (gl.json_out()) {
    json trace = json::array();
    for (const auto& st : r.trace)
      trace.push_back({{"alpha", st.alpha}, {"requested", st.requested}, {"distinct", st.distinct},
                       {"augmentations", st.augmentations}});
    std::cout << json{{"value", r.value}, {"trace", trace}, {"full_augmentations", r.full_augmentations}}.dump(2)
              << "\n";
    return kExitOk;
  }
  std::cout << "value " << format_weight(r.value) << "\n";
  for (const auto& st : r.trace) {
    std::cout << "alpha=" << st.alpha << " requested=" << st.requested << " distinct=" << st.distinct
              << " augmentations=" << st.augmentations << "\n";
  }
  std::cout << "full-residual augmentations=" << r.full_augmentations << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- bench

int cmd_bench_size(const Globals& gl, const std::vector<std::size_t>& sizes, const std::vector<double>& betas,
                   std::size_t degree, bool fast) {
  announce_seed(gl);
  json arr = json::array();
  for (std::size_t n : sizes) {
    for (double beta : betas) {
      const DiGraph g = gen_spread(n, degree, static_cast<int>(beta), derive_seed(gl.seed, n));
      Globals local = gl;
      local.beta = beta;
      const AnySketch sk = build_any(g, local, fast, gl.seed, std::nullopt, std::nullopt, std::nullopt);
      const SketchSize sz = std::visit([](const auto& s) { return sketch_size(s); }, sk);
      const double l = std::log2(static_cast<double>(n));
      const double shape = static_cast<double>(n) * std::sqrt(beta) * l * l * l / gl.eps;
      const double c = static_cast<double>(sz.total_bits) / shape;
      if (gl.json_out()) {
        arr.push_back({{"n", n}, {"beta", beta}, {"m", g.num_edges()}, {"bits", sz.total_bits},
                       {"sample_bits", sz.sample_bits}, {"stored_edge_bits", sz.stored_edge_bits}, {"c", c}});
      } else {
        std::cout << "n=" << n << " beta=" << beta << " m=" << g.num_edges() << " bits=" << sz.total_bits
                  << " samples=" << sz.sample_bits << " stored=" << sz.stored_edge_bits << " C=" << c << "\n";
      }
    }
  }
  if (gl.json_out()) std::cout << arr.dump(2) << "\n";
  return kExitOk;
}

int cmd_bench_variance(const Globals& gl, const std::string& path, const std::string& cut_spec, std::size_t trials,
                       bool fast, unsigned jobs) {
  announce_seed(gl);
  const DiGraph g = load_graph(path);
  const std::vector<CutSet> cuts = parse_cuts(cut_spec, g.num_vertices());
  json arr = json::array();
  for (const CutSet& s : cuts) {
    const double truth = cut_weight(g, s, Direction::kOut);
    const std::vector<double> v = parallel_trials(trials, jobs, [&](std::size_t i) {
      const AnySketch sk = build_any(g, gl, fast, derive_seed(gl.seed, i), std::nullopt, std::nullopt, std::nullopt);
      return query_any(sk, s).total;
    });
    double sum = 0.0;
    for (double x : v) sum += x;
    const double mean = sum / static_cast<double>(trials);
    double sq = 0.0;
    std::size_t within = 0;
    for (double x : v) {
      sq += (x - mean) * (x - mean);
      within += std::abs(x - truth) <= gl.eps * truth ? 1 : 0;
    }
    const double var = trials > 1 ? sq / static_cast<double>(trials - 1) : 0.0;
    if (gl.json_out()) {
      arr.push_back({{"cut", members_json(s)}, {"truth", truth}, {"mean", mean}, {"variance", var},
                     {"within_eps", within}, {"trials", trials}});
    } else {
      std::cout << "cut=" << members_string(s) << " truth=" << format_weight(truth) << " mean=" << mean
                << " var=" << var << " within_eps=" << within << "/" << trials << "\n";
    }
  }
  if (gl.json_out()) std::cout << arr.dump(2) << "\n";
  return kExitOk;
}

int cmd_bench_decode(const Globals& gl, std::size_t n, std::size_t reps, bool fast, unsigned jobs) {
  announce_seed(gl);
  const auto k = static_cast<std::size_t>(std::max(1.0, std::round(std::sqrt(gl.beta / gl.eps))));
  const std::size_t count = n % k == 0 && n >= 2 * k ? k * k * (n / k - 1) : 0;
  const std::vector<bool> bits = random_bits(count, derive_seed(gl.seed, 1));
  const EncodedGraph enc = gen_foreach_lb(n, gl.beta, gl.eps, bits, gl.seed);
  // Sketches are built with the instance's exact balance so the parameters are honest.
  Globals local = gl;
  local.beta = std::max(1.0, exact_graph_balance(enc.graph));
  std::vector<AnySketch> sketches;
  for (std::size_t r = 0; r < reps; ++r) {
    sketches.push_back(build_any(enc.graph, local, fast, derive_seed(gl.seed, 100 + r), std::nullopt, std::nullopt,
                                 std::nullopt));
  }
  std::size_t exact_ok = 0;
  const std::vector<double> ok = parallel_trials(enc.queries.size(), jobs, [&](std::size_t i) {
    const DecodeQuery& q = enc.queries[i];
    std::vector<double> vals;
    for (const AnySketch& sk : sketches) vals.push_back(query_any(sk, q.cut).total);
    return decode_bit(q, median(vals)) == bits[q.bit] ? 1.0 : 0.0;
  });
  for (const DecodeQuery& q : enc.queries)
    exact_ok += decode_bit(q, cut_weight(enc.graph, q.cut, Direction::kOut)) == bits[q.bit] ? 1 : 0;
  std::size_t sketch_ok = 0;
  for (double x : ok) sketch_ok += x > 0 ? 1 : 0;
  if (gl.json_out()) {
    std::cout << json{{"bits", count}, {"exact_decoded", exact_ok}, {"sketch_decoded", sketch_ok}, {"reps", reps},
                      {"sketch_beta", local.beta}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "bits=" << count << " exact_decoded=" << exact_ok << " sketch_decoded=" << sketch_ok
              << " reps=" << reps << " sketch_beta=" << local.beta << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cut sparsifiers and sketches for balanced directed graphs"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals gl;
  app.add_option("--seed", gl.seed, "Random seed")->capture_default_str();
  app.add_option("--eps", gl.eps, "Accuracy parameter")->capture_default_str();
  gl.beta_opt = app.add_option("--beta", gl.beta, "Balance parameter")->capture_default_str();
  app.add_option("--mode", gl.mode, "Sparse-cut search for sketches")
      ->check(CLI::IsMember({"exact", "heuristic"}))
      ->capture_default_str();
  app.add_option("--format", gl.format, "Output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  const unsigned hw = std::max(1U, std::thread::hardware_concurrency());
  unsigned jobs = hw;

  std::string input, output, queries, cut_spec, second;
  std::string family;
  std::vector<std::string> params;
  double d = 3.0, factor = 5.0, min_fraction = 2.0 / 3.0;
  bool fast = false;
  std::optional<double> alpha, lambda, phi;
  Vertex source = 0, sink = 1;
  std::vector<std::string> paths;
  std::vector<std::size_t> sizes{64, 128, 256};
  std::vector<double> betas{1, 4, 16};
  std::size_t trials = 1000, reps = 9, n = 20, degree = 64;
  std::function<int()> run;

  auto* gen = app.add_subcommand("gen", "Generate a graph family as an edge list");
  gen->add_option("family", family,
                  "eulerian | skewed | spread | random | matching | forall_lb | foreach_lb | foreach_lb_simple | gamma")
      ->required();
  gen->add_option("params", params, "Family parameters");
  gen->add_option("-o,--output", output, "Edge-list output (default stdout)");
  gen->add_option("--queries", queries, "Decode-query sidecar JSON for foreach_lb");
  gen->callback([&] { run = [&] { return cmd_gen(gl, family, params, output, queries); }; });

  auto* sp = app.add_subcommand("sparsify", "For-all sparsifier of a graph");
  sp->add_option("input", input, "Edge list (default stdin)");
  sp->add_option("-o,--output", output, "Output (default stdout)");
  sp->add_option("--d", d, "Oversampling exponent, > 2")->capture_default_str();
  sp->callback([&] { run = [&] { return cmd_sparsify(gl, input, output, d); }; });

  auto* sk = app.add_subcommand("sketch", "Build a for-each cut sketch");
  sk->add_option("input", input, "Edge list (default stdin)");
  sk->add_option("-o,--output", output, "Output (default stdout)");
  sk->add_flag("--fast", fast, "Expander-based sketch");
  sk->add_option("--alpha", alpha, "Override samples-per-vertex parameter");
  sk->add_option("--lambda", lambda, "Override sparse-cut threshold");
  sk->add_option("--phi-star", phi, "Conductance threshold for --fast");
  sk->callback([&] { run = [&] { return cmd_sketch(gl, input, output, fast, alpha, lambda, phi); }; });

  auto* qy = app.add_subcommand("query", "Estimate cut values from a serialized sketch");
  qy->add_option("sketch", input, "Sketch file (default stdin)");
  qy->add_option("--cut", cut_spec, "Vertex list like 0,1,2 or @file of 0/1 strings")->required();
  qy->callback([&] { run = [&] { return cmd_query(gl, input, cut_spec); }; });

  auto* vf = app.add_subcommand("verify", "Check results against exact oracles");
  vf->require_subcommand(1);
  auto* vfa = vf->add_subcommand("forall", "Every directed cut of H within 1 +- eps of G");
  vfa->add_option("graph", input)->required();
  vfa->add_option("sparsifier", second)->required();
  vfa->callback([&] { run = [&] { return cmd_verify_forall(gl, input, second); }; });
  auto* vfe = vf->add_subcommand("foreach", "Fraction of cuts a sketch answers within factor * eps");
  vfe->add_option("graph", input)->required();
  vfe->add_option("sketch", second)->required();
  vfe->add_option("--cut", cut_spec, "Cuts to check (default: all, n <= 26)");
  vfe->add_option("--factor", factor, "Tolerance multiple of eps")->capture_default_str();
  vfe->add_option("--min-fraction", min_fraction, "Required fraction of cuts within tolerance")->capture_default_str();
  vfe->callback([&] { run = [&] { return cmd_verify_foreach(gl, input, second, cut_spec, factor, min_fraction); }; });
  auto* vfs = vf->add_subcommand("strength", "Strength decomposition against brute force and the sum bound");
  vfs->add_option("graphs", paths, "Edge lists (default: bundled corpus)");
  vfs->callback([&] { run = [&] { return cmd_verify_strength(gl, paths); }; });
  auto* vfb = vf->add_subcommand("balance", "Exact balance; fails if above --beta when given");
  vfb->add_option("graph", input);
  vfb->callback([&] { run = [&] { return cmd_verify_balance(gl, input); }; });
  auto* vfm = vf->add_subcommand("maxflow", "Karger-Levine against exact max flow");
  vfm->add_option("graph", input);
  vfm->add_option("--source", source)->capture_default_str();
  vfm->add_option("--sink", sink)->capture_default_str();
  vfm->callback([&] { run = [&] { return cmd_verify_maxflow(gl, input, source, sink); }; });

  auto* st = app.add_subcommand("strength", "Per-edge strengths and the sum check");
  st->add_option("input", input, "Edge list (default stdin)");
  st->callback([&] { run = [&] { return cmd_strength(gl, input); }; });

  auto* mf = app.add_subcommand("maxflow", "Karger-Levine max flow on the undirected view");
  mf->add_option("input", input, "Edge list (default stdin)");
  mf->add_option("--source", source)->capture_default_str();
  mf->add_option("--sink", sink)->capture_default_str();
  mf->callback([&] { run = [&] { return cmd_maxflow(gl, input, source, sink); }; });

  auto* bn = app.add_subcommand("bench", "Size, variance and decode experiments");
  bn->require_subcommand(1);
  auto* bs = bn->add_subcommand("size", "Sketch size on generated instances");
  bs->add_option("--sizes", sizes)->delimiter(',')->capture_default_str();
  bs->add_option("--betas", betas)->delimiter(',')->capture_default_str();
  bs->add_option("--degree", degree, "Average undirected degree of the spread instances")->capture_default_str();
  bs->add_flag("--fast", fast);
  bs->callback([&] { run = [&] { return cmd_bench_size(gl, sizes, betas, degree, fast); }; });
  auto* bv = bn->add_subcommand("variance", "Empirical mean and variance over rebuilt sketches");
  bv->add_option("graph", input)->required();
  bv->add_option("--cut", cut_spec)->required();
  bv->add_option("--trials", trials)->capture_default_str();
  bv->add_option("--jobs", jobs)->capture_default_str();
  bv->add_flag("--fast", fast);
  bv->callback([&] { run = [&] { return cmd_bench_variance(gl, input, cut_spec, trials, fast, jobs); }; });
  auto* bd = bn->add_subcommand("decode", "Decode a lower-bound instance via median-of-reps sketches");
  bd->add_option("--n", n)->capture_default_str();
  bd->add_option("--reps", reps)->capture_default_str();
  bd->add_option("--jobs", jobs)->capture_default_str();
  bd->add_flag("--fast", fast);
  bd->callback([&] { run = [&] { return cmd_bench_decode(gl, n, reps, fast, jobs); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  try {
    return run ? run() : kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kExitUsage;
}

#include "balcut/sketch_io.hpp"

#include <bit>
#include "json.hpp"

#include "balcut/errors.hpp"

namespace balcut {

namespace {

class BitWriter {
 public:
  void put(std::uint64_t value, unsigned width) {
    for (unsigned i = 0; i < width; ++i) {
      if (bits_ % 8 == 0) bytes_.push_back(0);
      if ((value >> i) & 1U) bytes_.back() |= static_cast<std::uint8_t>(1U << (bits_ % 8));
      ++bits_;
    }
  }
  void put_f64(double x) { put(std::bit_cast<std::uint64_t>(x), 64); }
  std::uint64_t bits() const { return bits_; }
  std::vector<std::uint8_t> take() { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
  std::uint64_t bits_ = 0;
};

class BitReader {
 public:
  explicit BitReader(const std::vector<std::uint8_t>& b) : bytes_(b) {}
  std::uint64_t get(unsigned width) {
    std::uint64_t v = 0;
    for (unsigned i = 0; i < width; ++i) {
      if (pos_ / 8 >= bytes_.size()) throw ParseError(0, "truncated sketch");
      if ((bytes_[pos_ / 8] >> (pos_ % 8)) & 1U) v |= std::uint64_t{1} << i;
      ++pos_;
    }
    return v;
  }
  double get_f64() { return std::bit_cast<double>(get(64)); }

 private:
  const std::vector<std::uint8_t>& bytes_;
  std::uint64_t pos_ = 0;
};

unsigned width_for(std::uint64_t max_value) { return static_cast<unsigned>(std::bit_width(max_value)); }

unsigned vertex_bits(std::size_t n) { return std::max(1U, width_for(n > 0 ? n - 1 : 0)); }

struct Header {
  SketchFormat format = SketchFormat::kForEach;
  PeelMode mode = PeelMode::kExact;
  bool certified = false;
  std::size_t n = 0;
  double beta = 0, eps = 0, alpha = 0, extra = 0;
  std::uint64_t seed = 0;
  std::size_t spv = 0;
  std::size_t classes = 0;
};

class Writer {
 public:
  explicit Writer(std::size_t n) : vb_(vertex_bits(n)), n_(n) {}

  void header(const Header& h) {
    const std::uint64_t start = w_.bits();
    w_.put(kSketchMagic, 32);
    w_.put(kSketchVersion, 16);
    w_.put(static_cast<std::uint8_t>(h.format), 8);
    w_.put(static_cast<std::uint8_t>(h.mode), 8);
    w_.put(h.certified ? 1 : 0, 8);
    w_.put(h.n, 64);
    w_.put_f64(h.beta);
    w_.put_f64(h.eps);
    w_.put_f64(h.alpha);
    w_.put_f64(h.extra);
    w_.put(h.seed, 64);
    w_.put(h.spv, 32);
    w_.put(h.classes, 32);
    size_.header_bits += w_.bits() - start;
  }

  void class_head(int index, const std::vector<Edge>& stored) {
    std::uint64_t start = w_.bits();
    w_.put(static_cast<std::uint64_t>(index), 16);
    w_.put(stored.size(), 32);
    size_.partition_bits += w_.bits() - start;
    start = w_.bits();
    for (const Edge& e : stored) {
      w_.put(e.tail, vb_);
      w_.put(e.head, vb_);
      w_.put_f64(e.weight);
    }
    size_.stored_edge_bits += w_.bits() - start;
  }

  void meta(std::uint64_t value, unsigned width) {
    w_.put(value, width);
    size_.partition_bits += width;
  }
  void meta_f64(double x) {
    w_.put_f64(x);
    size_.partition_bits += 64;
  }

  void parts(const std::vector<SketchPart>& parts, std::size_t spv) {
    std::uint64_t start = w_.bits();
    w_.put(parts.size(), 32);
    const unsigned pb = width_for(parts.size());
    std::vector<std::uint64_t> map(n_, 0);
    std::uint32_t max_deg = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      for (std::size_t j = 0; j < parts[i].members.size(); ++j) {
        map[parts[i].members[j]] = i + 1;
        max_deg = std::max({max_deg, parts[i].out_degree[j], parts[i].in_degree[j]});
      }
    }
    for (std::uint64_t x : map) w_.put(x, pb);
    size_.partition_bits += w_.bits() - start;
    start = w_.bits();
    const unsigned db = width_for(max_deg);
    w_.put(db, 8);
    // Members in vertex order across parts, matching the map.
    for_each_member(parts, [&](const SketchPart& p, std::size_t j) {
      w_.put(p.out_degree[j], db);
      w_.put(p.in_degree[j], db);
    });
    size_.degree_bits += w_.bits() - start;
    start = w_.bits();
    for_each_member(parts, [&](const SketchPart& p, std::size_t j) {
      for (const auto* rec : {&p.out_samples[j], &p.in_samples[j]}) {
        if (!rec->empty() && rec->size() != spv) throw std::logic_error("sample count mismatch");
        for (const SampleRecord& r : *rec) {
          w_.put(r.other, vb_);
          w_.put_f64(r.weight);
        }
      }
    });
    size_.sample_bits += w_.bits() - start;
  }

  std::vector<std::uint8_t> finish(SketchSize* out) {
    size_.total_bits = w_.bits();
    if (out != nullptr) *out = size_;
    return w_.take();
  }

  template <typename F>
  void for_each_member(const std::vector<SketchPart>& parts, F&& f) {
    std::vector<std::pair<std::size_t, std::size_t>> at(n_, {SIZE_MAX, 0});
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (std::size_t j = 0; j < parts[i].members.size(); ++j) at[parts[i].members[j]] = {i, j};
    for (std::size_t v = 0; v < n_; ++v)
      if (at[v].first != SIZE_MAX) f(parts[at[v].first], at[v].second);
  }

 private:
  BitWriter w_;
  SketchSize size_;
  unsigned vb_;
  std::size_t n_;
};

class Reader {
 public:
  explicit Reader(const std::vector<std::uint8_t>& b) : r_(b) {}

  Header header() {
    if (r_.get(32) != kSketchMagic) throw ParseError(0, "bad sketch magic");
    if (r_.get(16) != kSketchVersion) throw ParseError(0, "unsupported sketch version");
    Header h;
    const auto fmt = r_.get(8);
    if (fmt > 1) throw ParseError(0, "unknown sketch format tag");
    h.format = static_cast<SketchFormat>(fmt);
    const auto mode = r_.get(8);
    if (mode > 1) throw ParseError(0, "unknown sketch mode");
    h.mode = static_cast<PeelMode>(mode);
    h.certified = r_.get(8) != 0;
    h.n = r_.get(64);
    if (h.n > (std::uint64_t{1} << 32)) throw ParseError(0, "implausible vertex count");
    h.beta = r_.get_f64();
    h.eps = r_.get_f64();
    h.alpha = r_.get_f64();
    h.extra = r_.get_f64();
    h.seed = r_.get(64);
    h.spv = r_.get(32);
    h.classes = r_.get(32);
    vb_ = vertex_bits(h.n);
    n_ = h.n;
    return h;
  }

  std::vector<Edge> edges() {
    const std::size_t count = r_.get(32);
    std::vector<Edge> out;
    for (std::size_t i = 0; i < count; ++i) {
      Edge e;
      e.tail = vertex();
      e.head = vertex();
      e.weight = r_.get_f64();
      out.push_back(e);
    }
    return out;
  }

  std::vector<SketchPart> parts(std::size_t spv) {
    const std::size_t count = r_.get(32);
    if (count > n_) throw ParseError(0, "more parts than vertices");
    const unsigned pb = width_for(count);
    std::vector<SketchPart> parts(count);
    std::vector<std::uint64_t> map(n_);
    for (std::size_t v = 0; v < n_; ++v) {
      map[v] = r_.get(pb);
      if (map[v] > count) throw ParseError(0, "part index out of range");
      if (map[v] != 0) parts[map[v] - 1].members.push_back(static_cast<Vertex>(v));
    }
    for (SketchPart& p : parts) {
      const std::size_t k = p.members.size();
      p.out_degree.resize(k);
      p.in_degree.resize(k);
      p.out_samples.resize(k);
      p.in_samples.resize(k);
    }
    const unsigned db = static_cast<unsigned>(r_.get(8));
    if (db > 32) throw ParseError(0, "bad degree width");
    std::vector<std::size_t> pos(count, 0);
    auto walk = [&](auto&& f) {
      std::fill(pos.begin(), pos.end(), 0);
      for (std::size_t v = 0; v < n_; ++v) {
        if (map[v] == 0) continue;
        SketchPart& p = parts[map[v] - 1];
        f(p, pos[map[v] - 1]++);
      }
    };
    walk([&](SketchPart& p, std::size_t j) {
      p.out_degree[j] = static_cast<std::uint32_t>(r_.get(db));
      p.in_degree[j] = static_cast<std::uint32_t>(r_.get(db));
    });
    walk([&](SketchPart& p, std::size_t j) {
      for (int dir = 0; dir < 2; ++dir) {
        const std::uint32_t d = dir == 0 ? p.out_degree[j] : p.in_degree[j];
        auto& rec = dir == 0 ? p.out_samples[j] : p.in_samples[j];
        if (d == 0) continue;
        for (std::size_t q = 0; q < spv; ++q) {
          SampleRecord r;
          r.other = vertex();
          r.weight = r_.get_f64();
          rec.push_back(r);
        }
      }
    });
    return parts;
  }

  std::uint64_t get(unsigned width) { return r_.get(width); }
  double get_f64() { return r_.get_f64(); }

 private:
  Vertex vertex() {
    const std::uint64_t v = r_.get(vb_);
    if (v >= n_) throw ParseError(0, "vertex id out of range");
    return static_cast<Vertex>(v);
  }

  BitReader r_;
  unsigned vb_ = 1;
  std::size_t n_ = 0;
};

nlohmann::ordered_json parts_json(const std::vector<SketchPart>& parts) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const SketchPart& p : parts) {
    nlohmann::ordered_json jp;
    jp["members"] = p.members;
    jp["out_degree"] = p.out_degree;
    jp["in_degree"] = p.in_degree;
    auto samples = [](const std::vector<std::vector<SampleRecord>>& s) {
      nlohmann::ordered_json a = nlohmann::ordered_json::array();
      for (const auto& rec : s) {
        nlohmann::ordered_json r = nlohmann::ordered_json::array();
        for (const SampleRecord& x : rec) r.push_back({x.other, x.weight});
        a.push_back(r);
      }
      return a;
    };
    jp["out_samples"] = samples(p.out_samples);
    jp["in_samples"] = samples(p.in_samples);
    arr.push_back(jp);
  }
  return arr;
}

nlohmann::ordered_json edges_json(const std::vector<Edge>& edges) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const Edge& e : edges) arr.push_back({e.tail, e.head, e.weight});
  return arr;
}

nlohmann::ordered_json size_json(const SketchSize& s) {
  nlohmann::ordered_json j;
  j["total_bits"] = s.total_bits;
  j["header_bits"] = s.header_bits;
  j["stored_edge_bits"] = s.stored_edge_bits;
  j["partition_bits"] = s.partition_bits;
  j["degree_bits"] = s.degree_bits;
  j["sample_bits"] = s.sample_bits;
  return j;
}

}  // namespace

std::vector<std::uint8_t> serialize(const ForEachSketch& sk, SketchSize* size) {
  Writer w(sk.n);
  w.header({SketchFormat::kForEach, sk.mode, sk.certified, sk.n, sk.beta, sk.eps, sk.alpha, sk.lambda,
            sk.seed, sk.samples_per_vertex, sk.classes.size()});
  for (const ForEachClass& c : sk.classes) {
    w.class_head(c.index, c.sparse_edges);
    w.parts(c.parts, sk.samples_per_vertex);
  }
  return w.finish(size);
}

std::vector<std::uint8_t> serialize(const FastSketch& sk, SketchSize* size) {
  Writer w(sk.n);
  w.header({SketchFormat::kFast, PeelMode::kHeuristic, false, sk.n, sk.beta, sk.eps, sk.alpha, sk.phi_star,
            sk.seed, sk.samples_per_vertex, sk.classes.size()});
  for (const FastClass& c : sk.classes) {
    w.class_head(c.index, c.stored_edges);
    w.meta(c.levels.size(), 16);
    for (const FastLevel& lv : c.levels) {
      w.meta_f64(lv.phi_star);
      w.meta(static_cast<std::uint64_t>(lv.rounds), 16);
      w.meta(lv.edges_in, 32);
      w.meta(lv.edges_retained, 32);
      w.parts(lv.parts, sk.samples_per_vertex);
    }
  }
  return w.finish(size);
}

SketchSize sketch_size(const ForEachSketch& sk) {
  SketchSize s;
  serialize(sk, &s);
  return s;
}

SketchSize sketch_size(const FastSketch& sk) {
  SketchSize s;
  serialize(sk, &s);
  return s;
}

std::uint64_t sketch_size_bits(const ForEachSketch& sk) { return sketch_size(sk).total_bits; }
std::uint64_t sketch_size_bits(const FastSketch& sk) { return sketch_size(sk).total_bits; }

AnySketch deserialize(const std::vector<std::uint8_t>& bytes) {
  Reader r(bytes);
  const Header h = r.header();
  if (h.format == SketchFormat::kForEach) {
    ForEachSketch sk;
    sk.n = h.n;
    sk.beta = h.beta;
    sk.eps = h.eps;
    sk.alpha = h.alpha;
    sk.lambda = h.extra;
    sk.seed = h.seed;
    sk.mode = h.mode;
    sk.certified = h.certified;
    sk.samples_per_vertex = h.spv;
    for (std::size_t i = 0; i < h.classes; ++i) {
      ForEachClass c;
      c.index = static_cast<int>(r.get(16));
      c.sparse_edges = r.edges();
      c.parts = r.parts(h.spv);
      sk.classes.push_back(std::move(c));
    }
    return sk;
  }
  FastSketch sk;
  sk.n = h.n;
  sk.beta = h.beta;
  sk.eps = h.eps;
  sk.alpha = h.alpha;
  sk.phi_star = h.extra;
  sk.seed = h.seed;
  sk.samples_per_vertex = h.spv;
  for (std::size_t i = 0; i < h.classes; ++i) {
    FastClass c;
    c.index = static_cast<int>(r.get(16));
    c.stored_edges = r.edges();
    const std::size_t levels = r.get(16);
    for (std::size_t j = 0; j < levels; ++j) {
      FastLevel lv;
      lv.phi_star = r.get_f64();
      lv.rounds = static_cast<int>(r.get(16));
      lv.edges_in = r.get(32);
      lv.edges_retained = r.get(32);
      lv.parts = r.parts(h.spv);
      c.levels.push_back(std::move(lv));
    }
    sk.classes.push_back(std::move(c));
  }
  return sk;
}

std::string sketch_json(const ForEachSketch& sk, int indent) {
  nlohmann::ordered_json j;
  j["format"] = "foreach";
  j["version"] = kSketchVersion;
  j["n"] = sk.n;
  j["beta"] = sk.beta;
  j["eps"] = sk.eps;
  j["alpha"] = sk.alpha;
  j["lambda"] = sk.lambda;
  j["seed"] = sk.seed;
  j["mode"] = to_string(sk.mode);
  j["certified"] = sk.certified;
  j["samples_per_vertex"] = sk.samples_per_vertex;
  j["size"] = size_json(sketch_size(sk));
  nlohmann::ordered_json classes = nlohmann::ordered_json::array();
  for (const ForEachClass& c : sk.classes) {
    nlohmann::ordered_json jc;
    jc["index"] = c.index;
    jc["sparse_edges"] = edges_json(c.sparse_edges);
    jc["parts"] = parts_json(c.parts);
    classes.push_back(jc);
  }
  j["classes"] = classes;
  return j.dump(indent);
}

std::string sketch_json(const FastSketch& sk, int indent) {
  nlohmann::ordered_json j;
  j["format"] = "fast";
  j["version"] = kSketchVersion;
  j["n"] = sk.n;
  j["beta"] = sk.beta;
  j["eps"] = sk.eps;
  j["alpha"] = sk.alpha;
  j["phi_star"] = sk.phi_star;
  j["seed"] = sk.seed;
  j["samples_per_vertex"] = sk.samples_per_vertex;
  j["size"] = size_json(sketch_size(sk));
  nlohmann::ordered_json classes = nlohmann::ordered_json::array();
  for (const FastClass& c : sk.classes) {
    nlohmann::ordered_json jc;
    jc["index"] = c.index;
    jc["stored_edges"] = edges_json(c.stored_edges);
    nlohmann::ordered_json levels = nlohmann::ordered_json::array();
    for (const FastLevel& lv : c.levels) {
      nlohmann::ordered_json jl;
      jl["phi_star"] = lv.phi_star;
      jl["rounds"] = lv.rounds;
      jl["edges_in"] = lv.edges_in;
      jl["edges_retained"] = lv.edges_retained;
      jl["parts"] = parts_json(lv.parts);
      levels.push_back(jl);
    }
    jc["levels"] = levels;
    classes.push_back(jc);
  }
  j["classes"] = classes;
  return j.dump(indent);
}

CutEstimate query_any(const AnySketch& sk, const CutSet& s) {
  if (const auto* f = std::get_if<ForEachSketch>(&sk)) return query_sketch(*f, s);
  return query_fast(std::get<FastSketch>(sk), s);
}

std::size_t sketch_vertices(const AnySketch& sk) {
  return std::visit([](const auto& x) { return x.n; }, sk);
}

}  // namespace balcut

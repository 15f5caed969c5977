#include "balcut/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace balcut {

namespace {

constexpr std::size_t kDenseLimit = 600;
constexpr int kPowerIterations = 500;

std::vector<double> degrees(std::size_t k, std::span<const LocalEdge> edges) {
  std::vector<double> d(k, 0.0);
  for (const LocalEdge& e : edges) {
    d[e.a] += e.w;
    d[e.b] += e.w;
  }
  return d;
}

std::vector<double> dense_fiedler(std::size_t k, std::span<const LocalEdge> edges,
                                  const std::vector<double>& inv_sqrt) {
  Eigen::MatrixXd n = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  for (const LocalEdge& e : edges) {
    const double x = e.w * inv_sqrt[e.a] * inv_sqrt[e.b];
    n(e.a, e.b) -= x;
    n(e.b, e.a) -= x;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(n);
  const Eigen::VectorXd v = es.eigenvectors().col(1);
  return {v.data(), v.data() + v.size()};
}

// Top nontrivial eigenvector of (I + D^-1/2 A D^-1/2)/2, deflating D^1/2 1.
std::vector<double> power_fiedler(std::size_t k, std::span<const LocalEdge> edges,
                                  const std::vector<double>& deg, const std::vector<double>& inv_sqrt) {
  std::vector<double> top(k);
  double norm = 0.0;
  for (std::size_t i = 0; i < k; ++i) norm += deg[i];
  for (std::size_t i = 0; i < k; ++i) top[i] = norm > 0 ? std::sqrt(deg[i] / norm) : 0.0;
  std::vector<double> x(k), y(k);
  for (std::size_t i = 0; i < k; ++i) x[i] = std::sin(1.0 + static_cast<double>(i) * 0.7548776662);
  auto deflate_normalise = [&](std::vector<double>& v) {
    const double dot = std::inner_product(v.begin(), v.end(), top.begin(), 0.0);
    for (std::size_t i = 0; i < k; ++i) v[i] -= dot * top[i];
    const double nn = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    if (nn > 0) for (double& t : v) t /= nn;
  };
  deflate_normalise(x);
  for (int it = 0; it < kPowerIterations; ++it) {
    for (std::size_t i = 0; i < k; ++i) y[i] = 0.5 * x[i];
    for (const LocalEdge& e : edges) {
      const double c = 0.5 * e.w * inv_sqrt[e.a] * inv_sqrt[e.b];
      y[e.a] += c * x[e.b];
      y[e.b] += c * x[e.a];
    }
    deflate_normalise(y);
    std::swap(x, y);
  }
  return x;
}

}  // namespace

std::vector<std::uint32_t> fiedler_order(std::size_t k, std::span<const LocalEdge> edges) {
  std::vector<std::uint32_t> order(k);
  std::iota(order.begin(), order.end(), 0U);
  if (k < 3) return order;
  const std::vector<double> deg = degrees(k, edges);
  std::vector<double> inv_sqrt(k);
  for (std::size_t i = 0; i < k; ++i) inv_sqrt[i] = deg[i] > 0 ? 1.0 / std::sqrt(deg[i]) : 0.0;
  std::vector<double> x = k <= kDenseLimit ? dense_fiedler(k, edges, inv_sqrt)
                                           : power_fiedler(k, edges, deg, inv_sqrt);
  for (std::size_t i = 0; i < k; ++i) x[i] *= inv_sqrt[i];
  std::stable_sort(order.begin(), order.end(),
                   [&x](std::uint32_t a, std::uint32_t b) { return x[a] < x[b]; });
  return order;
}

std::vector<SweepPoint> sweep_profile(std::size_t k, std::span<const LocalEdge> edges,
                                      std::span<const std::uint32_t> order) {
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adj(k);
  for (const LocalEdge& e : edges) {
    adj[e.a].emplace_back(e.b, e.w);
    adj[e.b].emplace_back(e.a, e.w);
  }
  std::vector<char> in(k, 0);
  std::vector<SweepPoint> out;
  if (k < 2) return out;
  out.reserve(k - 1);
  double crossing = 0.0, volume = 0.0;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    const std::uint32_t v = order[i];
    in[v] = 1;
    for (auto [u, w] : adj[v]) {
      volume += w;
      crossing += in[u] ? -w : w;
    }
    out.push_back({i + 1, crossing, volume});
  }
  return out;
}

}  // namespace balcut

#include "ngclab/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace ngclab {

UnionFind::UnionFind(std::uint32_t n) : parent_(n), size_(n, 1), components_(n) {
  for (std::uint32_t i = 0; i < n; ++i) parent_[i] = i;
}

std::uint32_t UnionFind::find(std::uint32_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool UnionFind::unite(std::uint32_t a, std::uint32_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  --components_;
  return true;
}

UnionFind UnionFind::from_parents(std::vector<std::uint32_t> parents) {
  UnionFind uf(static_cast<std::uint32_t>(parents.size()));
  for (auto p : parents)
    if (p >= parents.size()) throw std::invalid_argument("UnionFind: parent out of range");
  uf.parent_ = std::move(parents);
  uf.components_ = 0;
  for (std::uint32_t i = 0; i < uf.parent_.size(); ++i) {
    if (uf.find(i) == i) ++uf.components_;
  }
  std::fill(uf.size_.begin(), uf.size_.end(), 1);
  return uf;
}

std::uint64_t Census::cycles_of(std::uint32_t len) const {
  auto it = cycles.find(len);
  return it == cycles.end() ? 0 : it->second;
}

std::uint64_t Census::paths_of(std::uint32_t len) const {
  auto it = paths.find(len);
  return it == paths.end() ? 0 : it->second;
}

std::uint64_t Census::cycle_count() const {
  std::uint64_t c = 0;
  for (auto& [len, cnt] : cycles) c += cnt;
  return c;
}

std::uint64_t Census::path_count() const {
  std::uint64_t c = 0;
  for (auto& [len, cnt] : paths) c += cnt;
  return c;
}

std::string Census::summary() const {
  std::string s = "cycles";
  if (cycles.empty()) s += " none";
  for (auto& [len, cnt] : cycles) s += " " + std::to_string(cnt) + "x" + std::to_string(len);
  s += " paths";
  if (paths.empty()) s += " none";
  for (auto& [len, cnt] : paths) s += " " + std::to_string(cnt) + "x" + std::to_string(len);
  if (other_components) s += " other " + std::to_string(other_components);
  return s;
}

Census exact_census(const std::vector<Edge>& edges, std::uint32_t n) {
  Census c;
  std::vector<Edge> norm;
  norm.reserve(edges.size());
  for (auto e : edges) {
    if (e.u >= n || e.v >= n) throw std::out_of_range("exact_census: vertex id out of range");
    if (e.u == e.v) {
      ++c.self_loops;
      continue;
    }
    if (e.u > e.v) std::swap(e.u, e.v);
    norm.push_back(e);
  }
  std::sort(norm.begin(), norm.end());
  auto last = std::unique(norm.begin(), norm.end());
  c.duplicate_edges = static_cast<std::uint64_t>(norm.end() - last);
  norm.erase(last, norm.end());

  UnionFind uf(n);
  std::vector<std::uint32_t> degree(n, 0);
  for (auto e : norm) {
    uf.unite(e.u, e.v);
    ++degree[e.u];
    ++degree[e.v];
  }
  std::vector<std::uint32_t> vcount(n, 0), ecount(n, 0), maxdeg(n, 0);
  for (std::uint32_t v = 0; v < n; ++v) {
    std::uint32_t r = uf.find(v);
    ++vcount[r];
    maxdeg[r] = std::max(maxdeg[r], degree[v]);
    c.max_degree = std::max(c.max_degree, degree[v]);
    if (degree[v] > 2) ++c.high_degree_vertices;
  }
  for (auto e : norm) ++ecount[uf.find(e.u)];
  for (std::uint32_t v = 0; v < n; ++v) {
    if (uf.find(v) != v) continue;
    ++c.components;
    if (maxdeg[v] > 2) {
      ++c.other_components;
    } else if (ecount[v] == vcount[v]) {
      ++c.cycles[vcount[v]];
    } else {
      ++c.paths[ecount[v]];
    }
  }
  return c;
}

Adjacency::Adjacency(const std::vector<Edge>& edges, std::uint32_t n) : offset_(n + 1, 0) {
  for (auto e : edges) {
    if (e.u >= n || e.v >= n) throw std::out_of_range("Adjacency: vertex id out of range");
    ++offset_[e.u + 1];
    ++offset_[e.v + 1];
  }
  for (std::uint32_t v = 0; v < n; ++v) offset_[v + 1] += offset_[v];
  nbr_.resize(offset_[n]);
  std::vector<std::uint32_t> fill(offset_.begin(), offset_.end() - 1);
  for (auto e : edges) {
    nbr_[fill[e.u]++] = e.v;
    nbr_[fill[e.v]++] = e.u;
  }
}

}  // namespace ngclab

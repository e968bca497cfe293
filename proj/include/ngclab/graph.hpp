#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ngclab/gadgets.hpp"

namespace ngclab {

class UnionFind {
 public:
  explicit UnionFind(std::uint32_t n = 0);
  std::uint32_t find(std::uint32_t x);
  bool unite(std::uint32_t a, std::uint32_t b);
  std::uint32_t components() const { return components_; }
  std::uint32_t size() const { return static_cast<std::uint32_t>(parent_.size()); }
  std::uint32_t parent(std::uint32_t x) const { return parent_[x]; }
  // Rebuild from a raw parent array (union by size is not restored).
  static UnionFind from_parents(std::vector<std::uint32_t> parents);

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
  std::uint32_t components_ = 0;
};

// Component structure of a graph whose intended shape is disjoint paths and
// cycles. Lengths: a cycle is keyed by its vertex count, a path by its edge
// count (an isolated vertex is a path of length 0).
struct Census {
  std::uint64_t components = 0;
  std::map<std::uint32_t, std::uint64_t> cycles;
  std::map<std::uint32_t, std::uint64_t> paths;
  std::uint64_t other_components = 0;  // components with a vertex of degree > 2
  std::uint64_t high_degree_vertices = 0;
  std::uint64_t duplicate_edges = 0;
  std::uint64_t self_loops = 0;
  std::uint32_t max_degree = 0;

  std::uint64_t cycles_of(std::uint32_t len) const;
  std::uint64_t paths_of(std::uint32_t len) const;
  std::uint64_t cycle_count() const;
  std::uint64_t path_count() const;
  bool paths_and_cycles_only() const { return other_components == 0 && self_loops == 0; }
  // "cycles 2x7 paths 2x6"
  std::string summary() const;
};

// Exact census by union-find plus degree analysis; duplicate edges are
// counted once.
Census exact_census(const std::vector<Edge>& edges, std::uint32_t n);

// Compressed adjacency (multigraph semantics: each edge appears once per endpoint).
class Adjacency {
 public:
  Adjacency(const std::vector<Edge>& edges, std::uint32_t n);
  std::uint32_t vertex_count() const { return static_cast<std::uint32_t>(offset_.size() - 1); }
  std::uint32_t degree(std::uint32_t v) const { return offset_[v + 1] - offset_[v]; }
  std::uint32_t neighbor(std::uint32_t v, std::uint32_t i) const { return nbr_[offset_[v] + i]; }

 private:
  std::vector<std::uint32_t> offset_;
  std::vector<std::uint32_t> nbr_;
};

}  // namespace ngclab

#pragma once

// Group-layered graphs and the gadget algebra built on them.
//
// Group and layer indices in the public API are 1-based. Permutations and
// bit strings are stored 0-based: perm[j] is the image of group j+1, minus one.
// Vertex ids are 0-based: id = (layer-1)*2w + 2*(group-1) + side.

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace ngclab {

using Perm = std::vector<std::uint32_t>;
using Bits = std::vector<std::uint8_t>;

struct Edge {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

enum class Side : std::uint8_t { a = 0, b = 1 };

struct VertexRef {
  std::uint32_t layer = 1;
  std::uint32_t group = 1;
  Side side = Side::a;
  friend bool operator==(const VertexRef&, const VertexRef&) = default;
};

std::uint32_t vertex_id(const VertexRef& v, std::uint32_t width);
VertexRef vertex_ref(std::uint32_t id, std::uint32_t width);

// 1-based helpers: perm_1based({3,1,2,4}) and bits_from_string("1001").
Perm perm_1based(std::initializer_list<std::uint32_t> images);
Perm perm_1based(const std::vector<std::uint32_t>& images);
Bits bits_from_string(std::string_view s);
std::string bits_to_string(const Bits& b);
std::string perm_to_string_1based(const Perm& p);

bool is_permutation(const Perm& p);
Perm identity_perm(std::uint32_t n);
Perm inverse(const Perm& p);
// j -> second(first(j)).
Perm then(const Perm& first, const Perm& second);

// One perfect matching between consecutive layers: group j goes to group
// pi(j), straight if cross[j] == 0, swapped if cross[j] == 1.
struct MatchingSpec {
  Perm pi;
  Bits cross;
  std::uint32_t width() const { return static_cast<std::uint32_t>(pi.size()); }
  friend bool operator==(const MatchingSpec&, const MatchingSpec&) = default;
};

MatchingSpec make_xor_matching(const Bits& x);
MatchingSpec make_perm_matching(const Perm& sigma);

class GroupLayeredGraph {
 public:
  GroupLayeredGraph(std::uint32_t width, std::vector<MatchingSpec> matchings);
  explicit GroupLayeredGraph(const MatchingSpec& single);

  static GroupLayeredGraph identity(std::uint32_t width, std::uint32_t depth);

  std::uint32_t width() const { return width_; }
  std::uint32_t depth() const { return static_cast<std::uint32_t>(matchings_.size()) + 1; }
  std::uint32_t vertex_count() const { return 2 * width_ * depth(); }
  const std::vector<MatchingSpec>& matchings() const { return matchings_; }

  // Last-layer group reached from first-layer group j (1-based).
  std::uint32_t group_map(std::uint32_t j) const;
  // XOR of the cross bits along group j's path.
  int parity(std::uint32_t j) const;

  // 2w(d-1) edges ordered by layer, then group, then side. The edge with
  // index (i*w + g)*2 + s leaves vertex (layer i+1, group g+1, side s).
  std::vector<Edge> edges() const;

  friend bool operator==(const GroupLayeredGraph&, const GroupLayeredGraph&) = default;

 private:
  std::uint32_t width_;
  std::vector<MatchingSpec> matchings_;
};

GroupLayeredGraph concat(const GroupLayeredGraph& g1, const GroupLayeredGraph& g2);
GroupLayeredGraph make_block(const Bits& x, const Perm& sigma);
GroupLayeredGraph make_multi_block(const std::vector<Bits>& X, const std::vector<Perm>& Sigma);
GroupLayeredGraph make_perm_xor(const Perm& sigma, const Bits& x);
GroupLayeredGraph make_segment(const std::vector<Bits>& X, const std::vector<Perm>& Sigma);
// X and Sigma are s rows of t gadgets each.
GroupLayeredGraph make_multi_segment(const std::vector<std::vector<Bits>>& X,
                                     const std::vector<std::vector<Perm>>& Sigma);

enum class Form : std::uint8_t { block, segment };

// Construction witness. Gadgets are stored row-major: gadget (i, i') of a
// segment witness is at index (i-1)*t + (i'-1). Block witnesses have s == 1.
struct Witness {
  Form form = Form::block;
  std::uint32_t s = 1;
  std::uint32_t t = 0;
  std::vector<Bits> x;
  std::vector<Perm> sigma;

  std::uint32_t width() const { return sigma.empty() ? 0 : static_cast<std::uint32_t>(sigma[0].size()); }
  std::uint32_t depth() const;
  void check() const;
  friend bool operator==(const Witness&, const Witness&) = default;
};

GroupLayeredGraph build_graph(const Witness& w);
// XOR over gadgets of x^g_{sigma^g(j)}, j 1-based.
int witness_parity(const Witness& w, std::uint32_t j);

}  // namespace ngclab

#include "ngclab/gadgets.hpp"

#include <stdexcept>

namespace ngclab {

std::uint32_t vertex_id(const VertexRef& v, std::uint32_t width) {
  return (v.layer - 1) * 2 * width + 2 * (v.group - 1) + static_cast<std::uint32_t>(v.side);
}

VertexRef vertex_ref(std::uint32_t id, std::uint32_t width) {
  VertexRef v;
  v.layer = id / (2 * width) + 1;
  std::uint32_t r = id % (2 * width);
  v.group = r / 2 + 1;
  v.side = static_cast<Side>(r % 2);
  return v;
}

Perm perm_1based(const std::vector<std::uint32_t>& images) {
  Perm p;
  p.reserve(images.size());
  for (auto v : images) {
    if (v == 0) throw std::invalid_argument("perm_1based: images start at 1");
    p.push_back(v - 1);
  }
  if (!is_permutation(p)) throw std::invalid_argument("perm_1based: not a permutation");
  return p;
}

Perm perm_1based(std::initializer_list<std::uint32_t> images) {
  return perm_1based(std::vector<std::uint32_t>(images));
}

Bits bits_from_string(std::string_view s) {
  Bits b;
  b.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1') throw std::invalid_argument("bits_from_string: expected 0/1");
    b.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return b;
}

std::string bits_to_string(const Bits& b) {
  std::string s;
  s.reserve(b.size());
  for (auto v : b) s.push_back(v ? '1' : '0');
  return s;
}

std::string perm_to_string_1based(const Perm& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s.push_back(' ');
    s += std::to_string(p[i] + 1);
  }
  return s;
}

bool is_permutation(const Perm& p) {
  std::vector<char> seen(p.size(), 0);
  for (auto v : p) {
    if (v >= p.size() || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

Perm identity_perm(std::uint32_t n) {
  Perm p(n);
  for (std::uint32_t i = 0; i < n; ++i) p[i] = i;
  return p;
}

Perm inverse(const Perm& p) {
  Perm q(p.size());
  for (std::uint32_t i = 0; i < p.size(); ++i) q[p[i]] = i;
  return q;
}

Perm then(const Perm& first, const Perm& second) {
  if (first.size() != second.size()) throw std::invalid_argument("then: size mismatch");
  Perm r(first.size());
  for (std::size_t i = 0; i < first.size(); ++i) r[i] = second[first[i]];
  return r;
}

MatchingSpec make_xor_matching(const Bits& x) {
  for (auto v : x)
    if (v > 1) throw std::invalid_argument("make_xor_matching: bits must be 0/1");
  return MatchingSpec{identity_perm(static_cast<std::uint32_t>(x.size())), x};
}

MatchingSpec make_perm_matching(const Perm& sigma) {
  if (!is_permutation(sigma)) throw std::invalid_argument("make_perm_matching: not a bijection");
  return MatchingSpec{sigma, Bits(sigma.size(), 0)};
}

GroupLayeredGraph::GroupLayeredGraph(std::uint32_t width, std::vector<MatchingSpec> matchings)
    : width_(width), matchings_(std::move(matchings)) {
  if (width == 0) throw std::invalid_argument("GroupLayeredGraph: width must be positive");
  for (const auto& m : matchings_) {
    if (m.pi.size() != width || m.cross.size() != width)
      throw std::invalid_argument("GroupLayeredGraph: matching width mismatch");
    if (!is_permutation(m.pi)) throw std::invalid_argument("GroupLayeredGraph: pi is not a bijection");
    for (auto c : m.cross)
      if (c > 1) throw std::invalid_argument("GroupLayeredGraph: cross bits must be 0/1");
  }
}

GroupLayeredGraph::GroupLayeredGraph(const MatchingSpec& single)
    : GroupLayeredGraph(single.width(), std::vector<MatchingSpec>{single}) {}

GroupLayeredGraph GroupLayeredGraph::identity(std::uint32_t width, std::uint32_t depth) {
  if (depth == 0) throw std::invalid_argument("identity: depth must be positive");
  std::vector<MatchingSpec> ms(depth - 1, MatchingSpec{identity_perm(width), Bits(width, 0)});
  return GroupLayeredGraph(width, std::move(ms));
}

std::uint32_t GroupLayeredGraph::group_map(std::uint32_t j) const {
  if (j < 1 || j > width_) throw std::out_of_range("group_map: group index out of range");
  std::uint32_t g = j - 1;
  for (const auto& m : matchings_) g = m.pi[g];
  return g + 1;
}

int GroupLayeredGraph::parity(std::uint32_t j) const {
  if (j < 1 || j > width_) throw std::out_of_range("parity: group index out of range");
  std::uint32_t g = j - 1;
  int p = 0;
  for (const auto& m : matchings_) {
    p ^= m.cross[g];
    g = m.pi[g];
  }
  return p;
}

std::vector<Edge> GroupLayeredGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(2) * width_ * matchings_.size());
  const std::uint32_t layer_size = 2 * width_;
  for (std::uint32_t i = 0; i < matchings_.size(); ++i) {
    const auto& m = matchings_[i];
    const std::uint32_t base = i * layer_size;
    for (std::uint32_t g = 0; g < width_; ++g) {
      for (std::uint32_t s = 0; s < 2; ++s) {
        std::uint32_t u = base + 2 * g + s;
        std::uint32_t v = base + layer_size + 2 * m.pi[g] + (s ^ m.cross[g]);
        out.push_back({u, v});
      }
    }
  }
  return out;
}

GroupLayeredGraph concat(const GroupLayeredGraph& g1, const GroupLayeredGraph& g2) {
  if (g1.width() != g2.width()) throw std::invalid_argument("concat: width mismatch");
  std::vector<MatchingSpec> ms = g1.matchings();
  ms.insert(ms.end(), g2.matchings().begin(), g2.matchings().end());
  return GroupLayeredGraph(g1.width(), std::move(ms));
}

GroupLayeredGraph make_block(const Bits& x, const Perm& sigma) {
  if (x.size() != sigma.size()) throw std::invalid_argument("make_block: length mismatch");
  if (!is_permutation(sigma)) throw std::invalid_argument("make_block: sigma is not a permutation");
  auto w = static_cast<std::uint32_t>(x.size());
  return GroupLayeredGraph(
      w, {make_perm_matching(sigma), make_xor_matching(x), make_perm_matching(inverse(sigma))});
}

GroupLayeredGraph make_multi_block(const std::vector<Bits>& X, const std::vector<Perm>& Sigma) {
  if (X.empty() || X.size() != Sigma.size()) throw std::invalid_argument("make_multi_block: ragged input");
  GroupLayeredGraph g = make_block(X[0], Sigma[0]);
  for (std::size_t i = 1; i < X.size(); ++i) {
    if (X[i].size() != X[0].size()) throw std::invalid_argument("make_multi_block: ragged input");
    g = concat(g, make_block(X[i], Sigma[i]));
  }
  return g;
}

GroupLayeredGraph make_perm_xor(const Perm& sigma, const Bits& x) {
  if (x.size() != sigma.size()) throw std::invalid_argument("make_perm_xor: length mismatch");
  if (!is_permutation(sigma)) throw std::invalid_argument("make_perm_xor: sigma is not a permutation");
  return GroupLayeredGraph(static_cast<std::uint32_t>(x.size()),
                           {make_perm_matching(sigma), make_xor_matching(x)});
}

GroupLayeredGraph make_segment(const std::vector<Bits>& X, const std::vector<Perm>& Sigma) {
  if (X.empty() || X.size() != Sigma.size()) throw std::invalid_argument("make_segment: ragged input");
  const std::size_t w = X[0].size();
  for (std::size_t i = 0; i < X.size(); ++i)
    if (X[i].size() != w || Sigma[i].size() != w) throw std::invalid_argument("make_segment: ragged input");
  // Before the i-th XOR the groups are routed by sigma^i; each step undoes
  // the previous routing first.
  GroupLayeredGraph g = make_perm_xor(Sigma[0], X[0]);
  for (std::size_t i = 1; i < X.size(); ++i)
    g = concat(g, make_perm_xor(then(inverse(Sigma[i - 1]), Sigma[i]), X[i]));
  return concat(g, GroupLayeredGraph(make_perm_matching(inverse(Sigma.back()))));
}

GroupLayeredGraph make_multi_segment(const std::vector<std::vector<Bits>>& X,
                                     const std::vector<std::vector<Perm>>& Sigma) {
  if (X.empty() || X.size() != Sigma.size()) throw std::invalid_argument("make_multi_segment: ragged input");
  const std::size_t t = X[0].size();
  for (std::size_t i = 0; i < X.size(); ++i)
    if (X[i].size() != t || Sigma[i].size() != t)
      throw std::invalid_argument("make_multi_segment: input is not rectangular");
  GroupLayeredGraph g = make_segment(X[0], Sigma[0]);
  for (std::size_t i = 1; i < X.size(); ++i) g = concat(g, make_segment(X[i], Sigma[i]));
  return g;
}

std::uint32_t Witness::depth() const {
  return form == Form::block ? 3 * t + 1 : (2 * t + 1) * s + 1;
}

void Witness::check() const {
  if (t == 0 || s == 0) throw std::invalid_argument("witness: s and t must be positive");
  if (form == Form::block && s != 1) throw std::invalid_argument("witness: block form has s == 1");
  const std::size_t count = static_cast<std::size_t>(s) * t;
  if (x.size() != count || sigma.size() != count) throw std::invalid_argument("witness: gadget count mismatch");
  const std::size_t w = sigma[0].size();
  if (w == 0) throw std::invalid_argument("witness: empty gadget");
  for (std::size_t g = 0; g < count; ++g) {
    if (x[g].size() != w || sigma[g].size() != w) throw std::invalid_argument("witness: ragged gadgets");
    if (!is_permutation(sigma[g])) throw std::invalid_argument("witness: sigma is not a permutation");
  }
}

GroupLayeredGraph build_graph(const Witness& w) {
  w.check();
  if (w.form == Form::block) return make_multi_block(w.x, w.sigma);
  std::vector<std::vector<Bits>> X(w.s);
  std::vector<std::vector<Perm>> S(w.s);
  for (std::uint32_t i = 0; i < w.s; ++i) {
    X[i].assign(w.x.begin() + i * w.t, w.x.begin() + (i + 1) * w.t);
    S[i].assign(w.sigma.begin() + i * w.t, w.sigma.begin() + (i + 1) * w.t);
  }
  return make_multi_segment(X, S);
}

int witness_parity(const Witness& w, std::uint32_t j) {
  if (j < 1 || j > w.width()) throw std::out_of_range("witness_parity: group index out of range");
  int p = 0;
  for (std::size_t g = 0; g < w.sigma.size(); ++g) p ^= w.x[g][w.sigma[g][j - 1]];
  return p;
}

}  // namespace ngclab

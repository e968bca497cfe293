#include "ngclab/embedding.hpp"

#include <algorithm>
#include <stdexcept>

namespace ngclab {

namespace {

Embedding embed_gadgets(const Witness& dhx, std::uint32_t h_star, std::uint32_t m, const Seed& seed) {
  dhx.check();
  if (m == 0) throw std::invalid_argument("embed_dhx: m must be positive");
  if (dhx.width() != m + 1) throw std::invalid_argument("embed_dhx: DHX width must be m+1");
  if (h_star < 1 || h_star > m) throw std::invalid_argument("embed_dhx: h* must lie in [1, m]");
  const std::uint32_t count = dhx.s * dhx.t;
  const std::uint32_t w = 2 * m;
  Engine rng = seed.engine();

  EmbeddingRecord rec;
  rec.h_star = h_star;
  rec.m = m;
  rec.source = dhx;
  Witness& out = rec.assembled;
  out.form = dhx.form;
  out.s = dhx.s;
  out.t = dhx.t;
  out.sigma.assign(count, Perm(w, 0));
  out.x.assign(count, Bits(w, 0));

  // (i)-(iii): partial permutations on [m] \ {h*} and uniform bits on their images.
  for (std::uint32_t g = 0; g < count; ++g) {
    Perm images = random_permutation(w, rng);
    std::vector<std::uint32_t> fixed;
    std::uint32_t next = 0;
    for (std::uint32_t j = 1; j <= m; ++j) {
      if (j == h_star) continue;
      out.sigma[g][j - 1] = images[next++];
      fixed.push_back(out.sigma[g][j - 1] + 1);
    }
    std::sort(fixed.begin(), fixed.end());
    for (auto c : fixed) out.x[g][c - 1] = static_cast<std::uint8_t>(coin(rng));
    rec.fixed.push_back(std::move(fixed));
  }
  // Targets: 0 below h*, 1 above; forced on the last gadget, whose images of
  // the constrained groups are distinct.
  const std::uint32_t last = count - 1;
  for (std::uint32_t j = 1; j <= m; ++j) {
    if (j == h_star) continue;
    int acc = j < h_star ? 0 : 1;
    for (std::uint32_t g = 0; g < last; ++g) acc ^= out.x[g][out.sigma[g][j - 1]];
    out.x[last][out.sigma[last][j - 1]] = static_cast<std::uint8_t>(acc);
  }
  // (iv)-(v): lexicographic map onto the complement, then plant (Y, Phi).
  for (std::uint32_t g = 0; g < count; ++g) {
    std::vector<std::uint32_t> f;
    for (std::uint32_t c = 1; c <= w; ++c)
      if (!std::binary_search(rec.fixed[g].begin(), rec.fixed[g].end(), c)) f.push_back(c);
    if (f.size() != m + 1) throw std::logic_error("embed_dhx: complement has the wrong size");
    const Perm& phi = dhx.sigma[g];
    const Bits& y = dhx.x[g];
    out.sigma[g][h_star - 1] = f[phi[0]] - 1;
    for (std::uint32_t j = m + 1; j <= 2 * m; ++j) out.sigma[g][j - 1] = f[phi[j - m]] - 1;
    for (std::uint32_t j = 1; j <= m + 1; ++j) out.x[g][f[j - 1] - 1] = y[j - 1];
    rec.f.push_back(std::move(f));
  }
  out.check();
  GroupLayeredGraph graph = build_graph(out);
  return Embedding{std::move(graph), std::move(rec)};
}

}  // namespace

Embedding embed_dhx(const Witness& dhx, std::uint32_t h_star, std::uint32_t m, const Seed& seed) {
  if (dhx.form != Form::block) throw std::invalid_argument("embed_dhx: expected a block-form DHX witness");
  return embed_gadgets(dhx, h_star, m, seed);
}

Embedding embed_dhx_batched(const Witness& dhx, std::uint32_t h_star, std::uint32_t m, std::uint32_t s,
                            std::uint32_t t, const Seed& seed) {
  if (dhx.form != Form::segment || dhx.s != s || dhx.t != t)
    throw std::invalid_argument("embed_dhx_batched: expected an s x t segment-form DHX witness");
  return embed_gadgets(dhx, h_star, m, seed);
}

std::string witness_key(const Witness& w) {
  std::string key;
  for (std::size_t g = 0; g < w.sigma.size(); ++g) {
    if (g) key.push_back('|');
    key += bits_to_string(w.x[g]);
    key.push_back(':');
    key += perm_to_string_1based(w.sigma[g]);
  }
  return key;
}

}  // namespace ngclab

#pragma once

#include <cstdint>
#include <vector>

#include "ngclab/distribution_table.hpp"
#include "ngclab/gadgets.hpp"
#include "ngclab/rng.hpp"

namespace ngclab {

// Trace of one embedding run. Per gadget g: fixed[g] is the sorted image set
// of the partial permutation on [m] minus h*, and f[g][j-1] = f_g(j), the
// j-th smallest element of its complement. All values 1-based.
struct EmbeddingRecord {
  std::uint32_t h_star = 0;
  std::uint32_t m = 0;
  std::vector<std::vector<std::uint32_t>> fixed;
  std::vector<std::vector<std::uint32_t>> f;
  Witness assembled;
  Witness source;
};

struct Embedding {
  GroupLayeredGraph graph;
  EmbeddingRecord record;
};

// Plants a width-(m+1) DHX witness into a width-2m hybrid graph around
// group h*. Groups below h* get parity 0, groups in (h*, m] parity 1, and
// group h* inherits the DHX answer.
Embedding embed_dhx(const Witness& dhx, std::uint32_t h_star, std::uint32_t m, const Seed& seed);
Embedding embed_dhx_batched(const Witness& dhx, std::uint32_t h_star, std::uint32_t m, std::uint32_t s,
                            std::uint32_t t, const Seed& seed);

// Canonical text key of a witness, used as a distribution outcome.
std::string witness_key(const Witness& w);

}  // namespace ngclab

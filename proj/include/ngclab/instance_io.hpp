#pragma once

// Line-oriented instance files:
//
//   ngc-lab v1
//   param n=<int> k=<int> w=<int> d=<int> theta=<0|1|?> m=<int> form=<block|segment>
//   # shape s=<int> t=<int> pad=<int> gadget_edges=<int> aux_edges=<int>
//   e <u> <v> [w=<int>] [b=<int>]
//   x <i> <bits>          p <i> <perm>          (block witness, 1-based i)
//   x <i> <i'> <bits>     p <i> <i'> <perm>     (segment witness)
//
// Vertex ids are the 0-based canonical ids; permutations are written
// 1-based. Lines starting with '#' are comments; the "# shape" comment is
// read back when present so round trips are lossless.

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "ngclab/distributions.hpp"

namespace ngclab {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// reveal: include theta and the witness.
std::string write_instance(const NgcInstance& instance, bool reveal);
void write_instance_file(const std::string& path, const NgcInstance& instance, bool reveal);

NgcInstance read_instance(std::istream& in);
NgcInstance read_instance_string(const std::string& text);
NgcInstance read_instance_file(const std::string& path);

}  // namespace ngclab

#include "ngclab/instance_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace ngclab {

std::string write_instance(const NgcInstance& inst, bool reveal) {
  std::ostringstream os;
  os << "ngc-lab v1\n";
  os << "param n=" << inst.n << " k=" << inst.k << " w=" << inst.width << " d=" << inst.depth() << " theta=";
  if (reveal && inst.theta)
    os << *inst.theta;
  else
    os << '?';
  os << " m=" << inst.m << " form=" << (inst.form == Form::block ? "block" : "segment") << "\n";
  os << "# shape s=" << inst.s << " t=" << inst.t << " pad=" << inst.pad_layers
     << " gadget_edges=" << inst.gadget_edge_count << " aux_edges=" << inst.aux_edge_count << "\n";
  for (std::size_t e = 0; e < inst.edges.size(); ++e) {
    os << "e " << inst.edges[e].u << ' ' << inst.edges[e].v;
    if (inst.weighted()) os << " w=" << inst.weights[e];
    if (inst.batched()) os << " b=" << inst.batches[e];
    os << '\n';
  }
  if (reveal && inst.witness) {
    const Witness& w = *inst.witness;
    for (std::uint32_t g = 0; g < w.s * w.t; ++g) {
      std::string idx = inst.form == Form::block ? std::to_string(g + 1)
                                                 : std::to_string(g / w.t + 1) + " " + std::to_string(g % w.t + 1);
      os << "x " << idx << ' ' << bits_to_string(w.x[g]) << '\n';
      os << "p " << idx << ' ' << perm_to_string_1based(w.sigma[g]) << '\n';
    }
  }
  return os.str();
}

void write_instance_file(const std::string& path, const NgcInstance& instance, bool reveal) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << write_instance(instance, reveal);
  if (!out) throw std::runtime_error("write to " + path + " failed");
}

namespace {

std::map<std::string, std::string> key_values(std::istringstream& ls, int line_no) {
  std::map<std::string, std::string> kv;
  std::string tok;
  while (ls >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw FormatError("line " + std::to_string(line_no) + ": expected key=value");
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return kv;
}

std::uint64_t to_uint(const std::string& s, int line_no) {
  try {
    std::size_t pos = 0;
    unsigned long long v = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw FormatError("line " + std::to_string(line_no) + ": bad integer '" + s + "'");
  }
}

std::int64_t to_int(const std::string& s, int line_no) {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw FormatError("line " + std::to_string(line_no) + ": bad integer '" + s + "'");
  }
}

}  // namespace

NgcInstance read_instance(std::istream& in) {
  NgcInstance inst;
  std::string line;
  int line_no = 0;
  if (!std::getline(in, line) || line != "ngc-lab v1") throw FormatError("line 1: expected 'ngc-lab v1'");
  ++line_no;
  bool have_param = false, have_shape = false, any_weight = false, any_batch = false;
  std::map<std::uint32_t, Bits> xs;
  std::map<std::uint32_t, Perm> ps;
  std::uint32_t d = 0;
  std::uint64_t shape_gadget = 0, shape_aux = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "#") {
      std::string what;
      ls >> what;
      if (what != "shape") continue;
      auto kv = key_values(ls, line_no);
      inst.s = static_cast<std::uint32_t>(to_uint(kv.at("s"), line_no));
      inst.t = static_cast<std::uint32_t>(to_uint(kv.at("t"), line_no));
      inst.pad_layers = static_cast<std::uint32_t>(to_uint(kv.at("pad"), line_no));
      shape_gadget = to_uint(kv.at("gadget_edges"), line_no);
      shape_aux = to_uint(kv.at("aux_edges"), line_no);
      have_shape = true;
    } else if (!tag.empty() && tag[0] == '#') {
      continue;
    } else if (tag == "param") {
      auto kv = key_values(ls, line_no);
      for (const char* key : {"n", "k", "w", "d", "theta", "m", "form"})
        if (!kv.count(key)) throw FormatError("line " + std::to_string(line_no) + ": param line lacks " + key);
      inst.n = static_cast<std::uint32_t>(to_uint(kv["n"], line_no));
      inst.k = static_cast<std::uint32_t>(to_uint(kv["k"], line_no));
      inst.width = static_cast<std::uint32_t>(to_uint(kv["w"], line_no));
      d = static_cast<std::uint32_t>(to_uint(kv["d"], line_no));
      inst.m = static_cast<std::uint32_t>(to_uint(kv["m"], line_no));
      if (kv["theta"] == "0" || kv["theta"] == "1")
        inst.theta = kv["theta"] == "1";
      else if (kv["theta"] != "?")
        throw FormatError("line " + std::to_string(line_no) + ": theta must be 0, 1 or ?");
      if (kv["form"] == "block")
        inst.form = Form::block;
      else if (kv["form"] == "segment")
        inst.form = Form::segment;
      else
        throw FormatError("line " + std::to_string(line_no) + ": form must be block or segment");
      if (d != inst.k) throw FormatError("line " + std::to_string(line_no) + ": d must equal k");
      if (inst.width == 0 || inst.n != 2 * inst.width * d)
        throw FormatError("line " + std::to_string(line_no) + ": n must equal 2 w d");
      have_param = true;
    } else if (tag == "e") {
      if (!have_param) throw FormatError("line " + std::to_string(line_no) + ": edge before param line");
      std::string su, sv, tok;
      if (!(ls >> su >> sv)) throw FormatError("line " + std::to_string(line_no) + ": edge needs two endpoints");
      Edge e{static_cast<std::uint32_t>(to_uint(su, line_no)), static_cast<std::uint32_t>(to_uint(sv, line_no))};
      if (e.u >= inst.n || e.v >= inst.n) throw FormatError("line " + std::to_string(line_no) + ": vertex id out of range");
      std::optional<std::int64_t> wt;
      std::optional<std::uint32_t> bt;
      while (ls >> tok) {
        if (tok.rfind("w=", 0) == 0)
          wt = to_int(tok.substr(2), line_no);
        else if (tok.rfind("b=", 0) == 0)
          bt = static_cast<std::uint32_t>(to_uint(tok.substr(2), line_no));
        else
          throw FormatError("line " + std::to_string(line_no) + ": unknown edge attribute '" + tok + "'");
      }
      const bool first = inst.edges.empty();
      if (first) {
        any_weight = wt.has_value();
        any_batch = bt.has_value();
      } else if (any_weight != wt.has_value() || any_batch != bt.has_value()) {
        throw FormatError("line " + std::to_string(line_no) + ": edge attributes must be given on every edge or none");
      }
      inst.edges.push_back(e);
      if (wt) inst.weights.push_back(*wt);
      if (bt) inst.batches.push_back(*bt);
    } else if (tag == "x" || tag == "p") {
      if (!have_param) throw FormatError("line " + std::to_string(line_no) + ": witness before param line");
      std::uint32_t g;
      std::string rest;
      if (inst.form == Form::block) {
        std::string si;
        ls >> si;
        g = static_cast<std::uint32_t>(to_uint(si, line_no)) - 1;
      } else {
        if (!have_shape) throw FormatError("line " + std::to_string(line_no) + ": segment witness needs the shape line");
        std::string si, sj;
        ls >> si >> sj;
        auto i = to_uint(si, line_no), j = to_uint(sj, line_no);
        if (i < 1 || j < 1 || j > inst.t) throw FormatError("line " + std::to_string(line_no) + ": gadget index out of range");
        g = static_cast<std::uint32_t>((i - 1) * inst.t + (j - 1));
      }
      try {
        if (tag == "x") {
          ls >> rest;
          xs[g] = bits_from_string(rest);
        } else {
          std::vector<std::uint32_t> images;
          std::string tok;
          while (ls >> tok) images.push_back(static_cast<std::uint32_t>(to_uint(tok, line_no)));
          ps[g] = perm_1based(images);
        }
      } catch (const std::invalid_argument& e) {
        throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
      }
    } else {
      throw FormatError("line " + std::to_string(line_no) + ": unknown record '" + tag + "'");
    }
  }
  if (!have_param) throw FormatError("missing param line");

  if (have_shape) {
    inst.gadget_edge_count = shape_gadget;
    inst.aux_edge_count = shape_aux;
  } else {
    // Arbitrary edge lists may use tiny depths; only real NGC shapes get a t.
    const bool shaped = inst.form == Form::block && inst.k >= 4;
    inst.pad_layers = shaped ? padding_for(inst.k) : 0;
    if (shaped) inst.t = (inst.k - inst.pad_layers - 1) / 3;
    inst.gadget_edge_count = std::min<std::size_t>(inst.edges.size(), 2ull * inst.width * (inst.k - 1));
    inst.aux_edge_count = std::min<std::size_t>(inst.edges.size() - inst.gadget_edge_count, 2ull * inst.m);
  }
  // Shape counts are advisory: a file with edges removed still parses and
  // is then judged by its census.
  bool short_file = inst.gadget_edge_count + inst.aux_edge_count > inst.edges.size();
  if (short_file) {
    inst.aux_edge_count = std::min(inst.aux_edge_count, inst.edges.size());
    inst.gadget_edge_count = inst.edges.size() - inst.aux_edge_count;
  }

  if (!xs.empty() || !ps.empty()) {
    Witness w;
    w.form = inst.form;
    w.s = inst.form == Form::block ? 1 : inst.s;
    w.t = inst.form == Form::block ? static_cast<std::uint32_t>(xs.size()) : inst.t;
    const std::uint32_t count = w.s * w.t;
    if (xs.size() != count || ps.size() != count) throw FormatError("witness is incomplete");
    for (std::uint32_t g = 0; g < count; ++g) {
      if (!xs.count(g) || !ps.count(g)) throw FormatError("witness is incomplete");
      w.x.push_back(xs[g]);
      w.sigma.push_back(ps[g]);
    }
    try {
      w.check();
    } catch (const std::invalid_argument& e) {
      throw FormatError(std::string("bad witness: ") + e.what());
    }
    if (w.width() != inst.width) throw FormatError("witness width does not match w");
    GroupLayeredGraph g = build_graph(w);
    if (g.depth() + inst.pad_layers != inst.k) throw FormatError("witness depth does not match k");
    if (inst.pad_layers > 0) g = concat(GroupLayeredGraph::identity(inst.width, inst.pad_layers + 1), g);
    auto ge = g.edges();
    if (short_file || ge.size() != inst.gadget_edge_count ||
        !std::equal(ge.begin(), ge.end(), inst.edges.begin()))
      return inst;  // stale witness: keep the edges, drop the witness
    inst.t = w.t;
    inst.s = w.s;
    inst.witness = std::move(w);
    inst.graph = std::move(g);
  }
  return inst;
}

NgcInstance read_instance_string(const std::string& text) {
  std::istringstream in(text);
  return read_instance(in);
}

NgcInstance read_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_instance(in);
}

}  // namespace ngclab

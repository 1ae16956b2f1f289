#include "hypercontagion/hypergraph.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

namespace hc {

namespace {

std::span<const NodeId> chunk(const std::vector<NodeId>& flat, std::size_t stride,
                              std::size_t index) {
  return {flat.data() + index * stride, stride};
}

/// Sorts the stride-sized chunks of `flat` lexicographically and rejects
/// duplicates. This is the canonical storage order.
void canonicalize_order(std::vector<NodeId>& flat, int order) {
  const std::size_t stride = static_cast<std::size_t>(order) + 1;
  const std::size_t count = flat.size() / stride;
  if (count < 2) return;

  std::vector<std::uint32_t> perm(count);
  std::iota(perm.begin(), perm.end(), 0u);
  std::sort(perm.begin(), perm.end(), [&](std::uint32_t a, std::uint32_t b) {
    const auto ea = chunk(flat, stride, a);
    const auto eb = chunk(flat, stride, b);
    return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
  });

  std::vector<NodeId> sorted;
  sorted.reserve(flat.size());
  for (std::uint32_t idx : perm) {
    const auto e = chunk(flat, stride, idx);
    sorted.insert(sorted.end(), e.begin(), e.end());
  }
  flat = std::move(sorted);

  for (std::size_t i = 1; i < count; ++i) {
    const auto prev = chunk(flat, stride, i - 1);
    const auto cur = chunk(flat, stride, i);
    if (std::equal(prev.begin(), prev.end(), cur.begin())) {
      std::ostringstream msg;
      msg << "duplicate order-" << order << " hyperedge {";
      for (std::size_t j = 0; j < stride; ++j) msg << (j ? " " : "") << cur[j];
      msg << "}";
      throw std::invalid_argument(msg.str());
    }
  }
}

}  // namespace

std::size_t Hypergraph::total_edges() const {
  std::size_t total = 0;
  for (int k = 1; k <= max_order(); ++k) total += edge_count(k);
  return total;
}

std::vector<std::size_t> Hypergraph::hyperedge_counts() const {
  std::vector<std::size_t> counts(max_order());
  for (int k = 1; k <= max_order(); ++k) counts[k - 1] = edge_count(k);
  return counts;
}

Hypergraph::EdgeRef Hypergraph::edge_at(std::size_t flat_index) const {
  for (int k = 1; k <= max_order(); ++k) {
    const std::size_t count = edge_count(k);
    if (flat_index < count) return {k, edge(k, flat_index)};
    flat_index -= count;
  }
  throw std::out_of_range("Hypergraph::edge_at: index past total_edges()");
}

HypergraphBuilder::HypergraphBuilder(std::uint32_t n_nodes, int max_order) {
  if (max_order < 1) throw std::invalid_argument("HypergraphBuilder: max_order must be >= 1");
  g_.n_nodes_ = n_nodes;
  g_.flat_.resize(max_order);
}

void HypergraphBuilder::add_edge(std::span<const NodeId> members) {
  std::vector<NodeId> sorted(members.begin(), members.end());
  std::sort(sorted.begin(), sorted.end());
  add_sorted_edge(sorted);
}

void HypergraphBuilder::add_edge(std::initializer_list<NodeId> members) {
  add_edge(std::span<const NodeId>(members.begin(), members.size()));
}

void HypergraphBuilder::add_sorted_edge(std::span<const NodeId> members) {
  const int order = static_cast<int>(members.size()) - 1;
  if (order < 1) throw std::invalid_argument("hyperedge needs at least 2 members");
  if (order > g_.max_order())
    throw std::invalid_argument("hyperedge order " + std::to_string(order) +
                                " exceeds declared max order " +
                                std::to_string(g_.max_order()));
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i] >= g_.n_nodes_)
      throw std::invalid_argument("node index " + std::to_string(members[i]) +
                                  " out of range [0, " + std::to_string(g_.n_nodes_) + ")");
    if (i > 0 && members[i] <= members[i - 1])
      throw std::invalid_argument("hyperedge members must be distinct and sorted");
  }
  auto& flat = g_.flat_[order - 1];
  flat.insert(flat.end(), members.begin(), members.end());
}

Hypergraph HypergraphBuilder::build() {
  for (int k = 1; k <= g_.max_order(); ++k) canonicalize_order(g_.flat_[k - 1], k);
  return std::move(g_);
}

// Generators -------------------------------------------------------------------

Hypergraph generate_complete(std::uint32_t n) {
  if (n < 2) throw std::invalid_argument("generate_complete: need n >= 2 nodes");
  HypergraphBuilder builder(n, 1);
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) builder.add_sorted_edge(std::array<NodeId, 2>{i, j});
  return builder.build();
}

Hypergraph generate_er(std::uint32_t n, double p, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("generate_er: need n >= 1 nodes");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("generate_er: connection probability must lie in [0, 1]");
  Rng rng = make_rng(seed, 0, kChannelNetwork);
  HypergraphBuilder builder(n, 1);
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j)
      if (uniform_double(rng) < p) builder.add_sorted_edge(std::array<NodeId, 2>{i, j});
  return builder.build();
}

Hypergraph generate_triangular_lattice(int rows, int cols, bool periodic) {
  if (rows < 3 || cols < 3)
    throw std::invalid_argument("generate_triangular_lattice: need rows, cols >= 3");
  const auto n = static_cast<std::uint32_t>(rows) * static_cast<std::uint32_t>(cols);
  HypergraphBuilder builder(n, 1);
  const auto id = [cols](int r, int c) {
    return static_cast<NodeId>(r * cols + c);
  };
  // Forward half of the 6-neighbor stencil; each undirected edge emitted once.
  const int dr[3] = {0, 1, 1};
  const int dc[3] = {1, 0, -1};
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      for (int d = 0; d < 3; ++d) {
        int rr = r + dr[d];
        int cc = c + dc[d];
        if (periodic) {
          rr = (rr + rows) % rows;
          cc = (cc + cols) % cols;
        } else if (rr < 0 || rr >= rows || cc < 0 || cc >= cols) {
          continue;
        }
        builder.add_edge({id(r, c), id(rr, cc)});
      }
    }
  }
  return builder.build();
}

namespace {

/// Row-bitset adjacency for O(1) membership tests during clique extension.
class AdjacencyBits {
 public:
  explicit AdjacencyBits(std::uint32_t n)
      : words_((n + 63) / 64), bits_(static_cast<std::size_t>(words_) * n, 0) {}

  void set(NodeId u, NodeId v) {
    bits_[static_cast<std::size_t>(u) * words_ + v / 64] |= 1ull << (v % 64);
  }
  bool test(NodeId u, NodeId v) const {
    return (bits_[static_cast<std::size_t>(u) * words_ + v / 64] >> (v % 64)) & 1u;
  }

 private:
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

/// Depth-first clique extension: a clique {v0 < ... < vd} is grown by the
/// candidates adjacent to every member and greater than vd, so each clique is
/// emitted exactly once with ascending members.
struct CliqueLister {
  int max_size;
  const AdjacencyBits& adj;
  HypergraphBuilder& out;
  std::vector<NodeId> clique;
  std::vector<std::vector<NodeId>> cand;  // candidate sets per depth

  void extend(int depth) {
    for (std::size_t i = 0; i < cand[depth].size(); ++i) {
      const NodeId u = cand[depth][i];
      clique.push_back(u);
      if (clique.size() >= 2) out.add_sorted_edge(clique);
      if (static_cast<int>(clique.size()) < max_size) {
        auto& next = cand[depth + 1];
        next.clear();
        for (std::size_t j = i + 1; j < cand[depth].size(); ++j)
          if (adj.test(u, cand[depth][j])) next.push_back(cand[depth][j]);
        if (!next.empty()) extend(depth + 1);
      }
      clique.pop_back();
    }
  }
};

}  // namespace

Hypergraph clique_complex(const Hypergraph& g, int max_order) {
  if (max_order < 1) throw std::invalid_argument("clique_complex: max_order must be >= 1");
  for (int k = 2; k <= g.max_order(); ++k)
    if (g.edge_count(k) > 0)
      throw std::invalid_argument("clique_complex: input must contain only order-1 edges");

  const std::uint32_t n = g.n_nodes();
  AdjacencyBits adj(n);
  std::vector<std::vector<NodeId>> above(n);  // neighbors with higher index
  if (g.max_order() >= 1) {
    const auto& flat = g.flat(1);
    for (std::size_t i = 0; i < flat.size(); i += 2) {
      const NodeId a = flat[i], b = flat[i + 1];
      adj.set(a, b);
      adj.set(b, a);
      above[a].push_back(b);
    }
  }
  for (auto& v : above) std::sort(v.begin(), v.end());

  HypergraphBuilder builder(n, max_order);
  CliqueLister lister{max_order + 1, adj, builder, {}, {}};
  lister.clique.reserve(max_order + 1);
  lister.cand.resize(max_order + 2);
  for (NodeId v = 0; v < n; ++v) {
    if (above[v].empty()) continue;
    lister.clique.assign(1, v);
    lister.cand[1] = above[v];
    lister.extend(1);
  }
  return builder.build();
}

Hypergraph order1_restriction(const Hypergraph& g) {
  HypergraphBuilder builder(g.n_nodes(), 1);
  if (g.max_order() >= 1) {
    const auto& flat = g.flat(1);
    for (std::size_t i = 0; i < flat.size(); i += 2)
      builder.add_sorted_edge(std::array<NodeId, 2>{flat[i], flat[i + 1]});
  }
  return builder.build();
}

// Serialization ------------------------------------------------------------------

void save_hypergraph(const Hypergraph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_hypergraph: cannot open " + path.string());
  out << "# hypercontagion hypergraph\n";
  out << g.n_nodes() << ' ' << g.max_order() << '\n';
  for (int k = 1; k <= g.max_order(); ++k) {
    for (std::size_t i = 0; i < g.edge_count(k); ++i) {
      const auto e = g.edge(k, i);
      for (std::size_t j = 0; j < e.size(); ++j) out << (j ? " " : "") << e[j];
      out << '\n';
    }
  }
  out.flush();
  if (!out) throw std::runtime_error("save_hypergraph: write failed for " + path.string());
}

namespace {

bool parse_fields(const std::string& line, std::vector<std::uint64_t>& fields) {
  fields.clear();
  std::istringstream ss(line);
  std::string token;
  while (ss >> token) {
    std::uint64_t value = 0;
    std::size_t pos = 0;
    try {
      value = std::stoull(token, &pos);
    } catch (const std::exception&) {
      return false;
    }
    if (pos != token.size() || token[0] == '-') return false;
    fields.push_back(value);
  }
  return true;
}

}  // namespace

Hypergraph load_hypergraph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_hypergraph: cannot open " + path.string());

  const auto fail = [&](int line_no, const std::string& what) {
    throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": " + what);
  };

  std::string line;
  std::vector<std::uint64_t> fields;
  int line_no = 0;
  bool have_header = false;
  std::uint64_t n_nodes = 0, max_order = 0;
  std::vector<NodeId> members;
  std::optional<HypergraphBuilder> builder;

  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (!parse_fields(line, fields)) fail(line_no, "expected whitespace-separated non-negative integers");

    if (!have_header) {
      if (fields.size() != 2) fail(line_no, "header must be '<n_nodes> <max_order>'");
      n_nodes = fields[0];
      max_order = fields[1];
      if (n_nodes == 0 || n_nodes > 0xffffffffull) fail(line_no, "node count out of range");
      if (max_order < 1 || max_order > 64) fail(line_no, "max order out of range");
      builder.emplace(static_cast<std::uint32_t>(n_nodes), static_cast<int>(max_order));
      have_header = true;
      continue;
    }

    if (fields.size() < 2) fail(line_no, "hyperedge needs at least 2 members");
    members.clear();
    for (std::uint64_t v : fields) {
      if (v >= n_nodes)
        fail(line_no, "node index " + std::to_string(v) + " out of range [0, " +
                          std::to_string(n_nodes) + ")");
      members.push_back(static_cast<NodeId>(v));
    }
    for (std::size_t i = 1; i < members.size(); ++i)
      if (members[i] <= members[i - 1])
        fail(line_no, "hyperedge members must be strictly ascending");
    if (members.size() > max_order + 1)
      fail(line_no, "hyperedge order exceeds declared max order");
    builder->add_sorted_edge(members);
  }
  if (in.bad()) throw std::runtime_error("load_hypergraph: read failed for " + path.string());
  if (!have_header) throw std::runtime_error(path.string() + ": missing header line");
  return builder->build();
}

}  // namespace hc

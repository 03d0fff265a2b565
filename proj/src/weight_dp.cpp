#include "forestlab/weight_dp.hpp"

#include <cmath>
#include <iostream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "forestlab/shapes.hpp"

namespace forestlab {

namespace {

constexpr double kGeometricSlack = 1e-13;

void check_bound(std::size_t eps_bound) {
  if (eps_bound < 1 || eps_bound > kShapeGenerationLimit)
    throw std::invalid_argument("eps_bound must lie in 1.." + std::to_string(kShapeGenerationLimit));
}

void note_missing_shape(const std::string& code) {
  static std::once_flag once;
  std::call_once(once, [&] {
    std::cerr << "note: weight vector has no entry for shape " << code << "; missing shapes weigh 0\n";
  });
}

}  // namespace

double WeightVector::weight(const std::string& code) const {
  const auto it = weights.find(code);
  return it == weights.end() ? 0.0 : it->second;
}

void WeightVector::validate() const {
  check_bound(eps_bound);
  for (const auto& [code, w] : weights) {
    const auto parsed = UnrootedTreeCode::parse(code);
    if (parsed.code != code) throw std::invalid_argument("weight key is not canonical: " + code);
    if (parsed.size > eps_bound)
      throw std::invalid_argument("weight key " + code + " exceeds eps_bound " + std::to_string(eps_bound));
    if (!std::isfinite(w) || w < 0) throw std::invalid_argument("weight for " + code + " must be finite and >= 0");
  }
}

bool WeightVector::is_geometric(double* base) const {
  const double b = x();
  for (std::size_t s = 1; s <= eps_bound; ++s) {
    const double expect = std::pow(b, static_cast<double>(s));
    for (const auto& u : unrooted_trees_of_size(s))
      if (std::fabs(weight(u.code) - expect) > kGeometricSlack * expect) return false;
  }
  if (base) *base = b;
  return true;
}

WeightVector WeightVector::geometric(std::size_t eps_bound, double x) {
  check_bound(eps_bound);
  if (!std::isfinite(x) || x < 0) throw std::invalid_argument("geometric weights need a finite x >= 0");
  WeightVector z;
  z.eps_bound = eps_bound;
  for (std::size_t s = 1; s <= eps_bound; ++s)
    for (const auto& u : unrooted_trees_of_size(s)) z.weights[u.code] = std::pow(x, static_cast<double>(s));
  return z;
}

WeightVector WeightVector::extremal(std::size_t eps_bound) {
  check_bound(eps_bound);
  WeightVector z;
  z.eps_bound = eps_bound;
  for (std::size_t s = 1; s <= eps_bound; ++s)
    for (const auto& u : unrooted_trees_of_size(s)) z.weights[u.code] = std::exp(-static_cast<double>(s));
  return z;
}

WeightVector WeightVector::constant(std::size_t eps_bound, double value) {
  check_bound(eps_bound);
  WeightVector z;
  z.eps_bound = eps_bound;
  for (std::size_t s = 1; s <= eps_bound; ++s)
    for (const auto& u : unrooted_trees_of_size(s)) z.weights[u.code] = value;
  z.validate();
  return z;
}

WeightVector WeightVector::random(std::size_t eps_bound, Rng& rng, double lo, double hi) {
  check_bound(eps_bound);
  if (!(lo >= 0 && hi >= lo)) throw std::invalid_argument("random weights need 0 <= lo <= hi");
  WeightVector z;
  z.eps_bound = eps_bound;
  for (std::size_t s = 1; s <= eps_bound; ++s)
    for (const auto& u : unrooted_trees_of_size(s)) z.weights[u.code] = lo + (hi - lo) * rng.unit();
  return z;
}

void write_weight_csv(std::ostream& out, const WeightVector& z) {
  out << "# eps_bound=" << z.eps_bound << "\nshape,weight\n";
  std::ostringstream line;
  line.precision(17);
  for (const auto& [code, w] : z.weights) {
    line.str("");
    line << code << ',' << w << '\n';
    out << line.str();
  }
}

WeightVector read_weight_csv(std::istream& in) {
  WeightVector z;
  std::size_t declared = 0, largest = 0;
  bool header = false;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.rfind("# eps_bound=", 0) == 0) {
      declared = std::stoul(line.substr(12));
      continue;
    }
    if (line.front() == '#') continue;
    if (!header) {
      header = true;
      if (line == "shape,weight") continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("weight CSV line without a comma: " + line);
    const auto code = UnrootedTreeCode::parse(line.substr(0, comma));
    std::size_t used = 0;
    const std::string value = line.substr(comma + 1);
    const double w = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("bad weight value: " + value);
    if (!z.weights.emplace(code.code, w).second) throw std::invalid_argument("duplicate weight for " + code.code);
    largest = std::max(largest, code.size);
  }
  z.eps_bound = declared ? declared : std::max<std::size_t>(largest, 1);
  z.validate();
  return z;
}

DecompositionValue omega(const LabeledGraph& tree, const WeightVector& z) {
  const std::size_t n = tree.order();
  if (n == 0) throw std::invalid_argument("omega: empty tree");
  if (n > kOmegaTreeCap)
    throw std::invalid_argument("omega: tree has " + std::to_string(n) + " vertices, cap is " +
                                std::to_string(kOmegaTreeCap));
  if (tree.edge_count() + 1 != n || components(tree).count() != 1)
    throw std::invalid_argument("omega: input is not a tree");

  const auto& edges = tree.edges();
  const std::size_t m = edges.size();
  std::unordered_map<std::uint32_t, double> piece_weight;  // vertex bitmask -> z^piece
  auto weight_of = [&](std::uint32_t mask) {
    auto it = piece_weight.find(mask);
    if (it != piece_weight.end()) return it->second;
    std::vector<Vertex> vs;
    for (Vertex v = 1; v <= n; ++v)
      if (mask >> (v - 1) & 1U) vs.push_back(v);
    const auto code = canon_unrooted(induced_subgraph(tree, vs).graph).code;
    if (!z.weights.count(code)) note_missing_shape(code);
    const double w = z.weight(code);
    piece_weight.emplace(mask, w);
    return w;
  };

  DecompositionValue best;
  bool found = false;
  std::uint32_t best_kept = 0;
  std::vector<Vertex> parent(n + 1);
  std::vector<std::uint32_t> piece(n + 1);
  for (std::uint32_t kept = 0; kept < (1U << m); ++kept) {
    std::iota(parent.begin(), parent.end(), Vertex{0});
    auto find = [&](Vertex v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    for (std::size_t i = 0; i < m; ++i)
      if (kept >> i & 1U) parent[find(edges[i].u)] = find(edges[i].v);
    std::fill(piece.begin(), piece.end(), 0U);
    for (Vertex v = 1; v <= n; ++v) piece[find(v)] |= 1U << (v - 1);
    double product = 1;
    bool admissible = true;
    for (Vertex v = 1; v <= n && admissible; ++v) {
      if (!piece[v]) continue;
      if (static_cast<std::size_t>(__builtin_popcount(piece[v])) > z.eps_bound) {
        admissible = false;
        break;
      }
      product *= weight_of(piece[v]);
    }
    if (!admissible) continue;
    if (!found || product > best.value) {
      found = true;
      best.value = product;
      best_kept = kept;
    }
  }
  if (!found) throw std::logic_error("omega: singleton partition must always be admissible");

  if (best.value > 0) {
    std::iota(parent.begin(), parent.end(), Vertex{0});
    auto find = [&](Vertex v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    for (std::size_t i = 0; i < m; ++i)
      if (best_kept >> i & 1U) parent[find(edges[i].u)] = find(edges[i].v);
    std::map<Vertex, std::vector<Vertex>> groups;
    for (Vertex v = 1; v <= n; ++v) groups[find(v)].push_back(v);
    for (auto& [r, vs] : groups) best.witness.push_back(std::move(vs));
    std::sort(best.witness.begin(), best.witness.end());
  }
  return best;
}

YKind parse_ykind(const std::string& name) {
  if (name == "rooted") return YKind::rooted;
  if (name == "unrooted") return YKind::unrooted;
  if (name == "edge-rooted") return YKind::edge_rooted;
  throw std::invalid_argument("unknown partition function '" + name + "' (expected rooted, unrooted, edge-rooted)");
}

std::vector<EdgeRooting> edge_rootings(const LabeledGraph& tree) {
  std::map<std::string, EdgeRooting> seen;
  for (const auto& e : tree.edges()) {
    const auto cut = remove_edge(tree, e.u, e.v);
    auto a = canon_rooted(cut, e.u);
    auto b = canon_rooted(cut, e.v);
    if (b.code < a.code) std::swap(a, b);
    const std::string key = a.code + "|" + b.code;
    auto [it, fresh] = seen.try_emplace(key, EdgeRooting{key, a, b, 0});
    ++it->second.orbit_size;
  }
  std::vector<EdgeRooting> out;
  for (auto& [k, e] : seen) out.push_back(std::move(e));
  return out;
}

BigCount aut_edge(const EdgeRooting& e) {
  BigCount a = aut_rooted(e.first) * aut_rooted(e.second);
  if (e.first == e.second) a *= 2;
  return a;
}

namespace {

// x^n * num(n) / n! in floating point via logs; num is n^{n-1}, n^{n-2} or (n-1) n^{n-2}.
double geometric_layer(double x, std::size_t n, double log_numerator) {
  if (x == 0) return 0;
  const double nn = static_cast<double>(n);
  return std::exp(nn * std::log(x) + log_numerator - std::lgamma(nn + 1));
}

}  // namespace

std::vector<YTerms> partition_layers(const WeightVector& z, std::size_t size_cutoff) {
  std::vector<YTerms> layers(size_cutoff + 1);
  double base = 0;
  const bool geometric = size_cutoff > kOmegaTreeCap && z.is_geometric(&base);
  for (std::size_t n = 1; n <= size_cutoff; ++n) {
    auto& layer = layers[n];
    if (n > kOmegaTreeCap) {
      if (!geometric)
        throw std::invalid_argument("partition functions beyond size " + std::to_string(kOmegaTreeCap) +
                                    " need geometric weights");
      const double ln = std::log(static_cast<double>(n));
      const double nn = static_cast<double>(n);
      layer.rooted = geometric_layer(base, n, (nn - 1) * ln);
      layer.unrooted = geometric_layer(base, n, (nn - 2) * ln);
      layer.edge_rooted = geometric_layer(base, n, std::log(nn - 1) + (nn - 2) * ln);
      continue;
    }
    for (const auto& u : unrooted_trees_of_size(n)) {
      const auto tree = tree_from_code(u);
      const double w = omega(tree, z).value;
      if (w == 0) continue;
      layer.unrooted += w / aut_unrooted(u).get_d();
      for (const auto& r : rootings(u)) layer.rooted += w / aut_rooted(r.code).get_d();
      for (const auto& e : edge_rootings(tree)) layer.edge_rooted += w / aut_edge(e).get_d();
    }
  }
  return layers;
}

double partition_Y(const WeightVector& z, YKind kind, std::size_t size_cutoff) {
  double sum = 0;
  for (const auto& layer : partition_layers(z, size_cutoff)) {
    switch (kind) {
      case YKind::rooted: sum += layer.rooted; break;
      case YKind::unrooted: sum += layer.unrooted; break;
      case YKind::edge_rooted: sum += layer.edge_rooted; break;
    }
  }
  return sum;
}

double dissymmetry_residual(const WeightVector& z, std::size_t size_cutoff) {
  double y = 0, yu = 0, ye = 0;
  for (const auto& layer : partition_layers(z, size_cutoff)) {
    y += layer.rooted;
    yu += layer.unrooted;
    ye += layer.edge_rooted;
  }
  return std::fabs(y - yu - ye);
}

LabeledGraph join_at_roots(const LabeledGraph& t1, Vertex root1, const LabeledGraph& t2, Vertex root2) {
  if (root1 < 1 || root1 > t1.order() || root2 < 1 || root2 > t2.order())
    throw std::out_of_range("join_at_roots: root out of range");
  const auto shift = static_cast<Vertex>(t1.order());
  std::vector<Edge> edges = t1.edges();
  for (const auto& e : t2.edges()) edges.push_back({e.u + shift, e.v + shift});
  edges.push_back(make_edge(root1, root2 + shift));
  return LabeledGraph(t1.order() + t2.order(), std::move(edges));
}

double supermultiplicativity_check(const LabeledGraph& t1, Vertex root1, const LabeledGraph& t2, Vertex root2,
                                   const WeightVector& z) {
  const auto joined = join_at_roots(t1, root1, t2, root2);
  return omega(joined, z).value - omega(t1, z).value * omega(t2, z).value;
}

void write_omega_report(std::ostream& out, const std::vector<std::pair<std::string, DecompositionValue>>& rows) {
  out << "shape,omega,witness\n";
  for (const auto& [shape, d] : rows) {
    std::ostringstream pieces;
    for (std::size_t i = 0; i < d.witness.size(); ++i) {
      if (i) pieces << '|';
      for (std::size_t j = 0; j < d.witness[i].size(); ++j) pieces << (j ? "-" : "") << d.witness[i][j];
    }
    out << shape << ',' << format_real(d.value, 17) << ',' << pieces.str() << '\n';
  }
}

}  // namespace forestlab

#include "orbitrep/transitions.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "orbitrep/errors.hpp"

namespace orbitrep {

Symbol Symbol::parse(const std::string& label) {
  std::string digits = label;
  Kind kind = Kind::markov;
  if (!digits.empty() && digits.back() == '^') {
    kind = Kind::escape;
    digits.pop_back();
  }
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw ParseError("invalid symbol \"" + label + "\"");
  }
  const std::size_t value = std::stoul(digits);
  if (value == 0) throw ParseError("symbols are 1-based: \"" + label + "\"");
  return {kind, value - 1};
}

std::string Symbol::label() const {
  return std::to_string(index + 1) + (is_markov() ? "" : "^");
}

std::vector<Symbol> interleaved_order(std::size_t n, const std::vector<std::size_t>& escape_gaps) {
  std::vector<Symbol> order;
  for (std::size_t i = 0; i < n; ++i) {
    order.push_back(Symbol::markov(i));
    if (std::find(escape_gaps.begin(), escape_gaps.end(), i) != escape_gaps.end()) {
      order.push_back(Symbol::escape(i));
    }
  }
  return order;
}

std::optional<std::size_t> TransitionData::escape_column(std::size_t gap) const {
  for (std::size_t c = 0; c < escape_gaps.size(); ++c) {
    if (escape_gaps[c] == gap) return c;
  }
  return std::nullopt;
}

BoolMatrix markov_matrix(const MarkovMap& map) {
  const std::size_t n = map.size();
  BoolMatrix A(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const Interval img = map.image(i);
    for (std::size_t j = 0; j < n; ++j) {
      const Interval& target = map.interval(j);
      // ]a,b[ contains ]c,d[ with c < d  <=>  a <= c and d <= b
      A.set(i, j, img.lo <= target.lo && target.hi <= img.hi);
    }
  }
  return A;
}

BoolMatrix escape_block(const MarkovMap& map) {
  const auto gaps = map.escape_gaps();
  BoolMatrix B(map.size(), gaps.size());
  for (std::size_t i = 0; i < map.size(); ++i) {
    const Interval img = map.image(i);
    for (std::size_t k = 0; k < gaps.size(); ++k) {
      const Interval& e = gaps[k].bounds;
      B.set(i, k, max(img.lo, e.lo) < min(img.hi, e.hi));
    }
  }
  return B;
}

TransitionData transition_data(const MarkovMap& map) {
  TransitionData td;
  td.n = map.size();
  td.A = markov_matrix(map);
  for (const auto& g : map.escape_gaps()) td.escape_gaps.push_back(g.gap);
  td.B = escape_block(map);
  td.symbol_order = interleaved_order(td.n, td.escape_gaps);
  td.map_key = map.key();
  return td;
}

EscapeMatrix assemble_escape_matrix(const TransitionData& td) {
  const std::size_t size = td.n + td.m();
  EscapeMatrix em;
  em.symbol_order = td.symbol_order;
  em.full = BoolMatrix(size, size);
  em.permutation = BoolMatrix(size, size);
  // Block position of each interleaved symbol: Markov symbols first, then escapes.
  for (std::size_t a = 0; a < size; ++a) {
    const Symbol& s = td.symbol_order[a];
    const std::size_t block = s.is_markov() ? s.index : td.n + *td.escape_column(s.index);
    em.permutation.set(block, a);
    if (!s.is_markov()) continue;
    for (std::size_t b = 0; b < size; ++b) {
      const Symbol& t = td.symbol_order[b];
      const bool entry = t.is_markov() ? td.A(s.index, t.index) : td.B(s.index, *td.escape_column(t.index));
      em.full.set(a, b, entry);
    }
  }
  return em;
}

EscapeMatrix escape_matrix(const MarkovMap& map) { return assemble_escape_matrix(transition_data(map)); }

BlockForm block_form(const EscapeMatrix& em) {
  const std::size_t size = em.full.rows();
  std::size_t n = 0;
  for (const auto& s : em.symbol_order) n += s.is_markov() ? 1 : 0;
  const std::size_t m = size - n;

  const BoolMatrix reordered = em.permutation * em.full * em.permutation.transpose();
  BlockForm out{BoolMatrix(n, n), BoolMatrix(n, m), em.permutation};
  for (std::size_t r = 0; r < size; ++r) {
    for (std::size_t c = 0; c < size; ++c) {
      const bool v = reordered(r, c);
      if (r >= n) {
        if (v) throw std::logic_error("escape row of the reordered matrix is not zero");
      } else if (c < n) {
        out.A.set(r, c, v);
      } else {
        out.B.set(r, c - n, v);
      }
    }
  }
  if (!em.permutation.is_permutation()) throw std::logic_error("block permutation is not a permutation");
  return out;
}

std::vector<MatrixDiscrepancy> escape_discrepancies(const MarkovMap& map, const EscapeMatrix& em,
                                                    const BoolMatrix& expected) {
  if (expected.rows() != em.full.rows() || expected.cols() != em.full.cols()) {
    throw InconsistentInputsError("reference matrix is " + std::to_string(expected.rows()) + "x" +
                                  std::to_string(expected.cols()) + ", computed matrix is " +
                                  std::to_string(em.full.rows()) + "x" + std::to_string(em.full.cols()));
  }
  std::vector<MatrixDiscrepancy> out;
  for (std::size_t a = 0; a < em.full.rows(); ++a) {
    for (std::size_t b = 0; b < em.full.cols(); ++b) {
      if (em.full(a, b) == expected(a, b)) continue;
      const Symbol row = em.symbol_order[a];
      const Symbol col = em.symbol_order[b];
      std::ostringstream why;
      if (!row.is_markov()) {
        why << "escape rows are identically zero";
      } else {
        why << "f(I_" << row.index + 1 << ") = " << to_string(map.image(row.index));
        if (col.is_markov()) {
          why << (em.full(a, b) ? " contains " : " does not contain ") << "I_" << col.index + 1 << " = "
              << to_string(map.interval(col.index));
        } else {
          why << (em.full(a, b) ? " meets " : " does not meet ") << "E_" << col.index + 1 << " = "
              << to_string(*map.gap(col.index), true);
        }
      }
      out.push_back({row, col, em.full(a, b), expected(a, b), why.str()});
    }
  }
  return out;
}

std::size_t wielandt_bound(std::size_t n) { return n == 0 ? 0 : n * n - 2 * n + 2; }

Primitivity is_primitive(const BoolMatrix& A) {
  if (!A.square()) throw std::invalid_argument("primitivity needs a square matrix");
  Primitivity out;
  out.bound = wielandt_bound(A.rows());
  if (A.rows() == 0) return out;
  BoolMatrix power = A;
  for (std::size_t q = 1; q <= out.bound; ++q) {
    if (q > 1) power = power * A;
    if (power.all_positive()) {
      out.primitive = true;
      out.exponent = q;
      return out;
    }
  }
  for (std::size_t r = 0; r < power.rows() && !out.zero_entry; ++r)
    for (std::size_t c = 0; c < power.cols(); ++c)
      if (!power(r, c)) {
        out.zero_entry = std::make_pair(r, c);
        break;
      }
  return out;
}

std::vector<Edge> GraphSpec::out_edges(std::size_t v) const {
  std::vector<Edge> out;
  for (const auto& e : edges)
    if (e.source == v) out.push_back(e);
  return out;
}

GraphSpec build_graph(const BoolMatrix& A) {
  if (!A.square()) throw std::invalid_argument("graph needs a square matrix");
  GraphSpec g;
  g.vertices = A.rows();
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j)
      if (A(i, j)) g.edges.push_back({i, j});
  return g;
}

bool satisfies_condition_l(const GraphSpec& g) {
  // A cycle without an exit consists of vertices of out-degree one only, so
  // it suffices to follow forced edges from each such vertex.
  std::vector<std::size_t> degree(g.vertices, 0);
  std::vector<std::size_t> next(g.vertices, 0);
  for (const auto& e : g.edges) {
    ++degree[e.source];
    next[e.source] = e.range;
  }
  for (std::size_t v = 0; v < g.vertices; ++v) {
    std::size_t u = v;
    for (std::size_t steps = 0; steps < g.vertices && degree[u] == 1; ++steps) {
      u = next[u];
      if (u == v) return false;
    }
  }
  return true;
}

VertexSubset::VertexSubset(std::vector<std::size_t> vertices) : vertices_(std::move(vertices)) {
  std::sort(vertices_.begin(), vertices_.end());
  vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
}

VertexSubset VertexSubset::from_indicator(const std::vector<int>& u) {
  std::vector<std::size_t> v;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] != 0 && u[i] != 1) throw ParseError("indicator entries must be 0 or 1");
    if (u[i] == 0) v.push_back(i);
  }
  return VertexSubset(std::move(v));
}

VertexSubset VertexSubset::all(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return VertexSubset(std::move(v));
}

VertexSubset VertexSubset::parse(const std::string& text, std::size_t n) {
  std::vector<std::size_t> v;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const Symbol s = Symbol::parse(item);
    if (!s.is_markov() || s.index >= n) {
      throw ParseError("vertex \"" + item + "\" is not in 1.." + std::to_string(n));
    }
    v.push_back(s.index);
  }
  return VertexSubset(std::move(v));
}

std::vector<int> VertexSubset::indicator(std::size_t n) const {
  std::vector<int> u(n, 1);
  for (auto v : vertices_) {
    if (v >= n) throw std::out_of_range("vertex outside the graph");
    u[v] = 0;
  }
  return u;
}

bool VertexSubset::contains(std::size_t v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

bool VertexSubset::subset_of(const VertexSubset& other) const {
  return std::includes(other.vertices_.begin(), other.vertices_.end(), vertices_.begin(), vertices_.end());
}

std::string VertexSubset::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(vertices_[i] + 1);
  }
  return out + "}";
}

std::string dot_export(const GraphSpec& g, const std::vector<std::string>& labels) {
  std::ostringstream out;
  out << "digraph G {\n";
  for (std::size_t v = 0; v < g.vertices; ++v) {
    out << "  " << v + 1;
    if (v < labels.size()) out << " [label=\"" << labels[v] << "\"]";
    out << ";\n";
  }
  std::vector<Edge> edges = g.edges;
  std::sort(edges.begin(), edges.end());
  for (const auto& e : edges) {
    out << "  " << e.source + 1 << " -> " << e.range + 1 << " [label=\"s_" << e.source + 1 << e.range + 1
        << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace orbitrep

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orbitrep/bool_matrix.hpp"
#include "orbitrep/markov_map.hpp"

namespace orbitrep {

/// A letter of the escape alphabet: a Markov symbol i (interval I_{i+1}) or
/// an escape symbol for gap k, written "(k+1)^".
struct Symbol {
  enum class Kind { markov, escape };
  Kind kind = Kind::markov;
  std::size_t index = 0;

  static Symbol markov(std::size_t i) { return {Kind::markov, i}; }
  static Symbol escape(std::size_t k) { return {Kind::escape, k}; }
  /// Parses "3" or "2^" (1-based labels).
  static Symbol parse(const std::string& label);

  bool is_markov() const { return kind == Kind::markov; }
  std::string label() const;

  /// Position in the order 1 < 1^ < 2 < 2^ < ... < n.
  std::size_t rank() const { return 2 * index + (is_markov() ? 0 : 1); }

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

/// Interleaved order of the Markov symbols and the given escape gaps.
std::vector<Symbol> interleaved_order(std::size_t n, const std::vector<std::size_t>& escape_gaps);

/// A_f together with the escape block B_f and its symbol bookkeeping.
struct TransitionData {
  std::size_t n = 0;
  BoolMatrix A;
  /// Gap index of each escape symbol, increasing; one column of B each.
  std::vector<std::size_t> escape_gaps;
  BoolMatrix B;
  std::vector<Symbol> symbol_order;
  std::string map_key;

  std::size_t m() const { return escape_gaps.size(); }
  /// Column of B for gap k, if k carries an escape symbol.
  std::optional<std::size_t> escape_column(std::size_t gap) const;
};

/// Escape transition matrix in interleaved symbol order plus the
/// permutation P with P * full * P^T = [[A, B], [0, 0]].
struct EscapeMatrix {
  BoolMatrix full;
  std::vector<Symbol> symbol_order;
  BoolMatrix permutation;
};

struct BlockForm {
  BoolMatrix A;
  BoolMatrix B;
  BoolMatrix P;
};

/// a_ij = 1 iff f(int I_i) contains int I_j.
BoolMatrix markov_matrix(const MarkovMap& map);
/// b_ik = 1 iff f(int I_i) meets the open escape interval E_k.
BoolMatrix escape_block(const MarkovMap& map);
TransitionData transition_data(const MarkovMap& map);

EscapeMatrix escape_matrix(const MarkovMap& map);
EscapeMatrix assemble_escape_matrix(const TransitionData& td);
/// Splits the interleaved matrix into blocks and verifies P * full * P^T
/// entry by entry (throws std::logic_error if it does not hold).
BlockForm block_form(const EscapeMatrix& em);

/// One disagreement between a computed and a reference escape matrix.
struct MatrixDiscrepancy {
  Symbol row;
  Symbol col;
  bool computed;
  bool expected;
  std::string explanation;
};

/// Compares the computed matrix against a reference in the same symbol order.
std::vector<MatrixDiscrepancy> escape_discrepancies(const MarkovMap& map, const EscapeMatrix& em,
                                                    const BoolMatrix& expected);

struct Primitivity {
  bool primitive = false;
  std::size_t bound = 0;  // Wielandt bound n^2 - 2n + 2
  std::optional<std::size_t> exponent;
  /// A zero entry of A^bound when not primitive.
  std::optional<std::pair<std::size_t, std::size_t>> zero_entry;
};

std::size_t wielandt_bound(std::size_t n);
Primitivity is_primitive(const BoolMatrix& A);

struct Edge {
  std::size_t source;
  std::size_t range;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Directed graph with an edge i -> j for every unit entry a_ij.
struct GraphSpec {
  std::size_t vertices = 0;
  std::vector<Edge> edges;  // sorted lexicographically

  std::vector<Edge> out_edges(std::size_t v) const;
};

GraphSpec build_graph(const BoolMatrix& A);

/// Every cycle has an exit.
bool satisfies_condition_l(const GraphSpec& g);

/// Sorted set of vertices, in bijection with 0/1 vectors via V_u = {i : u_i = 0}.
class VertexSubset {
 public:
  VertexSubset() = default;
  explicit VertexSubset(std::vector<std::size_t> vertices);

  static VertexSubset from_indicator(const std::vector<int>& u);
  static VertexSubset all(std::size_t n);
  /// Parses a comma-separated list of 1-based vertex labels ("2,3"); "" is empty.
  static VertexSubset parse(const std::string& text, std::size_t n);

  std::vector<int> indicator(std::size_t n) const;
  bool contains(std::size_t v) const;
  bool subset_of(const VertexSubset& other) const;
  const std::vector<std::size_t>& vertices() const { return vertices_; }
  bool empty() const { return vertices_.empty(); }
  /// "{2,3}" with 1-based labels.
  std::string str() const;

  friend bool operator==(const VertexSubset&, const VertexSubset&) = default;

 private:
  std::vector<std::size_t> vertices_;
};

/// Deterministic DOT digraph; labels default to 1-based vertex numbers.
std::string dot_export(const GraphSpec& g, const std::vector<std::string>& labels = {});

}  // namespace orbitrep

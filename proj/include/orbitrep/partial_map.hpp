#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace orbitrep {

/// Partial injection of basis indices 0..size-1. Each one is the matrix of a
/// partial isometry that sends basis vectors to basis vectors (a 0/1 partial
/// permutation); the adjoint is the inverse partial map.
class PartialBasisMap {
 public:
  PartialBasisMap() = default;
  explicit PartialBasisMap(std::size_t basis_size) : fwd_(basis_size), bwd_(basis_size) {}

  /// Projection onto the span of the given basis vectors.
  static PartialBasisMap diagonal(std::size_t basis_size, const std::vector<std::size_t>& support);

  /// Adds from -> to; throws std::logic_error if injectivity or
  /// single-valuedness would break.
  void set(std::size_t from, std::size_t to);

  std::size_t basis_size() const { return fwd_.size(); }
  std::optional<std::size_t> apply(std::size_t v) const { return fwd_.at(v); }

  PartialBasisMap adjoint() const;
  /// Keeps only the pairs whose source is in the given set.
  PartialBasisMap restrict_domain(const std::vector<std::size_t>& keep) const;

  std::vector<std::size_t> domain() const;
  std::vector<std::size_t> range() const;
  std::size_t rank() const;
  bool empty() const { return rank() == 0; }
  /// Identity on its domain (i.e. a projection).
  bool is_diagonal() const;

  friend bool operator==(const PartialBasisMap&, const PartialBasisMap&) = default;

 private:
  std::vector<std::optional<std::size_t>> fwd_;
  std::vector<std::optional<std::size_t>> bwd_;
};

/// outer after inner; throws BasisMismatchError for different bases.
PartialBasisMap compose(const PartialBasisMap& outer, const PartialBasisMap& inner);

}  // namespace orbitrep

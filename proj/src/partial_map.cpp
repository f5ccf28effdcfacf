#include "orbitrep/partial_map.hpp"

#include <stdexcept>
#include <string>

#include "orbitrep/errors.hpp"

namespace orbitrep {

PartialBasisMap PartialBasisMap::diagonal(std::size_t basis_size, const std::vector<std::size_t>& support) {
  PartialBasisMap d(basis_size);
  for (auto v : support) d.set(v, v);
  return d;
}

void PartialBasisMap::set(std::size_t from, std::size_t to) {
  if (from >= fwd_.size() || to >= bwd_.size()) throw std::out_of_range("basis index out of range");
  if (fwd_[from] && *fwd_[from] == to) return;
  if (fwd_[from] || bwd_[to]) {
    throw std::logic_error("partial map would stop being injective at " + std::to_string(from) + " -> " +
                           std::to_string(to));
  }
  fwd_[from] = to;
  bwd_[to] = from;
}

PartialBasisMap PartialBasisMap::adjoint() const {
  PartialBasisMap a;
  a.fwd_ = bwd_;
  a.bwd_ = fwd_;
  return a;
}

PartialBasisMap PartialBasisMap::restrict_domain(const std::vector<std::size_t>& keep) const {
  PartialBasisMap out(basis_size());
  for (auto v : keep)
    if (auto w = apply(v)) out.set(v, *w);
  return out;
}

std::vector<std::size_t> PartialBasisMap::domain() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < fwd_.size(); ++v)
    if (fwd_[v]) out.push_back(v);
  return out;
}

std::vector<std::size_t> PartialBasisMap::range() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < bwd_.size(); ++v)
    if (bwd_[v]) out.push_back(v);
  return out;
}

std::size_t PartialBasisMap::rank() const {
  std::size_t r = 0;
  for (const auto& t : fwd_) r += t ? 1 : 0;
  return r;
}

bool PartialBasisMap::is_diagonal() const {
  for (std::size_t v = 0; v < fwd_.size(); ++v)
    if (fwd_[v] && *fwd_[v] != v) return false;
  return true;
}

PartialBasisMap compose(const PartialBasisMap& outer, const PartialBasisMap& inner) {
  if (outer.basis_size() != inner.basis_size()) {
    throw BasisMismatchError("cannot compose maps over bases of size " + std::to_string(outer.basis_size()) +
                             " and " + std::to_string(inner.basis_size()));
  }
  PartialBasisMap out(inner.basis_size());
  for (std::size_t v = 0; v < inner.basis_size(); ++v) {
    if (auto w = inner.apply(v)) {
      if (auto u = outer.apply(*w)) out.set(v, *u);
    }
  }
  return out;
}

}  // namespace orbitrep

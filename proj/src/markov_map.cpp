#include "orbitrep/markov_map.hpp"

#include <algorithm>

#include "orbitrep/errors.hpp"

namespace orbitrep {

std::string to_string(const Interval& iv, bool open) {
  if (open) return "]" + iv.lo.str() + ", " + iv.hi.str() + "[";
  return "[" + iv.lo.str() + ", " + iv.hi.str() + "]";
}

MarkovMap::MarkovMap(std::vector<Interval> intervals, std::vector<AffineBranch> branches)
    : intervals_(std::move(intervals)), branches_(std::move(branches)) {
  if (intervals_.empty()) throw InvalidMapError("map needs at least one Markov interval");
  if (intervals_.size() != branches_.size()) {
    throw InvalidMapError("got " + std::to_string(intervals_.size()) + " intervals but " +
                          std::to_string(branches_.size()) + " branches");
  }
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    const auto& iv = intervals_[i];
    if (!(iv.lo < iv.hi)) {
      throw InvalidMapError("interval I_" + std::to_string(i + 1) + " = " + to_string(iv) +
                            " is degenerate");
    }
    if (i > 0 && intervals_[i - 1].hi > iv.lo) {
      throw InvalidMapError("intervals I_" + std::to_string(i) + " and I_" +
                            std::to_string(i + 1) + " overlap or are out of order");
    }
    if (branches_[i].slope.is_zero()) {
      throw InvalidMapError("branch " + std::to_string(i + 1) + " has zero slope");
    }
  }
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    key_ += to_string(intervals_[i]) + ":" + branches_[i].slope.str() + "," +
            branches_[i].intercept.str() + ";";
  }
}

std::vector<Rational> MarkovMap::partition_points() const {
  std::vector<Rational> out;
  for (const auto& iv : intervals_) {
    if (out.empty() || out.back() != iv.lo) out.push_back(iv.lo);
    out.push_back(iv.hi);
  }
  return out;
}

bool MarkovMap::is_partition_point(const Rational& x) const {
  return std::any_of(intervals_.begin(), intervals_.end(),
                     [&](const Interval& iv) { return iv.lo == x || iv.hi == x; });
}

std::vector<EscapeGap> MarkovMap::escape_gaps() const {
  std::vector<EscapeGap> out;
  for (std::size_t k = 0; k + 1 < intervals_.size(); ++k) {
    if (auto g = gap(k)) out.push_back({k, *g});
  }
  return out;
}

std::optional<Interval> MarkovMap::gap(std::size_t k) const {
  if (k + 1 >= intervals_.size()) return std::nullopt;
  const Rational& left = intervals_[k].hi;
  const Rational& right = intervals_[k + 1].lo;
  if (left == right) return std::nullopt;
  return Interval{left, right};
}

Interval MarkovMap::image(std::size_t i) const {
  const auto& iv = interval(i);
  const auto& b = branch(i);
  Rational a = b(iv.lo);
  Rational c = b(iv.hi);
  if (c < a) std::swap(a, c);
  return {a, c};
}

Location MarkovMap::locate(const Rational& x) const {
  if (x < intervals_.front().lo || x > intervals_.back().hi) return OutsideAmbient{};
  PartitionPoint hit;
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    const auto& iv = intervals_[i];
    if (iv.lo == x || iv.hi == x) hit.intervals.push_back(i);
  }
  if (!hit.intervals.empty()) return hit;
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    if (intervals_[i].contains_open(x)) return MarkovInterior{i};
  }
  for (std::size_t k = 0; k + 1 < intervals_.size(); ++k) {
    if (intervals_[k].hi < x && x < intervals_[k + 1].lo) return EscapeInterior{k};
  }
  // Unreachable for a structurally valid map.
  throw InvalidMapError("point " + x.str() + " could not be located");
}

EvalResult MarkovMap::evaluate(const Rational& x) const {
  const Location loc = locate(x);
  if (std::holds_alternative<OutsideAmbient>(loc)) {
    throw OutsideAmbientError("point " + x.str() + " lies outside " + to_string(ambient()));
  }
  if (const auto* e = std::get_if<EscapeInterior>(&loc)) return NotInDomain{e->gap};
  if (const auto* m = std::get_if<MarkovInterior>(&loc)) {
    return Evaluation{branch(m->interval)(x), m->interval, false};
  }
  const auto& shared = std::get<PartitionPoint>(loc).intervals;
  const std::size_t left = shared.front();
  Evaluation out{branch(left)(x), left, false};
  if (shared.size() > 1 && branch(shared.back())(x) != out.value) out.side_ambiguous = true;
  return out;
}

std::optional<Rational> MarkovMap::branch_inverse(std::size_t i, const Rational& y) const {
  if (!image(i).contains(y)) return std::nullopt;
  return branch(i).solve(y);
}

}  // namespace orbitrep

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace smoothtrim {

/// Ascending, finite data vector. Every estimator works on order statistics,
/// so sorting happens once here; order(i) mirrors the 1-based X_(i) notation.
class SortedSample {
  public:
    /// Sorts and validates (finite values, non-empty).
    explicit SortedSample(std::vector<double> values);

    /// Adopts data that is already ascending without re-sorting.
    static SortedSample from_sorted(std::vector<double> values);

    std::size_t size() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }
    std::span<const double> span() const { return values_; }

    /// X_(i), 1-based.
    double order(std::size_t i) const { return values_[i - 1]; }

    double min() const { return values_.front(); }
    double max() const { return values_.back(); }
    double range() const { return values_.back() - values_.front(); }

    /// Copy with the observation at 1-based position i removed.
    SortedSample without(std::size_t i) const;

  private:
    SortedSample() = default;
    std::vector<double> values_;
};

}  // namespace smoothtrim

#pragma once

// Set partitions of {0, ..., n-1} enumerated as restricted growth strings
// in lexicographic order: a[0] = 0 and a[i] <= 1 + max(a[0..i-1]). Block b
// of the partition holds every i with a[i] == b.

#include <algorithm>
#include <cstddef>
#include <vector>

namespace crnkit {

class RestrictedGrowthString {
 public:
  /// Starts at the all-zero string (the one-block partition). n == 0 yields
  /// a single empty partition.
  explicit RestrictedGrowthString(std::size_t n) : a_(n, 0), prefix_max_(n, 0) {}

  const std::vector<std::size_t>& labels() const { return a_; }
  std::size_t size() const { return a_.size(); }

  std::size_t block_count() const { return a_.empty() ? 0 : prefix_max_.back() + 1; }

  /// Advances to the next string; returns false after the last one
  /// (0, 1, ..., n-1).
  bool next() {
    for (std::size_t i = a_.size(); i-- > 1;) {
      if (a_[i] <= prefix_max_[i - 1]) {
        ++a_[i];
        prefix_max_[i] = std::max(prefix_max_[i - 1], a_[i]);
        for (std::size_t j = i + 1; j < a_.size(); ++j) {
          a_[j] = 0;
          prefix_max_[j] = prefix_max_[i];
        }
        return true;
      }
    }
    return false;
  }

  std::vector<std::vector<std::size_t>> blocks() const {
    std::vector<std::vector<std::size_t>> out(block_count());
    for (std::size_t i = 0; i < a_.size(); ++i) out[a_[i]].push_back(i);
    return out;
  }

 private:
  std::vector<std::size_t> a_;
  std::vector<std::size_t> prefix_max_;
};

}  // namespace crnkit

#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "gameqd/types.hpp"

namespace gameqd {

struct EliteEntry {
  Genome genome;
  double fitness;
  BehaviorDescriptor behavior;
};

// Index of the centroid nearest to `b` (Euclidean); ties go to the lowest
// index. Throws UsageError on an empty list.
std::size_t find_cell(std::span<const BehaviorDescriptor> centroids, const BehaviorDescriptor& b);

struct ClosestPair {
  double distance;
  std::size_t first;
  std::size_t second;
};

// Minimal pairwise distance; ties resolve to the lexicographically lowest
// (first, second). Throws UsageError with fewer than two centroids.
ClosestPair min_pairwise_distance(std::span<const BehaviorDescriptor> centroids);

// Outcome of one update, for instrumentation.
enum class UpdateKind { kAppended, kGrew, kImproved, kRejected };

// Unstructured archive whose centroids are the behaviors of founding
// solutions. Capacity is fixed; once full, a behavior farther from every
// centroid than the closest centroid pair are from each other replaces one
// member of that pair.
//
// Invariants kept after every update:
//   - size() <= capacity()
//   - every cell's backup list holds its founder (behavior == centroid) and
//     its current elite
//   - after a growth, holes are repaired: an elite that no longer maps to its
//     own cell is swapped for the fittest backup that does (kept otherwise)
class GrowingArchive {
 public:
  GrowingArchive(std::size_t capacity, std::size_t backup_cap);

  UpdateKind update(const Genome& s, double f, const BehaviorDescriptor& b);

  std::size_t size() const noexcept { return centroids_.size(); }
  std::size_t capacity() const noexcept { return capacity_; }
  std::size_t backup_cap() const noexcept { return backup_cap_; }
  bool empty() const noexcept { return centroids_.empty(); }

  std::span<const BehaviorDescriptor> centroids() const noexcept { return centroids_; }
  std::span<const EliteEntry> elites() const noexcept { return elites_; }
  std::span<const std::vector<EliteEntry>> backups() const noexcept { return backups_; }

  // Rebuilds an archive from persisted state; validates shapes.
  static GrowingArchive restore(std::size_t capacity, std::size_t backup_cap,
                                std::vector<BehaviorDescriptor> centroids,
                                std::vector<EliteEntry> elites,
                                std::vector<std::vector<EliteEntry>> backups);

 private:
  void push_backup(std::size_t cell, EliteEntry entry);
  void repair_holes();

  std::size_t capacity_;
  std::size_t backup_cap_;
  std::vector<BehaviorDescriptor> centroids_;
  std::vector<EliteEntry> elites_;
  std::vector<std::vector<EliteEntry>> backups_;
};

}  // namespace gameqd

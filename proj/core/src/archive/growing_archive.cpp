#include "gameqd/archive/growing_archive.hpp"

#include <limits>
#include <string>

#include "gameqd/errors.hpp"

namespace gameqd {
namespace {

double dist(const BehaviorDescriptor& a, const BehaviorDescriptor& b) {
  return euclidean_distance(a.values(), b.values());
}

// Distance from centroid `j` to its nearest other centroid.
double nearest_other(std::span<const BehaviorDescriptor> c, std::size_t j) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i != j) best = std::min(best, dist(c[i], c[j]));
  }
  return best;
}

}  // namespace

std::size_t find_cell(std::span<const BehaviorDescriptor> centroids, const BehaviorDescriptor& b) {
  if (centroids.empty()) throw UsageError("find_cell: no centroids");
  std::size_t best = 0;
  double best_d = dist(centroids[0], b);
  for (std::size_t i = 1; i < centroids.size(); ++i) {
    const double d = dist(centroids[i], b);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

ClosestPair min_pairwise_distance(std::span<const BehaviorDescriptor> centroids) {
  if (centroids.size() < 2) throw UsageError("min_pairwise_distance: need at least two centroids");
  ClosestPair best{std::numeric_limits<double>::infinity(), 0, 1};
  for (std::size_t i = 0; i < centroids.size(); ++i) {
    for (std::size_t j = i + 1; j < centroids.size(); ++j) {
      const double d = dist(centroids[i], centroids[j]);
      if (d < best.distance) best = {d, i, j};
    }
  }
  return best;
}

GrowingArchive::GrowingArchive(std::size_t capacity, std::size_t backup_cap)
    : capacity_(capacity), backup_cap_(backup_cap) {
  if (capacity < 2) throw UsageError("GrowingArchive: capacity must be at least 2");
  if (backup_cap < 2) throw UsageError("GrowingArchive: backup cap must be at least 2");
  centroids_.reserve(capacity);
  elites_.reserve(capacity);
  backups_.reserve(capacity);
}

UpdateKind GrowingArchive::update(const Genome& s, double f, const BehaviorDescriptor& b) {
  EliteEntry entry{s, f, b};
  if (centroids_.size() < capacity_) {
    centroids_.push_back(b);
    elites_.push_back(entry);
    backups_.push_back({std::move(entry)});
    return UpdateKind::kAppended;
  }

  const ClosestPair pair = min_pairwise_distance(centroids_);
  double d = std::numeric_limits<double>::infinity();
  for (const auto& c : centroids_) d = std::min(d, dist(c, b));

  if (d > pair.distance) {
    const double d_first = nearest_other(centroids_, pair.first);
    const double d_second = nearest_other(centroids_, pair.second);
    const std::size_t slot = d_first < d_second ? pair.first : pair.second;
    centroids_[slot] = b;
    elites_[slot] = entry;
    backups_[slot] = {std::move(entry)};
    repair_holes();
    return UpdateKind::kGrew;
  }

  const std::size_t id = find_cell(centroids_, b);
  if (f > elites_[id].fitness) {
    elites_[id] = entry;
    push_backup(id, std::move(entry));
    return UpdateKind::kImproved;
  }
  return UpdateKind::kRejected;
}

void GrowingArchive::push_backup(std::size_t cell, EliteEntry entry) {
  auto& list = backups_[cell];
  list.push_back(std::move(entry));
  if (list.size() <= backup_cap_) return;
  // Drop the weakest entry, sparing the founder (front) and the new elite (back).
  std::size_t victim = 1;
  for (std::size_t i = 2; i + 1 < list.size(); ++i) {
    if (list[i].fitness < list[victim].fitness) victim = i;
  }
  list.erase(list.begin() + static_cast<std::ptrdiff_t>(victim));
}

void GrowingArchive::repair_holes() {
  for (std::size_t i = 0; i < centroids_.size(); ++i) {
    if (find_cell(centroids_, elites_[i].behavior) == i) continue;
    const EliteEntry* best = nullptr;
    for (const auto& e : backups_[i]) {
      if (find_cell(centroids_, e.behavior) != i) continue;
      if (best == nullptr || e.fitness > best->fitness) best = &e;
    }
    if (best != nullptr) elites_[i] = *best;
  }
}

GrowingArchive GrowingArchive::restore(std::size_t capacity, std::size_t backup_cap,
                                       std::vector<BehaviorDescriptor> centroids,
                                       std::vector<EliteEntry> elites,
                                       std::vector<std::vector<EliteEntry>> backups) {
  if (centroids.size() != elites.size() || centroids.size() != backups.size() ||
      centroids.size() > capacity) {
    throw DataIntegrityError("archive: centroid/elite/backup counts disagree (" +
                             std::to_string(centroids.size()) + "/" +
                             std::to_string(elites.size()) + "/" + std::to_string(backups.size()) +
                             ")");
  }
  GrowingArchive a(capacity, backup_cap);
  a.centroids_ = std::move(centroids);
  a.elites_ = std::move(elites);
  a.backups_ = std::move(backups);
  return a;
}

}  // namespace gameqd

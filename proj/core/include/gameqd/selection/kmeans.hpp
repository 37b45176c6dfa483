#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace gameqd {

struct KMeansResult {
  std::vector<std::size_t> assignment;
  std::vector<std::vector<double>> centroids;
  // Sum of squared distances after each assignment step.
  std::vector<double> objective_history;
  int iterations = 0;

  std::vector<std::size_t> cluster_sizes() const;
};

// k-means++ seeding from the seeded stream, then Lloyd iterations until the
// assignment stops changing or max_iterations is reached. Ties in assignment
// go to the lowest centroid index. An empty cluster is re-seeded at the point
// farthest from its current centroid. Throws UsageError if points < k.
KMeansResult kmeans(std::span<const std::vector<double>> points, std::size_t k, std::uint64_t seed,
                    int max_iterations = 100);

}  // namespace gameqd

#pragma once

// Drives the library archive and the reference interpreter through the same
// random insertion sequences and checks them against each other and against
// the archive invariants after every step.

#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "gameqd/archive/growing_archive.hpp"
#include "gameqd/mlp.hpp"
#include "oracles/archive_reference.hpp"

namespace support {

struct EquivalenceReport {
  std::size_t sequences = 0;
  std::size_t updates = 0;
  std::size_t growths = 0;
  std::vector<std::string> failures;  // first few only

  bool ok() const { return failures.empty(); }
};

inline gameqd::Genome tagged_genome(int id) {
  std::vector<double> p(gameqd::genome_dim(gameqd::EnvId::kCatMouse, gameqd::Side::kRed), 0.0);
  p[0] = id;
  return gameqd::Genome(gameqd::Side::kRed, gameqd::EnvId::kCatMouse, std::move(p));
}

inline int tag_of(const gameqd::EliteEntry& e) { return static_cast<int>(e.genome.params()[0]); }

inline bool same_entry(const gameqd::EliteEntry& lib, const oracle::RefEntry& ref) {
  const auto b = lib.behavior.values();
  return tag_of(lib) == ref.id && lib.fitness == ref.fitness &&
         std::vector<double>(b.begin(), b.end()) == ref.behavior;
}

inline EquivalenceReport check_archive_equivalence(std::size_t sequences, std::size_t length,
                                                   std::size_t dim, std::size_t n_cell,
                                                   std::size_t backup_cap, std::uint64_t seed) {
  EquivalenceReport report;
  auto fail = [&report](std::string msg) {
    if (report.failures.size() < 5) report.failures.push_back(std::move(msg));
  };
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t s = 0; s < sequences; ++s) {
    gameqd::GrowingArchive lib(n_cell, backup_cap);
    oracle::RefArchive ref{n_cell, backup_cap, {}, {}, {}};
    // Half of the sequences draw from a coarse lattice so exact ties and
    // repeated behaviors occur.
    const bool lattice = s % 2 == 1;
    for (std::size_t i = 0; i < length; ++i) {
      oracle::RefEntry e{static_cast<int>(i), unit(rng), std::vector<double>(dim)};
      for (double& v : e.behavior) v = lattice ? std::floor(unit(rng) * 4.0) / 4.0 : unit(rng);
      if (lattice) e.fitness = std::floor(e.fitness * 8.0) / 8.0;

      // Growth condition evaluated independently before the update.
      bool expect_growth = false;
      if (ref.centroids.size() == n_cell) {
        double d_min = std::numeric_limits<double>::infinity();
        for (std::size_t p = 0; p < n_cell; ++p)
          for (std::size_t q = p + 1; q < n_cell; ++q)
            d_min = std::min(d_min, oracle::ref_dist(ref.centroids[p], ref.centroids[q]));
        double d = std::numeric_limits<double>::infinity();
        for (const auto& c : ref.centroids) d = std::min(d, oracle::ref_dist(c, e.behavior));
        expect_growth = d > d_min;
      }

      const auto kind = lib.update(tagged_genome(e.id), e.fitness, gameqd::BehaviorDescriptor(e.behavior));
      const auto ref_kind = oracle::ref_update(ref, e);
      ++report.updates;
      const std::string where = fmt::format("sequence {} step {}", s, i);

      const bool grew = kind == gameqd::UpdateKind::kGrew;
      report.growths += grew;
      if (grew != expect_growth || grew != (ref_kind == oracle::RefOutcome::kGrow)) {
        fail(where + ": growth condition disagrees");
      }
      if (lib.size() > lib.capacity()) fail(where + ": capacity exceeded");
      if (lib.size() != ref.centroids.size()) {
        fail(where + ": sizes differ");
        break;
      }
      bool distinct = true;
      for (std::size_t p = 0; p < lib.size(); ++p) {
        const auto c = lib.centroids()[p].values();
        if (std::vector<double>(c.begin(), c.end()) != ref.centroids[p]) fail(where + ": centroids differ");
        if (!same_entry(lib.elites()[p], ref.elites[p])) fail(where + ": elites differ");
        const auto& backups = lib.backups()[p];
        if (backups.size() != ref.backups[p].size()) {
          fail(where + ": backup lists differ");
        } else {
          for (std::size_t m = 0; m < backups.size(); ++m) {
            if (!same_entry(backups[m], ref.backups[p][m])) fail(where + ": backup lists differ");
          }
        }
        for (std::size_t q = p + 1; q < lib.size(); ++q) distinct = distinct && !(lib.centroids()[p] == lib.centroids()[q]);
      }
      // Self-consistency holds whenever centroids are pairwise distinct.
      if (distinct) {
        for (std::size_t p = 0; p < lib.size(); ++p) {
          if (gameqd::find_cell(lib.centroids(), lib.elites()[p].behavior) != p) {
            fail(where + fmt::format(": elite of cell {} maps elsewhere", p));
          }
        }
      }
    }
    ++report.sequences;
  }
  return report;
}

}  // namespace support

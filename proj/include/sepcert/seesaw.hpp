#pragma once

// See-saw search for product vectors x (x) y minimizing <x (x) y, H x (x) y>.
// A negative minimum proves H is not block positive; a nonnegative one is
// only evidence.

#include <cstdint>
#include <string>

#include "sepcert/states.hpp"

namespace sepcert {

inline constexpr std::uint64_t kDefaultSeed = 20140829;
inline constexpr int kDefaultRestarts = 1000;

struct SearchBudget {
  int restarts = kDefaultRestarts;
  std::uint64_t seed = kDefaultSeed;
  int max_alternations = 500;
  double tolerance = 1e-12;  // stop when an alternation improves by less
  int threads = 1;
};

struct ConeSearchReport {
  double min_overlap = 0.0;
  ProductVector witness;
  int restarts = 0;
  std::uint64_t seed = 0;
  int iterations_per_restart = 0;  // alternation cap
  int best_restart = 0;
  int max_alternations_used = 0;
  std::string generator = "mt19937_64/splitmix64";
};

/// Seed of restart i: splitmix64(master + i).
std::uint64_t restart_seed(std::uint64_t master, int restart);

ConeSearchReport block_positivity_search(const HermitianOperator& h, const BipartiteSpace& space,
                                         const SearchBudget& budget = {});

/// <x (x) y, H x (x) y>.
double product_overlap(const HermitianOperator& h, const ProductVector& v);

}  // namespace sepcert

#pragma once

#include "cantrees/errors.hpp"
#include "cantrees/model.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cantrees {

enum class Stat {
    height,
    distinct_depths,
    last_level_leaves,
    width,
    total_path_length,
};

Stat stat_from_string(const std::string& s);
const char* stat_to_string(Stat s);

struct DistTable {
    std::string stat_name;
    std::map<std::int64_t, mpz_class> entries;
    mpz_class total;
};

struct ExactMoments {
    mpq_class mean;
    mpq_class second_moment;
    mpq_class variance;
};

// Number of trees with n internal vertices.  All counting walks the level
// expansion: a tree grows by turning j of the m last-level leaves into
// internal vertices, leaving state (n + j, j t) from state (n, m).
mpz_class count(int t, std::int64_t n, std::int64_t cap = 2000);

// Counts refined by the number of leaves on the last level.
std::map<std::int64_t, mpz_class> count_by_m(int t, std::int64_t n,
                                             std::int64_t cap = 2000);

// Exact distribution of a statistic over the uniform size-n trees.
// cap = -1 selects the per-statistic default (see dist_default_cap).
DistTable dist(int t, std::int64_t n, Stat stat, std::int64_t cap = -1);

std::int64_t dist_default_cap(Stat stat);

// Exact power sums  sum over size-n trees of stat(T)^k  for k = 0..deg;
// index 0 is the count.  Runs far beyond the dist caps because the
// statistic's value is aggregated instead of stored in the DP state.
std::vector<mpz_class> power_sums(int t, std::int64_t n, Stat stat, int deg,
                                  std::int64_t cap = -1);

ExactMoments moments(int t, std::int64_t n, Stat stat, std::int64_t cap = -1);

// Uniformly random size-n profile; bit-exact reproducible from the seed.
Profile sample_uniform(int t, std::int64_t n, std::uint64_t seed);

// CSV with columns value,count,probability; probabilities are decimal
// strings rounded half-up to prob_digits fractional digits.
std::string dist_csv(const DistTable& table, int prob_digits = 12);

}  // namespace cantrees

#pragma once

#include "cantrees/errors.hpp"
#include "cantrees/interval.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <vector>

namespace cantrees {

// Dimension of the level-state transfer matrix under width cap K:
// every internal-vertex count that can appear on a level of a capped tree
// is at most ceil(K/(t-1)) - 1.
std::int64_t transfer_dimension(int t, std::int64_t K);

// Exact counts, by internal size 0..N_max, of trees whose width is at
// most K.  For 1 <= K < t only the single-leaf tree qualifies (every
// larger tree has at least t leaves on its last level).
std::vector<mpz_class> width_capped_counts(int t, std::int64_t K,
                                           std::int64_t N_max);

// Certificate for the singularity q_K of the width-capped class: an
// enclosure plus positive rational witness vectors proving the spectral
// radius of the transfer matrix crosses 1 inside it (radius >= 1 at the
// upper endpoint via x_hi, <= 1 at the lower endpoint via x_lo).
struct QKCert {
    Interval qK;
    std::int64_t K;
    std::vector<mpq_class> x_lo, x_hi;
};

QKCert solve_qK(int t, std::int64_t K, double precision = 1e-12);

// Exact mean width at internal size n (uniform over all size-n trees).
mpq_class width_mean(int t, std::int64_t n, std::int64_t cap = 4000);

// Batch version: the dominant cost, a sweep over width caps up to half
// the leaf count, is shared across all requested sizes.
std::map<std::int64_t, mpq_class> width_mean_batch(
    int t, const std::vector<std::int64_t>& sizes, std::int64_t cap = 4000);

// det(I - M_K(q)) as an exact power series in q, truncated at order N;
// used to cross-check the infinite-product identity against the
// level-kernel series at small K.
std::vector<mpq_class> det_transfer_series(int t, std::int64_t K,
                                           std::int64_t N);

// One application y = M_K(q) x in exact rational arithmetic.
std::vector<mpq_class> apply_transfer(int t, std::int64_t K,
                                      const mpq_class& q,
                                      const std::vector<mpq_class>& x);

}  // namespace cantrees

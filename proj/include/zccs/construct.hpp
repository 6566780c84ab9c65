#pragma once

// Assembly of complete code sets: K = p^{k+r} codes, each with M = p^k
// rows of length N = p^{n+r}, row (alpha p^r + delta, beta) being
// chi of the path/vertex function with those offsets. The derived set is
// a type-II (p^{k+r}, p^k, p^{n+r}-p^r+1, p^{n+r})-ZCCS, a CCC when r=0.

#include "zccs/mvf.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace zccs {

struct ConstructionParams {
  int p = 2;
  int q = 2;
  std::vector<int> path_sizes;                // n_0 .. n_{k-1}, each >= 1
  std::vector<std::vector<int>> path_orders;  // empty: consecutive identity
  int isolated = 0;                           // r
  Eigen::ArrayXi gamma;                       // empty: all zero
  int theta = 0;
  bool pmepr_term = false;
  bool strict_coeffs = false;  // restrict gamma/theta to Z_p < Z_q

  int path_count() const { return static_cast<int>(path_sizes.size()); }  // k
  int path_vars() const;                                                  // n
  int var_count() const { return path_vars() + isolated; }                // m

  std::int64_t num_codes() const;   // K = p^{k+r}
  std::int64_t flock_size() const;  // M = p^k
  std::int64_t length() const;      // N = p^{n+r}
  std::int64_t zcz_width() const;   // Z = N - p^r + 1

  /// Resolved per-path vertex orders (identity blocks unless overridden).
  std::vector<PathGraph> paths() const;

  void validate() const;

  /// The row function F_beta^{alpha p^r + delta} as an MvfSpec.
  MvfSpec row_function(std::int64_t alpha, std::int64_t beta,
                       std::int64_t delta) const;
};

struct CodeSet {
  ConstructionParams params;
  std::vector<PhaseMatrix> codes;  // K matrices, each M x N

  int q() const { return params.q; }
};

/// Builds the full set; code s = alpha p^r + delta, rows ordered by beta.
CodeSet build_code_set(const ConstructionParams& params);

/// The r = 0 specialization: a (p^k, p^k, p^n)-CCC.
CodeSet build_ccc(int p, int q, std::vector<int> path_sizes,
                  Eigen::ArrayXi gamma = {}, int theta = 0,
                  bool pmepr_term = true);

/// Code-index pairs (s, t), s < t, sharing delta but not alpha: the pairs
/// whose cross-correlation vanishes at every shift.
std::vector<std::pair<std::int64_t, std::int64_t>> uncorrelated_pairs(
    const ConstructionParams& params);

}  // namespace zccs

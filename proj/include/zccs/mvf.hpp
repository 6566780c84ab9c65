#pragma once

// Multi-variable functions Z_p^m -> Z_q built from labelled graphs: a
// quadratic form over Hamiltonian paths (every edge labelled q/p), linear
// and constant terms, a Walsh component over isolated vertices, and the
// chi map that turns such a function into a unit-modulus phase sequence.

#include "zccs/seqcore.hpp"

#include <cstdint>
#include <vector>

namespace zccs {

/// p^e as a checked 64-bit integer.
std::int64_t ipow(int p, int e);

/// Base-p expansion of I with digit 0 most significant:
///   I = sum_i p^{m-i-1} digits[i].
struct MixedRadixIndex {
  int base = 2;
  Eigen::ArrayXi digits;

  std::int64_t value() const;
};

MixedRadixIndex index_decode(std::int64_t index, int p, int digit_count);

/// One Hamiltonian path, stored as the ordered list of global variable
/// indices it visits. Consecutive entries are the q/p-labelled edges.
/// A single-vertex path has no edges and its start and end coincide.
struct PathGraph {
  std::vector<int> order;

  int size() const { return static_cast<int>(order.size()); }
  int start() const { return order.front(); }
  int end() const { return order.back(); }
};

/// A full function specification F: Z_p^{n+r} -> Z_q,
///
///   F(x) = (q/p) sum_i sum_edges x x            (paths)
///        + sum_j gamma_j x_j + theta            (linear + constant)
///        + (q/p) sum_i (alpha_i x_{end_i} + beta_i x_{start_i})
///        + (q/p) sum_u delta_u x_{n+u}          (Walsh part)
///        + (q/p) sum_{v>=1} beta_{v-1} beta_v   (if pmepr_term)
///
/// alpha, beta, delta are carried as integers; their base-p digits (most
/// significant first) pair with the paths / isolated vertices in order.
struct MvfSpec {
  int p = 2;
  int q = 2;
  std::vector<PathGraph> paths;  // disjoint cover of variables 0..n-1
  int isolated = 0;              // r
  Eigen::ArrayXi gamma;          // size n (empty means all zero)
  int theta = 0;
  std::int64_t alpha = 0;
  std::int64_t beta = 0;
  std::int64_t delta = 0;
  bool pmepr_term = false;

  int path_count() const { return static_cast<int>(paths.size()); }  // k
  int path_vars() const;                                             // n
  int var_count() const { return path_vars() + isolated; }           // m
  std::int64_t domain_size() const { return ipow(p, var_count()); }  // p^m

  void validate() const;
};

/// The path quadratic (q/p) sum_i sum_{j>=1} x_{pi_i(j-1)} x_{pi_i(j)} mod q.
/// x must hold one Z_p digit per path variable.
int eval_quadratic(const std::vector<PathGraph>& paths,
                   const Eigen::Ref<const Eigen::ArrayXi>& x, int p, int q);

/// F at the mixed-radix point I (digit 0 of I is x_0).
int eval_f(const MvfSpec& spec, std::int64_t index);

/// chi(F): the length-p^m phase sequence with phases[I] = F(I).
PhaseSequence chi(const MvfSpec& spec);

/// Dot product between the Walsh sequences chi(Omega^{delta1}) and
/// chi(Omega^{delta2}) over r isolated vertices; zero whenever the two
/// indices differ.
ResidueSum walsh_dot(std::int64_t delta1, std::int64_t delta2, int p, int q,
                     int r);

}  // namespace zccs

#pragma once

// Exact complex-unit sequence algebra: phases over Z_q standing for q-th
// roots of unity, aperiodic correlation of sequences and of codes.
// Correlation values are carried as integer residue histograms over Z_q
// (a count per residue j of the term zeta_q^j), so sums stay exact and
// the numeric boundary is crossed only when a value is evaluated or
// tested for zero.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <vector>

namespace zccs {

using PhaseArray = Eigen::Array<std::int32_t, Eigen::Dynamic, 1>;
using PhaseMatrix =
    Eigen::Array<std::int32_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CountArray = Eigen::Array<std::int64_t, Eigen::Dynamic, 1>;
using Complex = std::complex<double>;

/// zeta_q^0 .. zeta_q^{q-1}, cached per thread.
const std::vector<Complex>& unit_roots(int q);

/// A length-N sequence of phases in Z_q; entry i stands for zeta_q^{phases[i]}.
struct PhaseSequence {
  int q = 2;
  PhaseArray phases;

  PhaseSequence() = default;
  PhaseSequence(int modulus, PhaseArray ph);

  Eigen::Index size() const { return phases.size(); }
};

/// Integer combination sum_j counts[j] * zeta_q^j. Counts may go negative
/// after subtraction.
class ResidueSum {
 public:
  explicit ResidueSum(int modulus);
  ResidueSum(int modulus, CountArray counts);

  int modulus() const { return q_; }
  const CountArray& counts() const { return counts_; }

  void add(int residue, std::int64_t n = 1) { counts_[residue] += n; }

  ResidueSum& operator+=(const ResidueSum& other);
  ResidueSum operator-(const ResidueSum& other) const;

  /// Counts re-indexed j -> (q - j) mod q.
  ResidueSum conjugated() const;

  /// Numeric evaluation with long double accumulation.
  Complex value() const;

  /// Total mass sum_j |counts[j]|.
  std::int64_t mass() const;

  /// |value| < 1e-9 * (mass + 1).
  bool is_zero() const;

 private:
  int q_;
  CountArray counts_;
};

inline bool is_zero(const ResidueSum& v) { return v.is_zero(); }

/// Correlation values for every shift tau in (-N, N).
struct CorrelationProfile {
  int q = 2;
  Eigen::Index length = 0;
  std::vector<ResidueSum> values;  // index tau + length - 1

  const ResidueSum& at(Eigen::Index tau) const;
};

/// Aperiodic (cross-)correlation sum of a against b at shift tau:
///   sum_{i=0}^{N-1-tau} a[i+tau] * conj(b[i])        for 0 <= tau < N,
///   sum_{i=0}^{N+tau-1} a[i]     * conj(b[i-tau])    for -N < tau < 0,
/// and the zero sum for |tau| >= N.
ResidueSum accs(const PhaseSequence& a, const PhaseSequence& b,
                Eigen::Index tau);

CorrelationProfile full_profile(const PhaseSequence& a, const PhaseSequence& b);

/// Code-level correlation: row-wise accs summed over the M rows.
ResidueSum code_ccs(const Eigen::Ref<const PhaseMatrix>& cs,
                    const Eigen::Ref<const PhaseMatrix>& ct, int q,
                    Eigen::Index tau);

}  // namespace zccs

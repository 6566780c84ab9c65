#pragma once

// Classification of code sets against the type-I / type-II zero-correlation
// zone definitions: exhaustive evaluation of code-level correlations over
// all pairs and shifts, zone-width extraction, CCC detection, code-count
// bounds and PMEPR figures.
//
// Two interchangeable engines back the pair/shift scan:
//  - exhaustive: direct correlation of the matrices, construction-agnostic;
//  - structural: for sets carrying construction parameters whose entries
//    match the generating function, the row sum over beta is collapsed
//    analytically and "all pairs vanish at shift tau" is decided exactly
//    from per-shift digit-bucket histograms (the pair values are the
//    invertible character transform of those buckets, so they vanish
//    together). Entries are re-checked against the function first; on any
//    mismatch the exhaustive engine runs instead.
// Reports from the two engines agree; the test suite asserts this on
// desk-scale sets.

#include "zccs/construct.hpp"
#include "zccs/seqcore.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace zccs {

struct Witness {
  std::int64_t s = 0;
  std::int64_t t = 0;
  std::int64_t tau = 0;
  double magnitude = 0.0;
};

enum class ClassifyEngine { automatic, exhaustive, structural };

struct ClassifyOptions {
  ClassifyEngine engine = ClassifyEngine::automatic;
  bool with_pmepr = true;  // row/column PMEPR bounds are O(K M N^2); optional
  int pmepr_oversample = 16;
  int threads = 0;             // 0: THREADS env var, else hardware
  std::int64_t claimed_z = 0;  // > 0: certify the type-II conditions at this Z
};

struct ZccsReport {
  std::int64_t num_codes = 0;   // K
  std::int64_t flock_size = 0;  // M
  std::int64_t length = 0;      // N
  int q = 2;

  std::vector<std::int64_t> tau0_diagonal;  // expected N*M each
  bool tau0_offdiagonal_zero = false;

  std::int64_t type1_z = 1;  // all pairs vanish for 1 <= |tau| < type1_z
  std::int64_t type2_z = 1;  // all pairs vanish for N - type2_z < |tau| < N
  bool is_ccc = false;

  bool type1_bound_ok = false;       // K <= M * floor(N / type1_z)
  bool type2_count_attained = false; // K == M * (N - type2_z + 1)

  double max_row_pmepr_bound = 0.0;  // NaN when skipped
  double max_col_pmepr_bound = 0.0;

  std::vector<Witness> witnesses;  // blocking shifts / claim violations

  std::string engine;  // "exhaustive" or "structural"

  // same-delta (uncorrelated-pair family) certification; only computed
  // when construction parameters are available
  std::optional<bool> uncorrelated_pairs_zero;

  std::int64_t claimed_z = 0;
  bool certified = false;  // type-II conditions hold at claimed_z
};

/// Construction-agnostic classification of raw matrices.
ZccsReport classify(const std::vector<PhaseMatrix>& codes, int q,
                    const ClassifyOptions& options = {});

/// Classification of a constructed set; the automatic engine uses the
/// structural path when the matrices verify against the parameters.
ZccsReport classify(const CodeSet& set, const ClassifyOptions& options = {});

/// (C(0) + 2 sum_{tau>0} |C(tau)|) / C(0) over the sequence's AACS.
double row_pmepr_bound(const PhaseSequence& a);

/// Peak of |sum_i a_i e^{2 pi sqrt(-1) i t}|^2 / N over the oversampled
/// grid t = j / (oversample * N).
double measured_pmepr(const PhaseSequence& a, int oversample);

/// The N columns of an M x N code, each a length-M sequence.
std::vector<PhaseSequence> column_sequences(int q,
                                            const Eigen::Ref<const PhaseMatrix>& code);

}  // namespace zccs

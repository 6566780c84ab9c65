#include "zccs/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace zccs {

namespace {

int resolve_threads(const ClassifyOptions& options, std::int64_t jobs) {
  int threads = options.threads;
  if (threads <= 0) {
    if (const char* env = std::getenv("THREADS")) threads = std::atoi(env);
  }
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads <= 0) threads = 1;
  return static_cast<int>(std::min<std::int64_t>(threads, std::max<std::int64_t>(jobs, 1)));
}

struct RootTable {
  std::vector<double> re, im;
  explicit RootTable(int q) : re(static_cast<std::size_t>(q)), im(static_cast<std::size_t>(q)) {
    const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    for (int j = 0; j < q; ++j) {
      re[static_cast<std::size_t>(j)] = static_cast<double>(std::cos(two_pi * j / q));
      im[static_cast<std::size_t>(j)] = static_cast<double>(std::sin(two_pi * j / q));
    }
  }
};

// |sum_j counts[j] zeta_q^j| and the is-zero test at 1e-9 * (mass + 1)
bool histogram_is_zero(const std::int64_t* counts, int q, const RootTable& roots,
                       double* magnitude = nullptr) {
  double re = 0.0, im = 0.0;
  std::int64_t mass = 0;
  for (int j = 0; j < q; ++j) {
    if (counts[j] == 0) continue;
    const double c = static_cast<double>(counts[j]);
    re += c * roots.re[static_cast<std::size_t>(j)];
    im += c * roots.im[static_cast<std::size_t>(j)];
    mass += std::llabs(counts[j]);
  }
  const double mag = std::hypot(re, im);
  if (magnitude) *magnitude = mag;
  return mag < 1e-9 * (static_cast<double>(mass) + 1.0);
}

void accumulate_row_diffs(const std::int32_t* a, const std::int32_t* b, int q,
                          std::int64_t n, std::int64_t tau, std::int64_t* counts) {
  for (std::int64_t i = 0; i + tau < n; ++i) {
    int d = a[i + tau] - b[i];
    if (d < 0) d += q;
    ++counts[d];
  }
}

// ---------------------------------------------------------------------------
// exhaustive engine
// ---------------------------------------------------------------------------

struct ScanResult {
  std::vector<char> any_nonzero;  // per shift tau in [0, N); tau = 0 means an
                                  // off-diagonal violation at zero shift
  bool same_delta_clean = true;   // pairs flagged by the predicate stayed zero
};

// shift-tau correlation of the (s, t) code pair, nonzero test
bool pair_nonzero(const PhaseMatrix& cs, const PhaseMatrix& ct, int q,
                  std::int64_t tau, const RootTable& roots,
                  std::vector<std::int64_t>& scratch, double* magnitude = nullptr) {
  std::fill(scratch.begin(), scratch.end(), 0);
  const std::int64_t n = cs.cols();
  for (Eigen::Index nu = 0; nu < cs.rows(); ++nu)
    accumulate_row_diffs(cs.data() + nu * n, ct.data() + nu * n, q, n, tau,
                         scratch.data());
  return !histogram_is_zero(scratch.data(), q, roots, magnitude);
}

ScanResult exhaustive_scan(const std::vector<PhaseMatrix>& codes, int q,
                           int threads,
                           const std::function<bool(std::int64_t, std::int64_t)>&
                               same_delta) {
  const std::int64_t K = static_cast<std::int64_t>(codes.size());
  const std::int64_t N = codes.front().cols();
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  pairs.reserve(static_cast<std::size_t>(K * (K + 1) / 2));
  for (std::int64_t s = 0; s < K; ++s)
    for (std::int64_t t = s; t < K; ++t) pairs.emplace_back(s, t);

  const int nthreads = std::min<int>(threads, static_cast<int>(pairs.size()));
  std::vector<std::vector<char>> local_nz(
      static_cast<std::size_t>(nthreads),
      std::vector<char>(static_cast<std::size_t>(N), 0));
  std::vector<char> local_clean(static_cast<std::size_t>(nthreads), 1);
  std::atomic<std::size_t> next{0};

  auto worker = [&](int id) {
    RootTable roots(q);
    std::vector<std::int64_t> scratch(static_cast<std::size_t>(q), 0);
    std::vector<char>& nz = local_nz[static_cast<std::size_t>(id)];
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= pairs.size()) break;
      const auto [s, t] = pairs[idx];
      const bool flagged = same_delta && same_delta(s, t);
      for (std::int64_t tau = 0; tau < N; ++tau) {
        bool hit = pair_nonzero(codes[static_cast<std::size_t>(s)],
                                codes[static_cast<std::size_t>(t)], q, tau,
                                roots, scratch);
        if (hit && tau == 0 && s == t) hit = false;  // diagonal peak is expected
        if (!hit && s != t && tau > 0)
          hit = pair_nonzero(codes[static_cast<std::size_t>(t)],
                             codes[static_cast<std::size_t>(s)], q, tau, roots,
                             scratch);
        if (hit) {
          nz[static_cast<std::size_t>(tau)] = 1;
          if (flagged) local_clean[static_cast<std::size_t>(id)] = 0;
        }
      }
    }
  };

  if (nthreads <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker, i);
    for (std::thread& th : pool) th.join();
  }

  ScanResult out;
  out.any_nonzero.assign(static_cast<std::size_t>(N), 0);
  for (int i = 0; i < nthreads; ++i) {
    for (std::int64_t tau = 0; tau < N; ++tau)
      out.any_nonzero[static_cast<std::size_t>(tau)] |=
          local_nz[static_cast<std::size_t>(i)][static_cast<std::size_t>(tau)];
    out.same_delta_clean &= (local_clean[static_cast<std::size_t>(i)] != 0);
  }
  return out;
}

std::optional<Witness> exhaustive_witness(const std::vector<PhaseMatrix>& codes,
                                          int q, std::int64_t tau) {
  RootTable roots(q);
  std::vector<std::int64_t> scratch(static_cast<std::size_t>(q), 0);
  const std::int64_t K = static_cast<std::int64_t>(codes.size());
  for (std::int64_t s = 0; s < K; ++s)
    for (std::int64_t t = 0; t < K; ++t) {
      if (tau == 0 && s == t) continue;
      double mag = 0.0;
      if (pair_nonzero(codes[static_cast<std::size_t>(s)],
                       codes[static_cast<std::size_t>(t)], q, tau, roots,
                       scratch, &mag))
        return Witness{s, t, tau, mag};
    }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// structural engine
// ---------------------------------------------------------------------------
//
// With rows chi(F_beta) for beta = 0..p^k-1, the beta-sum of any code-pair
// correlation collapses: sum_beta zeta_p^{beta . (S(i+tau) - S(i))} is p^k
// when all start digits match and 0 otherwise. What remains of
// C(C_s, C_t)(tau) is a character transform, over the code offsets
// (alpha_s, alpha_t, delta_s, delta_t), of per-shift bucket histograms
// indexed by (end digits, end digits', walsh digits, walsh digits'). The
// transform is invertible, so all pairs vanish at a shift exactly when
// every bucket histogram evaluates to zero.

struct StructuralTables {
  int p = 2, q = 2, k = 1, r = 0, unit = 1;
  std::int64_t n_index = 0, pk = 1, pr = 1;
  std::vector<std::int32_t> base;        // offset-free part of F, mod q
  std::vector<std::int32_t> start_code;  // packed start digits
  std::vector<std::int32_t> end_code;    // packed end digits
  std::vector<std::int32_t> walsh_code;  // packed isolated digits
  // digit dot products mod p over packed codes
  std::vector<std::vector<std::int32_t>> dot_k, dot_r;
  // packed digitwise difference (a - b mod p per digit)
  std::vector<std::vector<std::int32_t>> diff_k;
};

std::vector<std::vector<std::int32_t>> dot_table(int p, int digits) {
  const std::int64_t size = ipow(p, digits);
  std::vector<std::vector<std::int32_t>> dot(
      static_cast<std::size_t>(size),
      std::vector<std::int32_t>(static_cast<std::size_t>(size), 0));
  for (std::int64_t a = 0; a < size; ++a)
    for (std::int64_t b = 0; b < size; ++b) {
      std::int64_t acc = 0, aa = a, bb = b;
      for (int d = 0; d < digits; ++d) {
        acc += (aa % p) * (bb % p);
        aa /= p;
        bb /= p;
      }
      dot[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          static_cast<std::int32_t>(acc % p);
    }
  return dot;
}

std::vector<std::vector<std::int32_t>> diff_table(int p, int digits) {
  const std::int64_t size = ipow(p, digits);
  std::vector<std::vector<std::int32_t>> diff(
      static_cast<std::size_t>(size),
      std::vector<std::int32_t>(static_cast<std::size_t>(size), 0));
  for (std::int64_t a = 0; a < size; ++a)
    for (std::int64_t b = 0; b < size; ++b) {
      std::int64_t out = 0, scale = 1, aa = a, bb = b;
      for (int d = 0; d < digits; ++d) {
        out += scale * ((aa % p - bb % p + p) % p);
        scale *= p;
        aa /= p;
        bb /= p;
      }
      diff[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          static_cast<std::int32_t>(out);
    }
  return diff;
}

StructuralTables make_structural_tables(const ConstructionParams& params) {
  StructuralTables t;
  t.p = params.p;
  t.q = params.q;
  t.k = params.path_count();
  t.r = params.isolated;
  t.unit = params.q / params.p;
  t.n_index = params.length();
  t.pk = params.flock_size();
  t.pr = ipow(params.p, params.isolated);

  const int m = params.var_count();
  const int n = params.path_vars();
  const std::vector<PathGraph> paths = params.paths();
  t.base.resize(static_cast<std::size_t>(t.n_index));
  t.start_code.resize(static_cast<std::size_t>(t.n_index));
  t.end_code.resize(static_cast<std::size_t>(t.n_index));
  t.walsh_code.resize(static_cast<std::size_t>(t.n_index));

  std::vector<int> x(static_cast<std::size_t>(m), 0);
  for (std::int64_t i = 0; i < t.n_index; ++i) {
    std::int64_t val = params.theta;
    for (const PathGraph& path : paths)
      for (std::size_t j = 1; j < path.order.size(); ++j)
        val += static_cast<std::int64_t>(t.unit) *
               x[static_cast<std::size_t>(path.order[j - 1])] *
               x[static_cast<std::size_t>(path.order[j])];
    if (params.gamma.size() != 0)
      for (int j = 0; j < n; ++j)
        val += static_cast<std::int64_t>(params.gamma[j]) *
               x[static_cast<std::size_t>(j)];
    t.base[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(val % params.q);
    std::int32_t sc = 0, ec = 0, wc = 0;
    for (const PathGraph& path : paths) {
      sc = sc * params.p + x[static_cast<std::size_t>(path.start())];
      ec = ec * params.p + x[static_cast<std::size_t>(path.end())];
    }
    for (int u = 0; u < t.r; ++u)
      wc = wc * params.p + x[static_cast<std::size_t>(n + u)];
    t.start_code[static_cast<std::size_t>(i)] = sc;
    t.end_code[static_cast<std::size_t>(i)] = ec;
    t.walsh_code[static_cast<std::size_t>(i)] = wc;
    for (int d = m - 1; d >= 0; --d) {
      if (++x[static_cast<std::size_t>(d)] < params.p) break;
      x[static_cast<std::size_t>(d)] = 0;
    }
  }
  t.dot_k = dot_table(params.p, t.k);
  t.dot_r = dot_table(params.p, t.r);
  t.diff_k = diff_table(params.p, t.k);
  return t;
}

// per-shift bucket histograms, keyed by (end', end, walsh', walsh) of the
// contributing index pairs (i + tau, i) whose start digits agree
struct BucketStore {
  int q = 2;
  std::int64_t n_keys = 0;
  std::vector<std::int64_t> counts;  // n_keys * q
  std::vector<std::int64_t> touched;
  std::vector<std::int32_t> stamp;
  std::int32_t generation = 0;

  BucketStore(int modulus, std::int64_t keys)
      : q(modulus),
        n_keys(keys),
        counts(static_cast<std::size_t>(keys * modulus), 0),
        stamp(static_cast<std::size_t>(keys), -1) {}

  void start_shift() {
    ++generation;
    touched.clear();
  }

  void add(std::int64_t key, int residue) {
    if (stamp[static_cast<std::size_t>(key)] != generation) {
      stamp[static_cast<std::size_t>(key)] = generation;
      std::fill_n(counts.begin() + key * q, q, 0);
      touched.push_back(key);
    }
    ++counts[static_cast<std::size_t>(key * q + residue)];
  }
};

void fill_buckets(const StructuralTables& t, std::int64_t tau, BucketStore& store) {
  store.start_shift();
  const std::int64_t pr2 = t.pr * t.pr;
  for (std::int64_t i = 0; i + tau < t.n_index; ++i) {
    const std::size_t a = static_cast<std::size_t>(i + tau);
    const std::size_t b = static_cast<std::size_t>(i);
    if (t.start_code[a] != t.start_code[b]) continue;
    const std::int64_t key =
        (static_cast<std::int64_t>(t.end_code[a]) * t.pk + t.end_code[b]) * pr2 +
        static_cast<std::int64_t>(t.walsh_code[a]) * t.pr + t.walsh_code[b];
    int g = t.base[a] - t.base[b];
    if (g < 0) g += t.q;
    store.add(key, g);
  }
}

bool buckets_all_zero(const BucketStore& store, const RootTable& roots) {
  for (std::int64_t key : store.touched)
    if (!histogram_is_zero(store.counts.data() + key * store.q, store.q, roots))
      return false;
  return true;
}

// Same-delta pair family at one shift: every pair (alpha_s != alpha_t, equal
// delta) vanishes iff, for each delta, the delta-twisted (end', end) matrix
// depends only on the digitwise difference end' - end.
bool same_delta_zero_at(const StructuralTables& t, const BucketStore& store,
                        const RootTable& roots) {
  const std::int64_t pk = t.pk, pr = t.pr;
  const std::int64_t pairs_ee = pk * pk;
  std::vector<std::int64_t> m_counts(static_cast<std::size_t>(pairs_ee * t.q));
  std::vector<char> m_touched(static_cast<std::size_t>(pairs_ee));
  std::vector<std::int64_t> diff_hist(static_cast<std::size_t>(t.q));

  for (std::int64_t delta = 0; delta < pr; ++delta) {
    std::fill(m_counts.begin(), m_counts.end(), 0);
    std::fill(m_touched.begin(), m_touched.end(), 0);
    const auto& ddot = t.dot_r[static_cast<std::size_t>(delta)];
    for (std::int64_t key : store.touched) {
      const std::int64_t wb = key % pr;
      const std::int64_t wa = (key / pr) % pr;
      const std::int64_t ee = key / (pr * pr);  // e' * pk + e
      const int twist =
          t.unit * ((ddot[static_cast<std::size_t>(wa)] -
                     ddot[static_cast<std::size_t>(wb)] + t.p) % t.p);
      const std::int64_t* src = store.counts.data() + key * t.q;
      std::int64_t* dst = m_counts.data() + ee * t.q;
      m_touched[static_cast<std::size_t>(ee)] = 1;
      for (int g = 0; g < t.q; ++g)
        if (src[g] != 0) dst[(g + twist) % t.q] += src[g];
    }
    // classes by digitwise difference: all members must share one value
    std::vector<char> class_checked(static_cast<std::size_t>(pk), 0);
    for (std::int64_t ea = 0; ea < pk; ++ea)
      for (std::int64_t eb = 0; eb < pk; ++eb) {
        const std::int64_t ee = ea * pk + eb;
        if (!m_touched[static_cast<std::size_t>(ee)]) continue;
        if (histogram_is_zero(m_counts.data() + ee * t.q, t.q, roots)) continue;
        const std::int32_t d =
            t.diff_k[static_cast<std::size_t>(ea)][static_cast<std::size_t>(eb)];
        if (class_checked[static_cast<std::size_t>(d)]) continue;
        class_checked[static_cast<std::size_t>(d)] = 1;
        // reference member: ea' = 0, eb' = 0 - d (digitwise)
        const std::int64_t ref_eb =
            t.diff_k[0][static_cast<std::size_t>(d)];  // 0 - d mod p per digit
        const std::int64_t ref = 0 * pk + ref_eb;
        const std::int64_t* ref_hist = m_counts.data() + ref * t.q;
        for (std::int64_t e2 = 0; e2 < pk; ++e2) {
          // partner with the same digitwise difference d
          const std::int64_t f2 =
              t.diff_k[static_cast<std::size_t>(e2)][static_cast<std::size_t>(d)];
          const std::int64_t* hist = m_counts.data() + (e2 * pk + f2) * t.q;
          for (int g = 0; g < t.q; ++g) diff_hist[static_cast<std::size_t>(g)] = hist[g] - ref_hist[g];
          if (!histogram_is_zero(diff_hist.data(), t.q, roots)) return false;
        }
      }
  }
  return true;
}

// concrete nonzero pair at a shift whose buckets are not all zero
std::optional<Witness> structural_witness(const StructuralTables& t,
                                          const BucketStore& store,
                                          std::int64_t tau,
                                          const RootTable& roots) {
  double best_mag = 0.0;
  std::optional<Witness> best;
  const std::int64_t pr2 = t.pr * t.pr;
  for (std::int64_t s = 0; s < t.pk * t.pr; ++s) {
    const std::int64_t alpha_s = s / t.pr, delta_s = s % t.pr;
    for (std::int64_t u = 0; u < t.pk * t.pr; ++u) {
      if (tau == 0 && s == u) continue;
      const std::int64_t alpha_t = u / t.pr, delta_t = u % t.pr;
      double re = 0.0, im = 0.0;
      std::int64_t mass = 0;
      const auto& adot = t.dot_k[static_cast<std::size_t>(alpha_s)];
      const auto& bdot = t.dot_k[static_cast<std::size_t>(alpha_t)];
      const auto& cdot = t.dot_r[static_cast<std::size_t>(delta_s)];
      const auto& ddot = t.dot_r[static_cast<std::size_t>(delta_t)];
      for (std::int64_t key : store.touched) {
        const std::int64_t wb = key % t.pr;
        const std::int64_t wa = (key / t.pr) % t.pr;
        const std::int64_t eb = (key / pr2) % t.pk;
        const std::int64_t ea = key / (pr2 * t.pk);
        const int twist =
            t.unit *
            ((adot[static_cast<std::size_t>(ea)] - bdot[static_cast<std::size_t>(eb)] +
              cdot[static_cast<std::size_t>(wa)] - ddot[static_cast<std::size_t>(wb)] +
              2 * t.p) % t.p);
        const std::int64_t* hist = store.counts.data() + key * t.q;
        for (int g = 0; g < t.q; ++g) {
          if (hist[g] == 0) continue;
          const int e = (g + twist) % t.q;
          const double c = static_cast<double>(hist[g]);
          re += c * roots.re[static_cast<std::size_t>(e)];
          im += c * roots.im[static_cast<std::size_t>(e)];
          mass += std::llabs(hist[g]);
        }
      }
      const double scale = static_cast<double>(t.pk);
      const double mag = scale * std::hypot(re, im);
      const double tol = 1e-9 * (scale * static_cast<double>(mass) + 1.0);
      if (mag >= tol) return Witness{s, u, tau, mag};
      if (mag > best_mag) {
        best_mag = mag;
        best = Witness{s, u, tau, mag};
      }
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// shared report assembly
// ---------------------------------------------------------------------------

void finalize_report(ZccsReport& report, const std::vector<char>& any_nonzero) {
  const std::int64_t N = report.length;
  std::int64_t first_nz = 0, last_nz = 0;
  for (std::int64_t tau = 1; tau < N; ++tau)
    if (any_nonzero[static_cast<std::size_t>(tau)]) {
      if (first_nz == 0) first_nz = tau;
      last_nz = tau;
    }
  report.type1_z = first_nz == 0 ? N : first_nz;
  report.type2_z = last_nz == 0 ? N : N - last_nz;
  report.tau0_offdiagonal_zero = !any_nonzero[0];
  report.is_ccc = report.num_codes == report.flock_size &&
                  report.tau0_offdiagonal_zero && report.type2_z == N;
  report.type1_bound_ok =
      report.num_codes <= report.flock_size * (N / report.type1_z);
  report.type2_count_attained =
      report.num_codes == report.flock_size * (N - report.type2_z + 1);
  if (report.claimed_z > 0)
    report.certified =
        report.tau0_offdiagonal_zero && report.type2_z >= report.claimed_z;
}

std::vector<std::int64_t> diagonal_values(const std::vector<PhaseMatrix>& codes) {
  std::vector<std::int64_t> out;
  out.reserve(codes.size());
  for (const PhaseMatrix& code : codes) out.push_back(code.rows() * code.cols());
  return out;
}

void check_input(const std::vector<PhaseMatrix>& codes, int q) {
  if (q < 2) throw std::invalid_argument("classify: modulus must be >= 2");
  if (codes.empty()) throw std::invalid_argument("classify: no codes given");
  const Eigen::Index rows = codes.front().rows();
  const Eigen::Index cols = codes.front().cols();
  if (rows < 1 || cols < 1)
    throw std::invalid_argument("classify: empty code matrix");
  for (const PhaseMatrix& code : codes) {
    if (code.rows() != rows || code.cols() != cols)
      throw std::invalid_argument("classify: ragged input");
    if ((code < 0).any() || (code >= q).any())
      throw std::invalid_argument("classify: phases must lie in [0, q)");
  }
}

void append_pmepr(ZccsReport& report, const std::vector<PhaseMatrix>& codes,
                  int q, bool enabled) {
  if (!enabled) {
    report.max_row_pmepr_bound = std::numeric_limits<double>::quiet_NaN();
    report.max_col_pmepr_bound = std::numeric_limits<double>::quiet_NaN();
    return;
  }
  double row_max = 0.0, col_max = 0.0;
  for (const PhaseMatrix& code : codes) {
    for (Eigen::Index nu = 0; nu < code.rows(); ++nu) {
      PhaseSequence row(q, code.row(nu).transpose());
      row_max = std::max(row_max, row_pmepr_bound(row));
    }
    for (const PhaseSequence& col : column_sequences(q, code))
      col_max = std::max(col_max, row_pmepr_bound(col));
  }
  report.max_row_pmepr_bound = row_max;
  report.max_col_pmepr_bound = col_max;
}

ZccsReport classify_exhaustive(const std::vector<PhaseMatrix>& codes, int q,
                               const ClassifyOptions& options,
                               const ConstructionParams* params) {
  ZccsReport report;
  report.num_codes = static_cast<std::int64_t>(codes.size());
  report.flock_size = codes.front().rows();
  report.length = codes.front().cols();
  report.q = q;
  report.claimed_z = options.claimed_z;
  report.engine = "exhaustive";
  report.tau0_diagonal = diagonal_values(codes);

  std::function<bool(std::int64_t, std::int64_t)> same_delta;
  if (params) {
    const std::int64_t pr = ipow(params->p, params->isolated);
    same_delta = [pr](std::int64_t s, std::int64_t t) {
      return s != t && s % pr == t % pr;
    };
  }
  const std::int64_t npairs =
      report.num_codes * (report.num_codes + 1) / 2;
  ScanResult scan = exhaustive_scan(codes, q, resolve_threads(options, npairs),
                                    same_delta);
  finalize_report(report, scan.any_nonzero);
  if (params) report.uncorrelated_pairs_zero = scan.same_delta_clean;

  // blocking shifts as re-checkable witnesses
  std::vector<std::int64_t> interesting;
  if (!report.tau0_offdiagonal_zero) interesting.push_back(0);
  if (report.type1_z < report.length) interesting.push_back(report.type1_z);
  if (report.type2_z < report.length &&
      report.length - report.type2_z != report.type1_z)
    interesting.push_back(report.length - report.type2_z);
  for (std::int64_t tau : interesting)
    if (auto w = exhaustive_witness(codes, q, tau)) report.witnesses.push_back(*w);

  append_pmepr(report, codes, q, options.with_pmepr);
  return report;
}

ZccsReport classify_structural(const CodeSet& set, const ClassifyOptions& options) {
  const ConstructionParams& params = set.params;
  ZccsReport report;
  report.num_codes = params.num_codes();
  report.flock_size = params.flock_size();
  report.length = params.length();
  report.q = params.q;
  report.claimed_z = options.claimed_z;
  report.engine = "structural";
  report.tau0_diagonal = diagonal_values(set.codes);

  const StructuralTables t = make_structural_tables(params);
  RootTable roots(params.q);
  const std::int64_t n_keys = t.pk * t.pk * t.pr * t.pr;
  BucketStore store(params.q, n_keys);

  // tau = 0: off-diagonal pair values are the character transform of the
  // (end, walsh) population counts, so they all vanish iff the population
  // is flat across the p^{k+r} cells
  std::vector<std::int64_t> population(static_cast<std::size_t>(t.pk * t.pr), 0);
  for (std::int64_t i = 0; i < t.n_index; ++i)
    ++population[static_cast<std::size_t>(
        static_cast<std::int64_t>(t.end_code[static_cast<std::size_t>(i)]) * t.pr +
        t.walsh_code[static_cast<std::size_t>(i)])];
  const bool tau0_flat =
      std::all_of(population.begin(), population.end(),
                  [&](std::int64_t c) { return c == population.front(); });

  std::vector<char> any_nonzero(static_cast<std::size_t>(t.n_index), 0);
  any_nonzero[0] = !tau0_flat;
  bool same_delta_clean = tau0_flat;
  for (std::int64_t tau = 1; tau < t.n_index; ++tau) {
    fill_buckets(t, tau, store);
    if (!buckets_all_zero(store, roots)) {
      any_nonzero[static_cast<std::size_t>(tau)] = 1;
      if (!same_delta_zero_at(t, store, roots)) same_delta_clean = false;
    }
  }
  finalize_report(report, any_nonzero);
  report.uncorrelated_pairs_zero = same_delta_clean;

  std::vector<std::int64_t> interesting;
  if (!report.tau0_offdiagonal_zero) interesting.push_back(0);
  if (report.type1_z < report.length) interesting.push_back(report.type1_z);
  if (report.type2_z < report.length &&
      report.length - report.type2_z != report.type1_z)
    interesting.push_back(report.length - report.type2_z);
  for (std::int64_t tau : interesting) {
    fill_buckets(t, tau, store);
    if (auto w = structural_witness(t, store, tau, roots))
      report.witnesses.push_back(*w);
  }

  append_pmepr(report, set.codes, params.q, options.with_pmepr);
  return report;
}

bool matches_construction(const CodeSet& set) {
  const CodeSet expected = build_code_set(set.params);
  if (expected.codes.size() != set.codes.size()) return false;
  for (std::size_t i = 0; i < set.codes.size(); ++i) {
    if (expected.codes[i].rows() != set.codes[i].rows() ||
        expected.codes[i].cols() != set.codes[i].cols())
      return false;
    if (!(expected.codes[i] == set.codes[i]).all()) return false;
  }
  return true;
}

}  // namespace

ZccsReport classify(const std::vector<PhaseMatrix>& codes, int q,
                    const ClassifyOptions& options) {
  check_input(codes, q);
  if (options.engine == ClassifyEngine::structural)
    throw std::invalid_argument(
        "classify: structural engine needs construction parameters");
  return classify_exhaustive(codes, q, options, nullptr);
}

ZccsReport classify(const CodeSet& set, const ClassifyOptions& options) {
  set.params.validate();
  check_input(set.codes, set.params.q);
  if (static_cast<std::int64_t>(set.codes.size()) != set.params.num_codes() ||
      set.codes.front().rows() != set.params.flock_size() ||
      set.codes.front().cols() != set.params.length())
    throw std::invalid_argument("classify: set shape does not match parameters");

  switch (options.engine) {
    case ClassifyEngine::exhaustive:
      return classify_exhaustive(set.codes, set.params.q, options, &set.params);
    case ClassifyEngine::structural:
      if (!matches_construction(set))
        throw std::invalid_argument(
            "classify: matrices do not match the construction parameters");
      return classify_structural(set, options);
    case ClassifyEngine::automatic:
    default:
      if (matches_construction(set)) return classify_structural(set, options);
      return classify_exhaustive(set.codes, set.params.q, options, &set.params);
  }
}

double row_pmepr_bound(const PhaseSequence& a) {
  const CorrelationProfile profile = full_profile(a, a);
  const double c0 = profile.at(0).value().real();
  double acc = 0.0;
  for (Eigen::Index tau = 1; tau < a.size(); ++tau)
    acc += std::abs(profile.at(tau).value());
  return (c0 + 2.0 * acc) / c0;
}

double measured_pmepr(const PhaseSequence& a, int oversample) {
  if (oversample < 4)
    throw std::invalid_argument("measured_pmepr: oversample must be >= 4");
  const std::vector<Complex>& roots = unit_roots(a.q);
  const Eigen::Index n = a.size();
  const std::int64_t grid = static_cast<std::int64_t>(oversample) * n;
  double peak = 0.0;
  for (std::int64_t j = 0; j < grid; ++j) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) /
                         static_cast<double>(grid);
    const Complex w(std::cos(theta), std::sin(theta));
    Complex rot(1.0, 0.0);
    Complex acc(0.0, 0.0);
    for (Eigen::Index i = 0; i < n; ++i) {
      acc += roots[static_cast<std::size_t>(a.phases[i])] * rot;
      rot *= w;
    }
    peak = std::max(peak, std::norm(acc));
  }
  return peak / static_cast<double>(n);
}

std::vector<PhaseSequence> column_sequences(
    int q, const Eigen::Ref<const PhaseMatrix>& code) {
  std::vector<PhaseSequence> out;
  out.reserve(static_cast<std::size_t>(code.cols()));
  for (Eigen::Index j = 0; j < code.cols(); ++j)
    out.emplace_back(q, PhaseArray(code.col(j)));
  return out;
}

}  // namespace zccs

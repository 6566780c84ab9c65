#include "zccs/construct.hpp"

#include <numeric>
#include <stdexcept>

namespace zccs {

int ConstructionParams::path_vars() const {
  return std::accumulate(path_sizes.begin(), path_sizes.end(), 0);
}

std::int64_t ConstructionParams::num_codes() const {
  return ipow(p, path_count() + isolated);
}

std::int64_t ConstructionParams::flock_size() const {
  return ipow(p, path_count());
}

std::int64_t ConstructionParams::length() const {
  return ipow(p, var_count());
}

std::int64_t ConstructionParams::zcz_width() const {
  return length() - ipow(p, isolated) + 1;
}

std::vector<PathGraph> ConstructionParams::paths() const {
  std::vector<PathGraph> out;
  out.reserve(path_sizes.size());
  if (path_orders.empty()) {
    int offset = 0;
    for (int size : path_sizes) {
      PathGraph path;
      path.order.resize(static_cast<std::size_t>(size));
      std::iota(path.order.begin(), path.order.end(), offset);
      offset += size;
      out.push_back(std::move(path));
    }
  } else {
    for (const std::vector<int>& order : path_orders)
      out.push_back(PathGraph{order});
  }
  return out;
}

void ConstructionParams::validate() const {
  if (p < 2) throw std::invalid_argument("p must be >= 2");
  if (q < 2 || q % p != 0)
    throw std::invalid_argument("q must be a positive multiple of p");
  if (path_sizes.empty()) throw std::invalid_argument("at least one path required");
  for (int size : path_sizes)
    if (size < 1) throw std::invalid_argument("every path needs >= 1 vertex");
  if (isolated < 0) throw std::invalid_argument("r must be >= 0");
  if (!path_orders.empty()) {
    if (path_orders.size() != path_sizes.size())
      throw std::invalid_argument("one vertex order per path required");
    for (std::size_t i = 0; i < path_orders.size(); ++i)
      if (static_cast<int>(path_orders[i].size()) != path_sizes[i])
        throw std::invalid_argument("vertex order length must match path size");
  }
  if (strict_coeffs) {
    if (theta >= p) throw std::invalid_argument("strict mode: theta must lie in Z_p");
    if (gamma.size() != 0 && (gamma >= p).any())
      throw std::invalid_argument("strict mode: gamma must lie in Z_p");
  }
  // the remaining checks (disjoint cover, gamma size/range) sit in MvfSpec
  row_function(0, 0, 0).validate();
}

MvfSpec ConstructionParams::row_function(std::int64_t alpha, std::int64_t beta,
                                         std::int64_t delta) const {
  MvfSpec spec;
  spec.p = p;
  spec.q = q;
  spec.paths = paths();
  spec.isolated = isolated;
  spec.gamma = gamma;
  spec.theta = theta;
  spec.alpha = alpha;
  spec.beta = beta;
  spec.delta = delta;
  spec.pmepr_term = pmepr_term;
  return spec;
}

namespace {

// Evaluation tables over the index domain: per-index packed start/end/walsh
// digit codes and the offset-free part of F. Rows then differ only through
// small digit-dot lookups, which keeps set assembly linear in the output.
struct EvalTables {
  std::int64_t n_index = 0;
  int unit = 1;  // q/p
  std::vector<std::int32_t> base;        // quadratic + gamma + theta mod q
  std::vector<std::int32_t> start_code;  // packed start digits, [0, p^k)
  std::vector<std::int32_t> end_code;    // packed end digits, [0, p^k)
  std::vector<std::int32_t> walsh_code;  // packed isolated digits, [0, p^r)
};

EvalTables make_tables(const ConstructionParams& params) {
  const int p = params.p;
  const int m = params.var_count();
  const int n = params.path_vars();
  const int k = params.path_count();
  const std::vector<PathGraph> paths = params.paths();

  EvalTables t;
  t.n_index = params.length();
  t.unit = params.q / p;
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

    std::int32_t sc = 0, ec = 0;
    for (int u = 0; u < k; ++u) {
      sc = sc * p + x[static_cast<std::size_t>(paths[static_cast<std::size_t>(u)].start())];
      ec = ec * p + x[static_cast<std::size_t>(paths[static_cast<std::size_t>(u)].end())];
    }
    std::int32_t wc = 0;
    for (int u = 0; u < params.isolated; ++u)
      wc = wc * p + x[static_cast<std::size_t>(n + u)];
    t.start_code[static_cast<std::size_t>(i)] = sc;
    t.end_code[static_cast<std::size_t>(i)] = ec;
    t.walsh_code[static_cast<std::size_t>(i)] = wc;

    for (int d = m - 1; d >= 0; --d) {
      if (++x[static_cast<std::size_t>(d)] < p) break;
      x[static_cast<std::size_t>(d)] = 0;
    }
  }
  return t;
}

// dot[v][c] = sum of digitwise products of v and c mod p, both packed base-p
std::vector<std::vector<std::int32_t>> digit_dot_table(int p, int digits) {
  const std::int64_t size = ipow(p, digits);
  std::vector<std::vector<std::int32_t>> dot(
      static_cast<std::size_t>(size),
      std::vector<std::int32_t>(static_cast<std::size_t>(size), 0));
  for (std::int64_t v = 0; v < size; ++v)
    for (std::int64_t c = 0; c < size; ++c) {
      std::int64_t acc = 0, vv = v, cc = c;
      for (int d = 0; d < digits; ++d) {
        acc += (vv % p) * (cc % p);
        vv /= p;
        cc /= p;
      }
      dot[static_cast<std::size_t>(v)][static_cast<std::size_t>(c)] =
          static_cast<std::int32_t>(acc % p);
    }
  return dot;
}

int pmepr_offset(std::int64_t beta, int p, int k) {
  std::vector<int> digits(static_cast<std::size_t>(k), 0);
  std::int64_t rest = beta;
  for (int i = k - 1; i >= 0; --i) {
    digits[static_cast<std::size_t>(i)] = static_cast<int>(rest % p);
    rest /= p;
  }
  int acc = 0;
  for (int v = 1; v < k; ++v)
    acc = (acc + digits[static_cast<std::size_t>(v - 1)] *
                     digits[static_cast<std::size_t>(v)]) % p;
  return acc;
}

}  // namespace

CodeSet build_code_set(const ConstructionParams& params) {
  params.validate();
  const int p = params.p;
  const int q = params.q;
  const std::int64_t pk = params.flock_size();
  const std::int64_t pr = ipow(p, params.isolated);
  const std::int64_t n_index = params.length();

  const EvalTables t = make_tables(params);
  const auto dot_k = digit_dot_table(p, params.path_count());
  const auto dot_r = digit_dot_table(p, params.isolated);

  CodeSet set;
  set.params = params;
  set.codes.reserve(static_cast<std::size_t>(params.num_codes()));
  for (std::int64_t alpha = 0; alpha < pk; ++alpha) {
    for (std::int64_t delta = 0; delta < pr; ++delta) {
      PhaseMatrix code(pk, n_index);
      const auto& ddot = dot_r[static_cast<std::size_t>(delta)];
      const auto& adot = dot_k[static_cast<std::size_t>(alpha)];
      for (std::int64_t beta = 0; beta < pk; ++beta) {
        const auto& bdot = dot_k[static_cast<std::size_t>(beta)];
        const int cross = params.pmepr_term ? pmepr_offset(beta, p, params.path_count()) : 0;
        std::int32_t* row = code.data() + beta * n_index;
        for (std::int64_t i = 0; i < n_index; ++i) {
          const std::size_t iz = static_cast<std::size_t>(i);
          const int offs =
              (adot[static_cast<std::size_t>(t.end_code[iz])] +
               bdot[static_cast<std::size_t>(t.start_code[iz])] +
               ddot[static_cast<std::size_t>(t.walsh_code[iz])] + cross) % p;
          row[i] = static_cast<std::int32_t>((t.base[iz] + t.unit * offs) % q);
        }
      }
      set.codes.push_back(std::move(code));
    }
  }
  return set;
}

CodeSet build_ccc(int p, int q, std::vector<int> path_sizes,
                  Eigen::ArrayXi gamma, int theta, bool pmepr_term) {
  ConstructionParams params;
  params.p = p;
  params.q = q;
  params.path_sizes = std::move(path_sizes);
  params.isolated = 0;
  params.gamma = std::move(gamma);
  params.theta = theta;
  params.pmepr_term = pmepr_term;
  return build_code_set(params);
}

std::vector<std::pair<std::int64_t, std::int64_t>> uncorrelated_pairs(
    const ConstructionParams& params) {
  params.validate();
  const std::int64_t pr = ipow(params.p, params.isolated);
  const std::int64_t pk = params.flock_size();
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (std::int64_t delta = 0; delta < pr; ++delta)
    for (std::int64_t a1 = 0; a1 < pk; ++a1)
      for (std::int64_t a2 = a1 + 1; a2 < pk; ++a2)
        out.emplace_back(a1 * pr + delta, a2 * pr + delta);
  return out;
}

}  // namespace zccs

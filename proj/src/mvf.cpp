#include "zccs/mvf.hpp"

#include <limits>
#include <stdexcept>

namespace zccs {

std::int64_t ipow(int p, int e) {
  if (p < 1 || e < 0) throw std::invalid_argument("ipow: bad arguments");
  std::int64_t out = 1;
  for (int i = 0; i < e; ++i) {
    if (out > std::numeric_limits<std::int64_t>::max() / p)
      throw std::overflow_error("ipow: result does not fit in 64 bits");
    out *= p;
  }
  return out;
}

std::int64_t MixedRadixIndex::value() const {
  std::int64_t out = 0;
  for (Eigen::Index i = 0; i < digits.size(); ++i)
    out = out * base + digits[i];
  return out;
}

MixedRadixIndex index_decode(std::int64_t index, int p, int digit_count) {
  if (p < 2) throw std::invalid_argument("index_decode: base must be >= 2");
  if (digit_count < 0)
    throw std::invalid_argument("index_decode: negative digit count");
  if (index < 0 || index >= ipow(p, digit_count))
    throw std::out_of_range("index_decode: index outside [0, p^m)");
  MixedRadixIndex out;
  out.base = p;
  out.digits = Eigen::ArrayXi::Zero(digit_count);
  std::int64_t rest = index;
  for (int i = digit_count - 1; i >= 0; --i) {
    out.digits[i] = static_cast<int>(rest % p);
    rest /= p;
  }
  return out;
}

int MvfSpec::path_vars() const {
  int n = 0;
  for (const PathGraph& path : paths) n += path.size();
  return n;
}

void MvfSpec::validate() const {
  if (p < 2) throw std::invalid_argument("MvfSpec: p must be >= 2");
  if (q < 2 || q % p != 0)
    throw std::invalid_argument("MvfSpec: q must be a positive multiple of p");
  if (isolated < 0) throw std::invalid_argument("MvfSpec: r must be >= 0");
  const int n = path_vars();
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (const PathGraph& path : paths) {
    if (path.order.empty())
      throw std::invalid_argument("MvfSpec: empty path");
    for (int v : path.order) {
      if (v < 0 || v >= n)
        throw std::invalid_argument("MvfSpec: path vertex outside [0, n)");
      if (seen[static_cast<std::size_t>(v)])
        throw std::invalid_argument("MvfSpec: paths must be disjoint");
      seen[static_cast<std::size_t>(v)] = true;
    }
  }
  if (gamma.size() != 0 && gamma.size() != n)
    throw std::invalid_argument(
        "MvfSpec: gamma must have one entry per path variable");
  if (gamma.size() != 0 && ((gamma < 0).any() || (gamma >= q).any()))
    throw std::invalid_argument("MvfSpec: gamma entries must lie in [0, q)");
  if (theta < 0 || theta >= q)
    throw std::invalid_argument("MvfSpec: theta must lie in [0, q)");
  const std::int64_t pk = ipow(p, path_count());
  const std::int64_t pr = ipow(p, isolated);
  if (alpha < 0 || alpha >= pk || beta < 0 || beta >= pk)
    throw std::invalid_argument("MvfSpec: alpha and beta must lie in [0, p^k)");
  if (delta < 0 || delta >= pr)
    throw std::invalid_argument("MvfSpec: delta must lie in [0, p^r)");
}

int eval_quadratic(const std::vector<PathGraph>& paths,
                   const Eigen::Ref<const Eigen::ArrayXi>& x, int p, int q) {
  if (p < 2 || q < 2 || q % p != 0)
    throw std::invalid_argument("eval_quadratic: q must be a positive multiple of p");
  int n = 0;
  for (const PathGraph& path : paths) n += path.size();
  if (x.size() != n)
    throw std::invalid_argument("eval_quadratic: dimension mismatch");
  if (n > 0 && ((x < 0).any() || (x >= p).any()))
    throw std::invalid_argument("eval_quadratic: digits must lie in [0, p)");
  std::int64_t acc = 0;
  for (const PathGraph& path : paths)
    for (std::size_t j = 1; j < path.order.size(); ++j)
      acc += static_cast<std::int64_t>(x[path.order[j - 1]]) * x[path.order[j]];
  return static_cast<int>(acc % p) * (q / p);
}

namespace {

// digit i (most significant first) of v in base p, out of nd digits
inline int digit_of(std::int64_t v, int p, int nd, int i) {
  std::int64_t div = 1;
  for (int j = 0; j < nd - 1 - i; ++j) div *= p;
  return static_cast<int>((v / div) % p);
}

int eval_at_digits(const MvfSpec& spec, const Eigen::ArrayXi& x) {
  const int n = spec.path_vars();
  const int k = spec.path_count();
  const int r = spec.isolated;
  const int unit = spec.q / spec.p;

  std::int64_t val = spec.theta;
  for (const PathGraph& path : spec.paths)
    for (std::size_t j = 1; j < path.order.size(); ++j)
      val += static_cast<std::int64_t>(unit) * x[path.order[j - 1]] *
             x[path.order[j]];
  if (spec.gamma.size() != 0)
    for (int j = 0; j < n; ++j)
      val += static_cast<std::int64_t>(spec.gamma[j]) * x[j];
  for (int i = 0; i < k; ++i) {
    const int ai = digit_of(spec.alpha, spec.p, k, i);
    const int bi = digit_of(spec.beta, spec.p, k, i);
    val += static_cast<std::int64_t>(unit) *
           (ai * x[spec.paths[i].end()] + bi * x[spec.paths[i].start()]);
  }
  for (int u = 0; u < r; ++u)
    val += static_cast<std::int64_t>(unit) *
           digit_of(spec.delta, spec.p, r, u) * x[n + u];
  if (spec.pmepr_term)
    for (int v = 1; v < k; ++v)
      val += static_cast<std::int64_t>(unit) *
             digit_of(spec.beta, spec.p, k, v - 1) *
             digit_of(spec.beta, spec.p, k, v);
  return static_cast<int>(val % spec.q);
}

}  // namespace

int eval_f(const MvfSpec& spec, std::int64_t index) {
  spec.validate();
  const MixedRadixIndex ix = index_decode(index, spec.p, spec.var_count());
  return eval_at_digits(spec, ix.digits);
}

PhaseSequence chi(const MvfSpec& spec) {
  spec.validate();
  const int m = spec.var_count();
  const std::int64_t n = spec.domain_size();
  PhaseArray phases(n);
  Eigen::ArrayXi x = Eigen::ArrayXi::Zero(m);
  for (std::int64_t i = 0; i < n; ++i) {
    phases[i] = eval_at_digits(spec, x);
    for (int d = m - 1; d >= 0; --d) {  // mixed-radix increment
      if (++x[d] < spec.p) break;
      x[d] = 0;
    }
  }
  return PhaseSequence(spec.q, std::move(phases));
}

ResidueSum walsh_dot(std::int64_t delta1, std::int64_t delta2, int p, int q,
                     int r) {
  if (p < 2 || q < 2 || q % p != 0)
    throw std::invalid_argument("walsh_dot: q must be a positive multiple of p");
  if (r < 0) throw std::invalid_argument("walsh_dot: r must be >= 0");
  const std::int64_t pr = ipow(p, r);
  if (delta1 < 0 || delta1 >= pr || delta2 < 0 || delta2 >= pr)
    throw std::out_of_range("walsh_dot: delta outside [0, p^r)");
  const int unit = q / p;
  ResidueSum sum(q);
  for (std::int64_t index = 0; index < pr; ++index) {
    std::int64_t e = 0;
    for (int u = 0; u < r; ++u) {
      const int xu = digit_of(index, p, r, u);
      e += static_cast<std::int64_t>(unit) *
           (digit_of(delta1, p, r, u) - digit_of(delta2, p, r, u)) * xu;
    }
    sum.add(static_cast<int>(((e % q) + q) % q));
  }
  return sum;
}

}  // namespace zccs

#include "zccs/seqcore.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace zccs {

const std::vector<Complex>& unit_roots(int q) {
  thread_local int cached_q = 0;
  thread_local std::vector<Complex> roots;
  if (q != cached_q) {
    if (q < 1) throw std::invalid_argument("unit_roots: modulus must be >= 1");
    roots.resize(static_cast<std::size_t>(q));
    const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    for (int j = 0; j < q; ++j) {
      const long double arg = two_pi * j / q;
      roots[static_cast<std::size_t>(j)] =
          Complex(static_cast<double>(std::cos(arg)),
                  static_cast<double>(std::sin(arg)));
    }
    cached_q = q;
  }
  return roots;
}

PhaseSequence::PhaseSequence(int modulus, PhaseArray ph)
    : q(modulus), phases(std::move(ph)) {
  if (q < 2) throw std::invalid_argument("PhaseSequence: modulus must be >= 2");
  if (phases.size() < 1)
    throw std::invalid_argument("PhaseSequence: length must be >= 1");
  if ((phases < 0).any() || (phases >= q).any())
    throw std::invalid_argument("PhaseSequence: phases must lie in [0, q)");
}

ResidueSum::ResidueSum(int modulus) : q_(modulus) {
  if (q_ < 1) throw std::invalid_argument("ResidueSum: modulus must be >= 1");
  counts_ = CountArray::Zero(q_);
}

ResidueSum::ResidueSum(int modulus, CountArray counts)
    : q_(modulus), counts_(std::move(counts)) {
  if (q_ < 1) throw std::invalid_argument("ResidueSum: modulus must be >= 1");
  if (counts_.size() != q_)
    throw std::invalid_argument("ResidueSum: counts must have q entries");
}

ResidueSum& ResidueSum::operator+=(const ResidueSum& other) {
  if (other.q_ != q_) throw std::invalid_argument("ResidueSum: modulus mismatch");
  counts_ += other.counts_;
  return *this;
}

ResidueSum ResidueSum::operator-(const ResidueSum& other) const {
  if (other.q_ != q_) throw std::invalid_argument("ResidueSum: modulus mismatch");
  return ResidueSum(q_, counts_ - other.counts_);
}

ResidueSum ResidueSum::conjugated() const {
  CountArray out(q_);
  for (int j = 0; j < q_; ++j) out[(q_ - j) % q_] = counts_[j];
  return ResidueSum(q_, std::move(out));
}

Complex ResidueSum::value() const {
  // Long double accumulation keeps the relative error well under 1e-12
  // for q up to 2^16.
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  long double re = 0.0L, im = 0.0L;
  for (int j = 0; j < q_; ++j) {
    if (counts_[j] == 0) continue;
    const long double arg = two_pi * j / q_;
    const long double c = static_cast<long double>(counts_[j]);
    re += c * std::cos(arg);
    im += c * std::sin(arg);
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

std::int64_t ResidueSum::mass() const { return counts_.abs().sum(); }

bool ResidueSum::is_zero() const {
  const double tol = 1e-9 * (static_cast<double>(mass()) + 1.0);
  return std::abs(value()) < tol;
}

const ResidueSum& CorrelationProfile::at(Eigen::Index tau) const {
  if (tau <= -length || tau >= length)
    throw std::out_of_range("CorrelationProfile: tau outside (-N, N)");
  return values[static_cast<std::size_t>(tau + length - 1)];
}

namespace {

void accumulate_accs(const std::int32_t* a, const std::int32_t* b, int q,
                     Eigen::Index n, Eigen::Index tau, CountArray& counts) {
  if (tau >= 0) {
    for (Eigen::Index i = 0; i + tau < n; ++i) {
      int d = a[i + tau] - b[i];
      if (d < 0) d += q;
      ++counts[d];
    }
  } else {
    for (Eigen::Index i = 0; i - tau < n; ++i) {
      int d = a[i] - b[i - tau];
      if (d < 0) d += q;
      ++counts[d];
    }
  }
}

}  // namespace

ResidueSum accs(const PhaseSequence& a, const PhaseSequence& b,
                Eigen::Index tau) {
  if (a.q != b.q) throw std::invalid_argument("accs: modulus mismatch");
  if (a.size() != b.size()) throw std::invalid_argument("accs: length mismatch");
  ResidueSum sum(a.q);
  const Eigen::Index n = a.size();
  if (tau <= -n || tau >= n) return sum;  // zero outside (-N, N)
  CountArray counts = CountArray::Zero(a.q);
  accumulate_accs(a.phases.data(), b.phases.data(), a.q, n, tau, counts);
  return ResidueSum(a.q, std::move(counts));
}

CorrelationProfile full_profile(const PhaseSequence& a,
                                const PhaseSequence& b) {
  if (a.q != b.q) throw std::invalid_argument("full_profile: modulus mismatch");
  if (a.size() != b.size())
    throw std::invalid_argument("full_profile: length mismatch");
  CorrelationProfile profile;
  profile.q = a.q;
  profile.length = a.size();
  profile.values.reserve(static_cast<std::size_t>(2 * profile.length - 1));
  for (Eigen::Index tau = -(profile.length - 1); tau < profile.length; ++tau)
    profile.values.push_back(accs(a, b, tau));
  return profile;
}

ResidueSum code_ccs(const Eigen::Ref<const PhaseMatrix>& cs,
                    const Eigen::Ref<const PhaseMatrix>& ct, int q,
                    Eigen::Index tau) {
  if (cs.rows() != ct.rows() || cs.cols() != ct.cols())
    throw std::invalid_argument("code_ccs: dimension mismatch");
  ResidueSum sum(q);
  const Eigen::Index n = cs.cols();
  if (tau <= -n || tau >= n) return sum;
  CountArray counts = CountArray::Zero(q);
  for (Eigen::Index nu = 0; nu < cs.rows(); ++nu) {
    // rows are contiguous in the row-major layout
    const std::int32_t* ra = cs.data() + nu * cs.outerStride();
    const std::int32_t* rb = ct.data() + nu * ct.outerStride();
    accumulate_accs(ra, rb, q, n, tau, counts);
  }
  return ResidueSum(q, std::move(counts));
}

}  // namespace zccs

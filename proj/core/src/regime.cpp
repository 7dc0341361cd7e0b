#include <cmath>
#include <string>
#include <vector>

#include "hypertest/error.hpp"
#include "hypertest/stats.hpp"

namespace hypertest {

RegimeVerdict regime_classify(std::size_t m, std::size_t k, double alpha_exp,
                              std::optional<double> kappa,
                              std::span<const std::size_t> l_candidates) {
  if (m < 2) throw Error(Errc::InvalidArgument, "hyperedge size m must be at least 2");
  if (k < 2) throw Error(Errc::InvalidArgument, "number of communities k must be at least 2");
  if (!(alpha_exp > 0.0) || !std::isfinite(alpha_exp)) {
    throw Error(Errc::InvalidArgument, "density exponent must be positive");
  }
  for (std::size_t l : l_candidates) {
    if (l == 0 || 2 * l > m) {
      throw Error(Errc::OverlapOutOfRange, "overlap l=" + std::to_string(l) + " inadmissible for m=" +
                                               std::to_string(m));
    }
  }

  RegimeVerdict v;
  v.kappa = kappa;
  if (m >= 3) v.constants = contiguity_constants(m, k);
  const double edge_exp = static_cast<double>(m - 1);

  if (alpha_exp > edge_exp) {
    v.kind = RegimeKind::Indistinguishable;
    return v;
  }
  if (alpha_exp == edge_exp) {
    if (!kappa) throw Error(Errc::MissingKappa, "kappa is required when p ~ n^{-(m-1)}");
    v.kind = RegimeKind::BoundedDegree;
    if (*kappa > 1.0) {
      v.bounded = BoundedVerdict::Distinguishable;
    } else if (v.constants && v.constants->tau1 <= 1.0 && *kappa < v.constants->kappa_threshold) {
      v.bounded = BoundedVerdict::ContiguousBand;
    } else {
      v.bounded = BoundedVerdict::Unknown;
    }
    return v;
  }

  // a_n ~ n^{x}; testable when n^{l-1} << a_n << n^{l-2/3}
  const double x = edge_exp - alpha_exp;
  std::vector<std::size_t> ls(l_candidates.begin(), l_candidates.end());
  if (ls.empty()) {
    for (std::size_t l = 1; 2 * l <= m; ++l) ls.push_back(l);
  }
  for (std::size_t l : ls) {
    const double lo = static_cast<double>(l) - 1.0;
    const double hi = static_cast<double>(l) - 2.0 / 3.0;
    if (x > lo && x < hi) {
      v.kind = RegimeKind::DenseTestable;
      v.l = l;
      return v;
    }
  }
  v.kind = RegimeKind::UnknownBand;
  return v;
}

std::string describe(const RegimeVerdict& v) {
  switch (v.kind) {
    case RegimeKind::Indistinguishable:
      return "indistinguishable (contiguous)";
    case RegimeKind::BoundedDegree:
      switch (v.bounded.value_or(BoundedVerdict::Unknown)) {
        case BoundedVerdict::Distinguishable:
          return "distinguishable";
        case BoundedVerdict::ContiguousBand:
          return "contiguous band";
        case BoundedVerdict::Unknown:
          return "unknown";
      }
      break;
    case RegimeKind::DenseTestable:
      return "dense testable (l=" + std::to_string(v.l.value_or(0)) + ")";
    case RegimeKind::UnknownBand:
      return "unknown band";
  }
  return "unknown";
}

}  // namespace hypertest

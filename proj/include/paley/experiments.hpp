#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "paley/bounds.hpp"
#include "paley/error.hpp"
#include "paley/frame.hpp"
#include "paley/numtheory.hpp"
#include "paley/random.hpp"
#include "paley/spectra.hpp"

namespace paley {

/// Worker count from PALEY_THREADS (positive integer), else the hardware concurrency.
inline unsigned thread_count_from_env() {
  if (const char* env = std::getenv("PALEY_THREADS"); env != nullptr) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

/// Runs fn(t) for t in [0, n) on up to `threads` workers with a static interleaved split.
/// fn must only write to slot t of its output.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(std::max(1U, threads), n);
  if (workers <= 1) {
    for (std::size_t t = 0; t < n; ++t) fn(t);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t t = w; t < n; t += workers) fn(t);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

/// Empirical RIP lower bounds d(1..k); d[j-1] holds d(j).
struct RipEstimate {
  std::uint64_t p = 0;
  std::int64_t k = 0;
  std::uint64_t seed = 0;
  std::int64_t trials = 1;
  std::vector<double> d;
  std::vector<std::vector<std::int64_t>> supports;
};

/// d(j) = max{λ_max(G_j) − 1, 1 − λ_min(G_j)} over the nested leading Gramians of one support.
inline std::vector<double> rip_curve(const GramMatrix& g, const SpectrumSolver& solver = default_solver) {
  std::vector<double> d(g.order(), 0.0);
  for (std::size_t j = 2; j <= g.order(); ++j) {
    d[j - 1] = solver(g.entries().leading(j)).deviation_from_one();
  }
  return d;
}

inline void require_k_range(std::int64_t k, const PaleyPrime& p) {
  if (k < 2 || static_cast<std::uint64_t>(k) > p.value()) {
    fail(ErrorCode::ParameterRange, "k must be in [2, p]");
  }
}

inline RipEstimate estimate_rip_single(const PaleyPrime& p, std::int64_t k, std::uint64_t seed) {
  require_k_range(k, p);
  auto support = SupportSet::ordered(p, random_subset(p.value(), static_cast<std::uint64_t>(k), seed));
  RipEstimate est;
  est.p = p.value();
  est.k = k;
  est.seed = seed;
  est.trials = 1;
  est.d = rip_curve(gram_analytic(p, support));
  est.supports.push_back(support.indices());
  return est;
}

/// d′(j): pointwise maximum of d(j) over independent supports, trial t drawn with
/// trial_seed(seed, t).
inline RipEstimate estimate_rip_worst(const PaleyPrime& p, std::int64_t k, std::int64_t trials,
                                      std::uint64_t seed, unsigned threads = 1,
                                      bool keep_supports = false) {
  require_k_range(k, p);
  if (trials < 1) fail(ErrorCode::ParameterRange, "trials must be at least 1");
  const LegendreTable table(p);
  const auto n = static_cast<std::size_t>(trials);
  std::vector<std::vector<double>> curves(n);
  std::vector<std::vector<std::int64_t>> supports(n);
  parallel_for(n, threads, [&](std::size_t t) {
    auto idx = random_subset(p.value(), static_cast<std::uint64_t>(k), trial_seed(seed, t));
    auto support = SupportSet::ordered(p, idx);
    curves[t] = rip_curve(gram_analytic(table, support));
    supports[t] = std::move(idx);
  });
  RipEstimate est;
  est.p = p.value();
  est.k = k;
  est.seed = seed;
  est.trials = trials;
  est.d.assign(static_cast<std::size_t>(k), 0.0);
  for (const auto& c : curves)
    for (std::size_t j = 0; j < c.size(); ++j) est.d[j] = std::max(est.d[j], c[j]);
  if (keep_supports) est.supports = std::move(supports);
  return est;
}

inline double binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0.0;
  double r = 1.0;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

inline constexpr double kExactRipGuard = 1e6;

/// δ_k by enumerating every k-subset; limited to binomial(p, k) ≤ 10⁶.
inline double exact_rip(const PaleyPrime& p, std::int64_t k,
                        const SpectrumSolver& solver = default_solver) {
  if (k < 1 || static_cast<std::uint64_t>(k) > p.value()) fail(ErrorCode::ParameterRange, "k must be in [1, p]");
  if (binomial(p.value(), static_cast<std::uint64_t>(k)) > kExactRipGuard) {
    fail(ErrorCode::CombinatorialGuard, "binomial(p, k) exceeds 1e6");
  }
  if (k == 1) return 0.0;
  const LegendreTable table(p);
  const auto n = static_cast<std::int64_t>(p.value());
  std::vector<std::int64_t> idx(static_cast<std::size_t>(k));
  for (std::int64_t i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  double worst = 0.0;
  for (;;) {
    const auto g = gram_analytic(table, SupportSet::ordered(p, idx));
    worst = std::max(worst, solver(g.entries()).deviation_from_one());
    // next combination in lexicographic order
    std::int64_t i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (std::int64_t j = i + 1; j < k; ++j) {
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return worst;
}

struct PowerLawFit {
  double beta;
  double intercept;
  double r2;
  std::size_t points;
};

/// OLS of log d(j) on log j over j ∈ [j_min, k], skipping nonpositive d(j).
inline PowerLawFit fit_power_law(std::span<const double> d, std::int64_t j_min = 3) {
  if (j_min < 2) fail(ErrorCode::ParameterRange, "j_min must be at least 2");
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t j = static_cast<std::size_t>(j_min); j <= d.size(); ++j) {
    if (d[j - 1] > 0.0) {
      xs.push_back(std::log(static_cast<double>(j)));
      ys.push_back(std::log(d[j - 1]));
    }
  }
  if (xs.size() < 3) fail(ErrorCode::MalformedInput, "power-law fit needs at least 3 positive points");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  const double beta = sxy / sxx;
  const double intercept = my - beta * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (intercept + beta * xs[i]);
    ss_res += r * r;
  }
  const double r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return {beta, intercept, r2, xs.size()};
}

inline PowerLawFit fit_power_law(const RipEstimate& est, std::int64_t j_min = 3) {
  return fit_power_law(std::span<const double>(est.d), j_min);
}

struct DemboRatioRow {
  std::int64_t j;
  double lambda_max;
  double dembo_bound;
  double gershgorin_bound;
  double dembo_ratio;
  double gershgorin_ratio;
};

/// Sharpness of single-step Dembo vs Gershgorin upper bounds on λ_max of nested Gramians
/// D_j. The Dembo step uses the exact λ_max(D_{j−1}); the trailing block grows in front.
inline std::vector<DemboRatioRow> dembo_ratio_study(const PaleyPrime& p, std::int64_t k,
                                                    std::uint64_t seed,
                                                    const SpectrumSolver& solver = default_solver) {
  if (k < 3 || static_cast<std::uint64_t>(k) > p.value()) fail(ErrorCode::ParameterRange, "k must be in [3, p]");
  auto support = SupportSet::ordered(p, random_subset(p.value(), static_cast<std::uint64_t>(k), seed));
  const auto g = gram_analytic(p, support);
  const double pr = static_cast<double>(p.value());
  std::vector<DemboRatioRow> rows;
  double previous = 1.0;  // λ_max(D_1)
  for (std::int64_t j = 2; j <= k; ++j) {
    const double lambda = solver(g.entries().leading(static_cast<std::size_t>(j))).max();
    const double dembo = dembo_upper(1.0, previous, static_cast<double>(j - 1) / pr);
    const double gersh = 1.0 + static_cast<double>(j - 1) / std::sqrt(pr);
    rows.push_back({j, lambda, dembo, gersh, dembo / lambda, gersh / lambda});
    previous = lambda;
  }
  return rows;
}

/// χ(·) for one prime, from a table when the modulus is small enough.
class Character {
 public:
  explicit Character(const OddPrime& p) : p_(p) {
    if (p.value() <= LegendreTable::kMaxModulus) table_.emplace(p);
  }
  int operator()(std::int64_t a) const { return table_ ? (*table_)(a) : legendre(a, p_); }

 private:
  OddPrime p_;
  std::optional<LegendreTable> table_;
};

struct OneSidedSum {
  std::int64_t numerator;
  std::size_t terms;
  std::size_t zero_terms;
  double ratio;
};

/// |Σ_{ℓ′ ∈ I} χ(ℓ′)χ(ℓ′ + a)| / |I| with a = r_j − r_i and I = {r_i − r_ℓ : ℓ ≠ i, j}.
inline OneSidedSum one_sided_ratio(const SupportSet& support, std::size_t i, std::size_t j,
                                   const Character& chi) {
  const std::size_t n = support.size();
  if (n < 3) fail(ErrorCode::ParameterRange, "one-sided ratio needs at least 3 elements");
  if (i >= n || j >= n || i == j) fail(ErrorCode::IndexOutOfRange, "invalid pair");
  const std::int64_t a = support[j] - support[i];
  std::int64_t sum = 0;
  std::size_t zeros = 0;
  for (std::size_t l = 0; l < n; ++l) {
    if (l == i || l == j) continue;
    const std::int64_t diff = support[i] - support[l];
    const int term = chi(diff) * chi(diff + a);
    if (term == 0) ++zeros;
    sum += term;
  }
  const std::size_t terms = n - 2;
  return {sum, terms, zeros, static_cast<double>(std::abs(sum)) / static_cast<double>(terms)};
}

inline OneSidedSum one_sided_ratio(const SupportSet& support, std::size_t i, std::size_t j) {
  return one_sided_ratio(support, i, j, Character(support.prime()));
}

struct ConjectureRecord {
  std::uint64_t p = 0;
  std::vector<std::int64_t> support;  // ordered
  std::size_t i = 0;
  std::size_t j = 0;
  std::int64_t numerator = 0;
  double ratio = 1.0;
  double alpha = 0.8;
  bool satisfied = false;
  /// χ(0) terms; only possible when the support carries repeated residues.
  std::size_t zero_terms = 0;
};

/// Scans every ordered pair i ≠ j and keeps the smallest ratio; ties go to the
/// lexicographically smallest (i, j).
inline ConjectureRecord conjecture_search(const SupportSet& support, double alpha,
                                          const Character& chi) {
  const std::size_t n = support.size();
  if (n < 3) fail(ErrorCode::ParameterRange, "conjecture search needs at least 3 elements");
  ConjectureRecord best;
  best.p = support.prime().value();
  best.support = support.indices();
  best.alpha = alpha;
  bool have = false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto s = one_sided_ratio(support, i, j, chi);
      if (!have || s.ratio < best.ratio) {
        have = true;
        best.i = i;
        best.j = j;
        best.numerator = s.numerator;
        best.ratio = s.ratio;
        best.zero_terms = s.zero_terms;
      }
    }
  }
  best.satisfied = best.ratio < alpha;
  return best;
}

inline ConjectureRecord conjecture_search(const SupportSet& support, double alpha) {
  return conjecture_search(support, alpha, Character(support.prime()));
}

/// Repeatedly removes the best pair and rescans the rest, while at least m_alpha remain.
/// Each record's indices refer to the support remaining at that step.
inline std::vector<ConjectureRecord> greedy_peel(const SupportSet& support, double alpha,
                                                 std::size_t m_alpha) {
  if (m_alpha < 3 || support.size() < m_alpha) {
    fail(ErrorCode::ParameterRange, "greedy peel needs |support| ≥ m_alpha ≥ 3");
  }
  const Character chi(support.prime());
  std::vector<ConjectureRecord> trace;
  std::vector<std::int64_t> remaining = support.indices();
  while (remaining.size() >= m_alpha) {
    auto rec = conjecture_search(SupportSet::ordered(support.prime(), remaining), alpha, chi);
    const std::size_t hi = std::max(rec.i, rec.j);
    const std::size_t lo = std::min(rec.i, rec.j);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(hi));
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(lo));
    trace.push_back(std::move(rec));
  }
  return trace;
}

struct ConjectureScan {
  std::vector<ConjectureRecord> records;  // one per trial
  double fraction_satisfied = 0.0;
  double worst_ratio = 0.0;
  std::size_t worst_trial = 0;
  std::vector<std::int64_t> worst_support;
};

/// Best-pair search over `trials` random k-subsets, trial t seeded by trial_seed(seed, t).
inline ConjectureScan conjecture_scan(const OddPrime& p, std::int64_t k, std::int64_t trials,
                                      double alpha, std::uint64_t seed, unsigned threads = 1) {
  if (k < 3 || static_cast<std::uint64_t>(k) > p.value()) fail(ErrorCode::ParameterRange, "k must be in [3, p]");
  if (trials < 1) fail(ErrorCode::ParameterRange, "trials must be at least 1");
  const Character chi(p);
  const auto n = static_cast<std::size_t>(trials);
  ConjectureScan scan;
  scan.records.resize(n);
  parallel_for(n, threads, [&](std::size_t t) {
    auto idx = random_subset(p.value(), static_cast<std::uint64_t>(k), trial_seed(seed, t));
    scan.records[t] = conjecture_search(SupportSet::ordered(p, std::move(idx)), alpha, chi);
  });
  std::size_t satisfied = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const auto& r = scan.records[t];
    if (r.satisfied) ++satisfied;
    if (t == 0 || r.ratio > scan.worst_ratio) {
      scan.worst_ratio = r.ratio;
      scan.worst_trial = t;
      scan.worst_support = r.support;
    }
  }
  scan.fraction_satisfied = static_cast<double>(satisfied) / static_cast<double>(n);
  return scan;
}

}  // namespace paley

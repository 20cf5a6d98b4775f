#include "richclub/kplus_search.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "richclub/errors.hpp"
#include "richclub/maxent.hpp"
#include "richclub/random.hpp"

namespace richclub {

namespace {

constexpr int kRandomAttempts = 64;

bool nonsingular(std::span<const int> k, const KPlusSequence& kp) {
  try {
    compute_weights(k, kp);
    return true;
  } catch (const SingularWeights&) {
    return false;
  }
}

}  // namespace

std::string to_string(Direction d) { return d == Direction::Maximize ? "MAXIMIZE" : "MINIMIZE"; }

Direction direction_from_string(const std::string& s) {
  if (s == "MAXIMIZE" || s == "max" || s == "maximize") return Direction::Maximize;
  if (s == "MINIMIZE" || s == "min" || s == "minimize") return Direction::Minimize;
  throw std::invalid_argument("unknown direction '" + s + "'");
}

std::vector<int> kplus_upper_bounds(std::span<const int> k, KPlusMode mode) {
  if (mode == KPlusMode::Observed) {
    throw std::invalid_argument("observed k+ has no search bounds");
  }
  const std::size_t n = k.size();
  std::vector<int> bounds(n, 0);
  for (std::size_t r = 1; r < n; ++r) {
    bounds[r] = mode == KPlusMode::ME2 ? std::min(k[r], static_cast<int>(r)) : k[r];
  }
  return bounds;
}

KPlusSequence random_feasible_kplus(std::span<const int> k, KPlusMode mode, std::uint64_t seed) {
  const std::size_t n = k.size();
  if (n < 2) throw InfeasibleConstraints("need at least two nodes");
  for (std::size_t r = 1; r < n; ++r) {
    if (k[r] > k[r - 1]) throw std::invalid_argument("degrees not in rank order");
  }
  long long degree_sum = std::accumulate(k.begin(), k.end(), 0LL);
  if (degree_sum % 2 != 0) throw InfeasibleConstraints("odd degree sum");
  const long long links = degree_sum / 2;

  const auto bounds = kplus_upper_bounds(k, mode);
  if (bounds[n - 1] < k[n - 1]) {
    throw InfeasibleConstraints("last-ranked node cannot place all its links upward");
  }
  const long long bound_sum = std::accumulate(bounds.begin(), bounds.end(), 0LL);
  if (bound_sum < links) {
    throw InfeasibleConstraints("k+ bounds sum to " + std::to_string(bound_sum) + " < L = " +
                                std::to_string(links));
  }

  const long long to_place = links - k[n - 1];
  KPlusSequence kp;
  kp.mode = mode;
  Rng rng(seed);

  for (int attempt = 0; attempt < kRandomAttempts; ++attempt) {
    kp.values.assign(n, 0);
    kp.values[n - 1] = k[n - 1];
    std::vector<std::size_t> open;
    for (std::size_t r = 1; r + 1 < n; ++r) {
      if (bounds[r] > 0) open.push_back(r);
    }
    for (long long unit = 0; unit < to_place; ++unit) {
      const std::size_t slot = uniform_index(rng, open.size());
      const std::size_t r = open[slot];
      if (++kp.values[r] == bounds[r]) {
        open[slot] = open.back();
        open.pop_back();
      }
    }
    if (nonsingular(k, kp)) return kp;
  }

  // Mass pushed towards the bottom of the ranking keeps G(j) large.
  kp.values.assign(n, 0);
  kp.values[n - 1] = k[n - 1];
  long long remaining = to_place;
  for (std::size_t r = n - 1; r-- > 1 && remaining > 0;) {
    const int take = static_cast<int>(std::min<long long>(bounds[r], remaining));
    kp.values[r] = take;
    remaining -= take;
  }
  if (nonsingular(k, kp)) return kp;
  throw InfeasibleConstraints("no k+ sequence with non-singular weights was found");
}

SearchResult greedy_search(std::span<const int> k, const SearchConfig& config,
                           std::optional<KPlusSequence> start) {
  const std::size_t n = k.size();
  const std::size_t stall_limit = config.stall_limit.value_or(50 * n);
  const std::size_t max_proposals = config.max_proposals.value_or(5000 * n);
  if (stall_limit < 1) throw std::invalid_argument("stall_limit must be >= 1");
  if (max_proposals < stall_limit) throw std::invalid_argument("max_proposals < stall_limit");

  const auto bounds = kplus_upper_bounds(k, config.mode);
  KPlusSequence kp = start ? *start : random_feasible_kplus(k, config.mode, config.seed);
  kp.mode = config.mode;

  SearchResult result;
  double current = entropy_fast(k, kp);
  result.entropy_trace.push_back(current);

  // Separate stream from the one used for the starting point.
  Rng rng(derive_seed(config.seed, 1));
  std::vector<std::size_t> receivers;
  std::vector<std::size_t> donors;
  std::size_t stall = 0;

  while (result.proposals_used < max_proposals && stall < stall_limit) {
    receivers.clear();
    donors.clear();
    for (std::size_t r = 1; r + 1 < n; ++r) {
      if (kp.values[r] < bounds[r]) receivers.push_back(r);
      if (kp.values[r] >= 1) donors.push_back(r);
    }
    if (receivers.empty() || donors.empty()) break;
    if (receivers.size() == 1 && donors.size() == 1 && receivers[0] == donors[0]) break;

    std::size_t i;
    std::size_t j;
    do {
      i = receivers[uniform_index(rng, receivers.size())];
      j = donors[uniform_index(rng, donors.size())];
    } while (i == j);

    ++result.proposals_used;
    ++kp.values[i];
    --kp.values[j];

    bool accept = false;
    double proposed = current;
    try {
      const auto weights = compute_weights(k, kp);
      proposed = entropy_fast(k, kp.values, weights);
      accept = config.direction == Direction::Maximize ? proposed > current : proposed < current;
    } catch (const SingularWeights&) {
      accept = false;
    }

    if (accept) {
      current = proposed;
      result.entropy_trace.push_back(current);
      ++result.accepted_count;
      stall = 0;
    } else {
      --kp.values[i];
      ++kp.values[j];
      ++stall;
    }
  }

  result.kplus = std::move(kp);
  result.entropy = current;
  return result;
}

}  // namespace richclub

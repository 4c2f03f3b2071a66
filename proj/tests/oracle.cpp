#include "test_support.hpp"

#include <algorithm>
#include <limits>

#include "cru/phonetic.hpp"

namespace cru::testing {

namespace {

double weight(const std::string& token, const MatchConfig& cfg) {
  return is_number_word(token) ? cfg.digit_weight : 1.0;
}

std::size_t char_levenshtein(const std::string& a, const std::string& b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1,
                         diag + (a[i - 1] == b[j - 1] ? std::size_t{0} : std::size_t{1})});
      diag = up;
    }
  }
  return row[b.size()];
}

double sub_cost(const std::string& a, const std::string& b, const MatchConfig& cfg) {
  if (a == b) return 0.0;
  double cost = cfg.sub_cost * std::max(weight(a, cfg), weight(b, cfg));
  if (cfg.char_aware_substitution) {
    auto ca = telephony_canonical(a);
    auto cb = telephony_canonical(b);
    if (ca && cb) {
      if (*ca == *cb) cost *= kTelephonyAliasCost;
    } else {
      cost *= static_cast<double>(char_levenshtein(a, b)) /
              static_cast<double>(std::max(a.size(), b.size()));
    }
  }
  return cost;
}

// Full edit-distance DP between a fixed window and the variant.
double window_distance(const SpokenForm& window, const SpokenForm& variant,
                       const MatchConfig& cfg) {
  std::size_t m = variant.size(), n = window.size();
  std::vector<double> prev(n + 1), cur(n + 1);
  prev[0] = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    prev[j] = prev[j - 1] + cfg.ins_cost * weight(window[j - 1], cfg);
  }
  for (std::size_t i = 1; i <= m; ++i) {
    double del = cfg.del_cost * weight(variant[i - 1], cfg);
    cur[0] = prev[0] + del;
    for (std::size_t j = 1; j <= n; ++j) {
      double diag = prev[j - 1] + sub_cost(variant[i - 1], window[j - 1], cfg);
      double up = prev[j] + del;
      double left = cur[j - 1] + cfg.ins_cost * weight(window[j - 1], cfg);
      if (diag <= up && diag <= left) {
        cur[j] = diag;
      } else if (up <= left) {
        cur[j] = up;
      } else {
        cur[j] = left;
      }
    }
    std::swap(prev, cur);
  }
  return prev[n];
}

}  // namespace

double oracle_similarity(const SpokenForm& transcript, const SpokenForm& variant,
                         const MatchConfig& cfg) {
  double weighted_len = 0.0;
  for (const auto& tok : variant) weighted_len += cfg.del_cost * weight(tok, cfg);
  if (weighted_len <= 0.0) return 1.0;

  double best = std::numeric_limits<double>::infinity();
  for (std::size_t start = 0; start <= transcript.size(); ++start) {
    for (std::size_t end = start; end <= transcript.size(); ++end) {
      SpokenForm window(transcript.begin() + static_cast<long>(start),
                        transcript.begin() + static_cast<long>(end));
      best = std::min(best, window_distance(window, variant, cfg));
    }
  }
  return std::clamp(1.0 - best / weighted_len, 0.0, 1.0);
}

}  // namespace cru::testing

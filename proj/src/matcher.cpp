#include "cru/matcher.hpp"

#include <algorithm>
#include <limits>

#include "cru/errors.hpp"
#include "cru/extractor.hpp"
#include "cru/phonetic.hpp"

namespace cru {

namespace {

double token_weight(const std::string& token, const MatchConfig& cfg) {
  return is_number_word(token) ? cfg.digit_weight : 1.0;
}

// Plain character-level Levenshtein distance.
std::size_t char_edits(const std::string& a, const std::string& b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t up = row[j];
      std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + cost});
      diag = up;
    }
  }
  return row[b.size()];
}

double substitution_cost(const std::string& a, const std::string& b, const MatchConfig& cfg) {
  if (a == b) return 0.0;
  double cost = cfg.sub_cost * std::max(token_weight(a, cfg), token_weight(b, cfg));
  if (cfg.char_aware_substitution) {
    auto ca = telephony_canonical(a);
    auto cb = telephony_canonical(b);
    if (ca && cb) {
      if (*ca == *cb) cost *= kTelephonyAliasCost;
    } else {
      double denom = static_cast<double>(std::max(a.size(), b.size()));
      cost *= static_cast<double>(char_edits(a, b)) / denom;
    }
  }
  return cost;
}

}  // namespace

const char* to_string(MatchDecision decision) {
  switch (decision) {
    case MatchDecision::Matched: return "matched";
    case MatchDecision::BelowThreshold: return "below-threshold";
    case MatchDecision::EmptySurveillance: return "empty-surveillance";
  }
  return "?";
}

SimilarityDetail similarity_detail(const SpokenForm& transcript, const SpokenForm& variant,
                                   const MatchConfig& cfg) {
  const std::size_t m = variant.size();
  const std::size_t n = transcript.size();

  double weighted_len = 0.0;
  for (const auto& tok : variant) weighted_len += cfg.del_cost * token_weight(tok, cfg);
  if (weighted_len <= 0.0) return {1.0, 0, 0};

  // Semi-global alignment: the window start is free (first row zero), the
  // window end is the column minimizer of the last row.
  std::vector<double> prev(n + 1), cur(n + 1);
  std::vector<std::size_t> prev_start(n + 1), cur_start(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    prev[j] = 0.0;
    prev_start[j] = j;
  }
  for (std::size_t i = 1; i <= m; ++i) {
    double del = cfg.del_cost * token_weight(variant[i - 1], cfg);
    cur[0] = prev[0] + del;
    cur_start[0] = 0;
    for (std::size_t j = 1; j <= n; ++j) {
      double diag = prev[j - 1] + substitution_cost(variant[i - 1], transcript[j - 1], cfg);
      double up = prev[j] + del;
      double left = cur[j - 1] + cfg.ins_cost * token_weight(transcript[j - 1], cfg);
      if (diag <= up && diag <= left) {
        cur[j] = diag;
        cur_start[j] = prev_start[j - 1];
      } else if (up <= left) {
        cur[j] = up;
        cur_start[j] = prev_start[j];
      } else {
        cur[j] = left;
        cur_start[j] = cur_start[j - 1];
      }
    }
    std::swap(prev, cur);
    std::swap(prev_start, cur_start);
  }

  double best = std::numeric_limits<double>::infinity();
  std::size_t best_end = 0;
  for (std::size_t j = 0; j <= n; ++j) {
    if (prev[j] < best) {
      best = prev[j];
      best_end = j;
    }
  }
  double score = 1.0 - best / weighted_len;
  score = std::clamp(score, 0.0, 1.0);
  return {score, prev_start[best_end], best_end};
}

double similarity(const SpokenForm& transcript, const SpokenForm& variant,
                  const MatchConfig& cfg) {
  return similarity_detail(transcript, variant, cfg).score;
}

std::pair<std::optional<IcaoCallsign>, MatchTrace> recognize_with_context(
    const SpokenForm& transcript, const SurveillanceSnapshot& sur, const AirlineRegistry& reg,
    const MatchConfig& cfg) {
  MatchTrace trace;

  std::vector<IcaoCallsign> candidates = sur.callsigns;
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  if (candidates.empty()) {
    trace.decision = MatchDecision::EmptySurveillance;
    trace.chosen = vanilla_recognize(transcript, reg);
    return {trace.chosen, trace};
  }

  for (const IcaoCallsign& cs : candidates) {
    CandidateScore entry;
    entry.candidate = cs;
    std::vector<SpokenVariant> variants;
    try {
      variants = expand_to_spoken(cs, reg, cfg.kinds);
    } catch (const UnknownDesignator&) {
      entry.skipped = true;
      trace.candidates.push_back(std::move(entry));
      continue;
    }
    bool first = true;
    for (const auto& variant : variants) {
      auto detail = similarity_detail(transcript, variant.tokens, cfg);
      bool better = first || detail.score > entry.score ||
                    (detail.score == entry.score && variant.kind == VariantKind::Full &&
                     entry.kind != VariantKind::Full);
      if (better) {
        entry.score = detail.score;
        entry.kind = variant.kind;
        entry.win_start = detail.win_start;
        entry.win_end = detail.win_end;
        first = false;
      }
    }
    if (first) entry.skipped = true;  // no variant applied
    trace.candidates.push_back(std::move(entry));
  }

  const CandidateScore* best = nullptr;
  for (const auto& entry : trace.candidates) {
    if (entry.skipped) continue;
    if (!best) {
      best = &entry;
      continue;
    }
    if (entry.score > best->score) {
      best = &entry;
    } else if (entry.score == best->score) {
      bool entry_full = entry.kind == VariantKind::Full;
      bool best_full = best->kind == VariantKind::Full;
      if (entry_full != best_full) {
        if (entry_full) best = &entry;
      } else if (entry.candidate.canonical() < best->candidate.canonical()) {
        best = &entry;
      }
    }
  }

  if (best && best->score >= cfg.threshold) {
    trace.decision = MatchDecision::Matched;
    trace.chosen = best->candidate;
    trace.best_score = best->score;
    return {trace.chosen, trace};
  }

  trace.decision = MatchDecision::BelowThreshold;
  trace.best_score = best ? best->score : 0.0;
  trace.chosen = vanilla_recognize(transcript, reg);
  return {trace.chosen, trace};
}

}  // namespace cru

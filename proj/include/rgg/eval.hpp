#pragma once

#include <iosfwd>
#include <vector>

#include "rgg/geo.hpp"

namespace rgg {

struct MatchPair {
  std::size_t predicted = 0;
  std::size_t actual = 0;
  double distance = 0.0;
};

struct Matching {
  std::vector<MatchPair> pairs;  // one-to-one, all within tolerance
  std::vector<std::size_t> unmatched_predicted;
  std::vector<std::size_t> unmatched_actual;

  std::size_t tp() const { return pairs.size(); }
  std::size_t fp() const { return unmatched_predicted.size(); }
  std::size_t fn() const { return unmatched_actual.size(); }
};

enum class MatchStrategy {
  kGreedy,    // nearest pair first; deterministic and the default
  kHungarian  // optimal assignment, for sensitivity checks
};

// One-to-one matching of predictions to labels within the tolerance radius.
Matching match(const std::vector<LocalCoord>& predicted,
               const std::vector<LocalCoord>& actual, double tolerance,
               MatchStrategy strategy = MatchStrategy::kGreedy);

struct PrPoint {
  double tolerance = 0.0;
  double precision = 0.0;  // 0 when undefined (see flag)
  double recall = 0.0;
  std::size_t tp = 0, fp = 0, fn = 0;
  bool precision_defined = true;  // false when there are no predictions
  bool recall_defined = true;     // false when there are no labels
};

PrPoint pr_point(const Matching& m, double tolerance);

// Precision/recall at each tolerance (ascending).
std::vector<PrPoint> pr_curve(const std::vector<LocalCoord>& predicted,
                              const std::vector<LocalCoord>& actual,
                              const std::vector<double>& tolerances,
                              MatchStrategy strategy = MatchStrategy::kGreedy);

// CSV: tolerance_m,precision,recall,tp,fp,fn
void write_pr_csv(std::ostream& out, const std::vector<PrPoint>& curve);

// Keeps only the points strictly inside (or on the boundary of) the polygon;
// used to scope an evaluation to one zone.
std::vector<LocalCoord> filter_in_polygon(const std::vector<LocalCoord>& points,
                                          const std::vector<LocalCoord>& polygon);

}  // namespace rgg

#include "rgg/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <ostream>

namespace rgg {

namespace {

Matching match_greedy(const std::vector<LocalCoord>& predicted,
                      const std::vector<LocalCoord>& actual, double tolerance) {
  struct Candidate {
    double d;
    std::size_t p, a;
  };
  std::vector<Candidate> candidates;
  for (std::size_t p = 0; p < predicted.size(); ++p) {
    for (std::size_t a = 0; a < actual.size(); ++a) {
      const double d = distance(predicted[p], actual[a]);
      if (d <= tolerance) candidates.push_back(Candidate{d, p, a});
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& x, const Candidate& y) {
              if (x.d != y.d) return x.d < y.d;
              if (x.p != y.p) return x.p < y.p;
              return x.a < y.a;
            });

  Matching m;
  std::vector<char> p_used(predicted.size(), 0), a_used(actual.size(), 0);
  for (const auto& c : candidates) {
    if (p_used[c.p] || a_used[c.a]) continue;
    p_used[c.p] = a_used[c.a] = 1;
    m.pairs.push_back(MatchPair{c.p, c.a, c.d});
  }
  for (std::size_t p = 0; p < predicted.size(); ++p) {
    if (!p_used[p]) m.unmatched_predicted.push_back(p);
  }
  for (std::size_t a = 0; a < actual.size(); ++a) {
    if (!a_used[a]) m.unmatched_actual.push_back(a);
  }
  return m;
}

// Square Hungarian assignment (potentials + augmenting paths). Pairs outside
// the tolerance get a prohibitive cost; rows assigned at that cost count as
// unmatched.
Matching match_hungarian(const std::vector<LocalCoord>& predicted,
                         const std::vector<LocalCoord>& actual, double tolerance) {
  const std::size_t n = std::max(predicted.size(), actual.size());
  Matching m;
  if (n == 0) return m;
  const double kForbidden = 1e12;

  auto cost = [&](std::size_t p, std::size_t a) -> double {
    if (p >= predicted.size() || a >= actual.size()) return 0.0;  // padding
    const double d = distance(predicted[p], actual[a]);
    return d <= tolerance ? d : kForbidden;
  };

  // 1-based potentials over a (n+1) x (n+1) layout.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> way(n + 1, 0), assignment(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    assignment[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, std::numeric_limits<double>::infinity());
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = assignment[j0];
      double delta = std::numeric_limits<double>::infinity();
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[assignment[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (assignment[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      assignment[j0] = assignment[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<char> a_used(actual.size(), 0);
  std::vector<char> p_matched(predicted.size(), 0);
  for (std::size_t j = 1; j <= n; ++j) {
    const std::size_t p = assignment[j] - 1;
    const std::size_t a = j - 1;
    if (p >= predicted.size() || a >= actual.size()) continue;
    const double d = distance(predicted[p], actual[a]);
    if (d <= tolerance) {
      m.pairs.push_back(MatchPair{p, a, d});
      p_matched[p] = 1;
      a_used[a] = 1;
    }
  }
  std::sort(m.pairs.begin(), m.pairs.end(),
            [](const MatchPair& x, const MatchPair& y) { return x.predicted < y.predicted; });
  for (std::size_t p = 0; p < predicted.size(); ++p) {
    if (!p_matched[p]) m.unmatched_predicted.push_back(p);
  }
  for (std::size_t a = 0; a < actual.size(); ++a) {
    if (!a_used[a]) m.unmatched_actual.push_back(a);
  }
  return m;
}

}  // namespace

Matching match(const std::vector<LocalCoord>& predicted,
               const std::vector<LocalCoord>& actual, double tolerance,
               MatchStrategy strategy) {
  return strategy == MatchStrategy::kGreedy
             ? match_greedy(predicted, actual, tolerance)
             : match_hungarian(predicted, actual, tolerance);
}

PrPoint pr_point(const Matching& m, double tolerance) {
  PrPoint p;
  p.tolerance = tolerance;
  p.tp = m.tp();
  p.fp = m.fp();
  p.fn = m.fn();
  if (p.tp + p.fp == 0) {
    p.precision = 0.0;
    p.precision_defined = false;
  } else {
    p.precision = static_cast<double>(p.tp) / static_cast<double>(p.tp + p.fp);
  }
  if (p.tp + p.fn == 0) {
    p.recall = 0.0;
    p.recall_defined = false;
  } else {
    p.recall = static_cast<double>(p.tp) / static_cast<double>(p.tp + p.fn);
  }
  return p;
}

std::vector<PrPoint> pr_curve(const std::vector<LocalCoord>& predicted,
                              const std::vector<LocalCoord>& actual,
                              const std::vector<double>& tolerances,
                              MatchStrategy strategy) {
  std::vector<PrPoint> curve;
  curve.reserve(tolerances.size());
  for (const double tol : tolerances) {
    curve.push_back(pr_point(match(predicted, actual, tol, strategy), tol));
  }
  return curve;
}

void write_pr_csv(std::ostream& out, const std::vector<PrPoint>& curve) {
  out << "tolerance_m,precision,recall,tp,fp,fn\n";
  char buf[128];
  for (const auto& p : curve) {
    std::snprintf(buf, sizeof(buf), "%.3f,%.6f,%.6f,%zu,%zu,%zu\n", p.tolerance,
                  p.precision, p.recall, p.tp, p.fp, p.fn);
    out << buf;
  }
}

std::vector<LocalCoord> filter_in_polygon(const std::vector<LocalCoord>& points,
                                          const std::vector<LocalCoord>& polygon) {
  if (polygon.size() < 3) return points;
  auto inside = [&](const LocalCoord& p) {
    bool in = false;
    for (std::size_t i = 0, j = polygon.size() - 1; i < polygon.size(); j = i++) {
      const auto& a = polygon[i];
      const auto& b = polygon[j];
      if ((a.y > p.y) != (b.y > p.y)) {
        const double x = (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x;
        if (p.x < x) in = !in;
      }
    }
    return in;
  };
  std::vector<LocalCoord> out;
  for (const auto& p : points) {
    if (inside(p)) out.push_back(p);
  }
  return out;
}

}  // namespace rgg

#include "rgg/trips.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <istream>
#include <limits>
#include <unordered_map>

#include <json.hpp>

#include "rgg/errors.hpp"
#include "rgg/log.hpp"

namespace rgg {

namespace {

const char* kCsvHeader =
    "trip_id,timestamp,lat,lon,speed_kmh,heading_deg,machine_id,driver_id,"
    "task_id,excavator_id,event";

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::string strip(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return s.substr(b, e - b);
}

std::optional<double> parse_double(const std::string& s) {
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == nullptr || *end != '\0' || !std::isfinite(v)) return std::nullopt;
  return v;
}

// Accepts "YYYY-MM-DD[T ]HH:MM:SS[.frac]" optionally followed by "Z",
// "+HH:MM", "-HH:MM" or "+HHMM". Anything else is rejected.
std::optional<double> parse_iso8601(const std::string& s) {
  int year = 0, month = 0, day = 0, hour = 0, minute = 0;
  double sec = 0.0;
  char sep = 0;
  int consumed = 0;
  const int got = std::sscanf(s.c_str(), "%d-%d-%d%c%d:%d:%lf%n", &year, &month,
                              &day, &sep, &hour, &minute, &sec, &consumed);
  if (got < 7 || (sep != 'T' && sep != 't' && sep != ' ')) return std::nullopt;
  if (month < 1 || month > 12 || day < 1 || day > 31) return std::nullopt;

  double offset_s = 0.0;
  const std::string rest = s.substr(static_cast<std::size_t>(consumed));
  if (!rest.empty() && rest != "Z" && rest != "z") {
    const char sign = rest[0];
    if (sign != '+' && sign != '-') return std::nullopt;
    int oh = 0, om = 0;
    if (rest.find(':') != std::string::npos) {
      if (std::sscanf(rest.c_str() + 1, "%d:%d", &oh, &om) != 2) return std::nullopt;
    } else {
      int raw = 0;
      if (std::sscanf(rest.c_str() + 1, "%d", &raw) != 1) return std::nullopt;
      if (rest.size() > 3) {  // +HHMM
        oh = raw / 100;
        om = raw % 100;
      } else {
        oh = raw;
      }
    }
    offset_s = (sign == '-' ? -1.0 : 1.0) * (oh * 3600.0 + om * 60.0);
  }

  std::tm tmv{};
  tmv.tm_year = year - 1900;
  tmv.tm_mon = month - 1;
  tmv.tm_mday = day;
  tmv.tm_hour = hour;
  tmv.tm_min = minute;
  tmv.tm_sec = 0;
  const std::time_t base = timegm(&tmv);
  return static_cast<double>(base) + sec - offset_s;
}

std::optional<double> parse_timestamp(const std::string& s) {
  if (const auto v = parse_double(s)) return v;
  return parse_iso8601(s);
}

struct RowData {
  std::string trip_id;
  GpsUpdate update;
  std::string machine_id, driver_id, task_id, excavator_id, event;
};

class TripAccumulator {
 public:
  void add(RowData&& row, std::size_t line) {
    auto it = index_.find(row.trip_id);
    if (it == index_.end()) {
      Trip t;
      t.trip_id = row.trip_id;
      t.machine_id = row.machine_id;
      t.driver_id = row.driver_id;
      t.task_id = row.task_id;
      t.excavator_id = row.excavator_id;
      it = index_.emplace(row.trip_id, trips_.size()).first;
      trips_.push_back(std::move(t));
    }
    Trip& trip = trips_[it->second];
    if (!row.event.empty()) {
      TripEvent ev{row.update.timestamp, row.update.geo, {}};
      if (row.event == "load") {
        if (trip.load_event) {
          log_warn("trip " + trip.trip_id + ": extra load event ignored (line " +
                   std::to_string(line) + ")");
        } else {
          trip.load_event = ev;
        }
      } else {  // dropoff, validated by the caller
        if (trip.dropoff_event) {
          log_warn("trip " + trip.trip_id + ": extra dropoff event ignored (line " +
                   std::to_string(line) + ")");
        } else {
          trip.dropoff_event = ev;
        }
      }
    }
    trip.updates.push_back(std::move(row.update));
  }

  std::vector<Trip> finish() {
    for (auto& trip : trips_) {
      std::stable_sort(trip.updates.begin(), trip.updates.end(),
                       [](const GpsUpdate& a, const GpsUpdate& b) {
                         return a.timestamp < b.timestamp;
                       });
    }
    return std::move(trips_);
  }

 private:
  std::vector<Trip> trips_;
  std::unordered_map<std::string, std::size_t> index_;
};

bool valid_event_name(const std::string& e) {
  return e.empty() || e == "load" || e == "dropoff";
}

ParseResult parse_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError("empty input, expected CSV header", 1);
  ++line_no;
  // Tolerate a UTF-8 BOM on the first line.
  if (line.size() >= 3 && line[0] == '\xEF' && line[1] == '\xBB' && line[2] == '\xBF') {
    line.erase(0, 3);
  }
  if (strip(line) != kCsvHeader) {
    throw ParseError("unrecognized CSV header, expected: " + std::string(kCsvHeader), line_no);
  }

  ParseResult result;
  TripAccumulator acc;
  while (std::getline(in, line)) {
    ++line_no;
    if (strip(line).empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != 11) {
      ++result.malformed_rows;
      continue;
    }
    RowData row;
    row.trip_id = strip(fields[0]);
    const auto ts = parse_timestamp(strip(fields[1]));
    const auto lat = parse_double(strip(fields[2]));
    const auto lon = parse_double(strip(fields[3]));
    const auto speed = parse_double(strip(fields[4]));
    const std::string heading = strip(fields[5]);
    row.machine_id = strip(fields[6]);
    row.driver_id = strip(fields[7]);
    row.task_id = strip(fields[8]);
    row.excavator_id = strip(fields[9]);
    row.event = strip(fields[10]);
    if (row.trip_id.empty() || !ts || !lat || !lon || !speed || *speed < 0.0 ||
        std::abs(*lat) > 90.0 || std::abs(*lon) > 180.0 || !valid_event_name(row.event)) {
      ++result.malformed_rows;
      continue;
    }
    row.update.timestamp = *ts;
    row.update.geo = GeoCoord{*lat, *lon};
    row.update.speed_kmh = *speed;
    if (!heading.empty()) {
      if (const auto h = parse_double(heading)) row.update.raw_heading_deg = *h;
    }
    acc.add(std::move(row), line_no);
  }
  result.trips = acc.finish();
  return result;
}

ParseResult parse_jsonl(std::istream& in) {
  ParseResult result;
  TripAccumulator acc;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (strip(line).empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      ++result.malformed_rows;
      continue;
    }
    RowData row;
    try {
      row.trip_id = j.at("trip_id").get<std::string>();
      if (j.at("timestamp").is_string()) {
        const auto ts = parse_timestamp(j.at("timestamp").get<std::string>());
        if (!ts) throw std::runtime_error("bad timestamp");
        row.update.timestamp = *ts;
      } else {
        row.update.timestamp = j.at("timestamp").get<double>();
      }
      row.update.geo.lat = j.at("lat").get<double>();
      row.update.geo.lon = j.at("lon").get<double>();
      row.update.speed_kmh = j.at("speed_kmh").get<double>();
      if (j.contains("heading_deg") && j["heading_deg"].is_number()) {
        row.update.raw_heading_deg = j["heading_deg"].get<double>();
      }
      row.machine_id = j.value("machine_id", "");
      row.driver_id = j.value("driver_id", "");
      row.task_id = j.value("task_id", "");
      row.excavator_id = j.value("excavator_id", "");
      row.event = j.value("event", "");
    } catch (const std::exception&) {
      ++result.malformed_rows;
      continue;
    }
    if (row.trip_id.empty() || !std::isfinite(row.update.timestamp) ||
        std::abs(row.update.geo.lat) > 90.0 || std::abs(row.update.geo.lon) > 180.0 ||
        row.update.speed_kmh < 0.0 || !valid_event_name(row.event)) {
      ++result.malformed_rows;
      continue;
    }
    acc.add(std::move(row), line_no);
  }
  result.trips = acc.finish();
  return result;
}

}  // namespace

ParseResult parse_updates(std::istream& in, TripFormat format) {
  ParseResult result =
      format == TripFormat::kCsv ? parse_csv(in) : parse_jsonl(in);
  if (result.malformed_rows > 0) {
    log_warn(std::to_string(result.malformed_rows) + " malformed row(s) skipped");
  }
  return result;
}

GeoCoord project_trips(std::vector<Trip>& trips) {
  double min_lat = std::numeric_limits<double>::infinity();
  double min_lon = std::numeric_limits<double>::infinity();
  for (const auto& trip : trips) {
    for (const auto& u : trip.updates) {
      if (u.geo.lat == 0.0 || u.geo.lon == 0.0) continue;
      min_lat = std::min(min_lat, u.geo.lat);
      min_lon = std::min(min_lon, u.geo.lon);
    }
  }
  if (!std::isfinite(min_lat) || !std::isfinite(min_lon)) {
    throw DataError("no valid GPS coordinates in input");
  }
  const GeoCoord origin{min_lat, min_lon};
  for (auto& trip : trips) {
    for (auto& u : trip.updates) u.local = to_local(u.geo, origin);
    for (auto& u : trip.stationary) u.local = to_local(u.geo, origin);
    if (trip.load_event) trip.load_event->local = to_local(trip.load_event->geo, origin);
    if (trip.dropoff_event) trip.dropoff_event->local = to_local(trip.dropoff_event->geo, origin);
  }
  return origin;
}

CleanResult clean_trip(const Trip& trip, const PreprocessParams& params) {
  Trip out = trip;
  out.updates.clear();
  for (const auto& u : trip.updates) {
    if (u.geo.lat == 0.0 || u.geo.lon == 0.0) continue;
    if (!out.updates.empty() && u.timestamp <= out.updates.back().timestamp &&
        u.speed_kmh != 0.0) {
      continue;  // keep timestamps strictly increasing
    }
    if (u.speed_kmh == 0.0) {
      out.stationary.push_back(u);
      continue;
    }
    if (!out.updates.empty() && u.geo.lat == out.updates.back().geo.lat &&
        u.geo.lon == out.updates.back().geo.lon) {
      continue;  // consecutive duplicate position
    }
    out.updates.push_back(u);
  }
  if (out.updates.empty()) return {std::nullopt, RejectReason::kAllInvalid};

  if (!trip.endpoint_trimmed && params.endpoint_trim_m > 0.0) {
    const std::size_t n = out.updates.size();
    std::vector<double> cum_from_end(n, 0.0);
    for (std::size_t k = n - 1; k-- > 0;) {
      cum_from_end[k] =
          cum_from_end[k + 1] + distance(out.updates[k].local, out.updates[k + 1].local);
    }
    std::size_t keep = 0;
    while (keep < n && cum_from_end[keep] > params.endpoint_trim_m) ++keep;
    out.updates.resize(keep);
  }
  out.endpoint_trimmed = true;

  if (out.updates.size() < params.min_points) {
    return {std::nullopt, RejectReason::kTooShort};
  }
  return {std::move(out), RejectReason::kNone};
}

namespace {

// Attaches an event (or stationary update) to the sub-trip whose time range
// contains it, or failing that to the nearest sub-trip in time, so nothing
// reported is lost by splitting.
std::size_t nearest_part(const std::vector<Trip>& parts, double ts) {
  std::size_t best = 0;
  double best_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const double lo = parts[i].updates.front().timestamp;
    const double hi = parts[i].updates.back().timestamp;
    if (ts >= lo && ts <= hi) return i;
    const double gap = ts < lo ? lo - ts : ts - hi;
    if (gap < best_gap) {
      best_gap = gap;
      best = i;
    }
  }
  return best;
}

}  // namespace

std::vector<Trip> split_trip(const Trip& trip, const PreprocessParams& params) {
  const auto& u = trip.updates;
  if (u.size() < 2) return {trip};

  std::vector<std::size_t> cut_after;
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    const double dt = u[i + 1].timestamp - u[i].timestamp;
    const double dd = distance(u[i + 1].local, u[i].local);
    bool cut = dt > params.idle_split_s || dd > params.jump_split_m;
    if (!cut && params.turn_split_rad > 0.0 && i > 0 && dd > 0.0 &&
        distance(u[i].local, u[i - 1].local) > 0.0) {
      const double h_in = heading_between(u[i - 1].local, u[i].local);
      const double h_out = heading_between(u[i].local, u[i + 1].local);
      double turn = std::abs(h_out - h_in);
      if (turn > kPi) turn = kTwoPi - turn;
      cut = turn > params.turn_split_rad;
    }
    if (cut) cut_after.push_back(i);
  }
  if (cut_after.empty()) return {trip};

  std::vector<Trip> parts;
  std::size_t begin = 0;
  std::size_t part_no = 0;
  cut_after.push_back(u.size() - 1);  // final range terminator
  for (const std::size_t end : cut_after) {
    Trip part = trip;
    part.updates.assign(u.begin() + begin, u.begin() + end + 1);
    part.stationary.clear();
    part.load_event.reset();
    part.dropoff_event.reset();
    part.trip_id = trip.trip_id + "/" + std::to_string(part_no++);
    if (!part.updates.empty()) parts.push_back(std::move(part));
    begin = end + 1;
  }

  for (const auto& s : trip.stationary) {
    parts[nearest_part(parts, s.timestamp)].stationary.push_back(s);
  }
  if (trip.load_event) {
    parts[nearest_part(parts, trip.load_event->timestamp)].load_event = trip.load_event;
  }
  if (trip.dropoff_event) {
    parts[nearest_part(parts, trip.dropoff_event->timestamp)].dropoff_event = trip.dropoff_event;
  }

  std::erase_if(parts, [&](const Trip& p) { return p.updates.size() < params.min_points; });
  return parts;
}

namespace {

struct ResampledPath {
  std::vector<LocalCoord> points;
  std::vector<double> arc;  // arc position of each point
};

LocalCoord lerp(const LocalCoord& a, const LocalCoord& b, double t) {
  return LocalCoord{a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t};
}

ResampledPath resample_with_arc(const std::vector<LocalCoord>& pts, double spacing) {
  ResampledPath out;
  std::vector<double> cum(pts.size(), 0.0);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    cum[i] = cum[i - 1] + distance(pts[i - 1], pts[i]);
  }
  const double total = cum.back();
  out.points.push_back(pts.front());
  out.arc.push_back(0.0);
  if (total <= 0.0) {
    out.points.push_back(pts.back());
    out.arc.push_back(total);
    return out;
  }
  std::size_t seg = 0;
  for (std::size_t k = 1; static_cast<double>(k) * spacing < total - 1e-9; ++k) {
    const double s = static_cast<double>(k) * spacing;
    while (cum[seg + 1] < s) ++seg;
    const double len = cum[seg + 1] - cum[seg];
    const double t = len > 0.0 ? (s - cum[seg]) / len : 0.0;
    out.points.push_back(lerp(pts[seg], pts[seg + 1], t));
    out.arc.push_back(s);
  }
  out.points.push_back(pts.back());
  out.arc.push_back(total);
  return out;
}

// Interpolating B-spline through all input points, clamped at the ends,
// parametrized by chord length. Control points come from the banded
// collocation system A P = Q with A_{k,i} = N_{i,p}(tbar_k).
struct BSpline {
  int degree = 1;
  std::vector<double> knots;
  std::vector<LocalCoord> ctrl;

  int find_span(double t) const {
    const int n = static_cast<int>(ctrl.size()) - 1;
    if (t >= knots[n + 1]) return n;
    int lo = degree;
    int hi = n + 1;
    while (hi - lo > 1) {
      const int mid = (lo + hi) / 2;
      if (t < knots[mid]) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    return lo;
  }

  // Non-vanishing basis functions at t (standard triangular recurrence).
  void basis(int span, double t, std::vector<double>& n_out) const {
    const int p = degree;
    n_out.assign(p + 1, 0.0);
    std::vector<double> left(p + 1, 0.0), right(p + 1, 0.0);
    n_out[0] = 1.0;
    for (int j = 1; j <= p; ++j) {
      left[j] = t - knots[span + 1 - j];
      right[j] = knots[span + j] - t;
      double saved = 0.0;
      for (int r = 0; r < j; ++r) {
        const double denom = right[r + 1] + left[j - r];
        const double tmp = denom != 0.0 ? n_out[r] / denom : 0.0;
        n_out[r] = saved + right[r + 1] * tmp;
        saved = left[j - r] * tmp;
      }
      n_out[j] = saved;
    }
  }

  LocalCoord eval(double t) const {
    const int span = find_span(t);
    std::vector<double> n;
    basis(span, t, n);
    LocalCoord out{0.0, 0.0};
    for (int i = 0; i <= degree; ++i) {
      const LocalCoord& c = ctrl[span - degree + i];
      out.x += n[i] * c.x;
      out.y += n[i] * c.y;
    }
    return out;
  }
};

BSpline fit_interpolating_spline(const std::vector<LocalCoord>& q, int degree) {
  const int n = static_cast<int>(q.size()) - 1;  // points are q[0..n]
  const int p = degree;

  std::vector<double> tbar(n + 1, 0.0);
  double total = 0.0;
  for (int k = 1; k <= n; ++k) total += distance(q[k - 1], q[k]);
  for (int k = 1; k <= n; ++k) {
    tbar[k] = tbar[k - 1] + distance(q[k - 1], q[k]) / total;
  }
  tbar[n] = 1.0;

  BSpline spline;
  spline.degree = p;
  spline.knots.assign(n + p + 2, 0.0);
  for (int i = 0; i <= p; ++i) {
    spline.knots[i] = 0.0;
    spline.knots[n + 1 + i] = 1.0;
  }
  for (int j = 1; j <= n - p; ++j) {
    double acc = 0.0;
    for (int i = j; i <= j + p - 1; ++i) acc += tbar[i];
    spline.knots[j + p] = acc / p;
  }

  // Banded storage: row k holds columns [k - p, k + p].
  const int band = 2 * p + 1;
  std::vector<double> a(static_cast<std::size_t>(n + 1) * band, 0.0);
  std::vector<LocalCoord> rhs = q;
  auto at = [&](int row, int col) -> double& {
    return a[static_cast<std::size_t>(row) * band + (col - row + p)];
  };
  std::vector<double> basis_vals;
  for (int k = 0; k <= n; ++k) {
    const double t = tbar[k];
    int span = n;
    if (t < spline.knots[n + 1]) {
      span = p;
      while (span < n && t >= spline.knots[span + 1]) ++span;
    }
    spline.basis(span, t, basis_vals);
    for (int i = 0; i <= p; ++i) {
      const int col = span - p + i;
      if (std::abs(col - k) > p) continue;  // averaged knots keep us in band
      at(k, col) = basis_vals[i];
    }
  }

  // Band LU elimination without pivoting (the collocation matrix of an
  // interpolating spline with averaged knots is safely conditioned).
  for (int k = 0; k <= n; ++k) {
    const double pivot = at(k, k);
    for (int r = k + 1; r <= std::min(n, k + p); ++r) {
      const double factor = pivot != 0.0 ? at(r, k) / pivot : 0.0;
      if (factor == 0.0) continue;
      for (int c = k; c <= std::min(n, k + p); ++c) at(r, c) -= factor * at(k, c);
      rhs[r].x -= factor * rhs[k].x;
      rhs[r].y -= factor * rhs[k].y;
    }
  }
  spline.ctrl.assign(n + 1, LocalCoord{});
  for (int k = n; k >= 0; --k) {
    LocalCoord acc = rhs[k];
    for (int c = k + 1; c <= std::min(n, k + p); ++c) {
      acc.x -= at(k, c) * spline.ctrl[c].x;
      acc.y -= at(k, c) * spline.ctrl[c].y;
    }
    const double d = at(k, k);
    spline.ctrl[k] = LocalCoord{acc.x / d, acc.y / d};
  }
  return spline;
}

}  // namespace

std::vector<LocalCoord> resample_polyline(const std::vector<LocalCoord>& points,
                                          double spacing) {
  return resample_with_arc(points, spacing).points;
}

double polyline_length(const std::vector<LocalCoord>& points) {
  double total = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    total += distance(points[i - 1], points[i]);
  }
  return total;
}

Trip interpolate_trip(const Trip& trip, const PreprocessParams& params) {
  const auto& u = trip.updates;
  std::vector<LocalCoord> pts(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) pts[i] = u[i].local;

  int degree = std::max(1, params.spline_degree);
  if (pts.size() < static_cast<std::size_t>(degree) + 1) {
    log_warn("trip " + trip.trip_id + ": " + std::to_string(pts.size()) +
             " points cannot support spline degree " + std::to_string(degree) +
             ", falling back to linear");
    degree = 1;
  }

  ResampledPath path;
  std::vector<double> orig_arc(u.size(), 0.0);  // arc position of each input point
  if (degree == 1) {
    path = resample_with_arc(pts, params.interp_spacing_m);
    for (std::size_t i = 1; i < pts.size(); ++i) {
      orig_arc[i] = orig_arc[i - 1] + distance(pts[i - 1], pts[i]);
    }
  } else {
    const BSpline spline = fit_interpolating_spline(pts, degree);
    // Dense evaluation; chord error at this density is far below the output
    // spacing, so arc positions computed on the dense polyline are exact
    // enough for resampling.
    const std::size_t samples = std::max<std::size_t>(256, pts.size() * 8);
    std::vector<LocalCoord> dense(samples + 1);
    std::vector<double> dense_arc(samples + 1, 0.0);
    for (std::size_t k = 0; k <= samples; ++k) {
      dense[k] = spline.eval(static_cast<double>(k) / samples);
      if (k > 0) dense_arc[k] = dense_arc[k - 1] + distance(dense[k - 1], dense[k]);
    }
    dense.front() = pts.front();
    dense.back() = pts.back();
    path = resample_with_arc(dense, params.interp_spacing_m);

    // Arc positions of the original points via their chordal parameters.
    double total = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) total += distance(pts[i - 1], pts[i]);
    double acc = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i > 0) acc += distance(pts[i - 1], pts[i]);
      const double t = total > 0.0 ? acc / total : 0.0;
      const double ks = t * samples;
      const std::size_t k0 = std::min(static_cast<std::size_t>(ks), samples - 1);
      const double frac = ks - static_cast<double>(k0);
      orig_arc[i] = dense_arc[k0] + (dense_arc[k0 + 1] - dense_arc[k0]) * frac;
    }
  }

  Trip out = trip;
  out.updates.clear();
  out.updates.reserve(path.points.size());
  std::size_t seg = 0;
  for (std::size_t i = 0; i < path.points.size(); ++i) {
    const double s = path.arc[i];
    while (seg + 1 < orig_arc.size() - 1 && orig_arc[seg + 1] < s) ++seg;
    const double len = orig_arc[seg + 1] - orig_arc[seg];
    const double t = len > 0.0 ? std::clamp((s - orig_arc[seg]) / len, 0.0, 1.0) : 0.0;
    GpsUpdate nu;
    nu.local = path.points[i];
    nu.timestamp = u[seg].timestamp + (u[seg + 1].timestamp - u[seg].timestamp) * t;
    nu.speed_kmh = u[seg].speed_kmh + (u[seg + 1].speed_kmh - u[seg].speed_kmh) * t;
    nu.geo = GeoCoord{u[seg].geo.lat + (u[seg + 1].geo.lat - u[seg].geo.lat) * t,
                      u[seg].geo.lon + (u[seg + 1].geo.lon - u[seg].geo.lon) * t};
    out.updates.push_back(nu);
  }
  // Endpoints are the original ones, untouched.
  out.updates.front() = u.front();
  out.updates.back() = u.back();
  return out;
}

}  // namespace rgg

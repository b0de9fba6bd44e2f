#pragma once

// CSV readers and writers for pairs, assessments, XYZ pairs and prediction
// tables. Every file may start with `# ...` comment lines; written files
// carry `# schema=v1`.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "nscolor/dataset.hpp"
#include "nscolor/errors.hpp"
#include "nscolor/stats.hpp"

namespace nscolor::io {

inline constexpr std::string_view kSchemaLine = "# schema=v1";

inline const std::vector<std::string>& pairs_header() {
  static const std::vector<std::string> h{"pair_id", "center_id", "plane", "magnitude_label",
                                          "ref_L",   "ref_a",     "ref_b", "smp_L",
                                          "smp_a",   "smp_b"};
  return h;
}

inline const std::vector<std::string>& assessments_header() {
  static const std::vector<std::string> h{"pair_id", "observer_id", "session", "gs", "dv"};
  return h;
}

inline const std::vector<std::string>& xyz_pairs_header() {
  static const std::vector<std::string> h{"pair_id", "ref_X", "ref_Y", "ref_Z",
                                          "smp_X",   "smp_Y", "smp_Z"};
  return h;
}

/// Fixed six-decimal rendering used by every writer.
inline std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

/// A parsed CSV table with line numbers retained for error messages.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> lines;

  int column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<int>(i);
    return -1;
  }
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace detail

inline Table read_table(std::istream& in) {
  Table t;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = detail::trim(line);
    if (s.empty() || s.front() == '#') continue;
    auto cells = detail::split(s);
    if (!have_header) {
      t.header = std::move(cells);
      have_header = true;
      continue;
    }
    if (cells.size() != t.header.size())
      throw ParseError("expected " + std::to_string(t.header.size()) + " fields, found " +
                           std::to_string(cells.size()),
                       lineno, std::min(cells.size(), t.header.size()) + 1);
    t.rows.push_back(std::move(cells));
    t.lines.push_back(lineno);
  }
  return t;
}

inline double parse_double(const Table& t, std::size_t row, int col) {
  const std::string& s = t.rows[row][static_cast<std::size_t>(col)];
  double v = 0.0;
  const char* first = s.data();
  if (!s.empty() && s.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw ParseError("invalid number '" + s + "' in column " + t.header[static_cast<std::size_t>(col)],
                     t.lines[row], static_cast<std::size_t>(col) + 1);
  return v;
}

inline std::int64_t parse_int(const Table& t, std::size_t row, int col) {
  const std::string& s = t.rows[row][static_cast<std::size_t>(col)];
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw ParseError("invalid integer '" + s + "' in column " + t.header[static_cast<std::size_t>(col)],
                     t.lines[row], static_cast<std::size_t>(col) + 1);
  return v;
}

namespace detail {

inline void require_header(const Table& t, const std::vector<std::string>& expected,
                           std::string_view what) {
  if (t.header != expected) {
    std::string msg = std::string(what) + ": unexpected header, expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) msg += (i ? "," : "") + expected[i];
    throw SchemaError(msg);
  }
}

inline void write_header(std::ostream& out, const std::vector<std::string>& h) {
  out << kSchemaLine << '\n';
  for (std::size_t i = 0; i < h.size(); ++i) out << (i ? "," : "") << h[i];
  out << '\n';
}

}  // namespace detail

enum class MagnitudeMode { canonical, free };

/// Reads a pairs file. Canonical mode restricts magnitude labels to 1, 2, 4, 8.
inline std::vector<PairRecord> load_pairs(std::istream& in,
                                          MagnitudeMode mode = MagnitudeMode::canonical) {
  const Table t = read_table(in);
  std::vector<PairRecord> out;
  if (t.header.empty()) return out;
  detail::require_header(t, pairs_header(), "pairs");
  out.reserve(t.rows.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    PairRecord p;
    p.pair_id = parse_int(t, r, 0);
    p.center_id = parse_int(t, r, 1);
    try {
      p.plane = parse_plane(t.rows[r][2]);
    } catch (const SchemaError& e) {
      throw ParseError(e.what(), t.lines[r], 3);
    }
    p.magnitude = parse_double(t, r, 3);
    if (mode == MagnitudeMode::canonical && p.magnitude != 1.0 && p.magnitude != 2.0 &&
        p.magnitude != 4.0 && p.magnitude != 8.0)
      throw SchemaError("magnitude_label " + t.rows[r][3] + " not in {1,2,4,8} (line " +
                        std::to_string(t.lines[r]) + ", column 4)");
    if (mode == MagnitudeMode::free && !(p.magnitude > 0.0))
      throw SchemaError("magnitude_label must be positive (line " + std::to_string(t.lines[r]) +
                        ", column 4)");
    p.reference = {parse_double(t, r, 4), parse_double(t, r, 5), parse_double(t, r, 6)};
    p.sample = {parse_double(t, r, 7), parse_double(t, r, 8), parse_double(t, r, 9)};
    out.push_back(p);
  }
  return out;
}

inline void save_pairs(std::ostream& out, std::span<const PairRecord> pairs) {
  detail::write_header(out, pairs_header());
  for (const auto& p : pairs) {
    out << p.pair_id << ',' << p.center_id << ',' << to_string(p.plane) << ','
        << fmt6(p.magnitude) << ',' << fmt6(p.reference.L) << ',' << fmt6(p.reference.a) << ','
        << fmt6(p.reference.b) << ',' << fmt6(p.sample.L) << ',' << fmt6(p.sample.a) << ','
        << fmt6(p.sample.b) << '\n';
  }
}

/// Reads assessments; the dv column is optional and derived from gs when absent.
inline std::vector<AssessmentRecord> load_assessments(std::istream& in) {
  const Table t = read_table(in);
  std::vector<AssessmentRecord> out;
  if (t.header.empty()) return out;
  const auto& full = assessments_header();
  const std::vector<std::string> no_dv(full.begin(), full.end() - 1);
  const bool has_dv = t.header == full;
  if (!has_dv) detail::require_header(t, no_dv, "assessments");
  out.reserve(t.rows.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    AssessmentRecord a;
    a.pair_id = parse_int(t, r, 0);
    a.observer_id = parse_int(t, r, 1);
    a.session = static_cast<int>(parse_int(t, r, 2));
    a.gs = parse_double(t, r, 3);
    if (a.gs < kGrayScaleMin || a.gs > kGrayScaleMax)
      throw ParseError("gray-scale grade outside [1, 8]", t.lines[r], 4);
    a.dv = has_dv ? parse_double(t, r, 4) : gs_to_dv(a.gs);
    if (!(a.dv > 0.0)) throw ParseError("dv must be positive", t.lines[r], 5);
    out.push_back(a);
  }
  return out;
}

inline void save_assessments(std::ostream& out, std::span<const AssessmentRecord> records) {
  detail::write_header(out, assessments_header());
  for (const auto& a : records)
    out << a.pair_id << ',' << a.observer_id << ',' << a.session << ',' << fmt6(a.gs) << ','
        << fmt6(a.dv) << '\n';
}

struct XyzPair {
  std::int64_t pair_id = 0;
  ColorXYZ reference;
  ColorXYZ sample;
};

inline std::vector<XyzPair> load_xyz_pairs(std::istream& in) {
  const Table t = read_table(in);
  std::vector<XyzPair> out;
  if (t.header.empty()) return out;
  detail::require_header(t, xyz_pairs_header(), "xyz pairs");
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    XyzPair p;
    p.pair_id = parse_int(t, r, 0);
    p.reference = {parse_double(t, r, 1), parse_double(t, r, 2), parse_double(t, r, 3)};
    p.sample = {parse_double(t, r, 4), parse_double(t, r, 5), parse_double(t, r, 6)};
    out.push_back(p);
  }
  return out;
}

/// Reads `pair_id` and `de` columns from any table that carries them, such
/// as the output of `nscolor compute`. Keeps file order.
inline std::vector<std::pair<std::int64_t, double>> load_predictions(std::istream& in) {
  const Table t = read_table(in);
  std::vector<std::pair<std::int64_t, double>> out;
  if (t.header.empty()) return out;
  const int id_col = t.column("pair_id");
  const int de_col = t.column("de");
  if (id_col < 0 || de_col < 0) throw SchemaError("predictions: need pair_id and de columns");
  for (std::size_t r = 0; r < t.rows.size(); ++r)
    out.emplace_back(parse_int(t, r, id_col), parse_double(t, r, de_col));
  return out;
}

template <class Loader>
auto load_file(const std::string& path, Loader&& loader) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return loader(in);
}

}  // namespace nscolor::io

#include "mifs/cloud_csv.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string_view>

#include "mifs/error.hpp"

namespace mifs {

namespace {

void write_row(std::ostream& out, Point p, const std::string& label) {
  char buf[64];
  const int n = std::snprintf(buf, sizeof buf, "%.17g,%.17g", p.x, p.y);
  out.write(buf, n);
  if (!label.empty()) out << ',' << label;
  out << '\n';
}

bool parse_double(std::string_view s, double& v) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

void write_cloud_csv(std::ostream& out, std::span<const CloudRow> rows, bool header) {
  if (header) out << "x,y,label\n";
  for (const auto& r : rows) write_row(out, r.point, r.label);
}

void write_cloud_csv(std::ostream& out, std::span<const Point> points, const std::string& label,
                     bool header) {
  if (header) out << (label.empty() ? "x,y\n" : "x,y,label\n");
  for (Point p : points) write_row(out, p, label);
}

std::vector<CloudRow> read_cloud_csv(std::istream& in) {
  std::vector<CloudRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string_view view(line);
    const auto c1 = view.find(',');
    if (c1 == std::string_view::npos) throw ConfigError(line_no, "expected x,y");
    const auto c2 = view.find(',', c1 + 1);
    const auto xs = view.substr(0, c1);
    const auto ys = view.substr(c1 + 1, c2 == std::string_view::npos ? std::string_view::npos : c2 - c1 - 1);
    CloudRow row;
    if (!parse_double(xs, row.point.x) || !parse_double(ys, row.point.y)) {
      if (line_no == 1 && rows.empty()) continue;  // header
      throw ConfigError(line_no, "malformed coordinate");
    }
    if (c2 != std::string_view::npos) row.label = std::string(view.substr(c2 + 1));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace mifs

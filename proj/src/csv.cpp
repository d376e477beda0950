// SPDX-License-Identifier: Apache-2.0
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>

#include "lv/error.hpp"
#include "lv/reporting.hpp"

namespace lv {

namespace {

constexpr std::string_view kHeader = "step,t,x,y,V";

template <typename T>
T parse_field(std::string_view field, std::size_t line) {
  T value{};
  const char* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw InvalidArgument("csv line " + std::to_string(line) + ": bad number '" +
                          std::string(field) + "'");
  }
  return value;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_csv(const Trajectory& traj) {
  std::string out;
  out.reserve(64 * (traj.points.size() + 1));
  out += kHeader;
  out += '\n';
  for (const auto& pt : traj.points) {
    out += std::to_string(pt.step);
    out += ',';
    out += format_number(pt.t);
    out += ',';
    out += format_number(pt.s.x);
    out += ',';
    out += format_number(pt.s.y);
    out += ',';
    if (pt.s.strictly_positive()) out += format_number(first_integral(traj.params, pt.s));
    out += '\n';
  }
  return out;
}

void emit_csv(const Trajectory& traj, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
  const std::string text = format_csv(traj);
  os.write(text.data(), static_cast<std::streamsize>(text.size()));
  os.close();
  if (!os) throw IoError("failed writing '" + path.string() + "'");
}

std::vector<TrajectoryPoint> parse_csv_text(std::string_view text) {
  std::vector<TrajectoryPoint> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line_no == 1) {
      if (line != kHeader) throw InvalidArgument("csv header must be '" + std::string(kHeader) + "'");
      continue;
    }
    std::string_view fields[5];
    std::size_t n = 0;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = line.find(',', start);
      if (n == 5) throw InvalidArgument("csv line " + std::to_string(line_no) + ": too many fields");
      fields[n++] = line.substr(start, comma == std::string_view::npos ? line.npos : comma - start);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (n != 5) throw InvalidArgument("csv line " + std::to_string(line_no) + ": expected 5 fields");
    TrajectoryPoint pt;
    pt.step = parse_field<std::size_t>(fields[0], line_no);
    pt.t = parse_field<double>(fields[1], line_no);
    pt.s.x = parse_field<double>(fields[2], line_no);
    pt.s.y = parse_field<double>(fields[3], line_no);
    if (!fields[4].empty()) parse_field<double>(fields[4], line_no);
    rows.push_back(pt);
  }
  if (line_no == 0) throw InvalidArgument("csv is empty");
  return rows;
}

std::vector<TrajectoryPoint> parse_csv(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_csv_text(ss.str());
}

}  // namespace lv

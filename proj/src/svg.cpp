// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "lv/error.hpp"
#include "lv/reporting.hpp"

namespace lv {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kMargin = 40.0;
constexpr std::size_t kMaxVertices = 4000;
constexpr std::array<const char*, 6> kPalette = {"#1f77b4", "#d62728", "#2ca02c",
                                                 "#9467bd", "#ff7f0e", "#17becf"};

std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct Frame {
  double x_lo, x_hi, y_lo, y_hi;

  double px(double x) const { return kMargin + (x - x_lo) / (x_hi - x_lo) * (kWidth - 2 * kMargin); }
  double py(double y) const {
    return kHeight - kMargin - (y - y_lo) / (y_hi - y_lo) * (kHeight - 2 * kMargin);
  }
};

}  // namespace

std::string phase_svg_text(std::span<const Trajectory> trajs, const ModelParams& p) {
  if (trajs.empty()) throw InvalidArgument("phase portrait needs at least one trajectory");

  const State centre = fixed_points(p).coexistence;
  Frame f{0.0, centre.x, 0.0, centre.y};
  for (const auto& tr : trajs) {
    for (const auto& pt : tr.points) {
      f.x_lo = std::min(f.x_lo, pt.s.x);
      f.x_hi = std::max(f.x_hi, pt.s.x);
      f.y_lo = std::min(f.y_lo, pt.s.y);
      f.y_hi = std::max(f.y_hi, pt.s.y);
    }
  }
  const double pad_x = 0.05 * (f.x_hi - f.x_lo);
  const double pad_y = 0.05 * (f.y_hi - f.y_lo);
  f.x_hi += pad_x;
  f.y_hi += pad_y;
  if (f.x_lo < 0.0) f.x_lo -= pad_x;
  if (f.y_lo < 0.0) f.y_lo -= pad_y;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fmt2(kWidth) +
         "\" height=\"" + fmt2(kHeight) + "\" viewBox=\"0 0 " + fmt2(kWidth) + " " + fmt2(kHeight) +
         "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + fmt2(kWidth) + "\" height=\"" + fmt2(kHeight) +
         "\" fill=\"white\"/>\n";

  const auto line = [&](const char* cls, double x1, double y1, double x2, double y2,
                        const char* style) {
    out += std::string("<line class=\"") + cls + "\" x1=\"" + fmt2(x1) + "\" y1=\"" + fmt2(y1) +
           "\" x2=\"" + fmt2(x2) + "\" y2=\"" + fmt2(y2) + "\" " + style + "/>\n";
  };
  line("axis", f.px(f.x_lo), f.py(0.0), f.px(f.x_hi), f.py(0.0), "stroke=\"black\"");
  line("axis", f.px(0.0), f.py(f.y_lo), f.px(0.0), f.py(f.y_hi), "stroke=\"black\"");
  line("divider", f.px(centre.x), f.py(f.y_lo), f.px(centre.x), f.py(f.y_hi),
       "stroke=\"gray\" stroke-dasharray=\"6 4\"");
  line("divider", f.px(f.x_lo), f.py(centre.y), f.px(f.x_hi), f.py(centre.y),
       "stroke=\"gray\" stroke-dasharray=\"6 4\"");

  for (std::size_t k = 0; k < trajs.size(); ++k) {
    const auto& pts = trajs[k].points;
    const std::size_t stride = std::max<std::size_t>(1, (pts.size() + kMaxVertices - 1) / kMaxVertices);
    out += std::string("<polyline class=\"trajectory\" fill=\"none\" stroke=\"") +
           kPalette[k % kPalette.size()] + "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < pts.size(); i += stride) {
      if (i > 0) out += ' ';
      out += fmt2(f.px(pts[i].s.x)) + "," + fmt2(f.py(pts[i].s.y));
    }
    if (pts.size() > 1 && (pts.size() - 1) % stride != 0) {
      out += ' ' + fmt2(f.px(pts.back().s.x)) + "," + fmt2(f.py(pts.back().s.y));
    }
    out += "\"/>\n";
  }

  for (const State s : {State{0.0, 0.0}, centre}) {
    out += "<circle class=\"fixed-point\" cx=\"" + fmt2(f.px(s.x)) + "\" cy=\"" + fmt2(f.py(s.y)) +
           "\" r=\"4\" fill=\"black\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

void emit_phase_svg(std::span<const Trajectory> trajs, const ModelParams& p,
                    const std::filesystem::path& path) {
  const std::string text = phase_svg_text(trajs, p);
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
  os.write(text.data(), static_cast<std::streamsize>(text.size()));
  os.close();
  if (!os) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace lv

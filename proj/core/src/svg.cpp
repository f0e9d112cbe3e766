#include <algorithm>
#include <cmath>
#include <cstdio>

#include "planvec/planio.hpp"

namespace planvec::planio {

namespace {

// Fixed 6 decimals with trailing zeros removed, so output is byte-stable.
std::string num(double v) {
  if (std::abs(v) < 5e-7) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s = buf;
  s.erase(s.find_last_not_of('0') + 1);
  if (s.back() == '.') s.pop_back();
  return s;
}

void rect(std::string& out, double x, double y, double w, double h, const char* fill, const char* extra) {
  out += "  <rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) + "\" height=\"" + num(h) +
         "\" fill=\"" + fill + "\"" + extra + "/>\n";
}

}  // namespace

std::string emit_svg(const PlanVectorization& plan) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(plan.source_width) +
         "\" height=\"" + std::to_string(plan.source_height) + "\" viewBox=\"0 0 " +
         std::to_string(plan.source_width) + " " + std::to_string(plan.source_height) + "\">\n";

  std::vector<const WallBox*> walls;
  for (const auto& w : plan.walls) walls.push_back(&w);
  std::stable_sort(walls.begin(), walls.end(), [](const WallBox* a, const WallBox* b) { return a->id < b->id; });
  for (const WallBox* w : walls) {
    // Wall boxes live in their frame; rotate(theta) maps frame to image.
    std::string extra = " data-id=\"" + std::to_string(w->id) + "\"";
    if (w->frame_angle_deg != 0.0) extra += " transform=\"rotate(" + num(w->frame_angle_deg) + " 0 0)\"";
    rect(out, w->x, w->y, w->w, w->h, "#00A000", extra.c_str());
  }
  for (const auto& s : plan.symbols) {
    rect(out, s.x, s.y, s.w, s.h, s.kind == OpeningKind::door ? "#0000FF" : "#FF0000", " fill-opacity=\"0.6\"");
  }
  out += "</svg>\n";
  return out;
}

}  // namespace planvec::planio

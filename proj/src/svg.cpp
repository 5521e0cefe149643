#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "guidex/scene.hpp"

namespace guidex {

void Scene::finalize() {
  std::stable_sort(items.begin(), items.end(),
                   [](const Primitive& a, const Primitive& b) { return a.layer < b.layer; });
}

std::string format_number(double v) {
  if (!std::isfinite(v)) v = 0.0;
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
  std::string s(buf, ptr);
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string points_attr(const std::vector<Point>& pts) {
  std::string out;
  for (const Point& p : pts) {
    if (!out.empty()) out += ' ';
    out += format_number(p.x) + "," + format_number(p.y);
  }
  return out;
}

std::string path_data(const Path& path) {
  std::string d;
  for (const PathCommand& c : path.commands) {
    if (!d.empty()) d += ' ';
    switch (c.op) {
      case PathCommand::Op::move: d += "M" + format_number(c.a.x) + " " + format_number(c.a.y); break;
      case PathCommand::Op::line: d += "L" + format_number(c.a.x) + " " + format_number(c.a.y); break;
      case PathCommand::Op::quad:
        d += "Q" + format_number(c.a.x) + " " + format_number(c.a.y) + " " + format_number(c.b.x) + " " +
             format_number(c.b.y);
        break;
      case PathCommand::Op::close: d += "Z"; break;
    }
  }
  return d;
}

void style_attrs(std::ostringstream& out, const Primitive& p) {
  const Style& s = p.style;
  if (!p.role.empty()) out << " class=\"" << escape(p.role) << "\"";
  out << " stroke=\"" << escape(s.stroke) << "\" fill=\"" << escape(s.fill) << "\"";
  if (s.stroke != "none") out << " stroke-width=\"" << format_number(s.stroke_width) << "\"";
  if (s.opacity != 1.0) out << " opacity=\"" << format_number(s.opacity) << "\"";
  if (!s.dasharray.empty()) out << " stroke-dasharray=\"" << escape(s.dasharray) << "\"";
  if (!s.fill_rule.empty()) out << " fill-rule=\"" << escape(s.fill_rule) << "\"";
}

void close_element(std::ostringstream& out, const char* tag, const Primitive& p) {
  if (!p.animation) {
    out << "/>\n";
    return;
  }
  out << ">\n    <animate attributeName=\"stroke-dashoffset\" from=\"" << format_number(p.animation->dash_cycle)
      << "\" to=\"0\" dur=\"" << format_number(p.animation->duration_s) << "s\" repeatCount=\"indefinite\"/>\n  </"
      << tag << ">\n";
}

struct Writer {
  std::ostringstream& out;
  const Primitive& p;

  void operator()(const Polyline& s) const {
    out << "  <polyline points=\"" << points_attr(s.points) << "\"";
    style_attrs(out, p);
    close_element(out, "polyline", p);
  }
  void operator()(const Polygon& s) const {
    out << "  <polygon points=\"" << points_attr(s.points) << "\"";
    style_attrs(out, p);
    close_element(out, "polygon", p);
  }
  void operator()(const Path& s) const {
    out << "  <path d=\"" << path_data(s) << "\"";
    style_attrs(out, p);
    close_element(out, "path", p);
  }
  void operator()(const Circle& s) const {
    out << "  <circle cx=\"" << format_number(s.center.x) << "\" cy=\"" << format_number(s.center.y) << "\" r=\""
        << format_number(s.radius) << "\"";
    style_attrs(out, p);
    close_element(out, "circle", p);
  }
  void operator()(const Rect& s) const {
    out << "  <rect x=\"" << format_number(s.x) << "\" y=\"" << format_number(s.y) << "\" width=\""
        << format_number(s.width) << "\" height=\"" << format_number(s.height) << "\"";
    style_attrs(out, p);
    close_element(out, "rect", p);
  }
  void operator()(const Text& s) const {
    out << "  <text x=\"" << format_number(s.at.x) << "\" y=\"" << format_number(s.at.y) << "\" font-size=\""
        << format_number(s.size) << "\" text-anchor=\"" << escape(s.anchor) << "\" font-family=\"sans-serif\"";
    style_attrs(out, p);
    out << ">" << escape(s.text) << "</text>\n";
  }
};

}  // namespace

std::string scene_to_svg(const Scene& scene) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << format_number(scene.width)
      << "\" height=\"" << format_number(scene.height) << "\" viewBox=\"0 0 " << format_number(scene.width) << " "
      << format_number(scene.height) << "\"";
  if (scene.items.empty()) {
    out << "/>\n";
    return out.str();
  }
  out << ">\n";
  for (const Primitive& p : scene.items) std::visit(Writer{out, p}, p.shape);
  out << "</svg>\n";
  return out.str();
}

}  // namespace guidex

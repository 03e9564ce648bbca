#include "cooploc/svg.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace cooploc {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

std::string escape_text(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

SvgWriter::SvgWriter(double width, double height) : width_(width), height_(height) {}

void SvgWriter::add_rect(double x, double y, double w, double h, const std::string& fill,
                         double opacity) {
  body_ += "  <rect x=\"" + fmt_double(x) + "\" y=\"" + fmt_double(y) + "\" width=\"" +
           fmt_double(w) + "\" height=\"" + fmt_double(h) + "\" fill=\"" + fill +
           "\" fill-opacity=\"" + fmt_double(opacity) + "\"/>\n";
}

void SvgWriter::add_polyline(const std::vector<std::pair<double, double>>& pts,
                             const std::string& stroke, double stroke_width) {
  if (pts.empty()) return;
  body_ += "  <polyline fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" +
           fmt_double(stroke_width) + "\" points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) body_ += ' ';
    body_ += fmt_double(pts[i].first) + "," + fmt_double(pts[i].second);
  }
  body_ += "\"/>\n";
}

void SvgWriter::add_line(double x1, double y1, double x2, double y2,
                         const std::string& stroke, double stroke_width) {
  body_ += "  <line x1=\"" + fmt_double(x1) + "\" y1=\"" + fmt_double(y1) + "\" x2=\"" +
           fmt_double(x2) + "\" y2=\"" + fmt_double(y2) + "\" stroke=\"" + stroke +
           "\" stroke-width=\"" + fmt_double(stroke_width) + "\"/>\n";
}

void SvgWriter::add_text(double x, double y, const std::string& text, double size,
                         const std::string& fill) {
  body_ += "  <text x=\"" + fmt_double(x) + "\" y=\"" + fmt_double(y) +
           "\" font-family=\"sans-serif\" font-size=\"" + fmt_double(size) + "\" fill=\"" +
           fill + "\">" + escape_text(text) + "</text>\n";
}

std::string SvgWriter::str() const {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt_double(width_) +
         "\" height=\"" + fmt_double(height_) + "\" viewBox=\"0 0 " + fmt_double(width_) +
         " " + fmt_double(height_) + "\">\n" + body_ + "</svg>\n";
}

void SvgWriter::save(const std::filesystem::path& file) const {
  std::ofstream out(file, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write file: " + file.string());
  }
  out << str();
}

}  // namespace cooploc

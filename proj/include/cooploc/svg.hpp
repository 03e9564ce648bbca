#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace cooploc {

/// Fixed-format float for file output: enough digits to round-trip visibly
/// identical runs to identical bytes.
std::string fmt_double(double v);

/// Minimal deterministic SVG assembly, just enough for the report plots.
class SvgWriter {
 public:
  SvgWriter(double width, double height);

  void add_rect(double x, double y, double w, double h, const std::string& fill,
                double opacity = 1.0);
  void add_polyline(const std::vector<std::pair<double, double>>& pts,
                    const std::string& stroke, double stroke_width = 1.0);
  void add_line(double x1, double y1, double x2, double y2, const std::string& stroke,
                double stroke_width = 1.0);
  void add_text(double x, double y, const std::string& text, double size = 12.0,
                const std::string& fill = "#333333");

  std::string str() const;
  void save(const std::filesystem::path& file) const;

 private:
  double width_;
  double height_;
  std::string body_;
};

}  // namespace cooploc

#include "hullcheck/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "hullcheck/error.hpp"
#include "hullcheck/status.hpp"

namespace hullcheck {

namespace {

constexpr double kPanel = 180.0;
constexpr double kPi = 3.14159265358979323846;

struct Site {
  double px, py;
  bool has_case = false, has_noncase = false;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", std::abs(v) < 0.005 ? 0.0 : v);
  return buf;
}

Matrix as_3d(const Dataset& data) {
  Dataset d = data;
  if (d.dim() > 3) {
    if (span_dimension(d) > 3)
      throw Error(ErrorCode::DimensionUnsupported, "rendering needs dimension 3 or less");
    d = project_to_span(d);
  }
  Matrix p = Matrix::Zero(d.n(), 3);
  p.leftCols(d.dim()) = d.x();
  return p;
}

// Orthographic view: 30 degree azimuth about the vertical axis, 30 degree tilt.
std::pair<double, double> project(const RowVector& q, Projection proj, bool three_d) {
  if (!three_d || proj == Projection::Xy) return {q[0], q[1]};
  const double az = kPi / 6.0, el = kPi / 6.0;
  double x = q[0] * std::cos(az) - q[1] * std::sin(az);
  double depth = q[0] * std::sin(az) + q[1] * std::cos(az);
  return {x, q[2] * std::cos(el) + depth * std::sin(el)};
}

std::vector<Site> sites(const Dataset& data, const Matrix& pts, Projection proj, bool three_d) {
  std::vector<Site> out;
  const double scale = std::max(1.0, pts.cwiseAbs().maxCoeff());
  std::vector<RowVector> where;
  for (Index i = 0; i < pts.rows(); ++i) {
    std::size_t k = 0;
    for (; k < where.size(); ++k)
      if ((where[k] - pts.row(i)).cwiseAbs().maxCoeff() <= 1e-9 * scale) break;
    if (k == where.size()) {
      where.push_back(pts.row(i));
      auto [px, py] = project(pts.row(i), proj, three_d);
      out.push_back({px, py});
    }
    (data.y()[i] ? out[k].has_case : out[k].has_noncase) = true;
  }
  return out;
}

void panel(std::ostringstream& svg, const Dataset& data, const RenderOptions& opts, double ox,
           double oy, const std::string& label) {
  Matrix pts = as_3d(data);
  const bool three_d = data.dim() == 3 || (data.dim() > 3);
  auto ss = sites(data, pts, opts.projection, three_d);

  double xmin = -1, xmax = 1, ymin = -1, ymax = 1;
  for (const auto& s : ss) {
    xmin = std::min(xmin, s.px);
    xmax = std::max(xmax, s.px);
    ymin = std::min(ymin, s.py);
    ymax = std::max(ymax, s.py);
  }
  const double margin = opts.icon_size * 2.0;
  const double top = label.empty() ? 0.0 : 18.0;
  const double span = std::max(xmax - xmin, ymax - ymin);
  const double unit = (kPanel - 2 * margin - top) / span;
  const double cx = ox + kPanel / 2.0 - unit * (xmin + xmax) / 2.0;
  const double cy = oy + top + (kPanel - top) / 2.0 + unit * (ymin + ymax) / 2.0;
  auto X = [&](double v) { return cx + unit * v; };
  auto Y = [&](double v) { return cy - unit * v; };

  svg << "<g class=\"panel\">\n";
  if (!label.empty())
    svg << "<text x=\"" << fmt(ox + kPanel / 2.0) << "\" y=\"" << fmt(oy + 14.0)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << label
        << "</text>\n";
  if (opts.grid) {
    if (three_d && opts.projection == Projection::Iso) {
      for (int axis = 0; axis < 3; ++axis) {
        RowVector a = RowVector::Zero(3), b = RowVector::Zero(3);
        a[axis] = -2;
        b[axis] = 2;
        auto [ax, ay] = project(a, opts.projection, true);
        auto [bx, by] = project(b, opts.projection, true);
        svg << "<line x1=\"" << fmt(X(ax)) << "\" y1=\"" << fmt(Y(ay)) << "\" x2=\"" << fmt(X(bx))
            << "\" y2=\"" << fmt(Y(by)) << "\" stroke=\"#bbbbbb\" stroke-width=\"0.8\"/>\n";
      }
    } else {
      for (int g = static_cast<int>(std::floor(xmin)); g <= static_cast<int>(std::ceil(xmax)); ++g)
        svg << "<line x1=\"" << fmt(X(g)) << "\" y1=\"" << fmt(Y(ymin)) << "\" x2=\"" << fmt(X(g))
            << "\" y2=\"" << fmt(Y(ymax)) << "\" stroke=\"#dddddd\" stroke-width=\"0.6\"/>\n";
      for (int g = static_cast<int>(std::floor(ymin)); g <= static_cast<int>(std::ceil(ymax)); ++g)
        svg << "<line x1=\"" << fmt(X(xmin)) << "\" y1=\"" << fmt(Y(g)) << "\" x2=\"" << fmt(X(xmax))
            << "\" y2=\"" << fmt(Y(g)) << "\" stroke=\"#dddddd\" stroke-width=\"0.6\"/>\n";
    }
  }
  const double r = opts.icon_size / 2.0;
  for (const auto& s : ss) {
    const double x = X(s.px), y = Y(s.py);
    const char* kind = s.has_case && s.has_noncase ? "doubleton" : s.has_case ? "case" : "noncase";
    svg << "<g class=\"" << kind << "\">";
    svg << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y) << "\" r=\"" << fmt(r)
        << "\" fill=\"white\" stroke=\"black\"/>";
    if (s.has_case) {
      const double e = s.has_noncase ? r * 0.7 : r * 0.8;
      svg << "<path d=\"M" << fmt(x - e) << ' ' << fmt(y - e) << "L" << fmt(x + e) << ' '
          << fmt(y + e) << "M" << fmt(x - e) << ' ' << fmt(y + e) << "L" << fmt(x + e) << ' '
          << fmt(y - e) << "\" stroke=\"black\"/>";
    }
    if (s.has_noncase && !s.has_case)
      svg << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y) << "\" r=\"" << fmt(r * 0.55)
          << "\" fill=\"none\" stroke=\"black\"/>";
    svg << "</g>\n";
  }
  svg << "</g>\n";
}

std::string document(double w, double h, const std::string& body) {
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(w)
      << "\" height=\"" << fmt(h) << "\" viewBox=\"0 0 " << fmt(w) << ' ' << fmt(h) << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << body << "</svg>\n";
  return svg.str();
}

}  // namespace

std::string render_svg(const Dataset& data, const RenderOptions& opts) {
  std::ostringstream body;
  panel(body, data, opts, 0.0, 0.0, "");
  return document(kPanel, kPanel, body.str());
}

std::string render_gallery(const std::vector<std::pair<std::string, Dataset>>& panels,
                           const RenderOptions& opts) {
  const std::size_t per_row = 6;
  const std::size_t cols = std::min(per_row, std::max<std::size_t>(panels.size(), 1));
  const std::size_t rows = (panels.size() + per_row - 1) / per_row;
  std::ostringstream body;
  for (std::size_t i = 0; i < panels.size(); ++i)
    panel(body, panels[i].second, opts, kPanel * static_cast<double>(i % per_row),
          kPanel * static_cast<double>(i / per_row), panels[i].first);
  return document(kPanel * static_cast<double>(cols), kPanel * static_cast<double>(std::max<std::size_t>(rows, 1)),
                  body.str());
}

}  // namespace hullcheck

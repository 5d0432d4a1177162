#include "ecoepi/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace ecoepi {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_double17(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  const double bound = traj.monitor ? traj.monitor->bound
                                    : std::numeric_limits<double>::quiet_NaN();
  os << "t,P,S,U,I,T,bound\n";
  for (const auto& s : traj.samples) {
    os << format_double17(s.t) << ',' << format_double17(s.x.P) << ',' << format_double17(s.x.S)
       << ',' << format_double17(s.x.U) << ',' << format_double17(s.x.U * s.x.U) << ','
       << format_double17(s.total) << ',' << format_double17(bound) << '\n';
  }
}

void write_sweep_csv(std::ostream& os, const SweepResult& sweep) {
  os << "m,label,feasible,classification,P,S,U\n";
  for (const auto& pt : sweep.points) {
    os << format_double17(pt.m) << ",predator_free,1,"
       << classification_name(pt.predator_free_class) << ','
       << format_double17(pt.predator_free.point.P) << ','
       << format_double17(pt.predator_free.point.S) << ','
       << format_double17(pt.predator_free.point.U) << '\n';
    os << format_double17(pt.m) << ",coexistence,";
    if (pt.coexistence) {
      os << (pt.coexistence->feasible ? '1' : '0') << ','
         << classification_name(*pt.coexistence_class) << ','
         << format_double17(pt.coexistence->point.P) << ','
         << format_double17(pt.coexistence->point.S) << ','
         << format_double17(pt.coexistence->point.U) << '\n';
    } else {
      os << "0,degenerate,nan,nan,nan\n";
    }
  }
}

namespace {

struct Panel {
  const char* label;
  double x0, y0, w, h;  // plot box in canvas coordinates
};

void panel_polyline(std::ostringstream& svg, const Panel& p, const std::vector<double>& ts,
                    const std::vector<double>& vs) {
  const double tmin = ts.front(), tmax = ts.back();
  double vmin = *std::min_element(vs.begin(), vs.end());
  double vmax = *std::max_element(vs.begin(), vs.end());
  if (vmax - vmin < 1e-12 * std::max(1.0, std::fabs(vmax))) {
    const double pad = std::max(1e-12, 0.05 * std::max(1.0, std::fabs(vmax)));
    vmin -= pad;
    vmax += pad;
  }
  const double tspan = std::max(tmax - tmin, 1e-300);

  auto px = [&](double t) { return p.x0 + (t - tmin) / tspan * p.w; };
  auto py = [&](double v) { return p.y0 + p.h - (v - vmin) / (vmax - vmin) * p.h; };

  svg << "<rect x=\"" << p.x0 << "\" y=\"" << p.y0 << "\" width=\"" << p.w << "\" height=\""
      << p.h << "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";

  char buf[64];
  auto fmt = [&](double v) {
    const int n = std::snprintf(buf, sizeof(buf), "%.4g", v);
    return std::string(buf, buf + n);
  };

  for (int i = 0; i <= 4; ++i) {
    const double t = tmin + tspan * i / 4.0;
    const double x = px(t);
    svg << "<line x1=\"" << x << "\" y1=\"" << p.y0 + p.h << "\" x2=\"" << x << "\" y2=\""
        << p.y0 + p.h + 4 << "\" stroke=\"#444\"/>\n";
    svg << "<text x=\"" << x << "\" y=\"" << p.y0 + p.h + 16
        << "\" font-size=\"10\" text-anchor=\"middle\">" << fmt(t) << "</text>\n";
  }
  for (int i = 0; i <= 3; ++i) {
    const double v = vmin + (vmax - vmin) * i / 3.0;
    const double yy = py(v);
    svg << "<line x1=\"" << p.x0 - 4 << "\" y1=\"" << yy << "\" x2=\"" << p.x0 << "\" y2=\"" << yy
        << "\" stroke=\"#444\"/>\n";
    svg << "<text x=\"" << p.x0 - 6 << "\" y=\"" << yy + 3
        << "\" font-size=\"10\" text-anchor=\"end\">" << fmt(v) << "</text>\n";
  }
  svg << "<text x=\"" << p.x0 - 42 << "\" y=\"" << p.y0 + p.h / 2
      << "\" font-size=\"13\" font-weight=\"bold\">" << p.label << "</text>\n";

  svg << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.2\" points=\"";
  // Cap the emitted points; line plots gain nothing beyond ~4k vertices.
  const std::size_t stride = std::max<std::size_t>(1, ts.size() / 4000);
  for (std::size_t i = 0; i < ts.size(); i += stride)
    svg << px(ts[i]) << ',' << py(vs[i]) << ' ';
  if ((ts.size() - 1) % stride != 0) svg << px(ts.back()) << ',' << py(vs.back());
  svg << "\"/>\n";
}

}  // namespace

std::string render_trajectory_svg(const Trajectory& traj, const std::string& title) {
  const bool classical = traj.variant == Variant::Classical;
  const int npanels = classical ? 2 : 3;
  const char* labels3[3] = {"P", "S", "U"};
  const char* labels2[2] = {"P", "Q"};

  std::vector<double> ts;
  std::array<std::vector<double>, 3> vs;
  for (const auto& s : traj.samples) {
    ts.push_back(s.t);
    vs[0].push_back(s.x.P);
    vs[1].push_back(s.x.S);
    vs[2].push_back(s.x.U);
  }

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"900\" "
         "viewBox=\"0 0 800 900\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"900\" fill=\"white\"/>\n";
  svg << "<text x=\"400\" y=\"24\" font-size=\"16\" text-anchor=\"middle\">" << title
      << "</text>\n";

  const double top = 45.0, bottom = 30.0, left = 80.0, right = 25.0, gap = 40.0;
  const double panel_h = (900.0 - top - bottom - gap * (npanels - 1)) / npanels;
  for (int i = 0; i < npanels; ++i) {
    Panel p;
    p.label = classical ? labels2[i] : labels3[i];
    p.x0 = left;
    p.y0 = top + i * (panel_h + gap);
    p.w = 800.0 - left - right;
    p.h = panel_h;
    if (!ts.empty()) panel_polyline(svg, p, ts, vs[i]);
  }
  svg << "<text x=\"400\" y=\"894\" font-size=\"12\" text-anchor=\"middle\">t</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace ecoepi

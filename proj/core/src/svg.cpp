#include "extremal/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace extremal {

namespace {

constexpr const char* kVersion = "0.1.0";

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

void polyline(std::ostringstream& out, const std::vector<cplx>& pts,
              const char* cls, const char* dash) {
  out << "  <polyline class=\"" << cls << "\" fill=\"none\" stroke=\""
      << (cls[0] == 'b' ? "black" : "#1f6fb2") << "\" stroke-width=\"0.008\"";
  if (dash) out << " stroke-dasharray=\"" << dash << "\"";
  out << " points=\"";
  // Thin long polylines for readability; keep at most ~600 vertices.
  const std::size_t stride = std::max<std::size_t>(1, pts.size() / 600);
  for (std::size_t i = 0; i < pts.size(); i += stride)
    out << num(pts[i].real()) << "," << num(-pts[i].imag()) << " ";
  if ((pts.size() - 1) % stride != 0)
    out << num(pts.back().real()) << "," << num(-pts.back().imag());
  out << "\"/>\n";
}

}  // namespace

std::string stokes_svg(const PlanarDomain& domain, const StokesGraph& graph) {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  const auto& outer = domain.outer();
  for (int i = 0; i < outer.sample_count(); ++i) {
    const cplx p = outer.point(outer.sample_t(i));
    xmin = std::min(xmin, p.real());
    xmax = std::max(xmax, p.real());
    ymin = std::min(ymin, p.imag());
    ymax = std::max(ymax, p.imag());
  }
  const double pad = 0.05 * std::max(xmax - xmin, ymax - ymin);

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<!-- extremal-domains " << kVersion << " -->\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\""
      << num(xmin - pad) << " " << num(-(ymax + pad)) << " "
      << num(xmax - xmin + 2 * pad) << " " << num(ymax - ymin + 2 * pad)
      << "\">\n";

  for (int k = 0; k < domain.num_components(); ++k) {
    const auto& c = domain.component(k);
    std::vector<cplx> pts;
    for (int i = 0; i <= c.sample_count(); ++i)
      pts.push_back(c.point(c.sample_t(i % c.sample_count())));
    polyline(out, pts, "boundary", nullptr);
  }

  for (const auto& arc : graph.arcs)
    polyline(out, arc.points,
             arc.family == TrajectoryFamily::kHorizontal ? "stokes-plus"
                                                         : "stokes-minus",
             arc.family == TrajectoryFamily::kHorizontal ? nullptr : "0.02,0.02");

  for (const auto& loop : graph.boundary_loops)
    polyline(out, loop.points, "stokes-plus", nullptr);

  for (const auto& z : graph.zeros)
    out << "  <circle class=\"zero\" cx=\"" << num(z.location.real())
        << "\" cy=\"" << num(-z.location.imag())
        << "\" r=\"0.02\" fill=\"#b22222\"/>\n";

  out << "</svg>\n";
  return out.str();
}

}  // namespace extremal

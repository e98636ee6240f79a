#include "extremal/domain_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace extremal {

namespace {

using nlohmann::json;

AnalyticCurve curve_from_json(const json& j, Orientation orientation) {
  if (!j.contains("coeffs") || !j.contains("j_min"))
    throw std::invalid_argument("domain file: curve needs \"coeffs\" and \"j_min\"");
  std::vector<cplx> coeffs;
  for (const auto& c : j.at("coeffs")) {
    if (!c.is_array() || c.size() != 2)
      throw std::invalid_argument("domain file: coefficient must be [re, im]");
    coeffs.emplace_back(c[0].get<double>(), c[1].get<double>());
  }
  return AnalyticCurve(std::move(coeffs), j.at("j_min").get<int>(), orientation);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void curve_to_stream(std::ostringstream& out, const AnalyticCurve& c,
                     const char* indent) {
  out << "{\n" << indent << "  \"coeffs\": [";
  const auto& a = c.coefficients();
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (k) out << ", ";
    out << "[" << fmt(a[k].real()) << ", " << fmt(a[k].imag()) << "]";
  }
  out << "],\n" << indent << "  \"j_min\": " << c.j_min() << "\n" << indent << "}";
}

}  // namespace

PlanarDomain parse_domain(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("domain file: ") + e.what());
  }
  if (!j.contains("outer"))
    throw std::invalid_argument("domain file: missing \"outer\"");
  AnalyticCurve outer = curve_from_json(j.at("outer"), Orientation::kOuter);
  std::vector<AnalyticCurve> inners;
  if (j.contains("inners"))
    for (const auto& ij : j.at("inners"))
      inners.push_back(curve_from_json(ij, Orientation::kInner));
  std::vector<cplx> holes;
  if (j.contains("hole_points"))
    for (const auto& h : j.at("hole_points")) {
      if (!h.is_array() || h.size() != 2)
        throw std::invalid_argument("domain file: hole point must be [re, im]");
      holes.emplace_back(h[0].get<double>(), h[1].get<double>());
    }
  return PlanarDomain(std::move(outer), std::move(inners), std::move(holes));
}

PlanarDomain load_domain(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open domain file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_domain(ss.str());
}

std::string domain_to_json(const PlanarDomain& domain) {
  std::ostringstream out;
  out << "{\n  \"outer\": ";
  curve_to_stream(out, domain.outer(), "  ");
  out << ",\n  \"inners\": [";
  for (std::size_t k = 0; k < domain.inners().size(); ++k) {
    if (k) out << ", ";
    out << "\n    ";
    curve_to_stream(out, domain.inners()[k], "    ");
  }
  if (!domain.inners().empty()) out << "\n  ";
  out << "],\n  \"hole_points\": [";
  for (std::size_t k = 0; k < domain.hole_points().size(); ++k) {
    if (k) out << ", ";
    out << "[" << fmt(domain.hole_points()[k].real()) << ", "
        << fmt(domain.hole_points()[k].imag()) << "]";
  }
  out << "]\n}\n";
  return out.str();
}

void save_domain(const PlanarDomain& domain, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write domain file: " + path);
  out << domain_to_json(domain);
}

}  // namespace extremal

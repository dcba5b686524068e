#include "mosp/metrics.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "mosp/moea.hpp"

namespace mosp {

Front extract_front(std::span<const ObjectivePair> points, ObjectivePair reference) {
  Front front;
  front.reference = reference;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool keep = true;
    for (std::size_t j = 0; j < points.size() && keep; ++j) {
      if (j == i) continue;
      if (dominates(points[j], points[i])) keep = false;
      // Of exact duplicates only the first survives.
      if (points[j] == points[i] && j < i) keep = false;
    }
    if (keep) front.points.push_back(points[i]);
  }
  std::sort(front.points.begin(), front.points.end(),
            [](const ObjectivePair& a, const ObjectivePair& b) { return a[0] < b[0]; });
  return front;
}

double hypervolume(const Front& front) {
  const auto [r1, r2] = front.reference;
  double area = 0.0;
  for (std::size_t i = 0; i < front.points.size(); ++i) {
    const auto& p = front.points[i];
    if (p[0] > r1 + 1e-12 || p[1] > r2 + 1e-12) {
      throw std::invalid_argument("hypervolume: point exceeds the reference");
    }
    const double next_f1 = i + 1 < front.points.size() ? front.points[i + 1][0] : r1;
    area += (next_f1 - p[0]) * (r2 - p[1]);
  }
  return area;
}

double report_hv(const Front& front) { return 1000.0 * hypervolume(front); }

void write_front_csv(std::ostream& out, const Front& front) {
  out << "f1,f2\n";
  for (const auto& p : front.points) {
    out << fmt::format("{:.17g},{:.17g}\n", p[0], p[1]);
  }
}

Front read_front_csv(std::istream& in, ObjectivePair reference) {
  Front front;
  front.reference = reference;
  std::string line;
  if (!std::getline(in, line) || line.rfind("f1,f2", 0) != 0) {
    throw std::invalid_argument("read_front_csv: missing f1,f2 header");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument("read_front_csv: malformed row: " + line);
    }
    ObjectivePair p{std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))};
    front.points.push_back(p);
  }
  return front;
}

}  // namespace mosp

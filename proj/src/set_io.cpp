#include "fourap/set_io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace fourap {

void write_point_set(std::ostream& out, const PointSet& a) {
  const AffineSpace& w = a.domain();
  if (w.codim() != 0) throw std::invalid_argument("set files store full-space sets");
  out << "{\"p\":" << w.modulus() << ",\"n\":" << w.dim() << ",\"count\":" << a.count()
      << "}\n";
  for (uint64_t i : a.indices()) out << i << "\n";
}

PointSet read_point_set(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw std::runtime_error("set file is empty");
  nlohmann::json meta = nlohmann::json::parse(header);
  const uint32_t p = meta.at("p").get<uint32_t>();
  const int n = meta.at("n").get<int>();
  const uint64_t count = meta.at("count").get<uint64_t>();
  if (p < 2 || n < 0 || n > 24) throw std::runtime_error("set file header out of range");

  AffineSpace w = AffineSpace::full(p, n);
  std::vector<uint8_t> member(w.size(), 0);
  uint64_t seen = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    uint64_t idx = std::stoull(line);
    if (idx >= w.size()) throw std::runtime_error("set file index out of range");
    if (member[idx]) throw std::runtime_error("set file repeats an index");
    member[idx] = 1;
    ++seen;
  }
  if (seen != count) throw std::runtime_error("set file count does not match its indices");
  return PointSet(w, std::move(member));
}

void save_point_set(const std::string& path, const PointSet& a) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_point_set(out, a);
}

PointSet load_point_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  return read_point_set(in);
}

}  // namespace fourap

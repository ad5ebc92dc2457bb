#include "ergodamp/field_io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace ergodamp {

namespace {

constexpr std::array<char, 8> kMagic = {'E', 'R', 'G', 'F', 'L', 'D', '0', '1'};

static_assert(std::endian::native == std::endian::little, "field I/O assumes a little-endian host");

void put_u32(std::ostream& out, std::uint32_t v) { out.write(reinterpret_cast<const char*>(&v), sizeof v); }

std::uint32_t get_u32(std::istream& in) {
  std::uint32_t v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!in) throw InvalidInput("truncated field header");
  return v;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

void write_field_binary(std::ostream& out, const GridField& f) {
  out.write(kMagic.data(), kMagic.size());
  put_u32(out, static_cast<std::uint32_t>(f.grid().dim()));
  put_u32(out, static_cast<std::uint32_t>(f.grid().n()));
  out.write(reinterpret_cast<const char*>(f.values().data()), static_cast<std::streamsize>(f.size() * sizeof(double)));
}

GridField read_field_binary(std::istream& in) {
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw InvalidInput("not a field file (bad magic)");
  const auto d = static_cast<int>(get_u32(in));
  const auto n = static_cast<int>(get_u32(in));
  const Grid grid(d, n);
  std::vector<double> values(grid.size());
  in.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(values.size() * sizeof(double)));
  if (!in) throw InvalidInput("truncated field data");
  return GridField(grid, std::move(values));
}

void write_field_csv(std::ostream& out, const GridField& f) {
  out << "# d=" << f.grid().dim() << " n=" << f.grid().n() << '\n' << std::setprecision(17);
  for (double v : f.values()) out << v << '\n';
}

GridField read_field_csv(std::istream& in) {
  std::string header;
  std::getline(in, header);
  int d = 0, n = 0;
  if (std::sscanf(header.c_str(), "# d=%d n=%d", &d, &n) != 2) throw InvalidInput("bad CSV field header: " + header);
  const Grid grid(d, n);
  std::vector<double> values;
  values.reserve(grid.size());
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    values.push_back(std::stod(line));
  }
  return GridField(grid, std::move(values));
}

void save_field(const std::string& path, const GridField& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot open " + path + " for writing");
  if (ends_with(path, ".csv"))
    write_field_csv(out, f);
  else
    write_field_binary(out, f);
}

GridField load_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path);
  return ends_with(path, ".csv") ? read_field_csv(in) : read_field_binary(in);
}

}  // namespace ergodamp

#pragma once

// GridField file formats.
//
// Binary (.field), little-endian:
//   bytes 0..7   magic "ERGFLD01"
//   bytes 8..11  uint32 dimension d
//   bytes 12..15 uint32 points per axis n
//   then n^d float64 node values, row-major (first axis slowest)
//
// CSV: a header line "# d=<d> n=<n>" followed by one value per line in the
// same order, printed with 17 significant digits.

#include <iosfwd>
#include <string>

#include "ergodamp/torus.hpp"

namespace ergodamp {

void write_field_binary(std::ostream& out, const GridField& f);
GridField read_field_binary(std::istream& in);

void write_field_csv(std::ostream& out, const GridField& f);
GridField read_field_csv(std::istream& in);

/// Chooses the format from the extension (".csv" for CSV, binary otherwise).
void save_field(const std::string& path, const GridField& f);
GridField load_field(const std::string& path);

}  // namespace ergodamp

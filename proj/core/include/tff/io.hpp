#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tff/driver.hpp"

namespace tff {

std::string format_double(double v);  // shortest round-trip form

// Columns x1,x2,value,inside_flag,I1,I2,window_case with '#' header lines.
void write_grid_csv(std::ostream& os, const GridResult& g, const Problem& p);

// "TFFG", u32 version, u64 n, f64 lo.x lo.y P1 P2, then per point
// f64 total, f64 I1, f64 I2, u8 inside. Little-endian.
void write_grid_binary(std::ostream& os, const GridResult& g);
GridResult read_grid_binary(std::istream& is);

void write_field_gnuplot(std::ostream& os, const std::string& csv_name);

void ensure_directory(const std::string& dir);

}  // namespace tff

#include "tff/io.hpp"

#include <charconv>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <istream>
#include <ostream>

namespace tff {

namespace {

template <class T>
void put(std::ostream& os, T v) {
  static_assert(std::is_trivially_copyable_v<T>);
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::istream& is) {
  T v;
  if (!is.read(reinterpret_cast<char*>(&v), sizeof v)) throw NumericalError("grid file truncated");
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_grid_csv(std::ostream& os, const GridResult& g, const Problem& p) {
  os << "# log-kernel volume potential u(x) = int_Omega log|x - y| phi(y) dy\n";
  os << "# domain=" << p.boundary.name() << " density=" << p.phi.id << " F=" << p.far.F
     << " F_r=" << p.near.F_r << " F_theta=" << p.near.F_theta << " w0=" << format_double(p.near.window.w0)
     << " w1=" << format_double(p.near.window.w1) << '\n';
  os << "# S=[" << format_double(g.S.lo.x) << ", " << format_double(g.S.lo.x + g.S.period.x) << "] x ["
     << format_double(g.S.lo.y) << ", " << format_double(g.S.lo.y + g.S.period.y) << "] grid " << g.n << 'x'
     << g.n << ", x_ij = S.lo + P (i, j) / n, rows ordered by i then j\n";
  os << "# lengths in domain units; value = I1 + I2 inside, I2 alone outside (inside_flag = 0)\n";
  os << "x1,x2,value,inside_flag,I1,I2,window_case\n";
  for (const PointResult& r : g.points) {
    os << format_double(r.x.x) << ',' << format_double(r.x.y) << ',' << format_double(r.total) << ','
       << (r.inside ? 1 : 0) << ',' << format_double(r.I1) << ',' << format_double(r.I2) << ','
       << (r.inside ? to_string(r.window_case) : "outside") << '\n';
  }
}

void write_grid_binary(std::ostream& os, const GridResult& g) {
  os.write("TFFG", 4);
  put<std::uint32_t>(os, 1);
  put<std::uint64_t>(os, g.n);
  put(os, g.S.lo.x);
  put(os, g.S.lo.y);
  put(os, g.S.period.x);
  put(os, g.S.period.y);
  for (const PointResult& r : g.points) {
    put(os, r.total);
    put(os, r.I1);
    put(os, r.I2);
    put<std::uint8_t>(os, r.inside ? 1 : 0);
  }
}

GridResult read_grid_binary(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, "TFFG", 4) != 0) throw NumericalError("not a TFFG grid file");
  if (get<std::uint32_t>(is) != 1) throw NumericalError("unsupported TFFG version");
  GridResult g;
  g.n = get<std::uint64_t>(is);
  g.S.lo.x = get<double>(is);
  g.S.lo.y = get<double>(is);
  g.S.period.x = get<double>(is);
  g.S.period.y = get<double>(is);
  std::vector<Vec2> xs = grid_points(g.S, g.n);
  g.points.resize(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    PointResult& r = g.points[i];
    r.x = xs[i];
    r.total = get<double>(is);
    r.I1 = get<double>(is);
    r.I2 = get<double>(is);
    r.inside = get<std::uint8_t>(is) != 0;
  }
  return g;
}

void write_field_gnuplot(std::ostream& os, const std::string& csv_name) {
  os << "set datafile separator ','\n"
        "set view map\n"
        "set size ratio -1\n"
        "set xlabel 'x_1'\n"
        "set ylabel 'x_2'\n"
        "set title 'I_1 + I_2'\n"
        "set palette defined (0 '#2c3e91', 1 '#f7f7f7', 2 '#b2182b')\n"
        "splot '" << csv_name << "' every ::1 using 1:2:($4 > 0 ? $3 : 1/0) with points pt 5 ps 0.6 palette notitle\n";
}

void ensure_directory(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create directory " + dir + ": " + ec.message());
}

}  // namespace tff

#include "tff/fourier.hpp"

#include <bit>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

#include "tff/fft.hpp"

namespace tff {

namespace {

std::size_t mod(long long n, std::size_t N) {
  long long r = n % static_cast<long long>(N);
  if (r < 0) r += static_cast<long long>(N);
  return static_cast<std::size_t>(r);
}

cplx phase(double k, double x) { return std::polar(1.0, k * x); }

std::size_t good_size(std::size_t n) {
  for (std::size_t m = n;; ++m) {
    std::size_t r = m;
    for (std::size_t p : {2u, 3u, 5u})
      while (r % p == 0) r /= p;
    if (r == 1) return m;
  }
}

void check_order(std::size_t N, int F, const char* what) {
  if (F < 0) throw NumericalError(std::string(what) + ": negative truncation order");
  if (N < static_cast<std::size_t>(2 * F + 1)) {
    std::ostringstream os;
    os << what << ": undersampled (" << N << " nodes for order " << F << ", need " << 2 * F + 1 << ")";
    throw NumericalError(os.str());
  }
}

void put_u64(std::ostream& os, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 8);
}
std::uint64_t get_u64(std::istream& is) {
  unsigned char b[8];
  if (!is.read(reinterpret_cast<char*>(b), 8)) throw Error("truncated coefficient file");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}
void put_f64(std::ostream& os, double d) { put_u64(os, std::bit_cast<std::uint64_t>(d)); }
double get_f64(std::istream& is) { return std::bit_cast<double>(get_u64(is)); }

}  // namespace

FourierCoeffs1D::FourierCoeffs1D(int F_, double period_)
    : F(F_), period(period_), c(static_cast<std::size_t>(2 * F_ + 1)) {}

FourierCoeffs2D::FourierCoeffs2D(int F_, Vec2 periods_)
    : F(F_), periods(periods_), c(static_cast<std::size_t>(2 * F_ + 1) * static_cast<std::size_t>(2 * F_ + 1)) {}

FourierCoeffs1D coeffs_from_samples(const std::vector<cplx>& samples, double period, int F, double origin) {
  const std::size_t N = samples.size();
  check_order(N, F, "coeffs_from_samples");
  std::vector<cplx> a = samples;
  fft::dft_1d(a.data(), N, -1);
  FourierCoeffs1D out(F, period);
  const double k0 = two_pi / period;
  for (int n = -F; n <= F; ++n) out[n] = a[mod(n, N)] / static_cast<double>(N) * phase(-k0 * n, origin);
  return out;
}

FourierCoeffs1D coeffs_from_samples(const std::vector<double>& samples, double period, int F, double origin) {
  return coeffs_from_samples(std::vector<cplx>(samples.begin(), samples.end()), period, F, origin);
}

FourierCoeffs2D coeffs_from_samples_2d(const std::vector<cplx>& samples, std::size_t n0, std::size_t n1,
                                       Vec2 periods, int F, Vec2 origin) {
  if (samples.size() != n0 * n1) throw NumericalError("coeffs_from_samples_2d: sample count mismatch");
  check_order(n0, F, "coeffs_from_samples_2d");
  check_order(n1, F, "coeffs_from_samples_2d");
  std::vector<cplx> a = samples;
  fft::dft_2d(a.data(), n0, n1, -1);
  FourierCoeffs2D out(F, periods);
  const double k0 = two_pi / periods.x, k1 = two_pi / periods.y;
  const double scale = 1.0 / static_cast<double>(n0 * n1);
  std::vector<cplx> p1(static_cast<std::size_t>(2 * F + 1));
  for (int n = -F; n <= F; ++n) p1[static_cast<std::size_t>(n + F)] = phase(-k1 * n, origin.y);
  for (int m = -F; m <= F; ++m) {
    cplx pm = phase(-k0 * m, origin.x) * scale;
    for (int n = -F; n <= F; ++n)
      out(m, n) = a[mod(m, n0) * n1 + mod(n, n1)] * pm * p1[static_cast<std::size_t>(n + F)];
  }
  return out;
}

cplx eval_truncated_series(const FourierCoeffs1D& c, double x) {
  const double k0 = two_pi / c.period;
  cplx s = 0;
  for (int n = -c.F; n <= c.F; ++n) s += c[n] * phase(k0 * n, x);
  return s;
}

cplx eval_truncated_series(const FourierCoeffs2D& c, Vec2 x) {
  const double k0 = two_pi / c.periods.x, k1 = two_pi / c.periods.y;
  std::vector<cplx> e1(static_cast<std::size_t>(2 * c.F + 1));
  for (int n = -c.F; n <= c.F; ++n) e1[static_cast<std::size_t>(n + c.F)] = phase(k1 * n, x.y);
  cplx s = 0;
  for (int m = -c.F; m <= c.F; ++m) {
    cplx row = 0;
    const cplx* cm = &c(m, -c.F);
    for (std::size_t j = 0; j < e1.size(); ++j) row += cm[j] * e1[j];
    s += row * phase(k0 * m, x.x);
  }
  return s;
}

std::vector<cplx> eval_on_grid(const FourierCoeffs1D& c, std::size_t N, double origin) {
  std::vector<cplx> a(N);
  const double k0 = two_pi / c.period;
  for (int n = -c.F; n <= c.F; ++n) a[mod(n, N)] += c[n] * phase(k0 * n, origin);
  fft::dft_1d(a.data(), N, +1);
  return a;
}

std::vector<cplx> eval_on_grid_2d(const FourierCoeffs2D& c, std::size_t n0, std::size_t n1, Vec2 origin) {
  std::vector<cplx> a(n0 * n1);
  const double k0 = two_pi / c.periods.x, k1 = two_pi / c.periods.y;
  for (int m = -c.F; m <= c.F; ++m) {
    cplx pm = phase(k0 * m, origin.x);
    for (int n = -c.F; n <= c.F; ++n) a[mod(m, n0) * n1 + mod(n, n1)] += c(m, n) * pm * phase(k1 * n, origin.y);
  }
  fft::dft_2d(a.data(), n0, n1, +1);
  return a;
}

FourierCoeffs1D periodic_convolve(const FourierCoeffs1D& a, const FourierCoeffs1D& b) {
  if (a.period != b.period) throw NumericalError("periodic_convolve: period mismatch");
  if (a.F != b.F) throw NumericalError("periodic_convolve: order mismatch");
  FourierCoeffs1D out(a.F, a.period);
  for (std::size_t i = 0; i < out.c.size(); ++i) out.c[i] = a.period * a.c[i] * b.c[i];
  return out;
}

FourierCoeffs2D periodic_convolve(const FourierCoeffs2D& a, const FourierCoeffs2D& b) {
  if (!(a.periods == b.periods)) throw NumericalError("periodic_convolve: period mismatch");
  if (a.F != b.F) throw NumericalError("periodic_convolve: order mismatch");
  FourierCoeffs2D out(a.F, a.periods);
  const double s = a.periods.x * a.periods.y;
  for (std::size_t i = 0; i < out.c.size(); ++i) out.c[i] = s * a.c[i] * b.c[i];
  return out;
}

FourierCoeffs2D coeff_array_convolve_truncated(const FourierCoeffs2D& a, const FourierCoeffs2D& b) {
  if (a.F != b.F) throw NumericalError("coefficient convolution: order mismatch");
  if (!(a.periods == b.periods)) throw NumericalError("coefficient convolution: period mismatch");
  const int F = a.F;
  const std::size_t W = static_cast<std::size_t>(2 * F + 1);
  const std::size_t L = good_size(static_cast<std::size_t>(4 * F + 1));
  std::vector<cplx> A(L * L), B(L * L);
  for (std::size_t i = 0; i < W; ++i)
    for (std::size_t j = 0; j < W; ++j) {
      A[i * L + j] = a.c[i * W + j];
      B[i * L + j] = b.c[i * W + j];
    }
  fft::dft_2d(A.data(), L, L, -1);
  fft::dft_2d(B.data(), L, L, -1);
  for (std::size_t i = 0; i < L * L; ++i) A[i] *= B[i];
  fft::dft_2d(A.data(), L, L, +1);
  const double scale = 1.0 / static_cast<double>(L * L);
  FourierCoeffs2D out(F, a.periods);
  // linear index p + q = (m + 2F) for output mode m
  for (std::size_t i = 0; i < W; ++i)
    for (std::size_t j = 0; j < W; ++j) out.c[i * W + j] = A[(i + F) * L + (j + F)] * scale;
  return out;
}

FourierCoeffs2D coeff_array_convolve_direct(const FourierCoeffs2D& a, const FourierCoeffs2D& b) {
  if (a.F != b.F) throw NumericalError("coefficient convolution: order mismatch");
  const int F = a.F;
  FourierCoeffs2D out(F, a.periods);
  for (int m = -F; m <= F; ++m)
    for (int n = -F; n <= F; ++n) {
      cplx s = 0;
      for (int j = std::max(-F, m - F); j <= std::min(F, m + F); ++j)
        for (int k = std::max(-F, n - F); k <= std::min(F, n + F); ++k) s += a(j, k) * b(m - j, n - k);
      out(m, n) = s;
    }
  return out;
}

void write_binary(std::ostream& os, const FourierCoeffs2D& c) {
  os.write("TFFC", 4);
  put_u64(os, 1);
  put_u64(os, static_cast<std::uint64_t>(static_cast<std::int64_t>(c.F)));
  put_f64(os, c.periods.x);
  put_f64(os, c.periods.y);
  for (const cplx& z : c.c) {
    put_f64(os, z.real());
    put_f64(os, z.imag());
  }
}

FourierCoeffs2D read_binary(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, "TFFC", 4) != 0) throw Error("not a coefficient file");
  if (get_u64(is) != 1) throw Error("unsupported coefficient file version");
  auto F = static_cast<int>(static_cast<std::int64_t>(get_u64(is)));
  if (F < 0 || F > 1 << 14) throw Error("corrupt coefficient file header");
  Vec2 P;
  P.x = get_f64(is);
  P.y = get_f64(is);
  FourierCoeffs2D c(F, P);
  for (cplx& z : c.c) {
    double re = get_f64(is);
    double im = get_f64(is);
    z = {re, im};
  }
  return c;
}

void write_csv(std::ostream& os, const FourierCoeffs2D& c) {
  os.precision(17);
  os << "# periods " << c.periods.x << " " << c.periods.y << "\nm,n,re,im\n";
  for (int m = -c.F; m <= c.F; ++m)
    for (int n = -c.F; n <= c.F; ++n) os << m << ',' << n << ',' << c(m, n).real() << ',' << c(m, n).imag() << '\n';
}

void write_csv(std::ostream& os, const FourierCoeffs1D& c) {
  os.precision(17);
  os << "# period " << c.period << "\nn,re,im\n";
  for (int n = -c.F; n <= c.F; ++n) os << n << ',' << c[n].real() << ',' << c[n].imag() << '\n';
}

}  // namespace tff

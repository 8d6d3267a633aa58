#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace rsurf {

using Rat = mpq_class;
using Int = mpz_class;

/// Euler totient.
int totient(int k);

/// Coefficients of the m-th cyclotomic polynomial, ascending degree, monic.
/// Computed by dividing x^m - 1 by all lower-order cyclotomic polynomials.
const std::vector<Int>& cyclotomic_polynomial(int m);

/// An element of the cyclotomic field Q(zeta_m), stored as exact rational
/// coordinates over the power basis 1, zeta, ..., zeta^{phi(m)-1}.
///
/// All arithmetic is exact; values are immutable once constructed and safe
/// to share across threads.
class CycNum {
 public:
  CycNum() : m_(1), c_(1, Rat(0)) {}

  static CycNum zero(int conductor);
  static CycNum one(int conductor);
  static CycNum from_rational(int conductor, const Rat& v);
  /// zeta_m^power (power may be negative).
  static CycNum root_of_unity(int conductor, long power);
  /// Construct from explicit power-basis coordinates (length phi(conductor)).
  static CycNum from_coeffs(int conductor, std::vector<Rat> coeffs);

  int conductor() const { return m_; }
  const std::vector<Rat>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  /// Throws std::domain_error unless is_rational().
  Rat rational_value() const;

  CycNum operator+(const CycNum& o) const;
  CycNum operator-(const CycNum& o) const;
  CycNum operator*(const CycNum& o) const;
  CycNum operator-() const;
  CycNum scaled(const Rat& r) const;

  /// Complex conjugate: image of zeta_m under zeta_m -> zeta_m^{m-1}.
  CycNum conj() const;

  /// Principal embedding zeta_m -> exp(2*pi*i/m).
  std::complex<double> embed() const;

  /// Re-express in Q(zeta_M) for M a multiple of the current conductor.
  CycNum lifted_to(int big_conductor) const;

  /// (a + conj(a))/2 and (a - conj(a))/(2i); the latter requires 4 | m.
  CycNum real_part() const;
  CycNum imag_part() const;

  bool operator==(const CycNum& o) const { return m_ == o.m_ && c_ == o.c_; }
  bool operator!=(const CycNum& o) const { return !(*this == o); }
  /// Lexicographic on (conductor, coeffs); a total order usable for dedup.
  bool operator<(const CycNum& o) const;

  std::string to_string() const;

 private:
  CycNum(int m, std::vector<Rat> c) : m_(m), c_(std::move(c)) {}
  int m_;
  std::vector<Rat> c_;
};

/// cyc_mul with the spec's conductor-mismatch contract (throws
/// std::invalid_argument when conductors differ).
CycNum cyc_mul(const CycNum& a, const CycNum& b);
CycNum cyc_conj(const CycNum& a);
std::complex<double> cyc_embed(const CycNum& a);

/// Dense matrix of exact rationals.
struct RationalMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Rat> a;  // row-major

  RationalMatrix() = default;
  RationalMatrix(int r, int c) : rows(r), cols(c), a(size_t(r) * c, Rat(0)) {}

  Rat& at(int i, int j) { return a[size_t(i) * cols + j]; }
  const Rat& at(int i, int j) const { return a[size_t(i) * cols + j]; }
};

/// Exact rank over Q (Gaussian elimination on mpq, no pivoting surprises).
int rational_rank(const RationalMatrix& M);

/// Determinant of a square RationalMatrix, exact.
Rat rational_det(const RationalMatrix& M);

}  // namespace rsurf

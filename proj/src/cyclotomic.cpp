#include "rsurf/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace rsurf {

int totient(int k) {
  if (k < 1) throw std::invalid_argument("totient: k must be >= 1");
  int result = k;
  int n = k;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

namespace {

// Exact division of integer polynomials (ascending coeffs); remainder must
// vanish.
std::vector<Int> poly_div_exact(std::vector<Int> num, const std::vector<Int>& den) {
  const int dn = int(num.size()) - 1;
  const int dd = int(den.size()) - 1;
  if (dd > dn) throw std::logic_error("poly_div_exact: degree mismatch");
  std::vector<Int> quot(dn - dd + 1, Int(0));
  for (int k = dn - dd; k >= 0; --k) {
    Int q = num[k + dd] / den[dd];
    quot[k] = q;
    for (int j = 0; j <= dd; ++j) num[k + j] -= q * den[j];
  }
  for (const Int& v : num) {
    if (v != 0) throw std::logic_error("poly_div_exact: nonzero remainder");
  }
  return quot;
}

std::map<int, std::vector<Int>>& cyclo_cache() {
  static std::map<int, std::vector<Int>> cache;
  return cache;
}
std::mutex cyclo_mutex;

const std::vector<Int>& cyclotomic_locked(int m) {
  auto& cache = cyclo_cache();
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  // x^m - 1
  std::vector<Int> poly(m + 1, Int(0));
  poly[0] = -1;
  poly[m] = 1;
  for (int d = 1; d < m; ++d) {
    if (m % d == 0) poly = poly_div_exact(std::move(poly), cyclotomic_locked(d));
  }
  return cache.emplace(m, std::move(poly)).first->second;
}

// Reduction table: coordinates of zeta^k over the power basis, for
// 0 <= k < 2*phi(m). Entries are integers since Phi_m is monic over Z.
struct RedTable {
  int phi = 0;
  std::vector<std::vector<Int>> rows;
};

const RedTable& red_table(int m) {
  static std::map<int, RedTable> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;

  RedTable t;
  t.phi = totient(m);
  const int d = t.phi;
  std::vector<Int> poly;
  {
    std::lock_guard<std::mutex> lock2(cyclo_mutex);
    poly = cyclotomic_locked(m);
  }
  t.rows.reserve(2 * d);
  for (int k = 0; k < d; ++k) {
    std::vector<Int> row(d, Int(0));
    row[k] = 1;
    t.rows.push_back(std::move(row));
  }
  for (int k = d; k < 2 * d; ++k) {
    const auto& prev = t.rows[k - 1];
    std::vector<Int> row(d, Int(0));
    Int carry = prev[d - 1];
    for (int i = d - 1; i >= 1; --i) row[i] = prev[i - 1];
    row[0] = 0;
    if (carry != 0) {
      for (int i = 0; i < d; ++i) row[i] -= carry * poly[i];
    }
    t.rows.push_back(std::move(row));
  }
  return cache.emplace(m, std::move(t)).first->second;
}

}  // namespace

const std::vector<Int>& cyclotomic_polynomial(int m) {
  if (m < 1) throw std::invalid_argument("cyclotomic_polynomial: m >= 1");
  std::lock_guard<std::mutex> lock(cyclo_mutex);
  return cyclotomic_locked(m);
}

CycNum CycNum::zero(int conductor) {
  return CycNum(conductor, std::vector<Rat>(totient(conductor), Rat(0)));
}

CycNum CycNum::one(int conductor) { return from_rational(conductor, Rat(1)); }

CycNum CycNum::from_rational(int conductor, const Rat& v) {
  std::vector<Rat> c(totient(conductor), Rat(0));
  c[0] = v;
  return CycNum(conductor, std::move(c));
}

CycNum CycNum::from_coeffs(int conductor, std::vector<Rat> coeffs) {
  if (int(coeffs.size()) != totient(conductor))
    throw std::invalid_argument("CycNum::from_coeffs: wrong length");
  return CycNum(conductor, std::move(coeffs));
}

CycNum CycNum::root_of_unity(int conductor, long power) {
  const auto& t = red_table(conductor);
  long k = power % conductor;
  if (k < 0) k += conductor;
  const int d = t.phi;
  std::vector<Rat> c(d, Rat(0));
  if (k < 2 * d) {
    for (int i = 0; i < d; ++i) c[i] = Rat(t.rows[k][i]);
    return CycNum(conductor, std::move(c));
  }
  // Fall back to repeated squaring-free buildup; k < m is small anyway.
  CycNum out = one(conductor);
  CycNum z = root_of_unity(conductor, 1);
  for (long i = 0; i < k; ++i) out = out * z;
  return out;
}

bool CycNum::is_zero() const {
  for (const Rat& v : c_)
    if (v != 0) return false;
  return true;
}

bool CycNum::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Rat CycNum::rational_value() const {
  if (!is_rational()) throw std::domain_error("CycNum: not rational: " + to_string());
  return c_[0];
}

CycNum CycNum::operator+(const CycNum& o) const {
  if (m_ != o.m_) throw std::invalid_argument("CycNum: conductor mismatch in +");
  std::vector<Rat> c(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] + o.c_[i];
  return CycNum(m_, std::move(c));
}

CycNum CycNum::operator-(const CycNum& o) const {
  if (m_ != o.m_) throw std::invalid_argument("CycNum: conductor mismatch in -");
  std::vector<Rat> c(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] - o.c_[i];
  return CycNum(m_, std::move(c));
}

CycNum CycNum::operator-() const {
  std::vector<Rat> c(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) c[i] = -c_[i];
  return CycNum(m_, std::move(c));
}

CycNum CycNum::scaled(const Rat& r) const {
  std::vector<Rat> c(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] * r;
  return CycNum(m_, std::move(c));
}

CycNum CycNum::operator*(const CycNum& o) const {
  if (m_ != o.m_) throw std::invalid_argument("CycNum: conductor mismatch in *");
  const int d = int(c_.size());
  std::vector<Rat> conv(2 * d - 1, Rat(0));
  for (int i = 0; i < d; ++i) {
    if (c_[i] == 0) continue;
    for (int j = 0; j < d; ++j) {
      if (o.c_[j] == 0) continue;
      conv[i + j] += c_[i] * o.c_[j];
    }
  }
  const auto& t = red_table(m_);
  std::vector<Rat> out(d, Rat(0));
  for (int k = 0; k < 2 * d - 1; ++k) {
    if (conv[k] == 0) continue;
    const auto& row = t.rows[k];
    for (int i = 0; i < d; ++i) {
      if (row[i] != 0) out[i] += conv[k] * Rat(row[i]);
    }
  }
  return CycNum(m_, std::move(out));
}

CycNum CycNum::conj() const {
  CycNum out = zero(m_);
  for (size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    out = out + root_of_unity(m_, long((m_ - 1) * k)).scaled(c_[k]);
  }
  return out;
}

std::complex<double> CycNum::embed() const {
  std::complex<long double> acc(0.0L, 0.0L);
  const long double tau = 2.0L * std::numbers::pi_v<long double> / m_;
  for (size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    const long double v = static_cast<long double>(c_[k].get_d());
    acc += v * std::complex<long double>(std::cos(tau * k), std::sin(tau * k));
  }
  return {double(acc.real()), double(acc.imag())};
}

CycNum CycNum::lifted_to(int big) const {
  if (big == m_) return *this;
  if (big % m_ != 0) throw std::invalid_argument("CycNum::lifted_to: not a multiple");
  const long step = big / m_;
  CycNum out = zero(big);
  for (size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    out = out + root_of_unity(big, step * long(k)).scaled(c_[k]);
  }
  return out;
}

CycNum CycNum::real_part() const {
  return (*this + conj()).scaled(Rat(1, 2));
}

CycNum CycNum::imag_part() const {
  if (m_ % 4 != 0)
    throw std::domain_error("CycNum::imag_part: conductor must be divisible by 4");
  // (a - conj(a)) / (2i) = (a - conj(a)) * (-i) / 2, with i = zeta^{m/4}.
  CycNum minus_i = root_of_unity(m_, 3L * (m_ / 4));
  return ((*this - conj()) * minus_i).scaled(Rat(1, 2));
}

bool CycNum::operator<(const CycNum& o) const {
  if (m_ != o.m_) return m_ < o.m_;
  for (size_t i = 0; i < c_.size(); ++i) {
    const int c = cmp(c_[i], o.c_[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

std::string CycNum::to_string() const {
  std::ostringstream os;
  os << "CycNum(m=" << m_ << "; ";
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) os << ", ";
    os << c_[i].get_str();
  }
  os << ")";
  return os.str();
}

CycNum cyc_mul(const CycNum& a, const CycNum& b) {
  if (a.conductor() != b.conductor())
    throw std::invalid_argument("cyc_mul: conductor mismatch");
  return a * b;
}

CycNum cyc_conj(const CycNum& a) { return a.conj(); }

std::complex<double> cyc_embed(const CycNum& a) { return a.embed(); }

int rational_rank(const RationalMatrix& M) {
  RationalMatrix W = M;
  int rank = 0;
  for (int col = 0; col < W.cols && rank < W.rows; ++col) {
    int piv = -1;
    for (int i = rank; i < W.rows; ++i) {
      if (W.at(i, col) != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != rank) {
      for (int j = 0; j < W.cols; ++j) std::swap(W.at(piv, j), W.at(rank, j));
    }
    for (int i = rank + 1; i < W.rows; ++i) {
      if (W.at(i, col) == 0) continue;
      Rat f = W.at(i, col) / W.at(rank, col);
      for (int j = col; j < W.cols; ++j) W.at(i, j) -= f * W.at(rank, j);
    }
    ++rank;
  }
  return rank;
}

Rat rational_det(const RationalMatrix& M) {
  if (M.rows != M.cols) throw std::invalid_argument("rational_det: not square");
  RationalMatrix W = M;
  Rat det(1);
  for (int col = 0; col < W.cols; ++col) {
    int piv = -1;
    for (int i = col; i < W.rows; ++i) {
      if (W.at(i, col) != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) return Rat(0);
    if (piv != col) {
      for (int j = 0; j < W.cols; ++j) std::swap(W.at(piv, j), W.at(col, j));
      det = -det;
    }
    det *= W.at(col, col);
    for (int i = col + 1; i < W.rows; ++i) {
      if (W.at(i, col) == 0) continue;
      Rat f = W.at(i, col) / W.at(col, col);
      for (int j = col; j < W.cols; ++j) W.at(i, j) -= f * W.at(col, j);
    }
  }
  return det;
}

}  // namespace rsurf

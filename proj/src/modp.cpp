#include "tricover/modp.hpp"

#include <stdexcept>
#include <utility>

namespace tricover::modp {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field::Field(std::uint64_t p) : p_(p) {
  if (p >= (std::uint64_t{1} << 32) || !is_prime(p))
    throw std::invalid_argument("field modulus must be a prime below 2^32");
}

Elem Field::reduce(long long v) const {
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += static_cast<long long>(p_);
  return static_cast<Elem>(r);
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  Elem result = 1 % p_;
  a %= p_;
  while (e) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

Elem Field::inv(Elem a) const {
  if (a % p_ == 0) throw std::domain_error("inverse of zero");
  return pow(a, p_ - 2);
}

std::size_t rank(Matrix rows, const Field& f) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    const Elem scale = f.inv(rows[r][c]);
    for (std::size_t k = c; k < cols; ++k) rows[r][k] = f.mul(rows[r][k], scale);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      const Elem factor = rows[i][c];
      if (factor == 0) continue;
      for (std::size_t k = c; k < cols; ++k) rows[i][k] = f.sub(rows[i][k], f.mul(factor, rows[r][k]));
    }
    ++r;
  }
  return r;
}

Elem determinant(Matrix m, const Field& f) {
  const std::size_t n = m.size();
  Elem det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && m[pivot][c] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != c) {
      std::swap(m[c], m[pivot]);
      det = f.neg(det);
    }
    det = f.mul(det, m[c][c]);
    const Elem scale = f.inv(m[c][c]);
    for (std::size_t i = c + 1; i < n; ++i) {
      const Elem factor = f.mul(m[i][c], scale);
      if (factor == 0) continue;
      for (std::size_t k = c; k < n; ++k) m[i][k] = f.sub(m[i][k], f.mul(factor, m[c][k]));
    }
  }
  return det;
}

}  // namespace tricover::modp

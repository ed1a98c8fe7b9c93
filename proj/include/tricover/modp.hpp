#pragma once

// Arithmetic in a prime field F_p with p < 2^32, and dense Gaussian
// elimination over it.

#include <cstdint>
#include <vector>

namespace tricover::modp {

using Elem = std::uint64_t;
using Matrix = std::vector<std::vector<Elem>>;

bool is_prime(std::uint64_t n);

class Field {
 public:
  /// Throws std::invalid_argument unless p is a prime below 2^32.
  explicit Field(std::uint64_t p);

  std::uint64_t prime() const { return p_; }
  Elem reduce(long long v) const;
  Elem add(Elem a, Elem b) const { return (a + b) % p_; }
  Elem sub(Elem a, Elem b) const { return (a + p_ - b) % p_; }
  Elem mul(Elem a, Elem b) const { return (a * b) % p_; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem pow(Elem a, std::uint64_t e) const;
  /// Throws std::domain_error on zero.
  Elem inv(Elem a) const;

 private:
  std::uint64_t p_;
};

/// Rank of the matrix (rows may be empty). Rows must share one length.
std::size_t rank(Matrix rows, const Field& f);

/// Determinant of a square matrix.
Elem determinant(Matrix m, const Field& f);

}  // namespace tricover::modp

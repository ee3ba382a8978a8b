#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

namespace scissors {

using IntMatrix = std::vector<std::vector<mpz_class>>;

IntMatrix zero_matrix(std::size_t rows, std::size_t cols);
IntMatrix identity_matrix(std::size_t n);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b, std::size_t inner);

// U * M * V = D with U, V unimodular and D diagonal, d_i >= 0, d_i | d_{i+1}.
// Vinv is the inverse of V. U is left empty unless requested.
struct SmithForm {
  IntMatrix U, D, V, Vinv;
  std::vector<mpz_class> diagonal;  // min(rows, cols) entries
};

SmithForm smith_normal_form(const IntMatrix& M, std::size_t rows, std::size_t cols, bool track_u = true);

}  // namespace scissors

#include "scissors/snf.hpp"

#include <utility>

namespace scissors {

IntMatrix zero_matrix(std::size_t rows, std::size_t cols) {
  return IntMatrix(rows, std::vector<mpz_class>(cols, 0));
}

IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m = zero_matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b, std::size_t inner) {
  const std::size_t rows = a.size(), cols = b.empty() ? 0 : b[0].size();
  IntMatrix out = zero_matrix(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  }
  return out;
}

namespace {

class Reducer {
 public:
  Reducer(const IntMatrix& m, std::size_t rows, std::size_t cols, bool track_u)
      : a_(m), u_(track_u ? identity_matrix(rows) : IntMatrix{}), v_(identity_matrix(cols)), vinv_(identity_matrix(cols)),
        rows_(rows), cols_(cols) {}

  SmithForm run() {
    const std::size_t n = std::min(rows_, cols_);
    for (std::size_t t = 0; t < n; ++t) {
      if (!pivot(t)) break;
    }
    SmithForm out{std::move(u_), std::move(a_), std::move(v_), std::move(vinv_), {}};
    for (std::size_t t = 0; t < n; ++t) out.diagonal.push_back(out.D[t][t]);
    return out;
  }

 private:
  void swap_rows(std::size_t i, std::size_t k) {
    std::swap(a_[i], a_[k]);
    if (!u_.empty()) std::swap(u_[i], u_[k]);
  }
  void swap_cols(std::size_t j, std::size_t k) {
    for (auto& row : a_) std::swap(row[j], row[k]);
    for (auto& row : v_) std::swap(row[j], row[k]);
    std::swap(vinv_[j], vinv_[k]);
  }
  // row_i -= q * row_k
  void sub_row(std::size_t i, std::size_t k, const mpz_class& q) {
    for (std::size_t j = 0; j < cols_; ++j) a_[i][j] -= q * a_[k][j];
    if (u_.empty()) return;
    for (std::size_t j = 0; j < rows_; ++j) u_[i][j] -= q * u_[k][j];
  }
  // col_j -= q * col_k
  void sub_col(std::size_t j, std::size_t k, const mpz_class& q) {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (a_[i][k] != 0) a_[i][j] -= q * a_[i][k];
    }
    for (std::size_t i = 0; i < cols_; ++i) v_[i][j] -= q * v_[i][k];
    for (std::size_t i = 0; i < cols_; ++i) vinv_[k][i] += q * vinv_[j][i];
  }

  // Brings the smallest nonzero entry of the trailing block to (t, t).
  bool place_min(std::size_t t) {
    std::size_t bi = rows_, bj = cols_;
    mpz_class best;
    for (std::size_t i = t; i < rows_; ++i) {
      for (std::size_t j = t; j < cols_; ++j) {
        if (a_[i][j] == 0) continue;
        if (bi == rows_ || abs(a_[i][j]) < best) {
          best = abs(a_[i][j]);
          bi = i;
          bj = j;
        }
      }
    }
    if (bi == rows_) return false;
    if (bi != t) swap_rows(t, bi);
    if (bj != t) swap_cols(t, bj);
    return true;
  }

  bool pivot(std::size_t t) {
    if (!place_min(t)) return false;
    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows_; ++i) {
        if (a_[i][t] == 0) continue;
        const mpz_class q = a_[i][t] / a_[t][t];
        sub_row(i, t, q);
        if (a_[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols_; ++j) {
        if (a_[t][j] == 0) continue;
        const mpz_class q = a_[t][j] / a_[t][t];
        sub_col(j, t, q);
        if (a_[t][j] != 0) clean = false;
      }
      if (!clean) {
        place_min(t);
        continue;
      }
      std::size_t bad = rows_;
      for (std::size_t i = t + 1; i < rows_ && bad == rows_; ++i) {
        for (std::size_t j = t + 1; j < cols_; ++j) {
          if (a_[i][j] != 0 && !mpz_divisible_p(a_[i][j].get_mpz_t(), a_[t][t].get_mpz_t())) {
            bad = i;
            break;
          }
        }
      }
      if (bad == rows_) break;
      sub_row(t, bad, -1);
    }
    if (a_[t][t] < 0) {
      for (auto& x : a_[t]) x = -x;
      if (!u_.empty()) {
        for (auto& x : u_[t]) x = -x;
      }
    }
    return true;
  }

  IntMatrix a_, u_, v_, vinv_;
  std::size_t rows_, cols_;
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& M, std::size_t rows, std::size_t cols, bool track_u) {
  return Reducer(M, rows, cols, track_u).run();
}

}  // namespace scissors

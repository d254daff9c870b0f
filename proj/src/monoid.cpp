#include "logred/monoid.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace logred {

namespace {

std::size_t rows(const Mat& M) { return M.size(); }
std::size_t cols(const Mat& M) { return M.empty() ? 0 : M[0].size(); }

void check_rectangular(const Mat& M) {
  for (const auto& row : M) {
    if (row.size() != cols(M))
      fail(ErrorCode::InvalidArg, "matrix is not rectangular");
  }
}

}  // namespace

Mat identity_matrix(std::size_t n) {
  Mat I(n, Vec(n, 0));
  for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

Mat mat_mul(const Mat& A, const Mat& B) {
  std::size_t m = rows(A), k = cols(A), n = cols(B);
  if (rows(B) != k) fail(ErrorCode::InvalidArg, "mat_mul: shape mismatch");
  Mat C(m, Vec(n, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (A[i][l] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) C[i][j] += A[i][l] * B[l][j];
    }
  return C;
}

Vec mat_vec(const Mat& A, const Vec& x) {
  std::size_t m = rows(A), k = cols(A);
  if (x.size() != k) fail(ErrorCode::InvalidArg, "mat_vec: shape mismatch");
  Vec y(m, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t l = 0; l < k; ++l) y[i] += A[i][l] * x[l];
  return y;
}

bool is_zero_vec(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

namespace {

// Elementary operations on the working matrix A, mirrored into the
// accumulated transforms so that U*M*V = A and Uinv, Vinv stay inverse.
struct SnfWork {
  Mat A, U, V, Uinv, Vinv;

  void swap_rows(std::size_t i, std::size_t j) {
    std::swap(A[i], A[j]);
    std::swap(U[i], U[j]);
    for (auto& row : Uinv) std::swap(row[i], row[j]);
  }

  void swap_cols(std::size_t i, std::size_t j) {
    for (auto& row : A) std::swap(row[i], row[j]);
    for (auto& row : V) std::swap(row[i], row[j]);
    std::swap(Vinv[i], Vinv[j]);
  }

  void negate_row(std::size_t i) {
    for (auto& x : A[i]) x = -x;
    for (auto& x : U[i]) x = -x;
    for (auto& row : Uinv) row[i] = -row[i];
  }

  void add_row(std::size_t dst, std::size_t src, const Int& c) {
    for (std::size_t j = 0; j < A[dst].size(); ++j) A[dst][j] += c * A[src][j];
    for (std::size_t j = 0; j < U[dst].size(); ++j) U[dst][j] += c * U[src][j];
    for (auto& row : Uinv) row[src] -= c * row[dst];
  }

  // col dst <- col dst + c * col src
  void add_col(std::size_t dst, std::size_t src, const Int& c) {
    for (auto& row : A) row[dst] += c * row[src];
    for (auto& row : V) row[dst] += c * row[src];
    for (std::size_t k = 0; k < Vinv[src].size(); ++k)
      Vinv[src][k] -= c * Vinv[dst][k];
  }

  // rows (t, i) <- [x y; -b/g a/g] * rows (t, i), where x*a + y*b = g,
  // a = A[t][col], b = A[i][col]; determinant 1.
  void bezout_rows(std::size_t t, std::size_t i, std::size_t col) {
    Int a = A[t][col], b = A[i][col];
    Int g, x, y;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(),
               b.get_mpz_t());
    Int ag = a / g, bg = b / g;
    auto apply = [&](Mat& M) {
      for (std::size_t j = 0; j < M[t].size(); ++j) {
        Int mt = M[t][j], mi = M[i][j];
        M[t][j] = x * mt + y * mi;
        M[i][j] = -bg * mt + ag * mi;
      }
    };
    apply(A);
    apply(U);
    // inverse [ag -y; bg x] acting on columns (t, i) of Uinv
    for (auto& row : Uinv) {
      Int ct = row[t], ci = row[i];
      row[t] = ag * ct + bg * ci;
      row[i] = -y * ct + x * ci;
    }
  }

  void bezout_cols(std::size_t t, std::size_t j, std::size_t row_idx) {
    Int a = A[row_idx][t], b = A[row_idx][j];
    Int g, x, y;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(),
               b.get_mpz_t());
    Int ag = a / g, bg = b / g;
    auto apply = [&](Mat& M) {
      for (auto& row : M) {
        Int ct = row[t], cj = row[j];
        row[t] = x * ct + y * cj;
        row[j] = -bg * ct + ag * cj;
      }
    };
    apply(A);
    apply(V);
    for (std::size_t k = 0; k < Vinv[t].size(); ++k) {
      Int rt = Vinv[t][k], rj = Vinv[j][k];
      Vinv[t][k] = ag * rt + bg * rj;
      Vinv[j][k] = -y * rt + x * rj;
    }
  }
};

}  // namespace

SmithResult smith_normal_form(const Mat& M) {
  check_rectangular(M);
  std::size_t m = rows(M), n = cols(M);
  SnfWork w{M, identity_matrix(m), identity_matrix(n), identity_matrix(m),
            identity_matrix(n)};

  std::size_t t = 0;
  std::size_t steps = std::min(m, n);
  while (t < steps) {
    // find a pivot in the trailing submatrix
    std::size_t pi = m, pj = n;
    for (std::size_t i = t; i < m && pi == m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (w.A[i][j] != 0) {
          pi = i;
          pj = j;
          break;
        }
    if (pi == m) break;  // trailing submatrix is zero
    if (pi != t) w.swap_rows(t, pi);
    if (pj != t) w.swap_cols(t, pj);

    bool clean = false;
    while (!clean) {
      clean = true;
      // plain elimination preserves the pivot row/column; a Bezout step is
      // only needed when the pivot does not divide, and it strictly shrinks
      // |pivot|, so the loop terminates
      for (std::size_t i = t + 1; i < m; ++i)
        if (w.A[i][t] != 0) {
          if (w.A[i][t] % w.A[t][t] == 0)
            w.add_row(i, t, -(w.A[i][t] / w.A[t][t]));
          else
            w.bezout_rows(t, i, t);
          clean = false;
        }
      for (std::size_t j = t + 1; j < n; ++j)
        if (w.A[t][j] != 0) {
          if (w.A[t][j] % w.A[t][t] == 0)
            w.add_col(j, t, -(w.A[t][j] / w.A[t][t]));
          else
            w.bezout_cols(t, j, t);
          clean = false;
        }
    }

    // enforce d_t | every remaining entry
    bool redo = false;
    for (std::size_t i = t + 1; i < m && !redo; ++i)
      for (std::size_t j = t + 1; j < n; ++j)
        if (w.A[i][j] % w.A[t][t] != 0) {
          w.add_row(t, i, 1);
          redo = true;
          break;
        }
    if (redo) continue;

    if (w.A[t][t] < 0) w.negate_row(t);
    ++t;
  }

  SmithResult out;
  out.diagonal.resize(steps);
  for (std::size_t i = 0; i < steps; ++i) out.diagonal[i] = w.A[i][i];
  out.U = std::move(w.U);
  out.V = std::move(w.V);
  out.Uinv = std::move(w.Uinv);
  out.Vinv = std::move(w.Vinv);
  return out;
}

Lattice lattice_from_spanning(std::size_t ambient_dim, const Mat& vectors) {
  for (const auto& v : vectors)
    if (v.size() != ambient_dim)
      fail(ErrorCode::InvalidArg, "spanning vector has wrong dimension");
  Lattice L;
  L.ambient_dim = ambient_dim;
  if (vectors.empty()) return L;

  // columns of B are the spanning vectors
  Mat B(ambient_dim, Vec(vectors.size(), 0));
  for (std::size_t c = 0; c < vectors.size(); ++c)
    for (std::size_t r = 0; r < ambient_dim; ++r) B[r][c] = vectors[c][r];

  SmithResult snf = smith_normal_form(B);
  // column lattice of B = column lattice of Uinv * D
  for (std::size_t k = 0; k < snf.diagonal.size(); ++k) {
    if (snf.diagonal[k] == 0) break;
    Vec b(ambient_dim);
    for (std::size_t r = 0; r < ambient_dim; ++r)
      b[r] = snf.Uinv[r][k] * snf.diagonal[k];
    L.basis.push_back(std::move(b));
  }
  return L;
}

std::optional<Vec> lattice_coords(const Lattice& L, const Vec& v) {
  if (v.size() != L.ambient_dim)
    fail(ErrorCode::InvalidArg, "vector has wrong ambient dimension");
  std::size_t r = L.rank();
  if (r == 0) return is_zero_vec(v) ? std::optional<Vec>(Vec{}) : std::nullopt;

  Mat B(L.ambient_dim, Vec(r, 0));
  for (std::size_t c = 0; c < r; ++c)
    for (std::size_t i = 0; i < L.ambient_dim; ++i) B[i][c] = L.basis[c][i];

  SmithResult snf = smith_normal_form(B);
  Vec w = mat_vec(snf.U, v);
  Vec y(r);
  for (std::size_t i = 0; i < r; ++i) {
    if (snf.diagonal[i] == 0)
      fail(ErrorCode::InvalidArg, "lattice basis is not independent");
    if (w[i] % snf.diagonal[i] != 0) return std::nullopt;
    y[i] = w[i] / snf.diagonal[i];
  }
  for (std::size_t i = r; i < L.ambient_dim; ++i)
    if (w[i] != 0) return std::nullopt;
  return mat_vec(snf.V, y);
}

std::optional<Int> content(const Vec& v, const Lattice& L) {
  auto coords = lattice_coords(L, v);
  if (!coords) fail(ErrorCode::InvalidArg, "vector is not in the lattice");
  Int g = 0;
  for (const auto& c : *coords) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g == 0) return std::nullopt;  // v == 0: content undefined
  return g;
}

AffineMonoid::AffineMonoid(std::size_t ambient_dim, Mat generators,
                           bool saturated)
    : ambient_dim_(ambient_dim),
      generators_(std::move(generators)),
      saturated_(saturated) {
  for (const auto& g : generators_) {
    if (g.size() != ambient_dim_)
      fail(ErrorCode::InvalidArg, "generator has wrong ambient dimension");
    if (is_zero_vec(g))
      fail(ErrorCode::InvalidArg, "zero generator is not allowed");
  }
  lattice_ = lattice_from_spanning(ambient_dim_, generators_);
}

namespace {

Int dot(const Vec& a, const Vec& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// A functional lambda with lambda(g) >= 1 for every generator; exists iff
// the rational cone is strongly convex (searched over a bounded box).
std::optional<Vec> positive_functional(const Mat& gens, std::size_t dim) {
  if (gens.empty()) return Vec(dim, 0);
  if (dim == 0 || dim > 6) return std::nullopt;
  for (long bound = 1; bound <= 8; ++bound) {
    Vec lam(dim, -bound);
    while (true) {
      bool max_norm = false;
      for (const auto& x : lam)
        if (x == bound || x == -bound) max_norm = true;
      if (max_norm) {
        bool ok = true;
        for (const auto& g : gens)
          if (dot(lam, g) < 1) {
            ok = false;
            break;
          }
        if (ok) return lam;
      }
      // next vector in the box
      std::size_t i = 0;
      while (i < dim && lam[i] == bound) lam[i++] = -bound;
      if (i == dim) break;
      lam[i] += 1;
    }
  }
  return std::nullopt;
}

struct SearchBudget {
  std::int64_t remaining;
  void spend() {
    if (--remaining < 0)
      fail(ErrorCode::BudgetExceeded,
           "membership search budget exhausted; input too large for the "
           "bounded oracle");
  }
};

// residual == c * g for some integer c >= 0?
bool is_nonneg_multiple(const Vec& residual, const Vec& g) {
  std::size_t i = 0;
  while (i < g.size() && g[i] == 0) {
    if (residual[i] != 0) return false;
    ++i;
  }
  if (i == g.size()) return is_zero_vec(residual);
  if (residual[i] % g[i] != 0) return false;
  Int c = residual[i] / g[i];
  if (c < 0) return false;
  for (std::size_t j = 0; j < g.size(); ++j)
    if (residual[j] != c * g[j]) return false;
  return true;
}

bool bounded_dfs(const Mat& gens, const std::vector<Int>& lam_gens,
                 std::size_t idx, Vec residual, Int lam_res,
                 SearchBudget& budget) {
  budget.spend();
  if (lam_res == 0) return is_zero_vec(residual);
  if (idx + 1 == gens.size()) return is_nonneg_multiple(residual, gens[idx]);
  Int max_c = lam_res / lam_gens[idx];
  Vec res = residual;
  for (Int c = 0; c <= max_c; ++c) {
    if (bounded_dfs(gens, lam_gens, idx + 1, res, lam_res - c * lam_gens[idx],
                    budget))
      return true;
    for (std::size_t j = 0; j < res.size(); ++j) res[j] -= gens[idx][j];
  }
  return false;
}

// exact-total-sum DFS used when no positive functional is available
bool sum_dfs(const Mat& gens, std::size_t idx, Vec residual, Int total,
             SearchBudget& budget) {
  budget.spend();
  if (idx + 1 == gens.size()) {
    for (std::size_t j = 0; j < residual.size(); ++j)
      if (residual[j] != total * gens[idx][j]) return false;
    return true;
  }
  Vec res = residual;
  for (Int c = 0; c <= total; ++c) {
    if (sum_dfs(gens, idx + 1, res, total - c, budget)) return true;
    for (std::size_t j = 0; j < res.size(); ++j) res[j] -= gens[idx][j];
  }
  return false;
}

}  // namespace

bool member(const AffineMonoid& P, const Vec& v, std::int64_t budget) {
  if (v.size() != P.ambient_dim())
    fail(ErrorCode::InvalidArg, "vector has wrong ambient dimension");
  if (is_zero_vec(v)) return true;
  if (P.trivial()) return false;
  if (!lattice_coords(P.lattice(), v)) return false;

  SearchBudget b{budget};
  auto lam = positive_functional(P.generators(), P.ambient_dim());
  if (lam) {
    std::vector<Int> lam_gens;
    lam_gens.reserve(P.generators().size());
    for (const auto& g : P.generators()) lam_gens.push_back(dot(*lam, g));
    return bounded_dfs(P.generators(), lam_gens, 0, v, dot(*lam, v), b);
  }
  // no strongly convex certificate: iterative deepening until the budget runs out
  for (Int total = 0;; ++total) {
    if (sum_dfs(P.generators(), 0, v, total, b)) return true;
  }
}

bool is_sharp(const AffineMonoid& P, std::int64_t budget) {
  for (const auto& g : P.generators()) {
    Vec neg(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) neg[i] = -g[i];
    if (member(P, neg, budget)) return false;
  }
  return true;
}

namespace {

std::vector<Int> divisors_descending(const Int& n) {
  if (!n.fits_slong_p())
    fail(ErrorCode::InvalidArg, "content too large for divisor enumeration");
  long v = n.get_si();
  std::vector<Int> divs;
  for (long d = 1; d * d <= v; ++d)
    if (v % d == 0) {
      divs.emplace_back(d);
      if (d != v / d) divs.emplace_back(v / d);
    }
  std::sort(divs.begin(), divs.end(),
            [](const Int& a, const Int& b) { return a > b; });
  return divs;
}

}  // namespace

Int max_divisibility(const AffineMonoid& P, const Vec& v,
                     std::int64_t budget) {
  if (is_zero_vec(v))
    fail(ErrorCode::InvalidArg, "max_divisibility of 0 is undefined");
  if (!member(P, v, budget))
    fail(ErrorCode::InvalidArg, "element is not in the monoid");
  Int c = *content(v, P.lattice());
  if (P.saturated()) return c;

  auto coords = *lattice_coords(P.lattice(), v);
  for (const Int& m : divisors_descending(c)) {
    Vec quotient(P.ambient_dim(), 0);
    for (std::size_t k = 0; k < coords.size(); ++k) {
      Int ck = coords[k] / m;
      for (std::size_t i = 0; i < P.ambient_dim(); ++i)
        quotient[i] += ck * P.lattice().basis[k][i];
    }
    if (member(P, quotient, budget)) return m;
  }
  fail(ErrorCode::Internal, "divisor loop must succeed at m = 1");
}

SharpQuotient localize_sharpen(const AffineMonoid& P, const Face& F,
                               const Vec& marked, std::int64_t budget) {
  std::vector<std::size_t> idx = F.generator_indices;
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  for (std::size_t i : idx)
    if (i >= P.generators().size())
      fail(ErrorCode::InvalidFace, "face index out of range");
  if (!member(P, marked, budget))
    fail(ErrorCode::InvalidArg, "marked element is not in the monoid");

  const Lattice& L = P.lattice();
  std::size_t r = L.rank();

  auto coords_of = [&](const Vec& v) {
    auto c = lattice_coords(L, v);
    if (!c) fail(ErrorCode::Internal, "monoid element outside its lattice");
    return *c;
  };

  // face generators in lattice coordinates, as columns
  Mat A(r, Vec(idx.size(), 0));
  for (std::size_t c = 0; c < idx.size(); ++c) {
    Vec fc = coords_of(P.generators()[idx[c]]);
    for (std::size_t i = 0; i < r; ++i) A[i][c] = fc[i];
  }
  std::size_t s = 0;
  Mat U = identity_matrix(r);
  if (!idx.empty() && r > 0) {
    SmithResult snf = smith_normal_form(A);
    U = std::move(snf.U);
    for (const Int& d : snf.diagonal)
      if (d != 0) ++s;
  }
  std::size_t qdim = r - s;

  // quotient by the saturation of the face lattice: keep the last r - s
  // coordinates of U * x
  auto project = [&](const Vec& v) {
    Vec ux = mat_vec(U, coords_of(v));
    return Vec(ux.begin() + static_cast<std::ptrdiff_t>(s), ux.end());
  };

  Mat qgens;
  for (std::size_t g = 0; g < P.generators().size(); ++g) {
    if (std::binary_search(idx.begin(), idx.end(), g)) continue;
    Vec img = project(P.generators()[g]);
    if (is_zero_vec(img))
      fail(ErrorCode::InvalidFace,
           "generator outside the face lies in the face span");
    qgens.push_back(std::move(img));
  }

  SharpQuotient out{AffineMonoid(qdim, std::move(qgens), P.saturated()),
                    project(marked)};
  if (!is_sharp(out.quotient, budget))
    fail(ErrorCode::InvalidFace,
         "selected generators do not span a face (quotient is not sharp)");
  return out;
}

}  // namespace logred

#pragma once

// Exact algebra of finitely generated submonoids of integer lattices:
// Smith normal form, lattice membership and content, monoid membership
// by bounded search, divisibility, and localization-and-sharpening.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "logred/error.hpp"

namespace logred {

using Int = mpz_class;
using Vec = std::vector<Int>;
using Mat = std::vector<Vec>;  // row-major, rectangular

Mat identity_matrix(std::size_t n);
Mat mat_mul(const Mat& A, const Mat& B);
Vec mat_vec(const Mat& A, const Vec& x);
bool is_zero_vec(const Vec& v);

// U * M * V = diag(diagonal), with U, V unimodular and
// diagonal[0] | diagonal[1] | ... (entries nonnegative).
struct SmithResult {
  std::vector<Int> diagonal;
  Mat U, V;
  Mat Uinv, Vinv;
};

SmithResult smith_normal_form(const Mat& M);

// A full-rank sublattice of Z^ambient_dim, given by a basis (rows).
struct Lattice {
  std::size_t ambient_dim = 0;
  Mat basis;  // basis.size() == rank, each row has ambient_dim entries

  std::size_t rank() const { return basis.size(); }
};

// Lattice spanned by the given vectors (duplicates and dependencies fine).
Lattice lattice_from_spanning(std::size_t ambient_dim, const Mat& vectors);

// Coordinates of v in the basis of L, or nullopt if v is not in L.
std::optional<Vec> lattice_coords(const Lattice& L, const Vec& v);

// Largest m >= 1 with v/m in L. nullopt iff v == 0; throws if v not in L.
std::optional<Int> content(const Vec& v, const Lattice& L);

struct Face {
  std::vector<std::size_t> generator_indices;
};

class AffineMonoid {
public:
  AffineMonoid() = default;
  AffineMonoid(std::size_t ambient_dim, Mat generators, bool saturated = true);

  std::size_t ambient_dim() const { return ambient_dim_; }
  const Mat& generators() const { return generators_; }
  const Lattice& lattice() const { return lattice_; }
  bool saturated() const { return saturated_; }
  bool trivial() const { return generators_.empty(); }

private:
  std::size_t ambient_dim_ = 0;
  Mat generators_;
  Lattice lattice_;
  bool saturated_ = true;
};

// Candidate-combination budget for the membership search.
inline constexpr std::int64_t kDefaultMemberBudget = 1'000'000;

// Is v a nonnegative integer combination of the generators of P?
// Exact; throws Error(BudgetExceeded) when the search bound is exhausted
// without a conclusive answer.
bool member(const AffineMonoid& P, const Vec& v,
            std::int64_t budget = kDefaultMemberBudget);

// True iff no nonzero generator g has -g in P.
bool is_sharp(const AffineMonoid& P,
              std::int64_t budget = kDefaultMemberBudget);

// max{m >= 1 : v = m*a for some a in P}; requires P sharp, v in P, v != 0.
Int max_divisibility(const AffineMonoid& P, const Vec& v,
                     std::int64_t budget = kDefaultMemberBudget);

// Image of P (and of the marked element) in lattice(P) / sat(lattice(F)).
// The result is sharp; throws Error(InvalidFace) if the selected generators
// do not span a face of the rational cone of P.
struct SharpQuotient {
  AffineMonoid quotient;
  Vec image;  // class of the marked element
};

SharpQuotient localize_sharpen(const AffineMonoid& P, const Face& F,
                               const Vec& marked,
                               std::int64_t budget = kDefaultMemberBudget);

}  // namespace logred

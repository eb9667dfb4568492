#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "gqm/groupoid.hpp"

namespace gqm {

// Gamma = (alpha, beta, gamma) with s(alpha) = t(beta) and s(gamma) = s(beta):
// a transformation from beta to alpha∘beta∘gamma^{-1}.
struct Transformation {
  MorphismId alpha;
  MorphismId beta;
  MorphismId gamma;
  friend constexpr bool operator==(const Transformation&, const Transformation&) = default;
  friend constexpr auto operator<=>(const Transformation&, const Transformation&) = default;
};

// Class ((z,y),(x,w)) of the quotient over pair_groupoid(n): a transformation
// from (y,x) to (z,w).
struct QuotientTransformation {
  std::uint32_t z = 0;
  std::uint32_t y = 0;
  std::uint32_t x = 0;
  std::uint32_t w = 0;
  friend constexpr bool operator==(const QuotientTransformation&, const QuotientTransformation&) = default;
  friend constexpr auto operator<=>(const QuotientTransformation&, const QuotientTransformation&) = default;
};

// The canonical symmetroid S(G) of a finite groupoid, stored explicitly.
// Transformations are enumerated lexicographically by (alpha, beta, gamma) ids,
// which for a pair groupoid coincides with the quotient order.
class CanonicalSymmetroid {
 public:
  explicit CanonicalSymmetroid(FiniteGroupoid base);

  const FiniteGroupoid& base() const noexcept { return base_; }
  const std::vector<Transformation>& transformations() const noexcept { return all_; }
  std::uint32_t size() const noexcept { return static_cast<std::uint32_t>(all_.size()); }
  const Transformation& at(std::uint32_t i) const { return all_.at(i); }

  bool valid(const Transformation& t) const;
  // Throws InvalidArgument for an invalid triple.
  std::uint32_t index_of(const Transformation& t) const;

  MorphismId s1(const Transformation& t) const { return t.beta; }
  MorphismId t1(const Transformation& t) const;
  bool is_little(const Transformation& t) const;

  // Defined when t1(g1) = s1(g2); throws NotComposable otherwise.
  Transformation vertical_compose(const Transformation& g2, const Transformation& g1) const;
  Transformation vertical_unit(MorphismId beta) const;
  Transformation vertical_inverse(const Transformation& t) const;

  bool horizontally_composable(const Transformation& g2, const Transformation& g1) const;
  // Throws NotComposable unless both s1 and t1 compose.
  Transformation horizontal_compose(const Transformation& g2, const Transformation& g1) const;
  // I_{y,x}: from 1_x to 1_y through the smallest-id morphism x -> y.
  // Throws NotComposable when G(x,y) is empty.
  Transformation horizontal_unit(ObjectId y, ObjectId x) const;
  Transformation horizontal_inverse(const Transformation& t) const;

  // ((t(t1), t(s1)), (s(s1), s(t1))) in the quotient over G(Omega).
  QuotientTransformation project(const Transformation& t) const;

  // The vertical groupoid S(G) ⇉ G: objects are the morphisms of the base,
  // morphism ids are transformation indices.
  const FiniteGroupoid& vertical() const noexcept { return vertical_; }

 private:
  FiniteGroupoid base_;
  std::vector<Transformation> all_;
  std::vector<std::int32_t> lookup_;  // (alpha*|G| + beta)*|G| + gamma -> index
  FiniteGroupoid vertical_;
};

// The quotient S~ over pair_groupoid(n).  Class ids are ((z*n+y)*n+x)*n+w.
class QuotientSymmetroid {
 public:
  explicit QuotientSymmetroid(std::uint32_t n);

  std::uint32_t n() const noexcept { return n_; }
  std::uint32_t size() const noexcept { return n_ * n_ * n_ * n_; }
  const FiniteGroupoid& base() const noexcept { return base_; }

  std::uint32_t index(const QuotientTransformation& q) const;
  QuotientTransformation at(std::uint32_t i) const;
  std::vector<QuotientTransformation> enumerate() const;

  MorphismId s1(const QuotientTransformation& q) const { return pair_morphism(n_, q.y, q.x); }
  MorphismId t1(const QuotientTransformation& q) const { return pair_morphism(n_, q.z, q.w); }
  // The class with the given 2-source and 2-target (unique on the quotient).
  QuotientTransformation between(MorphismId s1, MorphismId t1) const;

  static std::optional<QuotientTransformation> vertical_compose(const QuotientTransformation& g2,
                                                                const QuotientTransformation& g1);
  QuotientTransformation vertical_compose_or_throw(const QuotientTransformation& g2,
                                                   const QuotientTransformation& g1) const;
  QuotientTransformation vertical_unit(MorphismId beta) const;
  static QuotientTransformation vertical_inverse(const QuotientTransformation& q) { return {q.y, q.z, q.w, q.x}; }

  static std::optional<QuotientTransformation> horizontal_compose(const QuotientTransformation& g2,
                                                                  const QuotientTransformation& g1);
  QuotientTransformation horizontal_compose_or_throw(const QuotientTransformation& g2,
                                                     const QuotientTransformation& g1) const;
  static QuotientTransformation horizontal_unit(std::uint32_t y, std::uint32_t x) { return {y, x, x, y}; }
  static QuotientTransformation horizontal_inverse(const QuotientTransformation& q) { return {q.w, q.x, q.y, q.z}; }

  bool is_vertical_unit(const QuotientTransformation& q) const { return q.z == q.y && q.x == q.w; }

  // S~ ⇉ G(Omega) as a groupoid; morphism ids are class ids.
  const FiniteGroupoid& vertical() const noexcept { return vertical_; }

 private:
  void check(const QuotientTransformation& q) const;

  std::uint32_t n_;
  FiniteGroupoid base_;
  FiniteGroupoid vertical_;
};

struct ExchangeViolation {
  std::uint32_t g1, g2, h1, h2;  // class ids of Gamma_1, Gamma_2, Gamma'_1, Gamma'_2
};

struct ExchangeReport {
  std::vector<ExchangeViolation> violations;
  std::size_t checked = 0;
  bool ok() const noexcept { return violations.empty(); }
};

// (G'2 ∘_H G'1) ∘_V (G2 ∘_H G1) = (G'2 ∘_V G2) ∘_H (G'1 ∘_V G1) over every
// quadruple for which the right-hand factors are defined.
ExchangeReport check_exchange_exhaustive(const QuotientSymmetroid& s);
// Uniform samples of admissible quadruples.
ExchangeReport check_exchange_sampled(const QuotientSymmetroid& s, std::size_t samples, std::uint64_t seed);

// A bisection of S~: section[beta] is the class id of the unique element with
// 2-source beta.  The 2-targets of the elements are all distinct.
struct Bisection {
  std::uint32_t n = 0;
  std::vector<std::uint32_t> section;
  friend bool operator==(const Bisection&, const Bisection&) = default;
};

// Validates that s1 and t1 restrict to bijections onto G(Omega); throws InvalidArgument.
Bisection make_bisection(const QuotientSymmetroid& s, const std::vector<QuotientTransformation>& entries);
// The bisection whose element over beta goes to perm[beta].
Bisection bisection_from_permutation(const QuotientSymmetroid& s, const std::vector<std::uint32_t>& perm);

// beta -> t1(b_{s1}(beta)).
std::vector<std::uint32_t> induced_map(const QuotientSymmetroid& s, const Bisection& b);
// (b2•b1)_{s1}(beta) = (b2)_{s1}(phi_{b1}(beta)) ∘_V (b1)_{s1}(beta).
Bisection bisection_product(const QuotientSymmetroid& s, const Bisection& b2, const Bisection& b1);
Bisection bisection_inverse(const QuotientSymmetroid& s, const Bisection& b);
Bisection identity_bisection(const QuotientSymmetroid& s);

// b_{s1}(beta'∘beta) = b_{s1}(beta') ∘_H b_{s1}(beta) for every composable pair.
bool is_flat(const QuotientSymmetroid& s, const Bisection& b);

struct FlatBisection {
  Bisection base;
  std::vector<std::uint32_t> underlying_map;  // b_s on Omega: b_s(x) = (sigma(x), x)
};

// Builds the flat bisection of a permutation sigma of Omega; throws InvalidArgument.
FlatBisection flat_bisection(const QuotientSymmetroid& s, const std::vector<std::uint32_t>& sigma);
// Recovers sigma from a bisection if it is flat.
std::optional<FlatBisection> as_flat(const QuotientSymmetroid& s, const Bisection& b);
// phi_b(beta) = b_s(y)∘beta∘b_s(x)^{-1} for beta: x -> y, indexed by morphism id.
std::vector<std::uint32_t> flat_bisection_functor(const QuotientSymmetroid& s, const FlatBisection& b);
// sigma(j) = j+1 mod n.
FlatBisection shift_bisection(const QuotientSymmetroid& s);
// All n! flat bisections, sigma in lexicographic order.
std::vector<FlatBisection> flat_bisections(const QuotientSymmetroid& s);
// Number of flat bisections among all (n^2)! bisections; n <= 3.
std::size_t count_flat_bisections_exhaustive(const QuotientSymmetroid& s);

}  // namespace gqm

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gqm {

struct ObjectId {
  std::uint32_t index = 0;
  constexpr ObjectId() = default;
  constexpr explicit ObjectId(std::uint32_t i) : index(i) {}
  friend constexpr bool operator==(ObjectId, ObjectId) = default;
  friend constexpr auto operator<=>(ObjectId, ObjectId) = default;
};

struct MorphismId {
  std::uint32_t index = 0;
  constexpr MorphismId() = default;
  constexpr explicit MorphismId(std::uint32_t i) : index(i) {}
  friend constexpr bool operator==(MorphismId, MorphismId) = default;
  friend constexpr auto operator<=>(MorphismId, MorphismId) = default;
};

inline constexpr std::int32_t kUndefined = -1;

// Raw tables of a finite groupoid.  Nothing here is checked beyond index
// ranges; `validate` decides whether the tables define a groupoid.
struct GroupoidTables {
  std::uint32_t n_objects = 0;
  std::vector<std::uint32_t> source;
  std::vector<std::uint32_t> target;
  // compose[b * |G| + a] = b∘a, or kUndefined.
  std::vector<std::int32_t> compose;
  std::vector<std::int32_t> inverse;
  std::vector<std::int32_t> unit_of;
};

// Immutable finite groupoid backed by explicit tables.
class FiniteGroupoid {
 public:
  FiniteGroupoid() = default;
  // Throws InvalidArgument on inconsistent table sizes or out-of-range ids.
  explicit FiniteGroupoid(GroupoidTables tables);

  std::uint32_t n_objects() const noexcept { return t_.n_objects; }
  std::uint32_t n_morphisms() const noexcept { return static_cast<std::uint32_t>(t_.source.size()); }

  ObjectId source(MorphismId a) const { return ObjectId(t_.source.at(a.index)); }
  ObjectId target(MorphismId a) const { return ObjectId(t_.target.at(a.index)); }

  // b∘a from the table, if present.
  std::optional<MorphismId> compose(MorphismId b, MorphismId a) const;
  // b∘a; throws NotComposable when s(b) != t(a) or the entry is missing.
  MorphismId compose_or_throw(MorphismId b, MorphismId a) const;
  std::optional<MorphismId> inverse(MorphismId a) const;
  MorphismId inverse_or_throw(MorphismId a) const;
  std::optional<MorphismId> unit(ObjectId x) const;
  MorphismId unit_or_throw(ObjectId x) const;

  bool composable(MorphismId b, MorphismId a) const { return source(b) == target(a); }
  bool is_unit(MorphismId a) const;

  // Morphisms x -> y in ascending id order.
  std::vector<MorphismId> hom(ObjectId x, ObjectId y) const;

  const GroupoidTables& tables() const noexcept { return t_; }

 private:
  GroupoidTables t_;
};

// Pair groupoid on n objects: morphism (j,k): k -> j has id j*n + k.
FiniteGroupoid pair_groupoid(std::uint32_t n);
inline MorphismId pair_morphism(std::uint32_t n, std::uint32_t j, std::uint32_t k) {
  return MorphismId(j * n + k);
}

// The cyclic group Z_k as a one-object groupoid; morphism r is rotation by r.
FiniteGroupoid cyclic_group(std::uint32_t k);

// Objects (x1,x2) -> x1*n2 + x2; morphisms (a1,a2) -> a1*|G2| + a2.
FiniteGroupoid direct_product(const FiniteGroupoid& g1, const FiniteGroupoid& g2);

enum class ViolationKind {
  ComposabilityDomain,  // entry present for a non-composable pair or missing for a composable one
  Endpoints,            // s(b∘a) != s(a) or t(b∘a) != t(b)
  Associativity,
  UnitLaw,
  InverseLaw,
};

const char* to_string(ViolationKind kind) noexcept;

struct AxiomViolation {
  ViolationKind kind;
  std::vector<std::uint32_t> morphisms;  // the offending instance, e.g. (c, b, a)
  std::string detail;
};

struct ValidationReport {
  std::vector<AxiomViolation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

ValidationReport validate(const FiniteGroupoid& g);

// Whether every pair of objects is joined by a morphism.  Not required anywhere.
bool is_connected(const FiniteGroupoid& g);

struct Fibers {
  std::vector<MorphismId> source_fiber;  // G_x = s^{-1}(x)
  std::vector<MorphismId> target_fiber;  // G^x = t^{-1}(x)
};

Fibers fibers(const FiniteGroupoid& g, ObjectId x);

}  // namespace gqm

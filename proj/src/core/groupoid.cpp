#include "gqm/groupoid.hpp"

#include <queue>
#include <sstream>

#include "gqm/error.hpp"

namespace gqm {

namespace {

void require(bool cond, const std::string& what) {
  if (!cond) throw Error(ErrorCode::InvalidArgument, what);
}

}  // namespace

FiniteGroupoid::FiniteGroupoid(GroupoidTables tables) : t_(std::move(tables)) {
  const std::size_t m = t_.source.size();
  require(t_.n_objects >= 1, "groupoid needs at least one object");
  require(t_.target.size() == m, "source and target tables differ in length");
  require(t_.compose.size() == m * m, "compose table must have |G|^2 entries");
  require(t_.inverse.size() == m, "inverse table must have |G| entries");
  require(t_.unit_of.size() == t_.n_objects, "unit table must have one entry per object");
  for (std::size_t a = 0; a < m; ++a) {
    require(t_.source[a] < t_.n_objects && t_.target[a] < t_.n_objects, "morphism endpoint out of range");
    require(t_.inverse[a] >= kUndefined && t_.inverse[a] < static_cast<std::int32_t>(m), "inverse id out of range");
  }
  for (auto c : t_.compose) require(c >= kUndefined && c < static_cast<std::int32_t>(m), "compose result out of range");
  for (auto u : t_.unit_of) require(u >= kUndefined && u < static_cast<std::int32_t>(m), "unit id out of range");
}

std::optional<MorphismId> FiniteGroupoid::compose(MorphismId b, MorphismId a) const {
  const std::size_t m = n_morphisms();
  std::int32_t r = t_.compose.at(static_cast<std::size_t>(b.index) * m + a.index);
  if (r == kUndefined) return std::nullopt;
  return MorphismId(static_cast<std::uint32_t>(r));
}

MorphismId FiniteGroupoid::compose_or_throw(MorphismId b, MorphismId a) const {
  if (!composable(b, a)) {
    std::ostringstream os;
    os << "morphisms " << b.index << " and " << a.index << " are not composable";
    throw Error(ErrorCode::NotComposable, os.str());
  }
  auto r = compose(b, a);
  if (!r) throw Error(ErrorCode::NotComposable, "compose table has no entry for a composable pair");
  return *r;
}

std::optional<MorphismId> FiniteGroupoid::inverse(MorphismId a) const {
  std::int32_t r = t_.inverse.at(a.index);
  if (r == kUndefined) return std::nullopt;
  return MorphismId(static_cast<std::uint32_t>(r));
}

MorphismId FiniteGroupoid::inverse_or_throw(MorphismId a) const {
  auto r = inverse(a);
  if (!r) throw Error(ErrorCode::InvalidArgument, "morphism " + std::to_string(a.index) + " has no inverse");
  return *r;
}

std::optional<MorphismId> FiniteGroupoid::unit(ObjectId x) const {
  std::int32_t r = t_.unit_of.at(x.index);
  if (r == kUndefined) return std::nullopt;
  return MorphismId(static_cast<std::uint32_t>(r));
}

MorphismId FiniteGroupoid::unit_or_throw(ObjectId x) const {
  auto r = unit(x);
  if (!r) throw Error(ErrorCode::InvalidArgument, "object " + std::to_string(x.index) + " has no unit");
  return *r;
}

bool FiniteGroupoid::is_unit(MorphismId a) const {
  auto u = unit(source(a));
  return u && *u == a;
}

std::vector<MorphismId> FiniteGroupoid::hom(ObjectId x, ObjectId y) const {
  std::vector<MorphismId> out;
  for (std::uint32_t a = 0; a < n_morphisms(); ++a)
    if (t_.source[a] == x.index && t_.target[a] == y.index) out.emplace_back(a);
  return out;
}

FiniteGroupoid pair_groupoid(std::uint32_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "pair groupoid needs n >= 1");
  GroupoidTables t;
  t.n_objects = n;
  const std::size_t m = static_cast<std::size_t>(n) * n;
  t.source.resize(m);
  t.target.resize(m);
  t.inverse.resize(m);
  t.compose.assign(m * m, kUndefined);
  t.unit_of.resize(n);
  for (std::uint32_t j = 0; j < n; ++j)
    for (std::uint32_t k = 0; k < n; ++k) {
      const std::uint32_t id = j * n + k;
      t.target[id] = j;
      t.source[id] = k;
      t.inverse[id] = static_cast<std::int32_t>(k * n + j);
    }
  for (std::uint32_t x = 0; x < n; ++x) t.unit_of[x] = static_cast<std::int32_t>(x * n + x);
  // (z,y)∘(y,x) = (z,x)
  for (std::uint32_t z = 0; z < n; ++z)
    for (std::uint32_t y = 0; y < n; ++y)
      for (std::uint32_t x = 0; x < n; ++x)
        t.compose[static_cast<std::size_t>(z * n + y) * m + (y * n + x)] = static_cast<std::int32_t>(z * n + x);
  return FiniteGroupoid(std::move(t));
}

FiniteGroupoid cyclic_group(std::uint32_t k) {
  require(k >= 1, "cyclic_group needs k >= 1");
  GroupoidTables t;
  t.n_objects = 1;
  t.source.assign(k, 0);
  t.target.assign(k, 0);
  t.compose.resize(static_cast<std::size_t>(k) * k);
  t.inverse.resize(k);
  t.unit_of = {0};
  for (std::uint32_t b = 0; b < k; ++b) {
    t.inverse[b] = static_cast<std::int32_t>((k - b) % k);
    for (std::uint32_t a = 0; a < k; ++a) t.compose[b * k + a] = static_cast<std::int32_t>((a + b) % k);
  }
  return FiniteGroupoid(std::move(t));
}

FiniteGroupoid direct_product(const FiniteGroupoid& g1, const FiniteGroupoid& g2) {
  const std::uint32_t m1 = g1.n_morphisms();
  const std::uint32_t m2 = g2.n_morphisms();
  const std::uint32_t n2 = g2.n_objects();
  GroupoidTables t;
  t.n_objects = g1.n_objects() * n2;
  const std::size_t m = static_cast<std::size_t>(m1) * m2;
  t.source.resize(m);
  t.target.resize(m);
  t.inverse.resize(m);
  t.compose.assign(m * m, kUndefined);
  t.unit_of.resize(t.n_objects);
  const auto& a = g1.tables();
  const auto& b = g2.tables();
  for (std::uint32_t i = 0; i < m1; ++i)
    for (std::uint32_t j = 0; j < m2; ++j) {
      const std::size_t id = static_cast<std::size_t>(i) * m2 + j;
      t.source[id] = a.source[i] * n2 + b.source[j];
      t.target[id] = a.target[i] * n2 + b.target[j];
      t.inverse[id] = (a.inverse[i] == kUndefined || b.inverse[j] == kUndefined)
                          ? kUndefined
                          : static_cast<std::int32_t>(static_cast<std::size_t>(a.inverse[i]) * m2 + b.inverse[j]);
    }
  for (std::uint32_t x1 = 0; x1 < g1.n_objects(); ++x1)
    for (std::uint32_t x2 = 0; x2 < n2; ++x2) {
      auto u1 = a.unit_of[x1];
      auto u2 = b.unit_of[x2];
      t.unit_of[x1 * n2 + x2] = (u1 == kUndefined || u2 == kUndefined)
                                    ? kUndefined
                                    : static_cast<std::int32_t>(static_cast<std::size_t>(u1) * m2 + u2);
    }
  for (std::uint32_t b1 = 0; b1 < m1; ++b1)
    for (std::uint32_t a1 = 0; a1 < m1; ++a1) {
      const auto c1 = a.compose[static_cast<std::size_t>(b1) * m1 + a1];
      if (c1 == kUndefined) continue;
      for (std::uint32_t b2 = 0; b2 < m2; ++b2)
        for (std::uint32_t a2 = 0; a2 < m2; ++a2) {
          const auto c2 = b.compose[static_cast<std::size_t>(b2) * m2 + a2];
          if (c2 == kUndefined) continue;
          const std::size_t bb = static_cast<std::size_t>(b1) * m2 + b2;
          const std::size_t aa = static_cast<std::size_t>(a1) * m2 + a2;
          t.compose[bb * m + aa] = static_cast<std::int32_t>(static_cast<std::size_t>(c1) * m2 + c2);
        }
    }
  return FiniteGroupoid(std::move(t));
}

const char* to_string(ViolationKind kind) noexcept {
  switch (kind) {
    case ViolationKind::ComposabilityDomain: return "composability-domain";
    case ViolationKind::Endpoints: return "endpoints";
    case ViolationKind::Associativity: return "associativity";
    case ViolationKind::UnitLaw: return "unit-law";
    case ViolationKind::InverseLaw: return "inverse-law";
  }
  return "unknown";
}

ValidationReport validate(const FiniteGroupoid& g) {
  ValidationReport report;
  const std::uint32_t m = g.n_morphisms();
  auto add = [&](ViolationKind k, std::vector<std::uint32_t> ids, std::string detail) {
    report.violations.push_back({k, std::move(ids), std::move(detail)});
  };

  for (std::uint32_t b = 0; b < m; ++b)
    for (std::uint32_t a = 0; a < m; ++a) {
      const bool comp = g.composable(MorphismId(b), MorphismId(a));
      auto r = g.compose(MorphismId(b), MorphismId(a));
      if (comp != r.has_value()) {
        add(ViolationKind::ComposabilityDomain, {b, a},
            comp ? "composable pair has no compose entry" : "compose entry for a non-composable pair");
        continue;
      }
      if (r && (g.source(*r) != g.source(MorphismId(a)) || g.target(*r) != g.target(MorphismId(b))))
        add(ViolationKind::Endpoints, {b, a, r->index}, "b∘a does not run from s(a) to t(b)");
    }

  // (c∘b)∘a = c∘(b∘a) on every composable triple with defined entries.
  for (std::uint32_t b = 0; b < m; ++b)
    for (std::uint32_t a = 0; a < m; ++a) {
      auto ba = g.compose(MorphismId(b), MorphismId(a));
      if (!ba) continue;
      for (std::uint32_t c = 0; c < m; ++c) {
        auto cb = g.compose(MorphismId(c), MorphismId(b));
        if (!cb) continue;
        auto left = g.compose(*cb, MorphismId(a));
        auto right = g.compose(MorphismId(c), *ba);
        if (!left || !right || *left != *right) add(ViolationKind::Associativity, {c, b, a}, "(c∘b)∘a != c∘(b∘a)");
      }
    }

  for (std::uint32_t x = 0; x < g.n_objects(); ++x) {
    auto u = g.unit(ObjectId(x));
    if (!u) {
      add(ViolationKind::UnitLaw, {}, "object " + std::to_string(x) + " has no unit");
      continue;
    }
    if (g.source(*u) != ObjectId(x) || g.target(*u) != ObjectId(x))
      add(ViolationKind::UnitLaw, {u->index}, "unit of object " + std::to_string(x) + " is not a loop at it");
  }
  for (std::uint32_t a = 0; a < m; ++a) {
    const MorphismId alpha(a);
    auto us = g.unit(g.source(alpha));
    auto ut = g.unit(g.target(alpha));
    if (us && g.compose(alpha, *us) != std::optional<MorphismId>(alpha))
      add(ViolationKind::UnitLaw, {a, us->index}, "a∘1_{s(a)} != a");
    if (ut && g.compose(*ut, alpha) != std::optional<MorphismId>(alpha))
      add(ViolationKind::UnitLaw, {ut->index, a}, "1_{t(a)}∘a != a");

    auto inv = g.inverse(alpha);
    if (!inv) {
      add(ViolationKind::InverseLaw, {a}, "morphism has no inverse entry");
      continue;
    }
    auto right = g.compose(alpha, *inv);
    auto left = g.compose(*inv, alpha);
    if (!ut || right != std::optional<MorphismId>(*ut))
      add(ViolationKind::InverseLaw, {a, inv->index}, "a∘a^{-1} != 1_{t(a)}");
    if (!us || left != std::optional<MorphismId>(*us))
      add(ViolationKind::InverseLaw, {inv->index, a}, "a^{-1}∘a != 1_{s(a)}");
  }
  return report;
}

bool is_connected(const FiniteGroupoid& g) {
  const std::uint32_t n = g.n_objects();
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (std::uint32_t a = 0; a < g.n_morphisms(); ++a) {
    auto s = g.source(MorphismId(a)).index;
    auto t = g.target(MorphismId(a)).index;
    adj[s].push_back(t);
    adj[t].push_back(s);
  }
  std::vector<bool> seen(n, false);
  std::queue<std::uint32_t> q;
  q.push(0);
  seen[0] = true;
  std::uint32_t count = 1;
  while (!q.empty()) {
    auto x = q.front();
    q.pop();
    for (auto y : adj[x])
      if (!seen[y]) {
        seen[y] = true;
        ++count;
        q.push(y);
      }
  }
  return count == n;
}

Fibers fibers(const FiniteGroupoid& g, ObjectId x) {
  if (x.index >= g.n_objects()) throw Error(ErrorCode::InvalidArgument, "object id out of range");
  Fibers f;
  for (std::uint32_t a = 0; a < g.n_morphisms(); ++a) {
    if (g.source(MorphismId(a)) == x) f.source_fiber.emplace_back(a);
    if (g.target(MorphismId(a)) == x) f.target_fiber.emplace_back(a);
  }
  return f;
}

}  // namespace gqm

#include "gqm/symmetroid.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "gqm/error.hpp"
#include "gqm/random.hpp"

namespace gqm {

namespace {

std::string describe(const QuotientTransformation& q) {
  std::ostringstream os;
  os << "((" << q.z << "," << q.y << "),(" << q.x << "," << q.w << "))";
  return os.str();
}

void require_permutation(const std::vector<std::uint32_t>& p, std::size_t size, const char* what) {
  if (p.size() != size) throw Error(ErrorCode::InvalidArgument, std::string(what) + " has the wrong length");
  std::vector<bool> seen(size, false);
  for (auto v : p) {
    if (v >= size || seen[v]) throw Error(ErrorCode::InvalidArgument, std::string(what) + " is not a permutation");
    seen[v] = true;
  }
}

}  // namespace

CanonicalSymmetroid::CanonicalSymmetroid(FiniteGroupoid base) : base_(std::move(base)) {
  const std::uint32_t m = base_.n_morphisms();
  lookup_.assign(static_cast<std::size_t>(m) * m * m, kUndefined);
  for (std::uint32_t a = 0; a < m; ++a)
    for (std::uint32_t b = 0; b < m; ++b) {
      if (base_.source(MorphismId(a)) != base_.target(MorphismId(b))) continue;
      for (std::uint32_t c = 0; c < m; ++c) {
        if (base_.source(MorphismId(c)) != base_.source(MorphismId(b))) continue;
        lookup_[(static_cast<std::size_t>(a) * m + b) * m + c] = static_cast<std::int32_t>(all_.size());
        all_.push_back({MorphismId(a), MorphismId(b), MorphismId(c)});
      }
    }

  const std::size_t size = all_.size();
  GroupoidTables t;
  t.n_objects = m;
  t.source.resize(size);
  t.target.resize(size);
  t.compose.assign(size * size, kUndefined);
  t.inverse.resize(size);
  t.unit_of.resize(m);
  std::vector<std::uint32_t> targets(size);
  for (std::size_t i = 0; i < size; ++i) {
    t.source[i] = all_[i].beta.index;
    targets[i] = t1(all_[i]).index;
    t.target[i] = targets[i];
    t.inverse[i] = static_cast<std::int32_t>(index_of(vertical_inverse(all_[i])));
  }
  for (std::size_t j = 0; j < size; ++j)
    for (std::size_t i = 0; i < size; ++i)
      if (targets[i] == all_[j].beta.index)
        t.compose[j * size + i] = static_cast<std::int32_t>(index_of(vertical_compose(all_[j], all_[i])));
  for (std::uint32_t b = 0; b < m; ++b)
    t.unit_of[b] = static_cast<std::int32_t>(index_of(vertical_unit(MorphismId(b))));
  vertical_ = FiniteGroupoid(std::move(t));
}

bool CanonicalSymmetroid::valid(const Transformation& t) const {
  const std::uint32_t m = base_.n_morphisms();
  if (t.alpha.index >= m || t.beta.index >= m || t.gamma.index >= m) return false;
  return base_.source(t.alpha) == base_.target(t.beta) && base_.source(t.gamma) == base_.source(t.beta);
}

std::uint32_t CanonicalSymmetroid::index_of(const Transformation& t) const {
  if (!valid(t)) throw Error(ErrorCode::InvalidArgument, "not a transformation of this symmetroid");
  const std::size_t m = base_.n_morphisms();
  return static_cast<std::uint32_t>(lookup_[(t.alpha.index * m + t.beta.index) * m + t.gamma.index]);
}

MorphismId CanonicalSymmetroid::t1(const Transformation& t) const {
  return base_.compose_or_throw(base_.compose_or_throw(t.alpha, t.beta), base_.inverse_or_throw(t.gamma));
}

bool CanonicalSymmetroid::is_little(const Transformation& t) const {
  return base_.source(t.alpha) == base_.target(t.alpha) && base_.source(t.gamma) == base_.target(t.gamma);
}

Transformation CanonicalSymmetroid::vertical_compose(const Transformation& g2, const Transformation& g1) const {
  if (t1(g1) != g2.beta)
    throw Error(ErrorCode::NotComposable, "vertical composition needs t1 of the right factor to equal s1 of the left");
  return {base_.compose_or_throw(g2.alpha, g1.alpha), g1.beta, base_.compose_or_throw(g2.gamma, g1.gamma)};
}

Transformation CanonicalSymmetroid::vertical_unit(MorphismId beta) const {
  return {base_.unit_or_throw(base_.target(beta)), beta, base_.unit_or_throw(base_.source(beta))};
}

Transformation CanonicalSymmetroid::vertical_inverse(const Transformation& t) const {
  return {base_.inverse_or_throw(t.alpha), t1(t), base_.inverse_or_throw(t.gamma)};
}

bool CanonicalSymmetroid::horizontally_composable(const Transformation& g2, const Transformation& g1) const {
  return base_.composable(g2.beta, g1.beta) && base_.composable(t1(g2), t1(g1));
}

Transformation CanonicalSymmetroid::horizontal_compose(const Transformation& g2, const Transformation& g1) const {
  if (!horizontally_composable(g2, g1))
    throw Error(ErrorCode::NotComposable, "horizontal composition needs composable 2-sources and 2-targets");
  const MorphismId alpha =
      base_.compose_or_throw(base_.compose_or_throw(t1(g2), g1.alpha), base_.inverse_or_throw(g2.beta));
  return {alpha, base_.compose_or_throw(g2.beta, g1.beta), g1.gamma};
}

Transformation CanonicalSymmetroid::horizontal_unit(ObjectId y, ObjectId x) const {
  auto arrows = base_.hom(x, y);
  if (arrows.empty())
    throw Error(ErrorCode::NotComposable,
                "no morphism " + std::to_string(x.index) + " -> " + std::to_string(y.index) + " for a horizontal unit");
  return {arrows.front(), base_.unit_or_throw(x), arrows.front()};
}

Transformation CanonicalSymmetroid::horizontal_inverse(const Transformation& t) const {
  return {t.gamma, base_.inverse_or_throw(t.beta), t.alpha};
}

QuotientTransformation CanonicalSymmetroid::project(const Transformation& t) const {
  const MorphismId s = t.beta;
  const MorphismId r = t1(t);
  return {base_.target(r).index, base_.target(s).index, base_.source(s).index, base_.source(r).index};
}

QuotientSymmetroid::QuotientSymmetroid(std::uint32_t n) : n_(n), base_(pair_groupoid(n)) {
  const std::uint32_t size = this->size();
  GroupoidTables t;
  t.n_objects = n * n;
  t.source.resize(size);
  t.target.resize(size);
  t.compose.assign(static_cast<std::size_t>(size) * size, kUndefined);
  t.inverse.resize(size);
  t.unit_of.resize(n * n);
  for (std::uint32_t i = 0; i < size; ++i) {
    const auto q = at(i);
    t.source[i] = s1(q).index;
    t.target[i] = t1(q).index;
    t.inverse[i] = static_cast<std::int32_t>(index(vertical_inverse(q)));
    for (std::uint32_t j = 0; j < size; ++j)
      if (auto r = vertical_compose(at(j), q)) t.compose[static_cast<std::size_t>(j) * size + i] = static_cast<std::int32_t>(index(*r));
  }
  for (std::uint32_t b = 0; b < n * n; ++b) t.unit_of[b] = static_cast<std::int32_t>(index(vertical_unit(MorphismId(b))));
  vertical_ = FiniteGroupoid(std::move(t));
}

void QuotientSymmetroid::check(const QuotientTransformation& q) const {
  if (q.z >= n_ || q.y >= n_ || q.x >= n_ || q.w >= n_)
    throw Error(ErrorCode::InvalidArgument, "class " + describe(q) + " has an object outside 0.." + std::to_string(n_ - 1));
}

std::uint32_t QuotientSymmetroid::index(const QuotientTransformation& q) const {
  check(q);
  return ((q.z * n_ + q.y) * n_ + q.x) * n_ + q.w;
}

QuotientTransformation QuotientSymmetroid::at(std::uint32_t i) const {
  if (i >= size()) throw Error(ErrorCode::InvalidArgument, "class id out of range");
  return {i / (n_ * n_ * n_), (i / (n_ * n_)) % n_, (i / n_) % n_, i % n_};
}

std::vector<QuotientTransformation> QuotientSymmetroid::enumerate() const {
  std::vector<QuotientTransformation> out;
  out.reserve(size());
  for (std::uint32_t i = 0; i < size(); ++i) out.push_back(at(i));
  return out;
}

QuotientTransformation QuotientSymmetroid::between(MorphismId s, MorphismId t) const {
  return {t.index / n_, s.index / n_, s.index % n_, t.index % n_};
}

std::optional<QuotientTransformation> QuotientSymmetroid::vertical_compose(const QuotientTransformation& g2,
                                                                           const QuotientTransformation& g1) {
  if (g2.y != g1.z || g2.x != g1.w) return std::nullopt;
  return QuotientTransformation{g2.z, g1.y, g1.x, g2.w};
}

QuotientTransformation QuotientSymmetroid::vertical_compose_or_throw(const QuotientTransformation& g2,
                                                                     const QuotientTransformation& g1) const {
  check(g2);
  check(g1);
  if (auto r = vertical_compose(g2, g1)) return *r;
  throw Error(ErrorCode::NotComposable, describe(g2) + " ∘_V " + describe(g1) + " is undefined");
}

QuotientTransformation QuotientSymmetroid::vertical_unit(MorphismId beta) const {
  const std::uint32_t y = beta.index / n_;
  const std::uint32_t x = beta.index % n_;
  return {y, y, x, x};
}

std::optional<QuotientTransformation> QuotientSymmetroid::horizontal_compose(const QuotientTransformation& g2,
                                                                             const QuotientTransformation& g1) {
  if (g2.x != g1.y || g2.w != g1.z) return std::nullopt;
  return QuotientTransformation{g2.z, g2.y, g1.x, g1.w};
}

QuotientTransformation QuotientSymmetroid::horizontal_compose_or_throw(const QuotientTransformation& g2,
                                                                       const QuotientTransformation& g1) const {
  check(g2);
  check(g1);
  if (auto r = horizontal_compose(g2, g1)) return *r;
  throw Error(ErrorCode::NotComposable, describe(g2) + " ∘_H " + describe(g1) + " is undefined");
}

namespace {

bool exchange_holds(const QuotientTransformation& g1, const QuotientTransformation& g2,
                    const QuotientTransformation& h1, const QuotientTransformation& h2) {
  auto top = QuotientSymmetroid::horizontal_compose(h2, h1);
  auto bottom = QuotientSymmetroid::horizontal_compose(g2, g1);
  auto left = QuotientSymmetroid::vertical_compose(h2, g2);
  auto right = QuotientSymmetroid::vertical_compose(h1, g1);
  if (!top || !bottom || !left || !right) return false;
  auto lhs = QuotientSymmetroid::vertical_compose(*top, *bottom);
  auto rhs = QuotientSymmetroid::horizontal_compose(*left, *right);
  return lhs && rhs && *lhs == *rhs;
}

}  // namespace

ExchangeReport check_exchange_exhaustive(const QuotientSymmetroid& s) {
  ExchangeReport rep;
  const auto all = s.enumerate();
  const std::uint32_t size = s.size();
  for (std::uint32_t a = 0; a < size; ++a)
    for (std::uint32_t b = 0; b < size; ++b) {
      if (!QuotientSymmetroid::horizontal_compose(all[b], all[a])) continue;
      for (std::uint32_t c = 0; c < size; ++c) {
        if (!QuotientSymmetroid::vertical_compose(all[c], all[a])) continue;
        for (std::uint32_t d = 0; d < size; ++d) {
          if (!QuotientSymmetroid::vertical_compose(all[d], all[b])) continue;
          if (!QuotientSymmetroid::horizontal_compose(all[d], all[c])) continue;
          ++rep.checked;
          if (!exchange_holds(all[a], all[b], all[c], all[d])) rep.violations.push_back({a, b, c, d});
        }
      }
    }
  return rep;
}

ExchangeReport check_exchange_sampled(const QuotientSymmetroid& s, std::size_t samples, std::uint64_t seed) {
  const auto all = s.enumerate();
  const std::uint32_t size = s.size();
  // Left partners of each class under either composition.
  std::vector<std::vector<std::uint32_t>> h_left(size);
  std::vector<std::vector<std::uint32_t>> v_left(size);
  for (std::uint32_t a = 0; a < size; ++a)
    for (std::uint32_t b = 0; b < size; ++b) {
      if (QuotientSymmetroid::horizontal_compose(all[b], all[a])) h_left[a].push_back(b);
      if (QuotientSymmetroid::vertical_compose(all[b], all[a])) v_left[a].push_back(b);
    }
  ExchangeReport rep;
  Rng rng = stream_rng(seed, 0);
  auto pick = [&rng](const std::vector<std::uint32_t>& from) {
    return from[std::uniform_int_distribution<std::size_t>(0, from.size() - 1)(rng)];
  };
  for (std::size_t i = 0; i < samples; ++i) {
    const std::uint32_t a = std::uniform_int_distribution<std::uint32_t>(0, size - 1)(rng);
    const std::uint32_t b = pick(h_left[a]);
    const std::uint32_t c = pick(v_left[a]);
    std::vector<std::uint32_t> d_choices;
    for (auto d : v_left[b])
      if (QuotientSymmetroid::horizontal_compose(all[d], all[c])) d_choices.push_back(d);
    if (d_choices.empty()) {
      rep.violations.push_back({a, b, c, 0});
      continue;
    }
    const std::uint32_t d = pick(d_choices);
    ++rep.checked;
    if (!exchange_holds(all[a], all[b], all[c], all[d])) rep.violations.push_back({a, b, c, d});
  }
  return rep;
}

Bisection make_bisection(const QuotientSymmetroid& s, const std::vector<QuotientTransformation>& entries) {
  const std::uint32_t m = s.n() * s.n();
  if (entries.size() != m)
    throw Error(ErrorCode::InvalidArgument, "a bisection has exactly one element per morphism of G(Omega)");
  Bisection b{s.n(), std::vector<std::uint32_t>(m, 0)};
  std::vector<bool> source_hit(m, false);
  std::vector<bool> target_hit(m, false);
  for (const auto& q : entries) {
    const auto id = s.index(q);
    const auto src = s.s1(q).index;
    const auto tgt = s.t1(q).index;
    if (source_hit[src]) throw Error(ErrorCode::InvalidArgument, "s1 is not injective on the bisection " + describe(q));
    if (target_hit[tgt]) throw Error(ErrorCode::InvalidArgument, "t1 is not injective on the bisection " + describe(q));
    source_hit[src] = target_hit[tgt] = true;
    b.section[src] = id;
  }
  return b;
}

Bisection bisection_from_permutation(const QuotientSymmetroid& s, const std::vector<std::uint32_t>& perm) {
  const std::uint32_t m = s.n() * s.n();
  require_permutation(perm, m, "morphism permutation");
  Bisection b{s.n(), std::vector<std::uint32_t>(m)};
  for (std::uint32_t beta = 0; beta < m; ++beta) b.section[beta] = s.index(s.between(MorphismId(beta), MorphismId(perm[beta])));
  return b;
}

std::vector<std::uint32_t> induced_map(const QuotientSymmetroid& s, const Bisection& b) {
  std::vector<std::uint32_t> out(b.section.size());
  for (std::size_t beta = 0; beta < out.size(); ++beta) out[beta] = s.t1(s.at(b.section[beta])).index;
  return out;
}

Bisection bisection_product(const QuotientSymmetroid& s, const Bisection& b2, const Bisection& b1) {
  if (b1.n != s.n() || b2.n != s.n()) throw Error(ErrorCode::DimensionMismatch, "bisections of different symmetroids");
  Bisection out{s.n(), std::vector<std::uint32_t>(b1.section.size())};
  for (std::size_t beta = 0; beta < out.section.size(); ++beta) {
    const auto e1 = s.at(b1.section[beta]);
    const auto e2 = s.at(b2.section[s.t1(e1).index]);
    out.section[beta] = s.index(s.vertical_compose_or_throw(e2, e1));
  }
  return out;
}

Bisection bisection_inverse(const QuotientSymmetroid& s, const Bisection& b) {
  Bisection out{s.n(), std::vector<std::uint32_t>(b.section.size())};
  for (std::size_t beta = 0; beta < out.section.size(); ++beta) {
    const auto e = s.at(b.section[beta]);
    out.section[s.t1(e).index] = s.index(QuotientSymmetroid::vertical_inverse(e));
  }
  return out;
}

Bisection identity_bisection(const QuotientSymmetroid& s) {
  Bisection out{s.n(), std::vector<std::uint32_t>(s.n() * s.n())};
  for (std::uint32_t beta = 0; beta < out.section.size(); ++beta)
    out.section[beta] = s.index(s.vertical_unit(MorphismId(beta)));
  return out;
}

bool is_flat(const QuotientSymmetroid& s, const Bisection& b) {
  const FiniteGroupoid& g = s.base();
  for (std::uint32_t b2 = 0; b2 < g.n_morphisms(); ++b2)
    for (std::uint32_t b1 = 0; b1 < g.n_morphisms(); ++b1) {
      auto c = g.compose(MorphismId(b2), MorphismId(b1));
      if (!c) continue;
      auto h = QuotientSymmetroid::horizontal_compose(s.at(b.section[b2]), s.at(b.section[b1]));
      if (!h || s.index(*h) != b.section[c->index]) return false;
    }
  return true;
}

namespace {

std::vector<std::uint32_t> functor_of(const FiniteGroupoid& g, std::uint32_t n, const std::vector<std::uint32_t>& sigma) {
  std::vector<std::uint32_t> phi(g.n_morphisms());
  for (std::uint32_t beta = 0; beta < g.n_morphisms(); ++beta) {
    const auto x = g.source(MorphismId(beta)).index;
    const auto y = g.target(MorphismId(beta)).index;
    const MorphismId bx = pair_morphism(n, sigma[x], x);
    const MorphismId by = pair_morphism(n, sigma[y], y);
    phi[beta] = g.compose_or_throw(g.compose_or_throw(by, MorphismId(beta)), g.inverse_or_throw(bx)).index;
  }
  return phi;
}

}  // namespace

FlatBisection flat_bisection(const QuotientSymmetroid& s, const std::vector<std::uint32_t>& sigma) {
  require_permutation(sigma, s.n(), "object permutation");
  return {bisection_from_permutation(s, functor_of(s.base(), s.n(), sigma)), sigma};
}

std::optional<FlatBisection> as_flat(const QuotientSymmetroid& s, const Bisection& b) {
  if (!is_flat(s, b)) return std::nullopt;
  const auto phi = induced_map(s, b);
  std::vector<std::uint32_t> sigma(s.n());
  for (std::uint32_t x = 0; x < s.n(); ++x) sigma[x] = s.base().target(MorphismId(phi[s.base().unit_or_throw(ObjectId(x)).index])).index;
  return FlatBisection{b, sigma};
}

std::vector<std::uint32_t> flat_bisection_functor(const QuotientSymmetroid& s, const FlatBisection& b) {
  require_permutation(b.underlying_map, s.n(), "object permutation");
  return functor_of(s.base(), s.n(), b.underlying_map);
}

FlatBisection shift_bisection(const QuotientSymmetroid& s) {
  std::vector<std::uint32_t> sigma(s.n());
  for (std::uint32_t j = 0; j < s.n(); ++j) sigma[j] = (j + 1) % s.n();
  return flat_bisection(s, sigma);
}

std::vector<FlatBisection> flat_bisections(const QuotientSymmetroid& s) {
  std::vector<std::uint32_t> sigma(s.n());
  std::iota(sigma.begin(), sigma.end(), 0U);
  std::vector<FlatBisection> out;
  do {
    out.push_back(flat_bisection(s, sigma));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

std::size_t count_flat_bisections_exhaustive(const QuotientSymmetroid& s) {
  if (s.n() > 3) throw Error(ErrorCode::InvalidArgument, "exhaustive bisection search is limited to n <= 3");
  const std::uint32_t m = s.n() * s.n();
  std::vector<std::uint32_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0U);
  std::size_t count = 0;
  Bisection b{s.n(), std::vector<std::uint32_t>(m)};
  do {
    for (std::uint32_t beta = 0; beta < m; ++beta) b.section[beta] = s.index(s.between(MorphismId(beta), MorphismId(perm[beta])));
    if (is_flat(s, b)) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

}  // namespace gqm

#include "hsc/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "hsc/error.hpp"

namespace hsc::group {

// --- Permutation ----------------------------------------------------------------

Permutation::Permutation(std::vector<std::uint8_t> images) : images_(std::move(images)) {
  if (images_.size() > kMaxDegree) throw DomainError("permutation degree exceeds " + std::to_string(kMaxDegree));
  std::vector<char> seen(images_.size(), 0);
  for (auto x : images_) {
    if (x >= images_.size() || seen[x]) throw DomainError("images do not form a permutation");
    seen[x] = 1;
  }
}

Permutation Permutation::identity(std::size_t degree) {
  if (degree > kMaxDegree) throw DomainError("permutation degree exceeds " + std::to_string(kMaxDegree));
  std::vector<std::uint8_t> im(degree);
  std::iota(im.begin(), im.end(), std::uint8_t{0});
  Permutation p;
  p.images_ = std::move(im);
  return p;
}

Permutation Permutation::from_cycles(std::size_t degree, const std::vector<std::vector<int>>& cycles) {
  Permutation result = identity(degree);
  for (const auto& cyc : cycles) {
    auto im = identity(degree).images_;
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      const int from = cyc[i];
      const int to = cyc[(i + 1) % cyc.size()];
      if (from < 0 || to < 0 || static_cast<std::size_t>(from) >= degree || static_cast<std::size_t>(to) >= degree) {
        throw DomainError("cycle point outside degree");
      }
      im[static_cast<std::size_t>(from)] = static_cast<std::uint8_t>(to);
    }
    result = Permutation(std::move(im)) * result;
  }
  return result;
}

Permutation Permutation::operator*(const Permutation& b) const {
  if (b.degree() != degree()) throw DomainError("composing permutations of different degree");
  Permutation r;
  r.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) r.images_[i] = images_[b.images_[i]];
  return r;
}

Permutation Permutation::inverse() const {
  Permutation r;
  r.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) r.images_[images_[i]] = static_cast<std::uint8_t>(i);
  return r;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

std::string Permutation::str() const {
  std::string out;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(images_[i]);
  }
  return out;
}

// --- Group ------------------------------------------------------------------------

Group Group::from_generators(std::size_t degree, std::span<const Permutation> gens, std::string name,
                             std::size_t order_cap) {
  if (degree < 1 || degree > kMaxDegree) {
    throw DomainError("group degree must be in [1, " + std::to_string(kMaxDegree) + "]");
  }
  for (const auto& g : gens) {
    if (g.degree() != degree) throw DomainError("generator degree does not match group degree");
  }

  std::map<std::vector<std::uint8_t>, int> seen;
  std::vector<Permutation> found{Permutation::identity(degree)};
  seen.emplace(found.front().images(), 0);
  for (std::size_t qi = 0; qi < found.size(); ++qi) {
    for (const auto& s : gens) {
      Permutation y = found[qi] * s;
      if (seen.contains(y.images())) continue;
      if (found.size() >= order_cap) {
        throw ResourceError("group '" + name + "' exceeds order cap " + std::to_string(order_cap));
      }
      seen.emplace(y.images(), static_cast<int>(found.size()));
      found.push_back(std::move(y));
    }
  }

  std::sort(found.begin(), found.end());
  Group g;
  g.name_ = std::move(name);
  g.degree_ = degree;
  g.gens_.assign(gens.begin(), gens.end());
  g.elements_ = std::move(found);

  const std::size_t n = g.elements_.size();
  std::map<std::vector<std::uint8_t>, int> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(g.elements_[i].images(), static_cast<int>(i));
  g.table_.resize(n * n);
  g.inverse_.resize(n);
  std::vector<std::uint8_t> buf(degree);
  for (std::size_t a = 0; a < n; ++a) {
    const auto& pa = g.elements_[a].images();
    for (std::size_t b = 0; b < n; ++b) {
      const auto& pb = g.elements_[b].images();
      for (std::size_t x = 0; x < degree; ++x) buf[x] = pa[pb[x]];
      const int id = index.at(buf);
      g.table_[a * n + b] = id;
      if (id == 0) g.inverse_[a] = static_cast<int>(b);
    }
  }
  if (!g.verify_axioms()) throw std::logic_error("group '" + g.name_ + "' failed its axiom check");
  return g;
}

int Group::find(const Permutation& p) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
  if (it == elements_.end() || *it != p) return -1;
  return static_cast<int>(it - elements_.begin());
}

std::vector<int> Group::generator_ids() const {
  std::vector<int> out;
  for (const auto& s : gens_) out.push_back(find(s));
  return out;
}

ElementSet Group::all() const { return ElementSet(order()).complement(); }

ElementSet Group::translate_left(int g, const ElementSet& s) const {
  ElementSet out(order());
  s.for_each([&](int x) { out.insert(mul(g, x)); });
  return out;
}

ElementSet Group::product(const ElementSet& a, const ElementSet& b) const {
  ElementSet out(order());
  const auto bs = b.ids();
  a.for_each([&](int x) {
    for (int y : bs) out.insert(mul(x, y));
  });
  return out;
}

bool Group::verify_axioms() const {
  const auto n = static_cast<int>(order());
  if (n == 0 || !elements_[0].is_identity()) return false;
  for (int a = 0; a < n; ++a) {
    if (mul(0, a) != a || mul(a, 0) != a) return false;
    if (mul(a, inv(a)) != 0 || mul(inv(a), a) != 0) return false;
  }
  // The table came from composing permutations, so associativity holds
  // exactly; spot-check it against the generators anyway.
  const auto gids = generator_ids();
  for (int s : gids) {
    if (s < 0) return false;
    for (int a = 0; a < n; ++a) {
      for (int t : gids) {
        if (mul(mul(a, s), t) != mul(a, mul(s, t))) return false;
      }
    }
  }
  return true;
}

// --- Subgroup ----------------------------------------------------------------------

namespace {

ElementSet closure(const Group& g, std::span<const int> gens) {
  ElementSet s(g.order());
  s.insert(0);
  std::vector<int> queue{0};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    for (int x : gens) {
      const int y = g.mul(queue[qi], x);
      if (!s.contains(y)) {
        s.insert(y);
        queue.push_back(y);
      }
    }
  }
  return s;
}

}  // namespace

Subgroup::Subgroup(const Group& g, ElementSet members)
    : parent_(&g), members_(std::move(members)), order_(members_.count()) {}

Subgroup Subgroup::generated_by(const Group& g, std::span<const int> gens) {
  for (int x : gens) {
    if (x < 0 || static_cast<std::size_t>(x) >= g.order()) throw DomainError("element id out of range");
  }
  return Subgroup(g, closure(g, gens));
}

Subgroup Subgroup::from_members(const Group& g, const ElementSet& members) {
  if (members.universe() != g.order() || !is_subgroup(g, members)) {
    throw DomainError("element set is not a subgroup of " + g.name());
  }
  return Subgroup(g, members);
}

Subgroup Subgroup::trivial(const Group& g) {
  ElementSet s(g.order());
  s.insert(0);
  return Subgroup(g, std::move(s));
}

Subgroup Subgroup::whole(const Group& g) { return Subgroup(g, g.all()); }

bool is_subgroup(const Group& g, const ElementSet& s) {
  if (!s.contains(0)) return false;
  const auto ids = s.ids();
  for (int a : ids) {
    if (!s.contains(g.inv(a))) return false;
    for (int b : ids) {
      if (!s.contains(g.mul(a, b))) return false;
    }
  }
  return true;
}

void require_same_parent(const Group& g, std::initializer_list<const Subgroup*> subs) {
  for (const auto* s : subs) {
    if (&s->parent() != &g) throw UsageError("subgroup does not belong to group " + g.name());
  }
}

Subgroup intersection(const Subgroup& u, const Subgroup& v) {
  require_same_parent(u.parent(), {&v});
  return Subgroup::from_members(u.parent(), u.members() & v.members());
}

Subgroup conjugate(const Subgroup& u, int x) {
  const Group& g = u.parent();
  ElementSet out(g.order());
  u.members().for_each([&](int a) { out.insert(g.conj(x, a)); });
  return Subgroup::from_members(g, out);
}

bool is_normal(const Subgroup& u) {
  for (int x : u.parent().generator_ids()) {
    if (!(conjugate(u, x) == u)) return false;
  }
  return true;
}

std::vector<Subgroup> all_subgroups(const Group& g) {
  const std::size_t n = g.order();
  std::vector<ElementSet> cyclic;
  cyclic.reserve(n);
  for (std::size_t x = 0; x < n; ++x) {
    const int id = static_cast<int>(x);
    cyclic.push_back(closure(g, std::span<const int>(&id, 1)));
  }

  std::unordered_set<ElementSet, ElementSetHash> known;
  std::vector<ElementSet> found;
  std::vector<std::vector<int>> gens_of;
  ElementSet triv(n);
  triv.insert(0);
  known.insert(triv);
  found.push_back(triv);
  gens_of.emplace_back();

  for (std::size_t qi = 0; qi < found.size(); ++qi) {
    for (std::size_t x = 0; x < n; ++x) {
      if (cyclic[x].subset_of(found[qi])) continue;
      std::vector<int> gens = gens_of[qi];
      gens.push_back(static_cast<int>(x));
      ElementSet k = closure(g, gens);
      if (known.insert(k).second) {
        found.push_back(std::move(k));
        gens_of.push_back(std::move(gens));
      }
    }
  }

  std::vector<Subgroup> out;
  out.reserve(found.size());
  for (auto& s : found) {
    if (n % s.count() != 0) throw std::logic_error("subgroup order does not divide the group order");
    out.push_back(Subgroup::from_members(g, s));
  }
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.ids() < b.ids();
  });
  return out;
}

std::vector<Coset> left_cosets(const Group& g, const Subgroup& u) {
  require_same_parent(g, {&u});
  ElementSet used(g.order());
  std::vector<Coset> out;
  for (int x = 0; x < static_cast<int>(g.order()); ++x) {
    if (used.contains(x)) continue;
    ElementSet c = g.translate_left(x, u.members());
    used |= c;
    out.push_back({x, std::move(c)});
  }
  return out;
}

std::vector<Coset> double_cosets(const Group& g, const Subgroup& u, const Subgroup& v) {
  require_same_parent(g, {&u, &v});
  const Int iu = static_cast<Int>(u.index());
  const Int iv = static_cast<Int>(v.index());
  const Int divisor = static_cast<Int>(g.order()) * arith::lcm(iu, iv) / (iu * iv);
  ElementSet used(g.order());
  std::vector<Coset> out;
  const auto vs = v.ids();
  for (int x = 0; x < static_cast<int>(g.order()); ++x) {
    if (used.contains(x)) continue;
    ElementSet c(g.order());
    u.members().for_each([&](int a) {
      const int ax = g.mul(a, x);
      for (int b : vs) c.insert(g.mul(ax, b));
    });
    if (static_cast<Int>(c.count()) % divisor != 0) {
      throw std::logic_error("double coset size not divisible by |G| lcm / ([G:U][G:V])");
    }
    used |= c;
    out.push_back({x, std::move(c)});
  }
  return out;
}

ElementSet product_set(const Group& g, const Subgroup& u, const Subgroup& v) {
  require_same_parent(g, {&u, &v});
  return g.product(u.members(), v.members());
}

PairStats product_stats(const Group& g, const Subgroup& u, const Subgroup& v) {
  require_same_parent(g, {&u, &v});
  const Int n = static_cast<Int>(g.order());
  const Int iu = static_cast<Int>(u.index());
  const Int iv = static_cast<Int>(v.index());
  PairStats st;
  st.product_size = static_cast<Int>(product_set(g, u, v).count());
  const Int meet = static_cast<Int>((u.members() & v.members()).count());
  st.intersection_index = n / meet;
  const Int l = arith::lcm(iu, iv);
  if (st.intersection_index % l != 0) throw std::logic_error("lcm of indices does not divide [G:UnV]");
  st.alpha = st.intersection_index / l;
  if (st.product_size * iu * iv != n * st.intersection_index) {
    throw std::logic_error("|UV| disagrees with |G|[G:UnV]/([G:U][G:V])");
  }
  return st;
}

// --- SubgroupLattice ---------------------------------------------------------------

SubgroupLattice::SubgroupLattice(const Group& g) : group_(&g), subs_(all_subgroups(g)) {
  for (std::size_t i = 0; i < subs_.size(); ++i) lookup_.emplace(subs_[i].members(), static_cast<int>(i));

  conj_rep_.assign(subs_.size(), -1);
  const auto gens = g.generator_ids();
  for (std::size_t i = 0; i < subs_.size(); ++i) {
    if (conj_rep_[i] != -1) continue;
    // Subgroups are visited in id order, so i is the least id of its class.
    std::vector<int> orbit{static_cast<int>(i)};
    conj_rep_[i] = static_cast<int>(i);
    for (std::size_t qi = 0; qi < orbit.size(); ++qi) {
      for (int x : gens) {
        const int c = find(conjugate(subs_[static_cast<std::size_t>(orbit[qi])], x).members());
        if (conj_rep_[static_cast<std::size_t>(c)] == -1) {
          conj_rep_[static_cast<std::size_t>(c)] = static_cast<int>(i);
          orbit.push_back(c);
        }
      }
    }
  }
  cache_ = std::make_unique<PairCache[]>(subs_.size() * subs_.size());
}

int SubgroupLattice::find(const ElementSet& members) const {
  auto it = lookup_.find(members);
  return it == lookup_.end() ? -1 : it->second;
}

std::vector<int> SubgroupLattice::with_index(Int index) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < subs_.size(); ++i) {
    if (static_cast<Int>(subs_[i].index()) == index) out.push_back(static_cast<int>(i));
  }
  return out;
}

SubgroupLattice::PairCache& SubgroupLattice::pair(std::size_t i, std::size_t j) const {
  PairCache& c = cache_[i * subs_.size() + j];
  std::call_once(c.once, [&] {
    const Group& g = *group_;
    c.product = product_set(g, subs_[i], subs_[j]);
    c.stats = product_stats(g, subs_[i], subs_[j]);
    c.meet = find(subs_[i].members() & subs_[j].members());
  });
  return c;
}

const ElementSet& SubgroupLattice::product(std::size_t i, std::size_t j) const { return pair(i, j).product; }
const PairStats& SubgroupLattice::stats(std::size_t i, std::size_t j) const { return pair(i, j).stats; }
int SubgroupLattice::meet(std::size_t i, std::size_t j) const { return pair(i, j).meet; }

}  // namespace hsc::group

#include "hsc/catalog.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "hsc/error.hpp"

namespace hsc::group {

Group GroupSpec::build(std::size_t order_cap) const {
  return Group::from_generators(degree, generators, name, order_cap);
}

namespace {

std::string strip(std::string_view s) {
  const auto hash = s.find('#');
  if (hash != std::string_view::npos) s = s.substr(0, hash);
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::size_t parse_size(std::string_view tok, int line) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size()) {
    throw UsageError("group file line " + std::to_string(line) + ": expected an integer, got '" +
                     std::string(tok) + "'");
  }
  return v;
}

}  // namespace

GroupSpec parse_group_spec(std::istream& in) {
  GroupSpec spec;
  bool have_degree = false;
  bool have_name = false;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = strip(raw);
    if (text.empty()) continue;
    std::istringstream ls(text);
    std::string head;
    ls >> head;
    if (!have_degree) {
      std::string tok;
      if (head != "degree" || !(ls >> tok)) throw UsageError("group file must start with 'degree <d>'");
      spec.degree = parse_size(tok, line);
      if (spec.degree < 1 || spec.degree > kMaxDegree) throw UsageError("group file degree out of range");
      have_degree = true;
      continue;
    }
    if (!have_name) {
      if (head != "name") throw UsageError("group file line 2 must be 'name <string>'");
      std::string rest;
      std::getline(ls >> std::ws, rest);
      if (rest.empty()) throw UsageError("group file has an empty name");
      spec.name = rest;
      have_name = true;
      continue;
    }
    std::vector<std::uint8_t> images;
    std::istringstream gs(text);
    std::string tok;
    while (gs >> tok) {
      const std::size_t v = parse_size(tok, line);
      if (v >= spec.degree) throw UsageError("group file line " + std::to_string(line) + ": image out of range");
      images.push_back(static_cast<std::uint8_t>(v));
    }
    if (images.size() != spec.degree) {
      throw UsageError("group file line " + std::to_string(line) + ": generator needs " +
                       std::to_string(spec.degree) + " images");
    }
    try {
      spec.generators.emplace_back(std::move(images));
    } catch (const DomainError& e) {
      throw UsageError("group file line " + std::to_string(line) + ": " + e.what());
    }
  }
  if (!have_degree || !have_name) throw UsageError("group file is missing its degree or name line");
  return spec;
}

GroupSpec read_group_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open group file " + path.string());
  return parse_group_spec(in);
}

void write_group_spec(std::ostream& out, const GroupSpec& spec) {
  out << "degree " << spec.degree << '\n' << "name " << spec.name << '\n';
  for (const auto& g : spec.generators) out << g.str() << '\n';
}

// --- constructors ----------------------------------------------------------------------

GroupSpec cyclic(std::size_t n) {
  if (n < 1) throw DomainError("cyclic group needs n >= 1");
  // Disjoint cycles of prime-power lengths keep the degree small (C120 has degree 16).
  GroupSpec spec{"C" + std::to_string(n), 0, {}};
  std::vector<std::vector<int>> cycles;
  int next = 0;
  for (const auto& [p, e] : arith::factorize(static_cast<Int>(n)).factors()) {
    Int len = 1;
    for (int k = 0; k < e; ++k) len *= p;
    std::vector<int> cyc;
    for (Int i = 0; i < len; ++i) cyc.push_back(next++);
    cycles.push_back(std::move(cyc));
  }
  spec.degree = std::max(1, next);
  spec.generators.push_back(Permutation::from_cycles(spec.degree, cycles));
  return spec;
}

GroupSpec dihedral(std::size_t n) {
  if (n < 3) throw DomainError("dihedral group D_n needs n >= 3");
  GroupSpec spec{"D" + std::to_string(n), n, {}};
  std::vector<int> rot;
  for (std::size_t i = 0; i < n; ++i) rot.push_back(static_cast<int>(i));
  spec.generators.push_back(Permutation::from_cycles(n, {rot}));
  std::vector<std::vector<int>> refl;
  for (std::size_t i = 1; i < n - i; ++i) refl.push_back({static_cast<int>(i), static_cast<int>(n - i)});
  spec.generators.push_back(Permutation::from_cycles(n, refl));
  return spec;
}

GroupSpec symmetric(std::size_t n) {
  if (n < 2) throw DomainError("symmetric group needs n >= 2");
  GroupSpec spec{"S" + std::to_string(n), n, {}};
  spec.generators.push_back(Permutation::from_cycles(n, {{0, 1}}));
  std::vector<int> all;
  for (std::size_t i = 0; i < n; ++i) all.push_back(static_cast<int>(i));
  spec.generators.push_back(Permutation::from_cycles(n, {all}));
  return spec;
}

GroupSpec alternating(std::size_t n) {
  if (n < 3) throw DomainError("alternating group needs n >= 3");
  GroupSpec spec{"A" + std::to_string(n), n, {}};
  // The 3-cycles (0 1 k) generate A_n.
  for (std::size_t k = 2; k < n; ++k) spec.generators.push_back(Permutation::from_cycles(n, {{0, 1, static_cast<int>(k)}}));
  return spec;
}

GroupSpec quaternion8() {
  // Left-regular action on {1,-1,i,-i,j,-j,k,-k} = points 0..7.
  // A unit is (sign, axis) with axis 0=1, 1=i, 2=j, 3=k; point = 2*axis + (sign<0).
  auto times = [](int a, int b) {
    static const int axis[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    const int sa = (a & 1) ? -1 : 1;
    const int sb = (b & 1) ? -1 : 1;
    const int xa = a >> 1;
    const int xb = b >> 1;
    const int s = sa * sb * sign[xa][xb];
    return 2 * axis[xa][xb] + (s < 0 ? 1 : 0);
  };
  GroupSpec spec{"Q8", 8, {}};
  for (int unit : {2, 4}) {  // i, j
    std::vector<std::uint8_t> im(8);
    for (int x = 0; x < 8; ++x) im[static_cast<std::size_t>(x)] = static_cast<std::uint8_t>(times(unit, x));
    spec.generators.emplace_back(std::move(im));
  }
  return spec;
}

GroupSpec direct_product(const GroupSpec& a, const GroupSpec& b) {
  GroupSpec spec{a.name + "x" + b.name, a.degree + b.degree, {}};
  if (spec.degree > kMaxDegree) throw DomainError("direct product degree exceeds cap");
  auto shift = [&](const Permutation& p, std::size_t offset) {
    std::vector<std::uint8_t> im(spec.degree);
    for (std::size_t i = 0; i < spec.degree; ++i) im[i] = static_cast<std::uint8_t>(i);
    for (std::size_t i = 0; i < p.degree(); ++i) im[offset + i] = static_cast<std::uint8_t>(offset + static_cast<std::size_t>(p(static_cast<int>(i))));
    return Permutation(std::move(im));
  };
  for (const auto& g : a.generators) spec.generators.push_back(shift(g, 0));
  for (const auto& g : b.generators) spec.generators.push_back(shift(g, a.degree));
  return spec;
}

// --- catalog -----------------------------------------------------------------------------

namespace {

bool parse_family(std::string_view name, char letter, std::size_t lo, std::size_t hi, std::size_t& n) {
  if (name.size() < 2 || name[0] != letter) return false;
  std::size_t v = 0;
  auto body = name.substr(1);
  auto [p, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
  if (ec != std::errc() || p != body.data() + body.size() || body[0] == '0') return false;
  if (v < lo || v > hi) return false;
  n = v;
  return true;
}

}  // namespace

bool is_catalog_name(std::string_view name) {
  std::size_t n = 0;
  if (parse_family(name, 'C', 1, 120, n) || parse_family(name, 'D', 3, 30, n)) return true;
  for (std::string_view fixed : {"S3", "S4", "A4", "A5", "Q8", "C2xC2xC2", "C2xA4", "S3xC4"}) {
    if (name == fixed) return true;
  }
  return false;
}

GroupSpec catalog_spec(std::string_view name) {
  std::size_t n = 0;
  if (parse_family(name, 'C', 1, 120, n)) return cyclic(n);
  if (parse_family(name, 'D', 3, 30, n)) return dihedral(n);
  if (name == "S3") return symmetric(3);
  if (name == "S4") return symmetric(4);
  if (name == "A4") return alternating(4);
  if (name == "A5") return alternating(5);
  if (name == "Q8") return quaternion8();
  if (name == "C2xC2xC2") return direct_product(direct_product(cyclic(2), cyclic(2)), cyclic(2));
  if (name == "C2xA4") return direct_product(cyclic(2), alternating(4));
  if (name == "S3xC4") return direct_product(symmetric(3), cyclic(4));
  throw UsageError("unknown catalog group '" + std::string(name) + "'");
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> out;
  for (int n = 1; n <= 120; ++n) out.push_back("C" + std::to_string(n));
  for (int n = 3; n <= 30; ++n) out.push_back("D" + std::to_string(n));
  for (const char* fixed : {"S3", "S4", "A4", "A5", "Q8", "C2xC2xC2", "C2xA4", "S3xC4"}) out.emplace_back(fixed);
  return out;
}

std::vector<std::shared_ptr<const Group>> catalog_groups(std::size_t max_order, std::size_t order_cap) {
  std::vector<std::shared_ptr<const Group>> out;
  for (const auto& name : catalog_names()) {
    auto spec = catalog_spec(name);
    Group g = spec.build(std::max(order_cap, max_order));
    if (g.order() <= max_order) out.push_back(std::make_shared<const Group>(std::move(g)));
  }
  return out;
}

}  // namespace hsc::group

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "hsc/group.hpp"

namespace hsc::group {

/// Generator description of a permutation group, as stored in a group file.
struct GroupSpec {
  std::string name;
  std::size_t degree = 0;
  std::vector<Permutation> generators;

  Group build(std::size_t order_cap = kDefaultOrderCap) const;
};

/// Group file format:
///   degree <d>
///   name <string>
///   <images of 0..d-1>     one generator per line
/// Blank lines and text after '#' are ignored. Throws UsageError on bad input.
GroupSpec parse_group_spec(std::istream& in);
GroupSpec read_group_file(const std::filesystem::path& path);
void write_group_spec(std::ostream& out, const GroupSpec& spec);

GroupSpec cyclic(std::size_t n);
GroupSpec dihedral(std::size_t n);  // order 2n, acting on an n-gon
GroupSpec symmetric(std::size_t n);
GroupSpec alternating(std::size_t n);
GroupSpec quaternion8();
GroupSpec direct_product(const GroupSpec& a, const GroupSpec& b);

/// Catalog names: Cn (1 <= n <= 120), Dn (3 <= n <= 30), S3, S4, A4, A5, Q8,
/// C2xC2xC2, C2xA4, S3xC4. Throws UsageError for anything else.
GroupSpec catalog_spec(std::string_view name);
bool is_catalog_name(std::string_view name);

/// Every catalog name, each group listed once, in catalog order.
std::vector<std::string> catalog_names();

/// Catalog groups of order <= max_order, in catalog order.
std::vector<std::shared_ptr<const Group>> catalog_groups(std::size_t max_order,
                                                         std::size_t order_cap = kDefaultOrderCap);

}  // namespace hsc::group

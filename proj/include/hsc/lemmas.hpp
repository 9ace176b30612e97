#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "hsc/group.hpp"

namespace hsc::lemmas {

using group::Group;
using group::SubgroupLattice;

struct LemmaReport {
  std::string tag;
  std::string group;
  std::size_t instances = 0;
  std::vector<std::string> violations;
  bool vacuous = true;

  bool ok() const { return violations.empty(); }
};

struct HarnessOptions {
  /// L-main with three U's runs only on lattices with at most this many proper subgroups.
  std::size_t main_triple_limit = static_cast<std::size_t>(-1);
};

/// Reports in fixed order: L-gcd2, L-threealphas, L-threetuple-a, L-244,
/// L-5tuple, L-main, L-propmain.
std::vector<LemmaReport> lemma_harness(const SubgroupLattice& lat, const HarnessOptions& opts = {});
std::vector<LemmaReport> lemma_harness(const Group& g, const HarnessOptions& opts = {});

std::vector<std::vector<LemmaReport>> lemma_harness_serial(std::span<const std::shared_ptr<const Group>> groups,
                                                           const HarnessOptions& opts = {});
/// One group per task; results in input order.
std::vector<std::vector<LemmaReport>> lemma_harness_catalog(std::span<const std::shared_ptr<const Group>> groups,
                                                            int jobs, const HarnessOptions& opts = {});

}  // namespace hsc::lemmas

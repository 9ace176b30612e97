#include "hsc/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "hsc/catalog.hpp"
#include "hsc/egyptian.hpp"
#include "hsc/error.hpp"
#include "hsc/gharm.hpp"
#include "hsc/lemmas.hpp"
#include "hsc/zharm.hpp"

namespace hsc::cli {

namespace {

using arith::Int;
using group::Group;

constexpr const char* kRecordHelp = R"(Output records (--format records, the default): one record per line,
fields separated by TAB, first field is the record tag.
  ORDER      N raw=<count> stage1=<count> gcd=<2|3|both|none> survives=<yes|no>
  CANDIDATE  N <tuple> gcd=<class> filter=<P2|P3|P244|P5|none>[@<matched entries>]
  Z          <tuple> HARMONIC <witness> | NOT_HARMONIC <reason>
  CONFIG     <group> <indices>, followed by one SUBGROUP line per position:
  SUBGROUP   <position> index=<a> rep=<element id> members=<element ids>
  HSC        <group> <HOLDS|FAILS> stage=<ARITHMETIC|SEARCH>
  COSET      <rep> index=<a> members=<element ids>   (counterexample partitions)
  LEMMA      <group> <tag> instances=<n> vacuous=<yes|no> [violations=<list>] <OK|FAIL>
  BRIDGE     <group> tuples=<n> searched=<n> [violations=<list>] <OK|FAIL>
  GROUP      <name> order=<n> degree=<d>
Summary lines (SURVIVORS:, STAGE1_GCD2:, STAGE1_GCD3:, HOLDS, NONE, ...)
are printed verbatim. --format table aligns the same fields in columns.
Element ids index the group's elements in lexicographic order of their
image lists; id 0 is the identity.
Exit codes: 0 found/holds, 1 negative result, 2 usage error, 3 resource cap.
Environment: HSC_LAB_CAP overrides the group-order cap (default 360).)";

class Emitter {
 public:
  explicit Emitter(bool table) : table_(table) {}

  void record(std::vector<std::string> fields) { items_.push_back(std::move(fields)); }
  void line(std::string text) { items_.push_back(std::move(text)); }

  std::string render() const {
    std::ostringstream os;
    std::size_t i = 0;
    while (i < items_.size()) {
      if (const auto* s = std::get_if<std::string>(&items_[i])) {
        os << *s << '\n';
        ++i;
        continue;
      }
      std::size_t j = i;
      const auto& tag = std::get<Row>(items_[i]).front();
      while (j < items_.size() && std::holds_alternative<Row>(items_[j]) && std::get<Row>(items_[j]).front() == tag) ++j;
      std::vector<std::size_t> width;
      for (std::size_t k = i; k < j; ++k) {
        const auto& r = std::get<Row>(items_[k]);
        if (width.size() < r.size()) width.resize(r.size(), 0);
        for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
      }
      for (std::size_t k = i; k < j; ++k) {
        const auto& r = std::get<Row>(items_[k]);
        for (std::size_t c = 0; c < r.size(); ++c) {
          if (c) os << (table_ ? "  " : "\t");
          os << r[c];
          if (table_ && c + 1 < r.size()) os << std::string(width[c] - r[c].size(), ' ');
        }
        os << '\n';
      }
      i = j;
    }
    return os.str();
  }

 private:
  using Row = std::vector<std::string>;
  bool table_;
  std::vector<std::variant<Row, std::string>> items_;
};

template <class T>
std::string csv(const std::vector<T>& v, const char* sep = ",") {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? sep : "") << v[i];
  return os.str();
}

std::string bracket(const std::vector<Int>& v) { return "[" + csv(v, ", ") + "]"; }

struct Common {
  std::string format = "records";
  int jobs = 1;
  std::string out_path;
  std::optional<std::size_t> cap;
};

struct GroupRef {
  std::string catalog;
  std::string file;
  bool all = false;
  std::size_t max_order = 120;
};

std::size_t resolve_cap(const Common& c) {
  if (c.cap) return *c.cap;
  if (const char* env = std::getenv("HSC_LAB_CAP")) {
    try {
      std::size_t pos = 0;
      long long v = std::stoll(env, &pos);
      if (pos != std::string(env).size() || v < 1) throw std::invalid_argument(env);
      return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      throw UsageError(std::string("HSC_LAB_CAP must be a positive integer, got '") + env + "'");
    }
  }
  return group::kDefaultOrderCap;
}

std::vector<std::shared_ptr<const Group>> load_groups(const GroupRef& ref, std::size_t cap, bool allow_all) {
  int given = (!ref.catalog.empty()) + (!ref.file.empty()) + (ref.all ? 1 : 0);
  if (given != 1) {
    throw UsageError(allow_all ? "give exactly one of --catalog, --file, --all" : "give exactly one of --catalog, --file");
  }
  if (ref.all) return group::catalog_groups(ref.max_order, cap);
  auto spec = ref.file.empty() ? group::catalog_spec(ref.catalog) : group::read_group_file(ref.file);
  return {std::make_shared<const Group>(spec.build(cap))};
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"table", "records"}));
  sub->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::Range(1, 1024));
  sub->add_option("--out", c.out_path, "Also write the report to this file");
  sub->add_option("--cap", c.cap, "Group-order cap (overrides HSC_LAB_CAP)")->check(CLI::PositiveNumber);
}

void add_group_ref(CLI::App* sub, GroupRef& r, bool allow_all) {
  sub->add_option("--catalog", r.catalog, "Built-in group name")
      ->check(CLI::Validator(
          [](std::string& s) { return group::is_catalog_name(s) ? std::string{} : "unknown catalog group '" + s + "'"; },
          "NAME"));
  sub->add_option("--file", r.file, "Group file")->check(CLI::ExistingFile);
  if (allow_all) {
    sub->add_flag("--all", r.all, "Every catalog group up to --max-order");
    sub->add_option("--max-order", r.max_order, "Largest catalog order for --all")->check(CLI::PositiveNumber);
  }
}

int cmd_theorem_a(Emitter& em, Int max_order, int stage, bool verbose, int jobs) {
  auto reports = egypt::theorem_a_report(max_order, jobs);
  for (const auto& r : reports) {
    if (!verbose && r.raw_candidates == 0) continue;
    em.record({"ORDER", std::to_string(r.order), "raw=" + std::to_string(r.raw_candidates),
               "stage1=" + std::to_string(r.stage1_candidates.size()), "gcd=" + std::string(to_string(r.gcd_class())),
               std::string("survives=") + (r.survives ? "yes" : "no")});
    if (!verbose) continue;
    for (const auto& c : r.stage1_candidates) {
      std::string filter = "filter=none";
      if (c.eliminated_by) {
        filter = "filter=" + std::string(to_string(c.eliminated_by->pattern)) + "@" +
                 csv(c.eliminated_by->matched(c.tuple.entries()));
      }
      em.record({"CANDIDATE", std::to_string(r.order), c.tuple.str(), "gcd=" + std::string(to_string(c.gcd)), filter});
    }
  }
  auto sum = egypt::summarize(reports);
  em.line("STAGE1_GCD2: " + bracket(sum.gcd2));
  em.line("STAGE1_GCD3: " + bracket(sum.gcd3));
  const auto& surv = stage == 1 ? sum.stage1 : sum.survivors;
  em.line("SURVIVORS: " + bracket(surv));
  return surv.empty() ? kOk : kNegative;
}

int cmd_zharmonic(Emitter& em, const std::vector<Int>& tuple, std::size_t max_len, bool shortcuts) {
  auto v = zharm::is_z_harmonic(tuple, {max_len, shortcuts});
  if (v.harmonic) {
    em.line("HARMONIC witness=" + v.witness->str());
    return kOk;
  }
  em.line("NOT_HARMONIC reason=" + std::string(to_string(*v.reason)));
  return kNegative;
}

int cmd_zgrid(Emitter& em, Int lo, Int hi, std::size_t min_len, std::size_t max_len, bool shortcuts, int jobs) {
  if (lo < 2 || hi < lo) throw UsageError("zgrid needs 2 <= lo <= hi");
  if (min_len < 1 || max_len < min_len) throw UsageError("zgrid needs 1 <= min-len <= max-len");
  auto grid = zharm::tuple_grid(lo, hi, min_len, max_len);
  zharm::ZOptions opts;
  opts.max_length = std::max<std::size_t>(max_len, 1);
  opts.use_shortcuts = shortcuts;
  auto verdicts = zharm::classify_batch(grid, jobs, opts);
  std::size_t harmonic = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& v = verdicts[i];
    if (v.harmonic) {
      ++harmonic;
      em.record({"Z", csv(grid[i]), "HARMONIC", v.witness->str()});
    } else {
      em.record({"Z", csv(grid[i]), "NOT_HARMONIC", std::string(to_string(*v.reason))});
    }
  }
  em.line("ZGRID: tuples=" + std::to_string(grid.size()) + " harmonic=" + std::to_string(harmonic) +
          " not_harmonic=" + std::to_string(grid.size() - harmonic));
  return kOk;
}

int cmd_gharmonic(Emitter& em, const Group& g, const std::vector<Int>& tuple) {
  auto cfg = gharm::find_harmonic_tuple(g, tuple);
  if (!cfg) {
    em.line("NONE");
    return kNegative;
  }
  if (!gharm::is_harmonic_config(*cfg)) throw std::logic_error("search returned an invalid configuration");
  em.record({"CONFIG", g.name(), csv(tuple)});
  for (std::size_t i = 0; i < cfg->subgroups.size(); ++i) {
    const auto& u = cfg->subgroups[i];
    em.record({"SUBGROUP", std::to_string(i + 1), "index=" + std::to_string(u.index()),
               "rep=" + std::to_string(cfg->reps[i]), "members=" + csv(u.ids())});
  }
  return kOk;
}

int cmd_hsc(Emitter& em, const std::vector<std::shared_ptr<const Group>>& groups, bool force, std::size_t cap,
            bool single) {
  bool all_hold = true;
  std::string last;
  for (const auto& g : groups) {
    auto v = gharm::hsc_verify(*g, force, cap);
    std::string stage = "stage=" + std::string(to_string(v.stage));
    em.record({"HSC", g->name(), v.holds ? "HOLDS" : "FAILS", stage});
    if (v.counterexample) {
      for (const auto& [rep, u] : v.counterexample->cosets) {
        em.record({"COSET", std::to_string(rep), "index=" + std::to_string(u.index()),
                   "members=" + csv(g->translate_left(rep, u.members()).ids())});
      }
    }
    all_hold = all_hold && v.holds;
    last = std::string(v.holds ? "HOLDS " : "FAILS ") + stage;
  }
  if (single) em.line(last);
  else em.line(std::string(all_hold ? "HOLDS" : "FAILS") + " groups=" + std::to_string(groups.size()));
  return all_hold ? kOk : kNegative;
}

int cmd_lemmas(Emitter& em, const std::vector<std::shared_ptr<const Group>>& groups, std::size_t triple_limit,
               int jobs) {
  lemmas::HarnessOptions opts;
  opts.main_triple_limit = triple_limit;
  auto all = lemmas::lemma_harness_catalog(groups, jobs, opts);
  std::size_t bad = 0;
  for (const auto& reps : all) {
    for (const auto& r : reps) {
      std::vector<std::string> row{"LEMMA", r.group, r.tag, "instances=" + std::to_string(r.instances),
                                   std::string("vacuous=") + (r.vacuous ? "yes" : "no")};
      if (!r.ok()) {
        ++bad;
        row.push_back("violations=" + csv(r.violations, ";"));
      }
      row.push_back(r.ok() ? "OK" : "FAIL");
      em.record(std::move(row));
    }
  }
  em.line("LEMMAS: groups=" + std::to_string(groups.size()) + " failing=" + std::to_string(bad) + " " +
          (bad ? "FAIL" : "OK"));
  return bad ? kNegative : kOk;
}

int cmd_bridge(Emitter& em, const std::vector<std::shared_ptr<const Group>>& groups, std::size_t max_len, int jobs) {
  auto all = gharm::theorem_b_bridge_catalog(groups, jobs, max_len);
  std::size_t bad = 0;
  for (const auto& r : all) {
    std::vector<std::string> row{"BRIDGE", r.group, "tuples=" + std::to_string(r.tuples),
                                 "searched=" + std::to_string(r.searched)};
    if (!r.violations.empty()) {
      bad += r.violations.size();
      row.push_back("violations=" + csv(r.violations, ";"));
    }
    row.push_back(r.violations.empty() ? "OK" : "FAIL");
    em.record(std::move(row));
  }
  em.line("BRIDGE: groups=" + std::to_string(groups.size()) + " violations=" + std::to_string(bad) + " " +
          (bad ? "FAIL" : "OK"));
  return bad ? kNegative : kOk;
}

int cmd_catalog(Emitter& em, std::size_t max_order, std::size_t cap, const std::string& export_dir) {
  for (const auto& name : group::catalog_names()) {
    auto spec = group::catalog_spec(name);
    auto g = spec.build(cap);
    if (g.order() > max_order) continue;
    em.record({"GROUP", name, "order=" + std::to_string(g.order()), "degree=" + std::to_string(g.degree())});
    if (!export_dir.empty()) {
      std::filesystem::create_directories(export_dir);
      std::ofstream f(std::filesystem::path(export_dir) / (name + ".grp"));
      if (!f) throw UsageError("cannot write into " + export_dir);
      group::write_group_spec(f, spec);
    }
  }
  return kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"coset partition lab"};
  app.footer(kRecordHelp);
  app.require_subcommand(1);

  Common common;
  GroupRef ref;

  Int max_order = 1440;
  int stage = 2;
  bool verbose = false;
  auto* ta = app.add_subcommand("theorem-a", "Egyptian-fraction case analysis for all orders below --max");
  ta->add_option("--max", max_order, "Exclusive upper bound on the group order")->check(CLI::Range(3, 10000));
  ta->add_option("--stage", stage, "1: report stage-1 survivors; 2: survivors of all filters")->check(CLI::Range(1, 2));
  ta->add_flag("--verbose", verbose, "Every order and every candidate tuple");
  add_common(ta, common);

  std::vector<Int> tuple;
  std::size_t max_len = 8;
  bool no_shortcuts = false;
  auto* zh = app.add_subcommand("zharmonic", "Decide whether integer moduli admit pairwise disjoint progressions");
  zh->add_option("moduli", tuple, "Moduli a_1 ... a_n (each >= 2)")->required();
  zh->add_option("--max-len", max_len, "Tuple length cap")->check(CLI::PositiveNumber);
  zh->add_flag("--no-shortcuts", no_shortcuts, "Residue search only");
  add_common(zh, common);

  Int lo = 2, hi = 12;
  std::size_t min_len = 2, grid_max_len = 4;
  auto* zg = app.add_subcommand("zgrid", "Classify every tuple on an integer grid");
  zg->add_option("--lo", lo, "Smallest entry");
  zg->add_option("--hi", hi, "Largest entry");
  zg->add_option("--min-len", min_len, "Shortest tuple");
  zg->add_option("--max-len", grid_max_len, "Longest tuple");
  zg->add_flag("--no-shortcuts", no_shortcuts, "Residue search only");
  add_common(zg, common);

  auto* gh = app.add_subcommand("gharmonic", "Search for a harmonic subgroup configuration with given indices");
  add_group_ref(gh, ref, false);
  gh->add_option("indices", tuple, "Indices a_1 ... a_n")->required();
  add_common(gh, common);

  bool force = false;
  auto* hs = app.add_subcommand("hsc", "Check the Herzog-Schoenheim conjecture for a group");
  add_group_ref(hs, ref, true);
  hs->add_flag("--force-search", force, "Skip the arithmetic stage and search every proper subgroup");
  add_common(hs, common);

  std::size_t triple_limit = lemmas::HarnessOptions{}.main_triple_limit;
  auto* lm = app.add_subcommand("lemmas", "Run the subgroup-product lemma harness");
  add_group_ref(lm, ref, true);
  lm->add_option("--main-triple-limit", triple_limit, "Largest lattice for three-subgroup main-lemma families");
  add_common(lm, common);

  std::size_t bridge_len = 4;
  auto* br = app.add_subcommand("bridge", "Check that G-harmonic divisor tuples are Z-harmonic");
  add_group_ref(br, ref, true);
  br->add_option("--max-len", bridge_len, "Longest divisor tuple")->check(CLI::Range(1, 6));
  add_common(br, common);

  std::string export_dir;
  std::size_t catalog_max = 1000000;
  auto* ct = app.add_subcommand("catalog", "List the built-in groups");
  ct->add_option("--max-order", catalog_max, "Largest order listed");
  ct->add_option("--export", export_dir, "Write one group file per listed group into this directory");
  add_common(ct, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  Emitter em(common.format == "table");
  int code = kOk;
  try {
    std::size_t cap = resolve_cap(common);
    if (ta->parsed()) {
      code = cmd_theorem_a(em, max_order, stage, verbose, common.jobs);
    } else if (zh->parsed()) {
      code = cmd_zharmonic(em, tuple, max_len, !no_shortcuts);
    } else if (zg->parsed()) {
      code = cmd_zgrid(em, lo, hi, min_len, grid_max_len, !no_shortcuts, common.jobs);
    } else if (gh->parsed()) {
      auto groups = load_groups(ref, cap, false);
      code = cmd_gharmonic(em, *groups.front(), tuple);
    } else if (hs->parsed()) {
      auto groups = load_groups(ref, cap, true);
      code = cmd_hsc(em, groups, force, cap, !ref.all);
    } else if (lm->parsed()) {
      code = cmd_lemmas(em, load_groups(ref, cap, true), triple_limit, common.jobs);
    } else if (br->parsed()) {
      code = cmd_bridge(em, load_groups(ref, cap, true), bridge_len, common.jobs);
    } else if (ct->parsed()) {
      code = cmd_catalog(em, catalog_max, cap, export_dir);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kUsage;
  } catch (const ResourceError& e) {
    err << "resource cap: " << e.what() << '\n';
    return kResource;
  } catch (const std::overflow_error& e) {
    err << "overflow: " << e.what() << '\n';
    return kResource;
  }

  auto text = em.render();
  out << text;
  if (!common.out_path.empty()) {
    std::ofstream f(common.out_path, std::ios::binary);
    if (!f) {
      err << "usage error: cannot write " << common.out_path << '\n';
      return kUsage;
    }
    f << text;
  }
  return code;
}

}  // namespace hsc::cli

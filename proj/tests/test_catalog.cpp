#include <doctest.h>

#include <filesystem>
#include <map>
#include <sstream>
#include <string>

#include "hsc/catalog.hpp"
#include "hsc/error.hpp"

namespace gr = hsc::group;

namespace {

gr::GroupSpec parse(const std::string& text) {
  std::istringstream in(text);
  return gr::parse_group_spec(in);
}

}  // namespace

TEST_SUITE("catalog") {
  TEST_CASE("group file format") {
    auto s3 = parse("degree 3\nname S3\n1 0 2\n1 2 0\n");
    CHECK(s3.name == "S3");
    CHECK(s3.degree == 3);
    CHECK(s3.build().order() == 6);
    auto commented = parse("# a comment\ndegree 4   # trailing\n\nname Klein four\n1 0 3 2\n2 3 0 1\n");
    CHECK(commented.name == "Klein four");
    CHECK(commented.build().order() == 4);
    auto trivial = parse("degree 2\nname E\n");
    CHECK(trivial.build().order() == 1);
  }

  TEST_CASE("group file errors") {
    CHECK_THROWS_AS(parse(""), hsc::UsageError);
    CHECK_THROWS_AS(parse("name S3\ndegree 3\n"), hsc::UsageError);
    CHECK_THROWS_AS(parse("degree 3\n1 0 2\n"), hsc::UsageError);
    CHECK_THROWS_AS(parse("degree 3\nname X\n1 0\n"), hsc::UsageError);
    CHECK_THROWS_AS(parse("degree 3\nname X\n1 0 3\n"), hsc::UsageError);
    CHECK_THROWS_AS(parse("degree 3\nname X\n1 1 0\n"), hsc::UsageError);
    CHECK_THROWS_AS(parse("degree 3\nname X\n1 a 0\n"), hsc::UsageError);
    CHECK_THROWS_AS(parse("degree 0\nname X\n"), hsc::UsageError);
    CHECK_THROWS_AS(gr::read_group_file("/nonexistent/x.grp"), hsc::UsageError);
  }

  TEST_CASE("write and parse round trip") {
    for (const auto& name : gr::catalog_names()) {
      auto spec = gr::catalog_spec(name);
      std::ostringstream os;
      gr::write_group_spec(os, spec);
      auto back = parse(os.str());
      CHECK(back.name == spec.name);
      CHECK(back.degree == spec.degree);
      CHECK(back.generators == spec.generators);
    }
  }

  TEST_CASE("shipped group files match the built-in catalog") {
    const std::filesystem::path dir = std::filesystem::path(HSC_DATA_DIR) / "groups";
    std::size_t files = 0;
    for (const auto& name : gr::catalog_names()) {
      auto path = dir / (name + ".grp");
      REQUIRE_MESSAGE(std::filesystem::exists(path), path.string());
      auto f = gr::read_group_file(path);
      auto b = gr::catalog_spec(name);
      CHECK(f.name == b.name);
      CHECK(f.degree == b.degree);
      CHECK(f.generators == b.generators);
      ++files;
    }
    std::size_t on_disk = 0;
    for (const auto& e : std::filesystem::directory_iterator(dir)) on_disk += e.path().extension() == ".grp";
    CHECK(on_disk == files);
  }

  TEST_CASE("catalog orders") {
    std::map<std::string, std::size_t> expected{{"S3", 6},   {"S4", 24},      {"A4", 12},    {"A5", 60},
                                                {"Q8", 8},   {"C2xC2xC2", 8}, {"C2xA4", 24}, {"S3xC4", 24},
                                                {"C60", 60}, {"C120", 120},   {"D30", 60},   {"D3", 6}};
    for (const auto& [name, order] : expected) {
      INFO(name);
      CHECK(gr::catalog_spec(name).build().order() == order);
    }
    for (std::size_t n = 3; n <= 30; ++n) CHECK(gr::dihedral(n).build().order() == 2 * n);
    CHECK(gr::catalog_names().size() == 120 + 28 + 8);
    CHECK(gr::is_catalog_name("C60"));
    CHECK_FALSE(gr::is_catalog_name("C121"));
    CHECK_FALSE(gr::is_catalog_name("D2"));
    CHECK_FALSE(gr::is_catalog_name("C0"));
    CHECK_FALSE(gr::is_catalog_name("S5"));
    CHECK_THROWS_AS(gr::catalog_spec("S5"), hsc::UsageError);
  }

  TEST_CASE("structure of a few catalog groups") {
    auto q8 = gr::catalog_spec("Q8").build();
    int involutions = 0;
    for (int x = 1; x < 8; ++x) involutions += q8.mul(x, x) == 0;
    CHECK(involutions == 1);
    auto e8 = gr::catalog_spec("C2xC2xC2").build();
    for (int x = 0; x < 8; ++x) CHECK(e8.mul(x, x) == 0);
    auto a5 = gr::catalog_spec("A5").build();
    for (int x = 0; x < 60; ++x) {
      int sign = 0;
      const auto& im = a5.element(x).images();
      for (std::size_t i = 0; i < im.size(); ++i) {
        for (std::size_t j = i + 1; j < im.size(); ++j) sign += im[i] > im[j];
      }
      CHECK(sign % 2 == 0);
    }
    for (const auto& g : gr::catalog_groups(120)) CHECK(g->verify_axioms());
    CHECK(gr::catalog_groups(8).size() == 8 + 3 + 2);
  }

  TEST_CASE("direct products") {
    auto p = gr::direct_product(gr::symmetric(3), gr::cyclic(4));
    CHECK(p.name == "S3xC4");
    CHECK(p.build().order() == 24);
  }
}

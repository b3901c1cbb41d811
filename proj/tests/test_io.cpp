#include <doctest.h>

#include <random>

#include "fpn_support.hpp"
#include "support.hpp"
#include "wachlab/errors.hpp"
#include "wachlab/io/format.hpp"
#include "wachlab/io/report.hpp"

using namespace wachlab;

namespace {

const char* kUnit = "filmod v1 p=3 dim=1\nphi:\n1/1\nN:\n0/1\nfil:\nlevel=0 span=1/1\n";

int parse_error_line(const std::string& text, bool wach_format) {
  try {
    if (wach_format)
      (void)io::parse_wach(text);
    else
      (void)io::parse_filmod(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("filmod round trips") {
  const fpn::FilPhiNModule unit = io::parse_filmod(kUnit);
  CHECK(unit == fpn::unit_object(3));
  CHECK(io::serialize(unit) == kUnit);

  std::mt19937_64 rng(0x10);
  for (int t = 0; t < 60; ++t) {
    const fpn::FilPhiNModule d = testsupport::random_module(rng, t % 2 ? 3 : 5);
    const std::string text = io::serialize(d);
    const fpn::FilPhiNModule back = io::parse_filmod(text);
    CHECK(back == d);
    CHECK(io::serialize(back) == text);
  }
}

TEST_CASE("filmod comments, blank lines and integer shorthand") {
  const std::string text =
      "# unit object\nfilmod v1 p=3 dim=1\n\nphi:\n  1\nN:\n0\n# flag\nfil:\nlevel=0 span=1\n";
  CHECK(io::parse_filmod(text) == fpn::unit_object(3));
}

TEST_CASE("filmod invariant violations name the invariant") {
  const std::string text =
      "filmod v1 p=3 dim=2\nphi:\n1/1 0/1\n0/1 3/1\nN:\n1/1 0/1\n0/1 0/1\nfil:\nlevel=0 span=1,0;0,1\n";
  try {
    (void)io::parse_filmod(text);
    FAIL("expected an invariant violation");
  } catch (const InvariantViolation& e) {
    CHECK(e.invariant() == "N nilpotent");
  }
}

TEST_CASE("filmod syntax errors carry line and column") {
  CHECK(parse_error_line("filmod v2 p=3 dim=1\n", false) == 1);
  CHECK(parse_error_line("filmod v1 p=3 dim=1\nphi:\n1/1 2/1\nN:\n0\nfil:\n", false) == 3);
  CHECK(parse_error_line("filmod v1 p=3 dim=1\nphi:\n1/0\nN:\n0\nfil:\nlevel=0 span=1\n", false) == 3);
  CHECK(parse_error_line("filmod v1 p=3 dim=1\nphi:\n1\nN:\n0\nfil:\nlevel=x span=1\n", false) == 7);
  // End of input is reported one past the last line.
  CHECK(parse_error_line("filmod v1 p=3 dim=1\nphi:\n1\nN:\n0\n", false) == 6);
  CHECK(parse_error_line(std::string(kUnit) + "extra\n", false) == 8);
  try {
    (void)io::parse_filmod("filmod v1 p=3 dim=1\nphi:\n1/1 abc\n");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() >= 1);
  }
}

TEST_CASE("wach round trips are bit exact") {
  const padic::RingParams params(3, 8, 16);
  for (auto [i, j] : std::vector<std::pair<int, int>>{{1, 0}, {2, 1}, {3, 0}, {4, 3}}) {
    const wach::WachModule w = wach::build_standard_wach(i, j, params);
    const std::string text = io::serialize(w);
    const wach::WachModule back = io::parse_wach(text);
    CHECK(back == w);
    CHECK(io::serialize(back) == text);
  }
  std::mt19937_64 rng(0x11);
  const padic::RingParams small(5, 4, 6);
  for (int t = 0; t < 10; ++t) {
    // Any matrices parse; the format does not check the Wach relations.
    const wach::WachModule w(testsupport::random_matrix(rng, small, 2, 2), testsupport::random_matrix(rng, small, 2, 2),
                             testsupport::random_matrix(rng, small, 2, 2), wach::default_chi0(small));
    CHECK(io::parse_wach(io::serialize(w)) == w);
  }
}

TEST_CASE("wach series tokens") {
  const std::string header = "wach v1 p=3 Np=2 Mx=3 rank=1 chi0=4\n";
  const wach::WachModule w = io::parse_wach(header + "P:\n[1,2]\nT:\n[ 1 ]\nG:\n[10, -1, 0]\n");
  CHECK(w.phi().at(0, 0) == padic::TruncSeries::from_integers(w.params(), {1, 2}));
  CHECK(w.gamma().at(0, 0) == padic::TruncSeries::from_integers(w.params(), {1, 8}));
  CHECK(parse_error_line(header + "P:\n[1, 2, 3, 4]\nT:\n[1]\nG:\n[1]\n", true) == 3);
  CHECK(parse_error_line(header + "P:\n[1, 2\nT:\n[1]\nG:\n[1]\n", true) == 3);
  CHECK(parse_error_line(header + "P:\n[1]\nT:\n[1]\n", true) == 6);
  CHECK(parse_error_line("wach v1 p=4 Np=2 Mx=3 rank=1 chi0=4\n", true) == 1);
  CHECK(parse_error_line("wach v1 p=3 Np=2 Mx=3 rank=1\n", true) == 1);
  CHECK_THROWS_AS(io::parse_wach("wach v1 p=3 Np=2 Mx=3 rank=1 chi0=3\nP:\n[1]\nT:\n[1]\nG:\n[1]\n"),
                  InvalidCharacterValue);
}

TEST_CASE("vectors and rationals") {
  CHECK(io::format_rational(mpq_class(3)) == "3/1");
  CHECK(io::format_rational(mpq_class(-1, 3)) == "-1/3");
  const rational::QMatrix v = io::parse_vectors("1,0;1/2,3", 2);
  CHECK(v.cols() == 2);
  CHECK(v(0, 1) == mpq_class(1, 2));
  CHECK(io::parse_vectors(io::format_vectors(v), 2) == v);
  CHECK(io::parse_vectors("", 3).cols() == 0);
  CHECK_THROWS_AS(io::parse_vectors("1,2,3", 2), ParseError);
}

TEST_CASE("report exit codes") {
  io::Report r("demo");
  CHECK(r.exit_code() == io::kPass);
  r.add("info", io::Status::Info, "note");
  r.add("a", io::Status::Pass);
  CHECK(r.exit_code() == io::kPass);
  r.add("b", io::Status::Undecided, "needs more precision");
  CHECK(r.exit_code() == io::kUndecided);
  auto& item = r.add("c", io::Status::Fail, "broken");
  item.witness = "1,0";
  item.fields.emplace_back("k", "two words");
  CHECK(r.exit_code() == io::kFail);

  const std::string machine = r.render_machine();
  CHECK(machine.find("command=demo check=c status=fail k=two_words witness=1,0") != std::string::npos);
  CHECK(machine.find("command=demo result=fail exit=1") != std::string::npos);
  const std::string text = r.render_text();
  CHECK(text.find("broken") != std::string::npos);
  CHECK(text.find("1,0") != std::string::npos);
}

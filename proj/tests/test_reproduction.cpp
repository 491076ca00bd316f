#include <doctest.h>

#include <set>

#include "nilj/reproduction.hpp"

using namespace nilj;

TEST_CASE("reproduction report") {
  const FixtureSet fx = load_fixtures(default_fixture_dir());
  const Report first = reproduce(fx);
  CHECK(first.ok());
  CHECK(first.count(CheckStatus::Fail) == 0);

  std::set<std::string> errata;
  for (const Check& c : first.checks)
    if (c.status == CheckStatus::Erratum) errata.insert(c.section + "/" + c.id);
  CHECK(errata.contains("contractions/j4/phi03-phi06.fam"));
  CHECK(errata.contains("contractions/j4/phi04-phi08.fam"));
  CHECK(errata.contains("deformations/duplicate/4-phi04-mu2.def"));
  CHECK(errata.contains("real/orbit-phi5"));
  CHECK(errata.contains("real/phi4-phi5-isomorphic"));

  const std::string text = first.text();
  CHECK(text.find("== errata ==") != std::string::npos);
  CHECK(text.find("3/3") != std::string::npos);
  CHECK(text.find("SINGULAR") != std::string::npos);

  // Same input, same bytes.
  CHECK(reproduce(fx).json() == first.json());
}

#include <catch2/catch_amalgamated.hpp>

#include "efog/validate.hpp"
#include "helpers.hpp"

using namespace efog;
using efog::test::must_read;
using efog::test::read_fixture;

namespace {

int count_with(const std::vector<Diagnostic>& ds, Severity sev,
               const std::string& needle) {
  int n = 0;
  for (const Diagnostic& d : ds)
    if (d.severity == sev && d.message.find(needle) != std::string::npos) ++n;
  return n;
}

}  // namespace

TEST_CASE("fixture grammars validate cleanly") {
  for (const char* name : {"latin.efog", "bulgarian.efog", "universal20.efog",
                           "nonecpo.efog"}) {
    Grammar g = read_fixture(name);
    auto ds = validate_grammar(g);
    INFO(name);
    CHECK(ds.empty());
  }
}

TEST_CASE("a start symbol without any rule is an error") {
  Grammar g = must_read("start: q. a ==> b. b ==> [x].");
  auto ds = validate_grammar(g);
  CHECK(count_with(ds, Severity::error, "start symbol 'q' has no rule") == 1);
  CHECK(has_errors(ds));
}

TEST_CASE("start matching via unification counts as having a rule") {
  // np(Case) covers a ground start np(nom).
  Grammar g = must_read("start: np(nom). np(Case) ==> d(Case). d(nom) ==> [the].");
  CHECK(count_with(validate_grammar(g), Severity::error, "has no rule") == 0);
}

TEST_CASE("lp patterns that match nothing are warnings") {
  Grammar g = must_read("a ==> b, c. b ==> [x]. c ==> [y]. lp: b < q.");
  auto ds = validate_grammar(g);
  CHECK(count_with(ds, Severity::warning, "lp pattern 'q' matches nothing") == 1);
  CHECK_FALSE(has_errors(ds));

  // Patterns inside position atoms are checked too, including the node side.
  Grammar h = must_read("a ==> b, c. b ==> [x]. c ==> [y]. lp: first(z, a).");
  CHECK(count_with(validate_grammar(h), Severity::warning, "'z' matches nothing") == 1);
}

TEST_CASE("mother variables missing from every daughter are warnings") {
  Grammar g = must_read("a(K) ==> b. b ==> [x].");
  auto ds = validate_grammar(g);
  CHECK(count_with(ds, Severity::warning, "mother variable K occurs in no daughter") == 1);

  Grammar h = must_read("a(K) ==> b(K). b(sg) ==> [x].");
  CHECK(validate_grammar(h).empty());
}

TEST_CASE("unreachable rules and lexicon entries are warnings") {
  Grammar g = must_read("a ==> b. b ==> [x]. q ==> r. r ==> [y].");
  auto ds = validate_grammar(g);
  CHECK(count_with(ds, Severity::warning, "unreachable") == 2);
  CHECK(count_with(ds, Severity::warning, "rule for 'q'") == 1);
  CHECK(count_with(ds, Severity::warning, "lexical entry for 'r'") == 1);

  // Reachability follows unification through features.
  Grammar h = must_read("s ==> np(sg). np(Case) ==> d(Case). d(sg) ==> [the].");
  CHECK(validate_grammar(h).empty());
}

TEST_CASE("reachability treats non-contiguous daughters like contiguous ones") {
  Grammar g = must_read("s ==> #vp. vp ==> v. v ==> [run].");
  CHECK(validate_grammar(g).empty());
}

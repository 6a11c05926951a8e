// End-to-end tests for the command-line driver.  Each test invokes the real
// binary (path injected by the build) and checks exit status plus captured
// stdout/stderr, so the process-level contract stays pinned down: exit 0 on
// success, 1 for a clean linguistic "no", 2 for usage or input errors.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"

namespace {

struct cli_result {
  int status = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs the driver with the given argument string, capturing both streams.
// Decodes the shell's wait status into the child's exit code.
cli_result run_cli(const std::string& args) {
  static int counter = 0;
  std::string tag = std::to_string(++counter);
  std::string out_path = "cli_out_" + tag + ".txt";
  std::string err_path = "cli_err_" + tag + ".txt";
  std::string cmd = std::string(EFOG_CLI_PATH) + " " + args + " >" + out_path +
                    " 2>" + err_path;
  int raw = std::system(cmd.c_str());
  cli_result r;
  REQUIRE(raw != -1);
#if defined(_WIN32)
  r.status = raw;
#else
  REQUIRE(WIFEXITED(raw));
  r.status = WEXITSTATUS(raw);
#endif
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return r;
}

std::string quoted(const std::string& s) { return "'" + s + "'"; }

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::string fixture(const std::string& name) {
  return efog::test::fixture_path(name);
}

}  // namespace

TEST_CASE("cli: parse accepts a grammatical sentence with exit 0") {
  cli_result r = run_cli("parse -g " + fixture("bulgarian.efog") + " " +
                         quoted("ivan se brasna"));
  CHECK(r.status == 0);
  CHECK(r.err.empty());
  CHECK(r.out == "s(np(ivan), vp(part(se), v(brasna)))\n");
}

TEST_CASE("cli: parse prints every parse, sorted, one per line") {
  // A deliberately order-free grammar with two derivations per string.
  std::string path = "cli_ambig.efog";
  {
    std::ofstream out(path);
    out << "s ==> a, b.\n";
    out << "s ==> b, a.\n";
    out << "a ==> [x].\n";
    out << "b ==> [y].\n";
  }
  cli_result r = run_cli("parse -g " + path + " " + quoted("x y"));
  std::remove(path.c_str());
  CHECK(r.status == 0);
  std::vector<std::string> lines = lines_of(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "s(a(x), b(y))");
  CHECK(lines[1] == "s(a(x), b(y))");
  CHECK(std::is_sorted(lines.begin(), lines.end()));
}

TEST_CASE("cli: parse rejects an ungrammatical sentence with exit 1") {
  cli_result r = run_cli("parse -g " + fixture("bulgarian.efog") + " " +
                         quoted("se brasna"));
  CHECK(r.status == 1);
  CHECK(r.out == "no parse\n");
  CHECK(r.err.empty());
}

TEST_CASE("cli: parse reports unknown tokens on stderr with exit 1") {
  cli_result r = run_cli("parse -g " + fixture("bulgarian.efog") + " " +
                         quoted("ivan se xyzzy"));
  CHECK(r.status == 1);
  CHECK(r.out.empty());
  CHECK(r.err.find("unknown token: xyzzy") != std::string::npos);
}

TEST_CASE("cli: parse and parse --oracle agree on fixture sentences") {
  struct probe {
    const char* grammar;
    const char* sentence;
  };
  const probe probes[] = {
      {"bulgarian.efog", "ivan se brasna"},
      {"bulgarian.efog", "se brasna"},
      {"bulgarian.efog", "vcera se brasna ivan"},
      {"latin.efog", "puella amat bona puerum parvum"},
      {"latin.efog", "amat amat"},
      {"universal20.efog", "noun adj num dem"},
      {"universal20.efog", "dem adj num noun"},
  };
  for (const probe& p : probes) {
    std::string base = "-g " + fixture(p.grammar) + " " + quoted(p.sentence);
    cli_result chart = run_cli("parse " + base);
    cli_result oracle = run_cli("parse --oracle " + base);
    INFO(p.grammar << ": " << p.sentence);
    CHECK(chart.status == oracle.status);
    CHECK(chart.out == oracle.out);
  }
}

TEST_CASE("cli: trees prints the ordering domains under each parse") {
  cli_result r = run_cli("trees -g " + fixture("bulgarian.efog") + " " +
                         quoted("vcera se brasna ivan"));
  CHECK(r.status == 0);
  CHECK(r.out.find("order s@0-3:") != std::string::npos);
  CHECK(r.out.find("s(") == 0);
}

TEST_CASE("cli: parse --format trees matches the trees subcommand") {
  std::string base = "-g " + fixture("bulgarian.efog") + " " +
                     quoted("ivan se brasna vcera");
  cli_result via_format = run_cli("parse --format trees " + base);
  cli_result via_trees = run_cli("trees " + base);
  CHECK(via_format.status == 0);
  CHECK(via_format.status == via_trees.status);
  CHECK(via_format.out == via_trees.out);
}

TEST_CASE("cli: generate lists the whole language, sorted and stable") {
  cli_result first = run_cli("generate -g " + fixture("latin.efog"));
  CHECK(first.status == 0);
  std::vector<std::string> lines = lines_of(first.out);
  CHECK(lines.size() == 120);
  CHECK(std::is_sorted(lines.begin(), lines.end()));
  CHECK(std::unique(lines.begin(), lines.end()) == lines.end());

  // Byte-for-byte determinism across runs.
  cli_result second = run_cli("generate -g " + fixture("latin.efog"));
  CHECK(second.out == first.out);
}

TEST_CASE("cli: generate emits the exact clitic-placement language") {
  cli_result r = run_cli("generate -g " + fixture("bulgarian.efog"));
  CHECK(r.status == 0);
  const std::string expected =
      "brasna se\n"
      "brasna se ivan\n"
      "brasna se ivan vcera\n"
      "brasna se vcera\n"
      "brasna se vcera ivan\n"
      "ivan se brasna\n"
      "ivan se brasna vcera\n"
      "ivan vcera se brasna\n"
      "vcera ivan se brasna\n"
      "vcera se brasna\n"
      "vcera se brasna ivan\n";
  CHECK(r.out == expected);
}

TEST_CASE("cli: generate fails loudly when the sentence cap is hit") {
  cli_result r = run_cli("generate -g " + fixture("latin.efog") + " --max 5");
  CHECK(r.status == 2);
  CHECK(r.out.empty());
  CHECK(r.err.find("sentence cap exceeded") != std::string::npos);
}

TEST_CASE("cli: check-ecpo verdicts and exit codes") {
  cli_result good = run_cli("check-ecpo -g " + fixture("bulgarian.efog"));
  CHECK(good.status == 0);
  CHECK(good.out.find("verdict: ECPO") != std::string::npos);
  CHECK(good.out.find("skipped: rule has non-contiguous daughters") !=
        std::string::npos);

  cli_result bad = run_cli("check-ecpo -g " + fixture("nonecpo.efog"));
  CHECK(bad.status == 1);
  CHECK(bad.out.find("verdict: not ECPO") != std::string::npos);
  CHECK(bad.out.find("witness: rule 0") != std::string::npos);
  CHECK(bad.out.find("permitted: [b c d] [d c b]") != std::string::npos);
}

TEST_CASE("cli: validate reports ok for clean fixtures") {
  for (const char* name :
       {"latin.efog", "bulgarian.efog", "universal20.efog", "nonecpo.efog"}) {
    cli_result r = run_cli("validate -g " + fixture(name));
    INFO(name);
    CHECK(r.status == 0);
    CHECK(r.out == "ok\n");
  }
}

TEST_CASE("cli: validate surfaces semantic errors with exit 1") {
  std::string path = "cli_bad_start.efog";
  {
    std::ofstream out(path);
    out << "start: q.\n";
    out << "s ==> a, b.\n";
    out << "a ==> [x].\n";
    out << "b ==> [y].\n";
  }
  cli_result r = run_cli("validate -g " + path);
  std::remove(path.c_str());
  CHECK(r.status == 1);
  CHECK(r.out.find("start symbol 'q' has no rule") != std::string::npos);
}

TEST_CASE("cli: validate prints warnings without failing") {
  std::string path = "cli_warn.efog";
  {
    std::ofstream out(path);
    out << "s ==> a, b.\n";
    out << "a ==> [x].\n";
    out << "b ==> [y].\n";
    out << "c ==> [z].\n";  // unreachable
  }
  cli_result r = run_cli("validate -g " + path);
  std::remove(path.c_str());
  CHECK(r.status == 0);
  CHECK(r.out.find("unreachable") != std::string::npos);
}

TEST_CASE("cli: diff shows sentences private to each grammar") {
  // Same trees, but the second grammar drops the clitic-placement formulas,
  // so it accepts strictly more strings.
  std::string relaxed = "cli_relaxed.efog";
  {
    std::ofstream out(relaxed);
    out << "s ==> np, #vp.\n";
    out << "s ==> vp.\n";
    out << "vp ==> v(refl), part(refl), adv.\n";
    out << "vp ==> v(refl), part(refl).\n";
    out << "np ==> [ivan].\n";
    out << "v(refl) ==> [brasna].\n";
    out << "part(refl) ==> [se].\n";
    out << "adv ==> [vcera].\n";
  }
  std::string grammar = fixture("bulgarian.efog");
  cli_result r = run_cli("diff -g " + grammar + " " + relaxed);
  std::remove(relaxed.c_str());
  CHECK(r.status == 0);

  std::string first_header = "--- only in " + grammar;
  std::string second_header = "--- only in " + relaxed;
  std::size_t first_at = r.out.find(first_header);
  std::size_t second_at = r.out.find(second_header);
  REQUIRE(first_at != std::string::npos);
  REQUIRE(second_at != std::string::npos);
  CHECK(first_at < second_at);

  // The constrained grammar accepts nothing the relaxed one lacks.
  std::string first_section = r.out.substr(
      first_at + first_header.size() + 1, second_at - first_at - first_header.size() - 1);
  CHECK(first_section.empty());

  std::string second_section = r.out.substr(second_at + second_header.size() + 1);
  std::vector<std::string> extras = lines_of(second_section);
  CHECK(!extras.empty());
  CHECK(std::find(extras.begin(), extras.end(), "se brasna") != extras.end());
  CHECK(std::find(extras.begin(), extras.end(), "se brasna vcera") !=
        extras.end());
}

TEST_CASE("cli: identical grammars diff to two empty sections") {
  std::string g = fixture("universal20.efog");
  cli_result r = run_cli("diff -g " + g + " " + g);
  CHECK(r.status == 0);
  std::vector<std::string> lines = lines_of(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "--- only in " + g);
  CHECK(lines[1] == "--- only in " + g);
}

TEST_CASE("cli: usage and input errors exit 2") {
  SECTION("missing subcommand") {
    cli_result r = run_cli("");
    CHECK(r.status == 2);
  }
  SECTION("missing required sentence") {
    cli_result r = run_cli("parse -g " + fixture("latin.efog"));
    CHECK(r.status == 2);
  }
  SECTION("missing grammar flag") {
    cli_result r = run_cli("generate");
    CHECK(r.status == 2);
  }
  SECTION("nonexistent grammar file") {
    cli_result r = run_cli("parse -g no_such_file.efog " + quoted("a"));
    CHECK(r.status == 2);
    CHECK(r.err.find("cannot open file") != std::string::npos);
  }
  SECTION("grammar with syntax errors") {
    std::string path = "cli_broken.efog";
    {
      std::ofstream out(path);
      out << "s ==> a b\n";
    }
    cli_result r = run_cli("validate -g " + path);
    std::remove(path.c_str());
    CHECK(r.status == 2);
    CHECK(!r.err.empty());
  }
  SECTION("help exits 0") {
    cli_result r = run_cli("--help");
    CHECK(r.status == 0);
    CHECK(r.out.find("parse") != std::string::npos);
  }
}

TEST_CASE("cli: parse depth flag widens the tree search") {
  // Right-recursive rule: 'a' repeated n needs derivation depth n + 1.
  std::string path = "cli_deep.efog";
  {
    std::ofstream out(path);
    out << "s ==> a.\n";
    out << "s ==> a, s.\n";
    out << "a ==> [x].\n";
  }
  std::string sentence = quoted("x x x x x x x x x");  // depth 10 needed
  cli_result shallow = run_cli("parse -g " + path + " " + sentence);
  cli_result deep = run_cli("parse -g " + path + " --depth 12 " + sentence);
  std::remove(path.c_str());
  CHECK(shallow.status == 1);
  CHECK(deep.status == 0);
}

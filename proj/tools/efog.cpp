// Command-line front end: parse, generate, trees, check-ecpo, validate, diff.
// Exit codes: 0 accept / success, 1 reject (no parse, unknown token, not
// ECPO, validation errors), 2 usage or grammar errors.

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "efog/analysis.hpp"
#include "efog/chart.hpp"
#include "efog/oracle.hpp"
#include "efog/reader.hpp"
#include "efog/render.hpp"
#include "efog/validate.hpp"

namespace {

void print_diagnostics(const std::vector<efog::Diagnostic>& ds) {
  for (const efog::Diagnostic& d : ds) std::cerr << efog::to_string(d) << "\n";
}

// Loads a grammar or exits with code 2.
efog::Grammar load_grammar(const std::string& path) {
  efog::ReadResult r = efog::read_grammar_file(path);
  print_diagnostics(r.diagnostics);
  if (!r.ok()) std::exit(2);
  return std::move(*r.grammar);
}

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

// Accepts tokens either as separate arguments or as quoted strings.
std::vector<std::string> split_tokens(const std::vector<std::string>& args) {
  std::vector<std::string> tokens;
  for (const std::string& arg : args) {
    std::size_t i = 0;
    while (i < arg.size()) {
      while (i < arg.size() && std::isspace(static_cast<unsigned char>(arg[i]))) ++i;
      std::size_t start = i;
      while (i < arg.size() && !std::isspace(static_cast<unsigned char>(arg[i]))) ++i;
      if (i > start) tokens.push_back(arg.substr(start, i - start));
    }
  }
  return tokens;
}

struct ParseOutcome {
  std::vector<std::string> renderings;
  bool unknown_token = false;
  std::string message;
};

ParseOutcome run_parse(const efog::Grammar& g, const std::vector<std::string>& tokens,
                       bool oracle, int depth, int max_sentences, bool with_orders) {
  ParseOutcome out;
  if (oracle) {
    efog::GenerationConfig cfg{depth, max_sentences};
    efog::OracleParse r = efog::oracle_recognize(g, tokens, cfg);
    for (const efog::Witness& w : r.witnesses)
      out.renderings.push_back(efog::render_parse(*w.tree, w.lin, with_orders));
    return out;
  }
  efog::ParseOptions opt;
  opt.max_depth = depth;
  efog::ParseResult r = efog::parse(g, tokens, opt);
  if (!r.ok) {
    for (const efog::Diagnostic& d : r.diagnostics) {
      if (d.message.rfind("unknown token", 0) == 0) out.unknown_token = true;
      out.message += efog::to_string(d) + "\n";
    }
    return out;
  }
  for (const efog::Witness& w : r.forest.parses)
    out.renderings.push_back(efog::render_parse(*w.tree, w.lin, with_orders));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"order-free grammar engine"};
  app.require_subcommand(1);

  std::string grammar_path;
  std::string other_path;
  std::vector<std::string> sentence;
  int depth = 8;
  int max_sentences = 100000;
  bool use_oracle = false;
  std::string format = "plain";

  auto add_common = [&](CLI::App* sub, bool with_sentence) {
    sub->add_option("-g,--grammar", grammar_path, "grammar file")->required();
    sub->add_option("--depth", depth, "derivation depth bound");
    sub->add_option("--max", max_sentences, "cap on generated sentences");
    if (with_sentence)
      sub->add_option("sentence", sentence, "sentence tokens")->required();
  };

  CLI::App* cmd_parse = app.add_subcommand("parse", "parse a sentence");
  add_common(cmd_parse, true);
  cmd_parse->add_flag("--oracle", use_oracle, "use the brute-force engine");
  cmd_parse->add_option("--format", format, "plain or trees")
      ->check(CLI::IsMember({"plain", "trees"}));

  CLI::App* cmd_trees = app.add_subcommand("trees", "show derivations for a sentence");
  add_common(cmd_trees, true);
  cmd_trees->add_flag("--oracle", use_oracle, "use the brute-force engine");

  CLI::App* cmd_generate = app.add_subcommand("generate", "list the language");
  add_common(cmd_generate, false);
  cmd_generate->add_flag("--oracle", use_oracle,
                         "use the brute-force engine (generation always does)");

  CLI::App* cmd_ecpo = app.add_subcommand("check-ecpo", "constant-ordering check");
  cmd_ecpo->add_option("-g,--grammar", grammar_path, "grammar file")->required();

  CLI::App* cmd_validate = app.add_subcommand("validate", "static grammar checks");
  cmd_validate->add_option("-g,--grammar", grammar_path, "grammar file")->required();

  CLI::App* cmd_diff = app.add_subcommand("diff", "compare two languages");
  cmd_diff->add_option("-g,--grammar", grammar_path, "first grammar file")->required();
  cmd_diff->add_option("other", other_path, "second grammar file")->required();
  cmd_diff->add_option("--depth", depth, "derivation depth bound");
  cmd_diff->add_option("--max", max_sentences, "cap on generated sentences");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (cmd_parse->parsed() || cmd_trees->parsed()) {
    efog::Grammar g = load_grammar(grammar_path);
    bool with_orders = cmd_trees->parsed() || format == "trees";
    ParseOutcome r = run_parse(g, split_tokens(sentence), use_oracle, depth,
                               max_sentences, with_orders);
    if (!r.message.empty()) {
      std::cerr << r.message;
      return r.unknown_token ? 1 : 2;
    }
    if (r.renderings.empty()) {
      std::cout << "no parse\n";
      return 1;
    }
    std::sort(r.renderings.begin(), r.renderings.end());
    for (const std::string& line : r.renderings) std::cout << line << "\n";
    return 0;
  }

  if (cmd_generate->parsed()) {
    efog::Grammar g = load_grammar(grammar_path);
    efog::GenerationConfig cfg{depth, max_sentences};
    efog::LanguageResult lang = efog::generate_language(g, cfg);
    if (lang.cap_exceeded) {
      std::cerr << "error: sentence cap exceeded (--max " << max_sentences << ")\n";
      return 2;
    }
    std::vector<std::string> lines;
    lines.reserve(lang.sentences.size());
    for (const auto& s : lang.sentences) lines.push_back(join(s));
    std::sort(lines.begin(), lines.end());
    for (const std::string& line : lines) std::cout << line << "\n";
    return 0;
  }

  if (cmd_ecpo->parsed()) {
    efog::Grammar g = load_grammar(grammar_path);
    std::vector<efog::OrderingSet> sets;
    for (int i = 0; i < static_cast<int>(g.id_rules.size()); ++i) {
      efog::OrderingSetResult r = efog::permitted_orders(g, i);
      if (!r.set) {
        std::cout << "rule " << i << " (" << g.id_rules[i].mother.str()
                  << "): skipped: " << r.error << "\n";
        continue;
      }
      std::cout << "rule " << i << " (" << g.id_rules[i].mother.str() << "): "
                << r.set->permitted.size() << " permitted ordering(s)\n";
      sets.push_back(std::move(*r.set));
    }
    if (sets.empty()) {
      std::cout << "no analyzable rules; vacuously ECPO\n";
      return 0;
    }
    efog::EcpoVerdict v = efog::ecpo_check(sets);
    if (v.ecpo) {
      std::cout << "verdict: ECPO\npairs:";
      if (v.pairs.empty()) std::cout << " (none)";
      for (const auto& [a, b] : v.pairs) std::cout << " " << a.str() << "<" << b.str();
      std::cout << "\n";
      return 0;
    }
    std::cout << "verdict: not ECPO\n";
    if (!v.cycle.empty()) {
      std::cout << "forced precedence cycle:";
      for (const efog::Term& t : v.cycle) std::cout << " " << t.str();
      std::cout << "\n";
    } else {
      const efog::OrderingSet* w = nullptr;
      for (const efog::OrderingSet& s : sets)
        if (s.rule == v.witness_rule) w = &s;
      std::cout << "witness: rule " << v.witness_rule << "\n";
      auto show = [&](const char* label, const std::set<std::vector<int>>& perms) {
        std::cout << label << ":";
        for (const std::vector<int>& p : perms) {
          std::cout << " [";
          for (std::size_t i = 0; i < p.size(); ++i)
            std::cout << (i ? " " : "") << w->daughters[p[i]].str();
          std::cout << "]";
        }
        std::cout << "\n";
      };
      if (w) {
        show("permitted", v.witness_permitted);
        show("pair-consistent", v.witness_consistent);
      }
    }
    return 1;
  }

  if (cmd_validate->parsed()) {
    efog::Grammar g = load_grammar(grammar_path);
    std::vector<efog::Diagnostic> ds = efog::validate_grammar(g);
    for (const efog::Diagnostic& d : ds) std::cout << efog::to_string(d) << "\n";
    if (ds.empty()) std::cout << "ok\n";
    return efog::has_errors(ds) ? 1 : 0;
  }

  if (cmd_diff->parsed()) {
    efog::Grammar g1 = load_grammar(grammar_path);
    efog::Grammar g2 = load_grammar(other_path);
    efog::GenerationConfig cfg{depth, max_sentences};
    efog::DiffResult d = efog::language_diff(g1, g2, cfg);
    if (d.cap_exceeded) {
      std::cerr << "error: sentence cap exceeded (--max " << max_sentences << ")\n";
      return 2;
    }
    auto dump = [&](const char* header, const std::set<std::vector<std::string>>& side) {
      std::cout << header << "\n";
      std::vector<std::string> lines;
      lines.reserve(side.size());
      for (const auto& s : side) lines.push_back(join(s));
      std::sort(lines.begin(), lines.end());
      for (const std::string& line : lines) std::cout << line << "\n";
    };
    dump(("--- only in " + grammar_path).c_str(), d.only_in_first);
    dump(("--- only in " + other_path).c_str(), d.only_in_second);
    return 0;
  }

  return 2;
}

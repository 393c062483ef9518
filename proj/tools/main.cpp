#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "koszul/report.hpp"

namespace {

const char* const kCommands[] = {
    "dual",       "hilbert",    "koszul-check",
    "nakayama",   "hdet",       "ore",
    "double-ore", "cy-ore",     "cy-double-ore",
    "cy-laurent", "cy-laurent-diagonal", "cy-iterated",
    "cy-iterated-laurent", "sweep"};

struct Cli {
  std::string file;
  koszul::report::Flags flags;
  std::vector<std::string> set_args;
  std::string auts_arg;
};

void add_common(CLI::App* cmd, Cli& cli) {
  cmd->add_option("file", cli.file, "presentation file")->required();
  cmd->add_option("--degree-bound", cli.flags.degree_bound,
                  "truncation degree for Hilbert series and Koszul checks");
  cmd->add_option("--search-bound", cli.flags.search_bound,
                  "exponent bound for witness searches");
  cmd->add_option("--field", cli.flags.field,
                  "coefficient field, q or F<p> (overrides the file)");
  cmd->add_option("--format", cli.flags.format, "output format, json or text");
  cmd->add_option("--aut", cli.flags.aut, "automorphism name");
  cmd->add_option("--sigma", cli.flags.sigma_name, "sigma block name");
  cmd->add_option("--tau", cli.flags.tau, "first diagonal automorphism");
  cmd->add_option("--xi", cli.flags.xi, "second diagonal automorphism");
  cmd->add_option("--p", cli.flags.p, "commutation scalar p (rational)");
  cmd->add_option("--auts", cli.auts_arg,
                  "comma-separated automorphism names, in order");
  cmd->add_option("--set", cli.set_args,
                  "bind a parameter, name=value (repeatable)");
  cmd->add_option("--command", cli.flags.sub, "subcommand for sweep");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-arithmetic engine for quadratic algebras: Koszul "
               "duals, Nakayama automorphisms, homological determinants, "
               "and Calabi-Yau criteria for skew extensions"};
  app.require_subcommand(1);
  Cli cli;
  std::string chosen;
  for (const char* name : kCommands) {
    auto* sub = app.add_subcommand(name, "");
    add_common(sub, cli);
    sub->callback([&chosen, name] { chosen = name; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (!cli.auts_arg.empty()) {
      std::stringstream ss(cli.auts_arg);
      std::string piece;
      while (std::getline(ss, piece, ','))
        if (!piece.empty()) cli.flags.auts.push_back(piece);
    }
    for (const auto& s : cli.set_args) {
      auto eq = s.find('=');
      if (eq == std::string::npos || eq == 0)
        throw koszul::report::InputError("--set expects name=value, got '" +
                                         s + "'");
      cli.flags.sets[s.substr(0, eq)] =
          koszul::parse_rational(s.substr(eq + 1));
    }

    std::ifstream in(cli.file);
    if (!in)
      throw koszul::report::InputError("cannot open file '" + cli.file + "'");
    std::stringstream buf;
    buf << in.rdbuf();

    auto doc = koszul::dsl::parse(buf.str());
    auto rep = koszul::report::run(chosen, doc, cli.flags);
    std::cout << koszul::report::render(rep, cli.flags.format);
    return 0;
  } catch (const koszul::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const koszul::report::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const koszul::EngineError& e) {
    if (std::string(e.kind()) == "UnboundParameter") {
      std::cerr << "input error: " << e.what() << "\n";
      return 1;
    }
    std::cerr << "engine error [" << e.kind() << "]: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

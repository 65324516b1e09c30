// crnmss: multistationarity analysis of mass-action reaction networks.
//
//   crnmss analyze FILE [--json] [--atoms-dir DIR] [--trace]
//   crnmss defone  FILE [--json] [--trace]
//   crnmss witness FILE [--json] [--seed N]
//   crnmss odes    FILE [--json]
//   crnmss atoms   FILE [--json]
//
// Exit codes: 0 analyzed, 2 input error, 3 containment budget exceeded.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "crnmss/crnmss.hpp"

namespace {

crnmss::NetworkDocument read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return crnmss::parse_network(buf.str());
}

int emit(const crnmss::CommandReport& rep, bool json) {
  if (json) std::cout << rep.json.dump(2) << "\n";
  else std::cout << rep.text;
  return rep.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multistationarity analysis of mass-action reaction networks"};
  app.require_subcommand(1);

  std::string path, atoms_dir;
  bool json = false, trace = false;
  std::optional<std::uint64_t> seed;

  auto* analyze = app.add_subcommand("analyze", "classify a network and report structure and verdict");
  auto* defone = app.add_subcommand("defone", "run the Deficiency One Algorithm");
  auto* witness = app.add_subcommand("witness", "rate constants and steady states for an embedded atom");
  auto* odes = app.add_subcommand("odes", "print the mass-action ODEs");
  auto* atoms = app.add_subcommand("atoms", "list one-reaction atoms among the non-flow reactions");
  for (auto* sub : {analyze, defone, witness, odes, atoms}) {
    sub->add_option("file", path, "network file")->required();
    sub->add_flag("--json", json, "machine-readable output");
  }
  analyze->add_option("--atoms-dir", atoms_dir, "directory of user atom files (*.crn)");
  analyze->add_flag("--trace", trace, "include the algorithm trace when it applies");
  defone->add_flag("--trace", trace, "print every step of the algorithm");
  witness->add_option("--seed", seed, "draw the inflow rate kX from this seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return crnmss::kExitInputError;
  }

  try {
    const auto doc = read_document(path);
    if (analyze->parsed()) {
      crnmss::ClassifyOptions opt;
      if (!atoms_dir.empty()) opt.user_atoms = crnmss::load_atom_catalog(atoms_dir);
      return emit(crnmss::analyze_report(doc, opt, trace), json);
    }
    if (defone->parsed()) return emit(crnmss::defone_report(doc, trace), json);
    if (witness->parsed()) return emit(crnmss::witness_report(doc, seed), json);
    if (odes->parsed()) return emit(crnmss::odes_report(doc), json);
    return emit(crnmss::atoms_report(doc), json);
  } catch (const crnmss::Error& e) {
    std::cerr << path << ": " << e.what() << "\n";
    return e.code() == crnmss::ErrorCode::BudgetExceeded ? crnmss::kExitBudget : crnmss::kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << path << ": " << e.what() << "\n";
    return crnmss::kExitInputError;
  }
}

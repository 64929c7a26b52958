#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ppht/construct.hpp"
#include "ppht/decide.hpp"
#include "ppht/matrix.hpp"
#include "ppht/oracle.hpp"
#include "ppht/phylogeny.hpp"

namespace ppht::cli {

namespace detail {

inline genotype_matrix read_genotypes(const std::string& path, std::istream& in) {
  if (path.empty() || path == "-") return parse_genotype_matrix(in);
  std::ifstream file(path);
  if (!file) throw error("cannot open input file: " + path);
  return parse_genotype_matrix(file);
}

inline void write_output(const std::string& path, std::ostream& out,
                         const std::string& text) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw error("cannot open output file: " + path);
  file << text;
}

}  // namespace detail

// Exit codes: 0 accept/agree, 1 reject/disagree, 2 usage or input error.
inline int run(const std::vector<std::string>& args, std::istream& in,
               std::ostream& out, std::ostream& err) {
  CLI::App app{"perfect phylogeny haplotyping: decide, phase and build trees "
               "for genotype matrices over {0,1,2}"};
  app.require_subcommand(1);

  std::string input = "-";
  std::string output;
  std::string route = "parity";
  bool directed = false;
  std::uint64_t seed = 0;
  std::size_t gen_rows = 1;
  std::size_t gen_cols = 1;
  std::size_t cap = default_oracle_cap;

  auto add_input = [&](CLI::App* cmd) {
    cmd->add_option("input", input, "input file with one genotype row per line; '-' for stdin");
  };

  CLI::App* decide_cmd = app.add_subcommand(
      "decide", "print YES, or NO with a witness, and exit 0/1 accordingly");
  add_input(decide_cmd);
  decide_cmd->add_flag("--directed", directed, "decide the directed problem");
  decide_cmd->add_option("--route", route, "cycle criterion implementation")
      ->check(CLI::IsMember({"parity", "bipartite"}));

  CLI::App* solve_cmd = app.add_subcommand(
      "solve", "print an explaining haplotype matrix (two rows per genotype)");
  add_input(solve_cmd);
  solve_cmd->add_flag("--directed", directed, "solve the directed problem");
  solve_cmd->add_option("--output", output, "write the matrix to a file");

  CLI::App* tree_cmd = app.add_subcommand(
      "tree", "solve, build the phylogenetic tree and print it as DOT");
  add_input(tree_cmd);
  tree_cmd->add_flag("--directed", directed, "root the tree at the all-zero haplotype");
  tree_cmd->add_option("--output", output, "write the DOT text to a file");

  CLI::App* oracle_cmd = app.add_subcommand(
      "oracle", "decide by exhaustive search over all resolutions (small inputs)");
  add_input(oracle_cmd);
  oracle_cmd->add_flag("--directed", directed, "decide the directed problem");
  oracle_cmd->add_option("--cap", cap, "maximum total number of 2-entries");

  CLI::App* gen_cmd = app.add_subcommand(
      "gen", "generate a genotype matrix that admits a perfect phylogeny");
  gen_cmd->add_option("--seed", seed, "random seed");
  gen_cmd->add_option("--rows", gen_rows, "number of genotypes")->required();
  gen_cmd->add_option("--cols", gen_cols, "number of columns")->required();
  gen_cmd->add_option("--output", output, "write the matrix to a file");

  CLI::App* crosscheck_cmd = app.add_subcommand(
      "crosscheck", "run both decide routes plus the oracle and compare verdicts");
  add_input(crosscheck_cmd);
  crosscheck_cmd->add_flag("--directed", directed, "check the directed problem");
  crosscheck_cmd->add_option("--cap", cap, "oracle cap; above it only the routes are compared");

  std::vector<const char*> argv{"ppht"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (decide_cmd->parsed()) {
      genotype_matrix a = detail::read_genotypes(input, in);
      decide_route r = route == "parity" ? decide_route::parity
                                         : decide_route::bipartite;
      verdict v = directed ? decide_dpph(a, r) : decide_pph(a, r);
      out << format_verdict(v) << "\n";
      return v.admits ? 0 : 1;
    }
    if (solve_cmd->parsed()) {
      genotype_matrix a = detail::read_genotypes(input, in);
      try {
        haplotype_matrix b =
            directed ? construct_haplotypes_dpph(a) : construct_haplotypes_pph(a);
        detail::write_output(output, out, b.to_text());
        return 0;
      } catch (const not_admitting& e) {
        out << format_verdict(e.why()) << "\n";
        return 1;
      }
    }
    if (tree_cmd->parsed()) {
      genotype_matrix a = detail::read_genotypes(input, in);
      try {
        haplotype_matrix b =
            directed ? construct_haplotypes_dpph(a) : construct_haplotypes_pph(a);
        phylogeny_tree t = build_tree(b, directed);
        verify_result check = verify_tree(b, t);
        if (!check.ok) {
          err << "internal error: built tree failed verification: "
              << check.detail << "\n";
          return 2;
        }
        detail::write_output(output, out, t.to_dot());
        return 0;
      } catch (const not_admitting& e) {
        out << format_verdict(e.why()) << "\n";
        return 1;
      }
    }
    if (oracle_cmd->parsed()) {
      genotype_matrix a = detail::read_genotypes(input, in);
      bool admits = oracle_decide(a, directed, cap);
      out << (admits ? "YES" : "NO") << "\n";
      return admits ? 0 : 1;
    }
    if (gen_cmd->parsed()) {
      planted_instance planted = plant_instance(seed, gen_rows, gen_cols);
      detail::write_output(output, out, planted.genotypes.to_text());
      return 0;
    }
    if (crosscheck_cmd->parsed()) {
      genotype_matrix a = detail::read_genotypes(input, in);
      verdict parity = directed ? decide_dpph(a, decide_route::parity)
                                : decide_pph(a, decide_route::parity);
      verdict bipartite = directed ? decide_dpph(a, decide_route::bipartite)
                                   : decide_pph(a, decide_route::bipartite);
      std::optional<bool> oracle;
      try {
        oracle = oracle_decide(a, directed, cap);
      } catch (const too_large&) {
      }
      auto word = [](bool admits) { return admits ? "YES" : "NO"; };
      bool agree = parity.admits == bipartite.admits &&
                   (!oracle || *oracle == parity.admits);
      if (agree) {
        out << "AGREE " << word(parity.admits)
            << (oracle ? "" : " routes-only") << "\n";
        return 0;
      }
      out << "DISAGREE parity=" << word(parity.admits)
          << " bipartite=" << word(bipartite.admits)
          << " oracle=" << (oracle ? word(*oracle) : "skipped") << "\n";
      return 1;
    }
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace ppht::cli

#pragma once

/** \file commands.hpp
 *  \brief The CLI subcommands as plain functions, so they can be driven
 *  in-process by tests. Each throws fusegraph::Error on failure.
 */

#include <cstddef>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace fusegraph::cli {

struct ExtractArgs {
  std::filesystem::path config;
  std::filesystem::path index_dir;  ///< overrides output.index
  std::optional<std::filesystem::path> items;  ///< one item id per line
  std::size_t threads = 1;
};

struct SearchArgs {
  std::filesystem::path config;
  std::filesystem::path index_dir;  ///< overrides output.index
  std::filesystem::path out;        ///< overrides output.run; "-" for stdout
  std::vector<std::string> queries;  ///< defaults to every query in the runs
  bool exclude_self = false;
  bool no_scope = false;
  std::size_t threads = 1;
};

struct BaselineArgs {
  std::string method;
  std::filesystem::path config;
  std::filesystem::path out;
  double rrf_k = 60.0;
  std::size_t kemeny_cap = 8;
};

struct EvalArgs {
  std::filesystem::path run;
  std::optional<std::filesystem::path> qrels;
  std::optional<std::filesystem::path> classes;
  std::size_t k = 10;
  bool per_query = false;
};

struct CorrelateArgs {
  std::vector<std::string> runs;  ///< NAME=PATH or NAME=PATH:distance
  std::string measure = "jaccard";
  std::size_t depth = 10;
};

struct SelectArgs {
  std::filesystem::path effectiveness;
  std::filesystem::path correlations;
  std::string strategy = "best-pair";
};

struct WinnersArgs {
  std::filesystem::path table;
};

struct TTestArgs {
  std::filesystem::path a;
  std::filesystem::path b;
  double alpha = 0.01;
};

void run_extract(const ExtractArgs& args, std::ostream& log);
void run_search(const SearchArgs& args, std::ostream& out);
void run_baseline(const BaselineArgs& args, std::ostream& out);
void run_eval(const EvalArgs& args, std::ostream& out);
void run_correlate(const CorrelateArgs& args, std::ostream& out);
void run_select(const SelectArgs& args, std::ostream& out);
void run_winners(const WinnersArgs& args, std::ostream& out);
void run_ttest(const TTestArgs& args, std::ostream& out);

}  // namespace fusegraph::cli

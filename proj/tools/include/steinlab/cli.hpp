#pragma once

// Command-line front end: every subcommand is a job with JSON parameters, so
// the same dispatcher serves argv parsing and batch manifests.

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "steinlab/error.hpp"

namespace steinlab::cli {

using Json = nlohmann::json;

struct Globals {
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string format = "auto";  // auto | json | tsv; auto prints tables as TSV
  std::size_t cap_dim = 4096;
  std::uint64_t cap_hom = 1u << 17;
};

struct JobSpec {
  std::string command;  // e.g. "steinberg classify"
  Json params = Json::object();
  std::string format;   // empty: use the global format
};

struct Report {
  int exit_code = 0;
  Json document;
  std::string error;
};

struct OptionSpec {
  std::string name;
  std::string help;
  bool required = false;
};

struct CommandSpec {
  std::string group;
  std::string name;
  std::string help;
  std::vector<OptionSpec> options;
  std::string full_name() const { return group + " " + name; }
};

const std::vector<CommandSpec>& commands();

int exit_code(Error::Kind kind);
/// Runs one job; library errors become exit codes, never exceptions.
Report run(const JobSpec& job, const Globals& globals);
std::string render(const Report& report, const std::string& format);

std::vector<JobSpec> parse_manifest(const Json& manifest);
/// Runs all jobs on `globals.jobs` threads; the result order follows the manifest.
Json batch(const std::vector<JobSpec>& jobs, const Globals& globals);

int main(int argc, char** argv);

}  // namespace steinlab::cli

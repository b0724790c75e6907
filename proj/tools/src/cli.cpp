#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <map>
#include <thread>

#include <CLI11.hpp>

#include "steinlab/cli.hpp"

namespace steinlab::cli {

namespace {

const std::vector<std::string> flag_options = {"no-fit"};

bool is_flag(const std::string& name) { return std::find(flag_options.begin(), flag_options.end(), name) != flag_options.end(); }

std::string help_for(const OptionSpec& opt) {
  static const std::map<std::string, std::string> fallback = {
      {"partition", "partition, e.g. 2,1 or [2,1]"},
      {"other", "second operand (same format as the first)"},
      {"module", "module JSON (file or inline)"},
      {"ring", "ring, e.g. F_4, Z/6, F_2xF_3"},
      {"field", "field, e.g. Q, F_3, F_9"},
      {"coeff", "coefficient field"},
      {"n", "rank"},
      {"q", "order of the finite field"},
      {"a", "group A, e.g. Z/2"},
      {"b", "group B"},
      {"c", "group C"},
  };
  if (!opt.help.empty()) return opt.help;
  const auto it = fallback.find(opt.name);
  return it == fallback.end() ? std::string() : it->second;
}

std::string status_of(int code) {
  switch (code) {
    case 0:
      return "ok";
    case 1:
      return "parse_error";
    case 2:
      return "precondition";
    case 3:
      return "cap_exceeded";
    default:
      return "inconclusive";
  }
}

}  // namespace

std::vector<JobSpec> parse_manifest(const Json& manifest) {
  const Json& list = manifest.is_object() && manifest.contains("jobs") ? manifest.at("jobs") : manifest;
  if (!list.is_array()) fail(Error::Kind::Parse, "manifest must be a JSON array of jobs");
  std::vector<JobSpec> out;
  for (const auto& item : list) {
    if (!item.is_object()) fail(Error::Kind::Parse, "manifest entries must be objects");
    JobSpec job;
    const char* key = item.contains("command") ? "command" : "subcommand";
    if (!item.contains(key) || !item.at(key).is_string()) fail(Error::Kind::Parse, "manifest entry without a command");
    job.command = item.at(key).get<std::string>();
    if (item.contains("params")) job.params = item.at("params");
    if (item.contains("format")) job.format = item.at("format").get<std::string>();
    out.push_back(std::move(job));
  }
  return out;
}

Json batch(const std::vector<JobSpec>& jobs, const Globals& globals) {
  std::vector<Report> reports(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) reports[i] = run(jobs[i], globals);
  };
  const auto threads = static_cast<std::size_t>(std::clamp(globals.jobs, 1, 64));
  std::vector<std::jthread> pool;
  for (std::size_t t = 1; t < std::min(threads, jobs.size()); ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  Json out = {{"jobs", Json::array()}};
  std::map<std::string, int> counts;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto& r = reports[i];
    Json entry = {{"command", jobs[i].command}, {"exit_code", r.exit_code}, {"status", status_of(r.exit_code)}};
    if (r.exit_code == 0)
      entry["result"] = r.document;
    else
      entry["error"] = r.error;
    ++counts[status_of(r.exit_code)];
    out["jobs"].push_back(std::move(entry));
  }
  out["summary"] = {{"total", jobs.size()}, {"ok", counts["ok"]}, {"failed", jobs.size() - static_cast<std::size_t>(counts["ok"])}};
  return out;
}

int main(int argc, char** argv) {
  CLI::App app{"steinlab: exact computations with modules over GL_n of finite rings"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals globals;
  app.add_option("--seed", globals.seed, "random seed")->capture_default_str();
  app.add_option("--jobs", globals.jobs, "worker threads for batch")->capture_default_str()->check(CLI::Range(1, 64));
  app.add_option("--format", globals.format, "auto, json or tsv")
      ->capture_default_str()
      ->check(CLI::IsMember({"auto", "json", "tsv"}));
  app.add_option("--cap-dim", globals.cap_dim, "largest dimension handled")->capture_default_str();
  app.add_option("--cap-hom", globals.cap_hom, "largest Hom set enumerated")->capture_default_str();

  std::map<std::string, CLI::App*> groups;
  std::vector<std::pair<CLI::App*, const CommandSpec*>> leaves;
  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, std::map<std::string, bool>> flags;
  for (const auto& spec : commands()) {
    auto& group = groups[spec.group];
    if (!group) {
      group = app.add_subcommand(spec.group, spec.group + " commands");
      group->require_subcommand(1);
      group->fallthrough();
    }
    CLI::App* leaf = group->add_subcommand(spec.name, spec.help);
    leaf->fallthrough();
    for (const auto& opt : spec.options) {
      if (is_flag(opt.name)) {
        leaf->add_flag("--" + opt.name, flags[spec.full_name()][opt.name], help_for(opt));
        continue;
      }
      auto* o = leaf->add_option("--" + opt.name, values[spec.full_name()][opt.name], help_for(opt));
      if (opt.required) o->required();
    }
    leaves.emplace_back(leaf, &spec);
  }

  std::string manifest_path;
  CLI::App* batch_cmd = app.add_subcommand("batch", "run a JSON manifest of jobs");
  batch_cmd->fallthrough();
  batch_cmd->add_option("manifest", manifest_path, "manifest file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (batch_cmd->parsed()) {
    std::ifstream in(manifest_path);
    if (!in) {
      std::cerr << "error: cannot open " << manifest_path << '\n';
      return 1;
    }
    try {
      const auto jobs = parse_manifest(Json::parse(in));
      std::cout << batch(jobs, globals).dump(2) << '\n';
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 1;
    } catch (const nlohmann::json::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 1;
    }
    return 0;
  }

  for (const auto& [leaf, spec] : leaves) {
    if (!leaf->parsed()) continue;
    JobSpec job;
    job.command = spec->full_name();
    for (const auto& opt : spec->options) {
      if (is_flag(opt.name)) {
        if (flags[job.command][opt.name]) job.params[opt.name] = true;
      } else if (leaf->count("--" + opt.name)) {
        job.params[opt.name] = values[job.command][opt.name];
      }
    }
    const Report report = run(job, globals);
    if (report.exit_code == 0) {
      std::cout << render(report, globals.format);
    } else {
      std::cerr << render(report, globals.format);
      if (report.exit_code == 1) std::cerr << leaf->help();
    }
    return report.exit_code;
  }
  return 1;
}

}  // namespace steinlab::cli

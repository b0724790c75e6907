#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "steinlab/cli.hpp"
#include "steinlab/json_io.hpp"

using namespace steinlab;
using cli::Json;
using cli::JobSpec;

namespace {

struct Output {
  int code = -1;
  std::string out;
};

Output exec(const std::string& args) {
  const std::string cmd = std::string(STEINLAB_EXE) + " " + args + " 2>/dev/null";
  Output r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

cli::Report run(const std::string& command, Json params) {
  return cli::run(JobSpec{command, std::move(params), ""}, cli::Globals{});
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::string manifest_dir() { return STEINLAB_MANIFEST_DIR; }

}  // namespace

TEST(Run, ClassifyExample) {
  const auto r = run("steinberg classify", {{"n", 2}, {"q", 2}});
  ASSERT_EQ(r.exit_code, 0) << r.error;
  EXPECT_EQ(r.document["rows"].size(), 2u);
  EXPECT_EQ(r.document["class_count"], 2);
  EXPECT_TRUE(r.document["consistent"].get<bool>());
  const auto tsv = lines(cli::render(r, "auto"));
  EXPECT_EQ(tsv[0], "lambda\tdigits\tdim\tsimple\tclass");
}

TEST(Run, DimtableExample) {
  const auto r = run("functor dimtable", {{"ring", "F_2"}, {"coeff", "F_3"}, {"functor", "gr1"}, {"rank", 4}});
  ASSERT_EQ(r.exit_code, 0) << r.error;
  std::vector<std::size_t> dims;
  for (const auto& row : r.document["rows"]) dims.push_back(row[1].get<std::size_t>());
  EXPECT_EQ(dims, (std::vector<std::size_t>{0, 1, 3, 7, 15}));
  EXPECT_EQ(r.document["fit"], "X-1");
}

TEST(Run, FactorExample) {
  const auto r = run("emlpoly factor", {{"ring", "F_9"}, {"map", "pow4"}});
  ASSERT_EQ(r.exit_code, 0) << r.error;
  EXPECT_EQ(r.document["count"], 2);
  EXPECT_EQ(r.document["factors"].size(), 2u);
}

TEST(Run, ExitCodes) {
  EXPECT_EQ(run("steinberg classify", {{"n", 5}, {"q", 2}}).exit_code, 3);
  EXPECT_EQ(run("schur socle", {{"partition", "2"}, {"n", 2}, {"field", "F_2"}}).exit_code, 2);
  EXPECT_EQ(run("no such", Json::object()).exit_code, 1);
  EXPECT_EQ(run("steinberg classify", {{"n", 2}}).exit_code, 1);
  EXPECT_EQ(run("steinberg classify", {{"n", "two"}, {"q", 2}}).exit_code, 1);
  const auto failed = run("partition digits", {{"partition", "4"}, {"p", 2}, {"r", 2}});
  EXPECT_EQ(failed.exit_code, 2);
  EXPECT_FALSE(failed.error.empty());
  EXPECT_EQ(cli::exit_code(Error::Kind::Parse), 1);
  EXPECT_EQ(cli::exit_code(Error::Kind::Precondition), 2);
  EXPECT_EQ(cli::exit_code(Error::Kind::FieldMismatch), 2);
  EXPECT_EQ(cli::exit_code(Error::Kind::CapExceeded), 3);
  EXPECT_EQ(cli::exit_code(Error::Kind::Inconclusive), 4);
}

TEST(Run, CapFlagsApply) {
  cli::Globals g;
  g.cap_dim = 2;
  const auto r = cli::run(JobSpec{"functor dimtable", {{"ring", "F_2"}, {"coeff", "F_3"}, {"functor", "gr1"}, {"rank", 4}}, ""}, g);
  EXPECT_EQ(r.exit_code, 3);
}

TEST(Run, EveryCommandIsRegistered) {
  std::set<std::string> names;
  for (const auto& c : cli::commands()) names.insert(c.full_name());
  for (const char* want : {"steinberg classify", "steinberg build", "steinberg unique", "steinberg product", "functor dimtable",
                           "functor crosseffect", "functor degree", "functor iext", "functor ideal", "functor simple",
                           "emlpoly degree", "emlpoly deviate", "emlpoly homog", "emlpoly factor", "emlpoly linearize",
                           "schur eval", "schur socle", "meataxe simple", "meataxe iso", "ring homs", "ring ideals"})
    EXPECT_TRUE(names.count(want)) << want;
}

TEST(RoundTrip, ModuleOutputFeedsBack) {
  const auto socle = run("schur socle", {{"partition", "2,1"}, {"n", 2}, {"field", "F_2"}});
  ASSERT_EQ(socle.exit_code, 0) << socle.error;
  const auto m = io::module_from_json(socle.document);
  EXPECT_EQ(m.dim(), 2u);
  const auto simple = run("meataxe simple", {{"module", socle.document}});
  ASSERT_EQ(simple.exit_code, 0) << simple.error;
  EXPECT_TRUE(simple.document["simple"].get<bool>());
  const auto t = run("meataxe tensor", {{"module", socle.document}, {"other", socle.document.dump()}});
  ASSERT_EQ(t.exit_code, 0) << t.error;
  const auto tm = io::module_from_json(t.document);
  EXPECT_EQ(tm.dim(), 4u);
  const auto again = run("meataxe end", {{"module", t.document}});
  ASSERT_EQ(again.exit_code, 0) << again.error;
  EXPECT_EQ(again.document["dim"], 4);
  const auto iso = run("meataxe iso", {{"module", socle.document}, {"other", socle.document}});
  EXPECT_TRUE(iso.document["isomorphic"].get<bool>());
}

TEST(RoundTrip, PartitionOutputFeedsBack) {
  const auto a = run("partition conj", {{"partition", "3,1"}});
  ASSERT_EQ(a.exit_code, 0);
  const auto b = run("partition conj", {{"partition", a.document["conjugate"]}});
  EXPECT_EQ(b.document["conjugate"], a.document["partition"]);
}

TEST(RoundTrip, FunctorTableFeedsBack) {
  const auto dir = std::filesystem::temp_directory_path() / "steinlab_cli_table.json";
  const auto t = run("functor table", {{"ring", "F_2"}, {"coeff", "F_3"}, {"functor", "gr1"}, {"rank", 3}});
  ASSERT_EQ(t.exit_code, 0) << t.error;
  std::ofstream(dir) << t.document.dump();
  const auto d = run("functor dimtable", {{"ring", "F_2"}, {"coeff", "F_3"}, {"functor", "table:" + dir.string()}, {"rank", 3}});
  ASSERT_EQ(d.exit_code, 0) << d.error;
  EXPECT_EQ(d.document["rows"].size(), 4u);
  EXPECT_EQ(d.document["rows"][3][1], 7);
  std::filesystem::remove(dir);
}

TEST(Batch, EmptyManifest) {
  const Json out = cli::batch(cli::parse_manifest(Json::array()), cli::Globals{});
  EXPECT_TRUE(out["jobs"].empty());
  EXPECT_EQ(out["summary"]["total"], 0);
}

TEST(Batch, InvalidJobIsIsolated) {
  const Json manifest = Json::parse(R"([
    {"command": "partition conj", "params": {"partition": "2,1"}},
    {"command": "steinberg classify", "params": {"n": 9, "q": 2}},
    {"command": "bogus thing", "params": {}},
    {"command": "partition conj", "params": {"partition": "4"}}
  ])");
  const Json out = cli::batch(cli::parse_manifest(manifest), cli::Globals{});
  ASSERT_EQ(out["jobs"].size(), 4u);
  EXPECT_EQ(out["jobs"][0]["exit_code"], 0);
  EXPECT_EQ(out["jobs"][1]["exit_code"], 3);
  EXPECT_EQ(out["jobs"][2]["exit_code"], 1);
  EXPECT_EQ(out["jobs"][3]["exit_code"], 0);
  EXPECT_EQ(out["summary"]["ok"], 2);
  EXPECT_EQ(out["summary"]["failed"], 2);
}

TEST(Batch, OutputIndependentOfThreadCount) {
  std::ifstream in(manifest_dir() + "/smoke.json");
  const auto jobs = cli::parse_manifest(Json::parse(in));
  cli::Globals one, many;
  many.jobs = 4;
  const std::string a = cli::batch(jobs, one).dump(), b = cli::batch(jobs, many).dump();
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, cli::batch(jobs, one).dump());
}

TEST(Batch, ManifestShapes) {
  EXPECT_EQ(cli::parse_manifest(Json::parse(R"({"jobs": [{"command": "partition conj", "params": {"partition": "1"}}]})")).size(), 1u);
  EXPECT_ANY_THROW(cli::parse_manifest(Json::parse(R"({"nope": 1})")));
  EXPECT_ANY_THROW(cli::parse_manifest(Json::parse(R"([{"params": {}}])")));
}

TEST(Binary, Examples) {
  const auto c = exec("steinberg classify --n 2 --q 2");
  EXPECT_EQ(c.code, 0);
  const auto ls = lines(c.out);
  ASSERT_GE(ls.size(), 3u);
  EXPECT_EQ(ls[0], "lambda\tdigits\tdim\tsimple\tclass");
  EXPECT_EQ(ls[1].substr(0, 5), "(0,0)");
  EXPECT_EQ(ls[2].substr(0, 5), "(1,0)");
  const auto d = exec("functor dimtable --ring F_2 --coeff F_3 --functor gr1 --rank 4 --format json");
  EXPECT_EQ(d.code, 0);
  EXPECT_EQ(Json::parse(d.out)["fit"], "X-1");
  const auto f = exec("--format json emlpoly factor --ring F_9 --map pow4");
  EXPECT_EQ(f.code, 0);
  EXPECT_EQ(Json::parse(f.out)["count"], 2);
}

TEST(Binary, ExitCodes) {
  EXPECT_EQ(exec("steinberg classify --n 5 --q 2").code, 3);
  EXPECT_EQ(exec("schur socle --partition 2 --n 2 --field F_2").code, 2);
  EXPECT_EQ(exec("steinberg frobnicate").code, 1);
  EXPECT_EQ(exec("steinberg classify --n 2").code, 1);
  EXPECT_EQ(exec("--jobs 0 steinberg classify --n 2 --q 2").code, 1);
  EXPECT_EQ(exec("--help").code, 0);
}

TEST(Binary, BatchDeterministic) {
  const std::string m = manifest_dir() + "/smoke.json";
  const auto a = exec("batch " + m + " --jobs 1"), b = exec("batch " + m + " --jobs 4"), c = exec("--jobs 2 batch " + m);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
  const Json j = Json::parse(a.out);
  EXPECT_EQ(j["summary"]["total"], 7);
  EXPECT_EQ(j["summary"]["failed"], 1);
  EXPECT_EQ(exec("batch /nonexistent/manifest.json").code, 1);
}

TEST(Binary, SeedIsReproducible) {
  const auto a = exec("--seed 9 steinberg classify --n 3 --q 2"), b = exec("steinberg classify --n 3 --q 2 --seed 9");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

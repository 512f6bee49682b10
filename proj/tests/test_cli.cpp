#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "support.hpp"

using testing_support::run;

namespace {

const std::string kBin = MATPRES_BIN;

testing_support::Run cli(const std::string& args) { return run(kBin + " " + args); }

void drop_timing(nlohmann::json& j) {
  if (j.is_object()) {
    j.erase("seconds");
    for (auto& [k, v] : j.items()) drop_timing(v);
  } else if (j.is_array()) {
    for (auto& v : j) drop_timing(v);
  }
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("matpres_test_" + name)).string();
}

}  // namespace

TEST_CASE("exit codes") {
  struct Row {
    const char* args;
    int status;
  };
  for (const Row& r : std::initializer_list<Row>{
           {"certify --n 3", 0},
           {"certify --n 3 --budget 5", 2},
           {"certify --n 1", 64},
           {"certify", 64},
           {"certify --n two", 64},
           {"certify-mod --n 2 --N 3", 0},
           {"certify-mod --n 4 --N 12", 0},
           {"certify-mod --n 2 --N 1", 64},
           {"certify-mod --n 3 --N 2 --budget 5", 2},
           {"normalize --preset kassabov:2 --poly x*y*x", 0},
           {"normalize --preset kassabov:2 --poly x*y --budget 0", 2},
           {"normalize --preset kassabov:2 --poly 'x^'", 64},
           {"normalize --preset bogus:2 --poly x", 64},
           {"normalize --poly x", 64},
           {"variant2 --n 2", 0},
           {"variant2 --n 1", 64},
           {"guralnick --p 2", 0},
           {"guralnick --p 4", 64},
           {"relmod --n 1 --d 1", 0},
           {"relmod --n 2 --gens '[[[\"1\",\"0\"],[\"0\",\"0\"]]]'", 64},
           {"bimod --n 2 --D 3", 0},
           {"bimod --n 2 --D 1", 64},
           {"replay /nonexistent/file.json", 64},
           {"frobnicate", 64},
           {"", 64},
       }) {
    CAPTURE(r.args);
    CHECK(cli(r.args).status == r.status);
  }
}

TEST_CASE("normalize prints canonical text") {
  CHECK(cli("normalize --preset kassabov:2 --poly 'x*y*x' --plain").out == "x\n");
  CHECK(cli("normalize --preset kassabov:3 --poly 'x*y^2*x^2' --plain").out == "y*x^2\n");
  CHECK(cli("normalize --preset kassabov:2 --poly 1 --plain").out == "1\n");
  auto j = nlohmann::json::parse(cli("normalize --preset kassabov:3 --poly 'x*y^2*x^2'").out);
  CHECK(j["normal_form"] == "y*x^2");
  CHECK(j["schema_version"] == 1);

  std::string pres = temp_path("pres.txt");
  std::ofstream(pres) << "ring Z\ngens x y\nrel x^2\nrel y^2\nrel x*y + y*x - 1\n";
  CHECK(cli("normalize --file " + pres + " --poly 'y*x*y' --plain").out == "y\n");
  std::filesystem::remove(pres);
}

TEST_CASE("reports are reproducible") {
  for (const char* args : {"certify --n 3", "certify-mod --n 2 --N 6", "relmod --n 2 --gens shift-sum",
                           "bimod --n 2 --D 4", "guralnick --p 2", "variant2 --n 3"}) {
    CAPTURE(args);
    auto a = nlohmann::json::parse(cli(args).out), b = nlohmann::json::parse(cli(args).out);
    drop_timing(a);
    drop_timing(b);
    CHECK(a.dump() == b.dump());
  }
}

TEST_CASE("trace file replays") {
  std::string path = temp_path("cert.json");
  CHECK(cli("certify --n 4 --jobs 2 --trace " + path).status == 0);
  auto r = cli("replay " + path);
  CHECK(r.status == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["verdict"] == "certified");
  CHECK(j["problems"].empty());

  std::string text;
  {
    std::ifstream f(path);
    text.assign(std::istreambuf_iterator<char>(f), {});
  }
  auto doc = nlohmann::json::parse(text);
  doc["rules"][0]["relator"] = "x^5";
  std::ofstream(path) << doc.dump();
  CHECK(cli("replay " + path).status == 1);
  std::filesystem::remove(path);
}

TEST_CASE("report contents") {
  auto v = nlohmann::json::parse(cli("variant2 --n 2").out);
  CHECK(v["verdict"] == "certified");
  CHECK(v["x_power_nonzero"] == true);
  CHECK(v["x_power"] == v["y_power"]);
  auto g = nlohmann::json::parse(cli("guralnick --p 2").out);
  CHECK(g["quotient_order"] == "16");
  CHECK(g["homomorphism"] == true);
  CHECK(g["generation"] == true);
  auto rel = nlohmann::json::parse(cli("relmod --n 1 --d 1").out);
  CHECK(rel["result"]["inferred_rank_L"] == 1);
  auto b = nlohmann::json::parse(cli("bimod --n 2 --D 6 --sweep").out);
  for (const auto& t : b["targets"]) {
    std::string verdict = t["verdict"];
    CHECK((verdict == "member" || verdict == "not-found-up-to-6"));
    if (verdict == "member") CHECK(t["witness_valid"] == true);
  }
}

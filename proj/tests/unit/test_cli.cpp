#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "orbitrep/cli.hpp"
#include "orbitrep/io.hpp"

using namespace orbitrep;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "orbitrep");
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "orbitrep_cli_tests";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write(const std::string& name, const std::string& text) {
  const auto path = scratch_dir() / name;
  std::ofstream(path) << text;
  return path.string();
}

const std::string kExample = fixtures::map_path("escape_example.json");
const std::string kCorrected = fixtures::map_path("escape_example_corrected.json");

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("certify the example map") {
    const Result r = cli({"certify", kExample, "--x", "1/2", "--V", "2,3,4", "--depth", "4"});
    CHECK(r.code == 0);
    CHECK(has(r.out, "certificate: faithful"));
    CHECK(cli({"certify", kExample, "--x", "1/2", "--V", "2,3,4", "--depth", "3"}).code == 1);
    const Result bad = cli({"certify", kExample, "--x", "1/2", "--V", "1", "--depth", "4"});
    CHECK(bad.code == 1);
    CHECK(has(bad.err, "not admissible"));
  }

  TEST_CASE("matrices flags the erratum") {
    const Result r = cli({"matrices", kExample});
    CHECK(r.code == 0);
    CHECK(has(r.out, "A_f matches the reference matrix"));
    CHECK(has(r.out, "erratum: entry (4, 2^) is 0, reference has 1: f(I_4) = [7/10, 9/10] does not meet E_2"));
    CHECK(has(cli({"matrices", kCorrected, "--block"}).out, "escape matrix matches the reference matrix"));
  }

  TEST_CASE("point reports") {
    const Result r = cli({"point", kExample, "--x", "0"});
    CHECK(r.code == 0);
    CHECK(has(r.out, "boundary orbit"));
    CHECK(has(cli({"point", kExample, "--x", "5/27"}).out, "periodic with period 2"));
    CHECK(has(cli({"point", kCorrected, "--x", "13/20"}).out, "escape incidence c = (1,0,0,1)"));
  }

  TEST_CASE("relation checks set the exit code") {
    CHECK(cli({"rep", kExample, "--x", "1/2", "--V", "2,3", "--depth", "4", "--check"}).code == 0);
    const Result fail = cli({"rep", kExample, "--x", "1/2", "--V", "1", "--depth", "4", "--check"});
    CHECK(fail.code == 1);
    CHECK(has(fail.out, "p_1 = sum_{s(e)=1} s_e s_e^*: FAIL 3/35"));
    CHECK(cli({"rep", kExample, "--x", "1/2", "--V", "1", "--depth", "4"}).code == 0);
  }

  TEST_CASE("malformed input exits with 2") {
    CHECK(cli({}).code == 2);
    CHECK(cli({"validate"}).code == 2);
    CHECK(cli({"validate", "/nonexistent.json"}).code == 2);
    CHECK(cli({"point", kExample, "--x", "1/0"}).code == 2);
    CHECK(cli({"point", kExample, "--x", "1/2", "--bogus"}).code == 2);
    CHECK(cli({"point", kExample, "--x", "3"}).code == 2);
    CHECK(cli({"tree", kExample, "--x", "1/2", "--depth", "2", "--json", "--dot"}).code == 2);
    CHECK(cli({"rep", kExample, "--x", "1/2", "--V", "7", "--depth", "2"}).code == 2);
    CHECK(cli({"validate", write("broken.json", "{\"markov_intervals\": [")}).code == 2);
    const Result r = cli({"validate", write("zero.json", R"({"markov_intervals": [["0", "1/0"]], "branches": []})")});
    CHECK(r.code == 2);
    CHECK_FALSE(r.err.empty());
  }

  TEST_CASE("boundary orbits are reported, not thrown") {
    const Result r = cli({"tree", kExample, "--x", "0", "--depth", "2"});
    CHECK(r.code == 1);
    CHECK(has(r.err, "partition point"));
  }

  TEST_CASE("JSON outputs parse") {
    const std::vector<std::vector<std::string>> commands{
        {"validate", kExample, "--json"},
        {"matrices", kExample, "--json", "--block"},
        {"point", kExample, "--x", "1/2", "--json"},
        {"tree", kExample, "--x", "1/2", "--depth", "3", "--json"},
        {"rep", kExample, "--x", "1/2", "--V", "2,3", "--depth", "3", "--json"},
        {"certify", kExample, "--x", "1/2", "--V", "2,3,4", "--depth", "4", "--json"},
        {"equiv", kExample, "--x", "1/2", "--y", "9/20", "--json"},
        {"classify", kExample, "--points", "1/2,9/20,1/3", "--json"},
    };
    for (const auto& c : commands) {
      CAPTURE(c[0]);
      const Result r = cli(c);
      CHECK(r.code == 0);
      CHECK(json::accept(r.out));
      CHECK(cli(c).out == r.out);
    }
    const json cert = json::parse(cli(commands[5]).out);
    CHECK(cert["certificate"] == "faithful");
    const json eq = json::parse(cli(commands[6]).out);
    CHECK(eq["verdict"] == "equivalent");
    CHECK(eq["intertwiner"]["verified"] == true);
  }

  TEST_CASE("tree DOT and graph DOT") {
    CHECK(has(cli({"tree", kExample, "--x", "1/2", "--depth", "2", "--dot"}).out, "digraph orbit_tree"));
    const std::string dot = (scratch_dir() / "graph.dot").string();
    CHECK(cli({"graph", kExample, "--dot", dot}).code == 0);
    std::ifstream in(dot);
    std::stringstream text;
    text << in.rdbuf();
    CHECK(has(text.str(), "3 -> 1 [label=\"s_31\"];"));
  }

  TEST_CASE("equivalence verdicts") {
    CHECK(has(cli({"equiv", kCorrected, "--x", "1/2", "--y", "13/20"}).out, "separated at refinement round 0"));
    CHECK(has(cli({"equiv", kExample, "--x", "1/2", "--y", "5/27"}).out, "one point escapes"));
  }

  TEST_CASE("synth round trip through matrices") {
    const std::string a = write("a.json", R"({"A": [[0, 1, 1, 0], [0, 0, 0, 1], [1, 1, 0, 0], [0, 0, 1, 0]]})");
    const std::string b = write("b.json", R"({"B": [[1], [0], [0], [1]], "escape_symbols": ["2^"]})");
    const std::string out = (scratch_dir() / "synth.json").string();
    CHECK(cli({"synth", "--A", a, "--B", b, "--mode", "strict", "-o", out}).code == 1);
    REQUIRE(cli({"synth", "--A", a, "--B", b, "--mode", "partial", "-o", out}).code == 0);
    CHECK(cli({"validate", out}).code == 0);
    const json m = json::parse(cli({"matrices", out, "--json"}).out);
    CHECK(m["A"].dump() == read_json_file(a)["A"].dump());
    CHECK(m["B"].dump() == read_json_file(b)["B"].dump());
    CHECK(m["escape_symbols"] == json::array({"2^"}));
    CHECK(m["A_hat"].dump() == to_json(fixtures::reference_A_hat()).dump());
    const Result again = cli({"synth", "--A", a, "--B", b, "--mode", "partial"});
    std::ifstream in(out);
    std::stringstream saved;
    saved << in.rdbuf();
    CHECK(again.out == saved.str());
  }
}

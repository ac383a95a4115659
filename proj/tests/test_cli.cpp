#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wsync/cli.hpp"
#include "wsync/corpus.hpp"

using namespace wsync;

namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  CliRun result;
  result.code = run_cli(args, out, err);
  result.out = out.str();
  result.err = err.str();
  return result;
}

// Self-deleting temp file for inputs that must come from disk.
class TempFile {
public:
  explicit TempFile(const std::string& content) {
    static int counter = 0;
    path_ = (std::filesystem::temp_directory_path() /
             ("wsync_cli_test_" + std::to_string(counter++) + ".wfa"))
                .string();
    std::ofstream file(path_, std::ios::binary);
    file << content;
  }
  ~TempFile() { std::remove(path_.c_str()); }
  const std::string& path() const { return path_; }

private:
  std::string path_;
};

const std::string kSwap = "states 2\nletters 1\nletter a 1\ntrans a 1 0\n";

std::string data_path(const std::string& name) {
  return std::string(TEST_DATA_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("cli sync text output") {
  CliRun result = run({"sync", "paper:A", "--m", "2", "--heuristic", "H1"});
  CHECK(result.code == 0);
  CHECK(result.err.empty());
  CHECK(result.out ==
        "m: 2\n"
        "heuristic: H1\n"
        "word: baababaaab\n"
        "length: 10\n"
        "weight: 10\n"
        "verified: true\n");
}

TEST_CASE("cli sync json output") {
  CliRun result = run({"sync", "paper:A", "--m", "2", "--heuristic", "H1", "--format", "json"});
  CHECK(result.code == 0);
  CHECK(result.out ==
        "{\"m\":2,\"heuristic\":\"H1\",\"word\":\"baababaaab\","
        "\"length\":10,\"weight\":10,\"verified\":true}\n");
}

TEST_CASE("cli sync trace") {
  CliRun text = run({"sync", "paper:A", "--m", "2", "--heuristic", "H1", "--trace"});
  CHECK(text.code == 0);
  CHECK(text.out.find("step 1: P={0,3} w=b T={0,1,2,3} -> {0,1,2}") != std::string::npos);
  CHECK(text.out.find("step 3: P={0,2} w=abaaab T={0,2} -> {0}") != std::string::npos);

  CliRun json = run({"sync", "paper:A", "--m", "2", "--heuristic", "H1", "--format", "json",
                     "--trace"});
  CHECK(json.code == 0);
  auto object = nlohmann::json::parse(json.out);
  REQUIRE(object.contains("steps"));
  REQUIRE(object["steps"].size() == 3);
  CHECK(object["steps"][0]["subset"] == "0,3");
  CHECK(object["steps"][0]["word"] == "b");
  CHECK(object["steps"][0]["before"] == "0,1,2,3");
  CHECK(object["steps"][0]["after"] == "0,1,2");
}

TEST_CASE("cli sync accepts case-insensitive heuristic names and tsv format") {
  CliRun result = run({"sync", "paper:A", "--m", "2", "--heuristic", "h1", "--format", "tsv"});
  CHECK(result.code == 0);
  CHECK(result.out ==
        "m\theuristic\tword\tlength\tweight\tverified\n"
        "2\tH1\tbaababaaab\t10\t10\ttrue\n");
}

TEST_CASE("cli sync on an unsynchronizable automaton") {
  TempFile swap(kSwap);
  CliRun result = run({"sync", swap.path(), "--m", "2", "--heuristic", "H2"});
  CHECK(result.code == 2);
  CHECK(result.out.find("word: -\n") != std::string::npos);
  CHECK(result.out.find("verified: false\n") != std::string::npos);
}

TEST_CASE("cli sync rejects bad arguments") {
  CHECK(run({"sync", "paper:A", "--m", "1", "--heuristic", "H1"}).code == 1);
  CHECK(run({"sync", "paper:A", "--m", "9", "--heuristic", "H1"}).code == 1);
  CHECK(run({"sync", "paper:A", "--m", "2", "--heuristic", "H9"}).code == 1);
  CHECK(run({"sync", "paper:A", "--m", "2", "--heuristic", "H1", "--format", "yaml"}).code == 1);
  CHECK(run({"sync", "paper:A", "--heuristic", "H1"}).code == 1);  // missing --m
  CliRun bad = run({"sync", "paper:A", "--m", "2", "--heuristic", "H9"});
  CHECK(bad.err.find("error: unknown heuristic 'H9'") != std::string::npos);
}

TEST_CASE("cli verify") {
  CliRun good = run({"verify", "paper:A", "baacb"});
  CHECK(good.code == 0);
  CHECK(good.out ==
        "word: baacb\n"
        "length: 5\n"
        "weight: 10\n"
        "synchronizing: true\n"
        "target: 0\n"
        "earliest synchronizing prefix: 5\n");

  CliRun bad = run({"verify", "paper:A", "a"});
  CHECK(bad.code == 2);
  CHECK(bad.out.find("synchronizing: false\n") != std::string::npos);
  CHECK(bad.out.find("target:") == std::string::npos);

  CliRun empty = run({"verify", "paper:A", "-"});
  CHECK(empty.code == 2);
  CHECK(empty.out.find("word: -\n") != std::string::npos);
  CHECK(empty.out.find("length: 0\n") != std::string::npos);
  CHECK(empty.out.find("weight: 0\n") != std::string::npos);

  CliRun symbol = run({"verify", "paper:A", "abz"});
  CHECK(symbol.code == 1);
  CHECK(symbol.err.find("error:") != std::string::npos);

  CliRun json = run({"verify", "paper:A", "baacb", "--format", "json"});
  CHECK(json.code == 0);
  CHECK(json.out ==
        "{\"word\":\"baacb\",\"length\":5,\"weight\":10,"
        "\"synchronizing\":true,\"target\":0,\"earliest_sync_prefix\":5}\n");
}

TEST_CASE("cli exact") {
  CliRun json = run({"exact", "paper:A", "--weight", "--length", "--format", "json"});
  CHECK(json.code == 0);
  CHECK(json.out ==
        "{\"min_weight\":9,\"min_weight_witness\":\"baaabaaab\","
        "\"min_length\":5,\"min_length_witness\":\"baabc\"}\n");

  CliRun weight_only = run({"exact", "paper:B", "--weight"});
  CHECK(weight_only.code == 0);
  CHECK(weight_only.out ==
        "min weight: 77\n"
        "witness: bcaaaaaadadadadabcdadad\n");

  CliRun none = run({"exact", "paper:A"});
  CHECK(none.code == 1);
  CHECK(none.err.find("--weight and/or --length") != std::string::npos);

  TempFile swap(kSwap);
  CliRun perm = run({"exact", swap.path(), "--weight"});
  CHECK(perm.code == 2);
  CHECK(perm.out == "synchronizing: false\n");
}

TEST_CASE("cli exact enforces the state cap") {
  CliRun over = run({"exact", "cerny:17", "--weight"});
  CHECK(over.code == 1);
  CHECK(over.err.find("state count 17 exceeds the oracle cap of 16 states") != std::string::npos);

  CliRun raised = run({"exact", "cerny:17", "--weight", "--cap", "17"});
  CHECK(raised.code == 0);
  CHECK(raised.out.find("min weight: 256\n") != std::string::npos);
}

TEST_CASE("cli check") {
  CliRun yes = run({"check", "paper:B"});
  CHECK(yes.code == 0);
  CHECK(yes.out == "synchronizing: true\n");

  TempFile swap(kSwap);
  CliRun no = run({"check", swap.path()});
  CHECK(no.code == 2);
  CHECK(no.out == "synchronizing: false\n");

  CliRun json = run({"check", "paper:B", "--format", "json"});
  CHECK(json.code == 0);
  CHECK(json.out == "{\"synchronizing\":true}\n");
}

TEST_CASE("cli gen") {
  CliRun b = run({"gen", "paper:B"});
  CHECK(b.code == 0);
  CHECK(b.out == serialize_automaton(paper_automaton_B()));

  std::ifstream reference(data_path("paper_B.wfa"), std::ios::binary);
  std::ostringstream reference_bytes;
  reference_bytes << reference.rdbuf();
  CHECK(b.out == reference_bytes.str());

  CliRun c = run({"gen", "cerny", "--n", "4"});
  CHECK(c.code == 0);
  CHECK(c.out == serialize_automaton(cerny(4)));
  CHECK(run({"gen", "cerny"}).code == 1);

  CliRun r1 = run({"gen", "random", "--n", "5", "--letters", "3", "--max-weight", "9",
                   "--seed", "42"});
  CliRun r2 = run({"gen", "random", "--n", "5", "--letters", "3", "--max-weight", "9",
                   "--seed", "42"});
  CHECK(r1.code == 0);
  CHECK(r1.out == r2.out);
  CHECK(run({"gen", "random"}).code == 1);

  CliRun dot = run({"gen", "paper:A", "--emit-dot"});
  CHECK(dot.code == 0);
  CHECK(dot.out.rfind("digraph", 0) == 0);
  CHECK(dot.out.find("[label=\"c/6\"]") != std::string::npos);

  CliRun bogus = run({"gen", "triangle"});
  CHECK(bogus.code == 1);
  CHECK(bogus.err.find("unknown generator family") != std::string::npos);
}

TEST_CASE("cli dump-words") {
  CliRun result = run({"dump-words", "paper:A", "--m", "2"});
  CHECK(result.code == 0);
  CHECK(result.out ==
        "0,1\taaab\t4\n"
        "0,2\tabaaab\t6\n"
        "0,3\tb\t1\n"
        "1,2\taab\t3\n"
        "1,3\tbaaab\t5\n"
        "2,3\tab\t2\n");
}

TEST_CASE("cli table single cell") {
  CliRun result = run({"table", "paper:A", "--m", "2..2", "--heuristics", "H1"});
  CHECK(result.code == 0);
  CHECK(result.out ==
        "m\theuristic\tword\tlength\tweight\tverified\n"
        "2\tH1\tbaababaaab\t10\t10\ttrue\n"
        "1 rows, 1 verified\n");
}

TEST_CASE("cli table with reference comparison") {
  CliRun result = run({"table", "paper:B", "--m", "2..6", "--heuristics", "H1,H2,H3,H4",
                       "--format", "json", "--compare", data_path("table1.tsv")});
  CHECK(result.code == 0);

  std::istringstream lines(result.out);
  std::string line;
  int rows = 0;
  int weight_match = 0;
  while (std::getline(lines, line)) {
    auto object = nlohmann::json::parse(line);
    ++rows;
    CHECK(object["verified"] == true);
    REQUIRE(object.contains("agreement"));
    REQUIRE(object.contains("ref_weight"));
    REQUIRE(object.contains("weight_delta"));
    if (object["agreement"] == "weight-match") ++weight_match;
  }
  CHECK(rows == 20);
  // One reference row is internally inconsistent, so at most 19 can match.
  CHECK(weight_match == 19);

  CliRun missing = run({"table", "paper:B", "--compare", data_path("no_such_table.tsv")});
  CHECK(missing.code == 1);
  CHECK(missing.err.find("cannot open reference table") != std::string::npos);
}

TEST_CASE("cli table agreement against a synthetic reference") {
  // Reference with one matching word, one beatable weight, and one absent
  // cell: exercises word-match, better, and none.
  CliRun mine = run({"table", "paper:A", "--m", "2..2", "--heuristics", "H1", "--format", "tsv"});
  REQUIRE(mine.code == 0);

  TempFile reference(
      "m\theuristic\tword\tlength\tweight\n"
      "2\tH1\tbaababaaab\t10\t10\n"
      "2\tH2\tcaacaacaab\t10\t999\n");
  CliRun compared = run({"table", "paper:A", "--m", "2..2", "--heuristics", "H1,H2,H3",
                         "--compare", reference.path(), "--format", "tsv"});
  CHECK(compared.code == 0);
  CHECK(compared.out.find("\tword-match") != std::string::npos);
  CHECK(compared.out.find("\tbetter") != std::string::npos);
  CHECK(compared.out.find("\t-\t-\tnone") != std::string::npos);
}

TEST_CASE("cli table rejects malformed ranges and lists") {
  CHECK(run({"table", "paper:A", "--m", "6..2"}).code == 1);
  CHECK(run({"table", "paper:A", "--m", "x"}).code == 1);
  CHECK(run({"table", "paper:A", "--heuristics", "H1,,H2"}).code == 1);
  CHECK(run({"table", "paper:A", "--heuristics", "H7"}).code == 1);
}

TEST_CASE("cli input loading errors") {
  CliRun missing = run({"check", "/no/such/file.wfa"});
  CHECK(missing.code == 1);
  CHECK(missing.err.find("cannot open input") != std::string::npos);

  TempFile broken("states 2\nletters 1\nletter a 1\ntrans a 0 7\n");
  CliRun malformed = run({"check", broken.path()});
  CHECK(malformed.code == 1);
  CHECK(malformed.err.find("line 4: target out of range: 7") != std::string::npos);

  CHECK(run({"check", "cerny:1"}).code == 1);
  CHECK(run({"check", "cerny:x"}).code == 1);
}

TEST_CASE("cli usage") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);

  CliRun help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("Usage") != std::string::npos);
  CHECK(help.out.find("sync") != std::string::npos);
}

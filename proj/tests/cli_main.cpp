// Command-level checks: exit codes, output formats, flag handling.
//
// usage: cli_tests <prefopt-binary> <data-dir> <tmp-dir>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

std::string g_cli, g_data, g_tmp;
int g_failures = 0;

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::string& args) {
  std::string err_file = g_tmp + "/stderr.txt";
  std::string cmd = g_cli + " " + args + " 2>" + err_file;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    std::perror("popen");
    std::exit(2);
  }
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  std::ifstream err_in(err_file);
  std::string err((std::istreambuf_iterator<char>(err_in)), std::istreambuf_iterator<char>());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, err};
}

void expect(bool cond, const std::string& what) {
  if (cond) {
    std::printf("ok   %s\n", what.c_str());
  } else {
    std::printf("FAIL %s\n", what.c_str());
    ++g_failures;
  }
}

std::string data_file(const std::string& name) { return (fs::path(g_data) / name).string(); }

std::string common() {
  return "--schema " + data_file("schema.txt") + " --prefs " + data_file("prefs.txt");
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 4) {
    std::cerr << "usage: cli_tests <prefopt-binary> <data-dir> <tmp-dir>\n";
    return 2;
  }
  g_cli = argv[1];
  g_data = argv[2];
  g_tmp = argv[3];
  fs::create_directories(g_tmp);

  // exit code contract: 0 holds, 1 refuted, 2 error
  CliResult r = run_cli("check redundant " + common() + " --deps " +
                        data_file("deps_isbn_price.txt") + " --pref C1");
  expect(r.exit_code == 0 && r.out.find("entailed") != std::string::npos,
         "check redundant under the price dependency exits 0");

  r = run_cli("check redundant " + common() + " --pref C1");
  expect(r.exit_code == 1 && r.out.find("witness:") != std::string::npos,
         "check redundant without dependencies exits 1 and prints a witness");

  r = run_cli("check spo " + common() + " --pref C1");
  expect(r.exit_code == 0, "check spo holds for the example preference");

  r = run_cli("check contained " + common() + " --pref C1 --pref2 C1");
  expect(r.exit_code == 0, "reflexive containment");

  r = run_cli("check commutes " + common() + " --pref C1 --select \"t.price < 15\"");
  expect(r.exit_code == 0, "upper price bound commutes with the winnow");

  r = run_cli("check commutes " + common() + " --pref C1 --select \"t.price > 15\"");
  expect(r.exit_code == 1, "lower price bound is refuted");

  r = run_cli("check propagates " + common() +
              " --pref C1 --candidate \"FD Book: isbn -> price\"");
  expect(r.exit_code == 0, "the price dependency propagates through the winnow");

  r = run_cli("check spo " + common() + " --pref C1 --select \"t.price < 3\"");
  expect(r.exit_code == 0, "flags a property does not use are ignored");

  r = run_cli("check spo " + common() + " --pref NoSuchPref");
  expect(r.exit_code == 2 && r.err.find("error") != std::string::npos,
         "unknown preference exits 2 with a diagnostic");

  write_file(g_tmp + "/bad_prefs.txt", "PREF broken ON Book: t1.vendor < t2.vendor\n");
  r = run_cli("check spo --schema " + data_file("schema.txt") + " --prefs " + g_tmp +
              "/bad_prefs.txt --pref broken");
  expect(r.exit_code == 2, "type error in a preference file exits 2");

  // run: result CSV, empty input, verification failures
  r = run_cli("run " + common() + " --plan " + data_file("plan_winnow_c1.json") + " --data " +
              g_data);
  expect(r.exit_code == 0 && r.out.substr(0, 18) == "isbn,vendor,price\n",
         "run emits a CSV with the header row");
  expect(r.out.find("13.5") != std::string::npos && r.out.find("18.80") == std::string::npos,
         "dominated rows are gone");

  fs::create_directories(g_tmp + "/empty_data");
  write_file(g_tmp + "/empty_data/Book.csv", "isbn,vendor,price\n");
  r = run_cli("run " + common() + " --plan " + data_file("plan_winnow_c1.json") + " --data " +
              g_tmp + "/empty_data");
  expect(r.exit_code == 0 && r.out == "isbn,vendor,price\n",
         "empty data produces a header-only CSV");

  // a row order on which the single-pass algorithm is wrong for C1
  fs::create_directories(g_tmp + "/reordered");
  write_file(g_tmp + "/reordered/Book.csv",
             "isbn,vendor,price\n"
             "0679726691,QualityBooks,18.80\n"
             "0062059041,BooksForLess,7.30\n"
             "0679726691,LowestPrices,13.50\n");
  r = run_cli("run " + common() + " --plan " + data_file("plan_winnow_c1.json") + " --data " +
              g_tmp + "/reordered --algo wwo --verify");
  expect(r.exit_code == 3, "forced WWO on a non-weak-order input fails verification (exit 3)");

  r = run_cli("run " + common() + " --plan " + data_file("plan_winnow_c1.json") + " --data " +
              g_tmp + "/reordered --algo bnl --verify");
  expect(r.exit_code == 0, "BNL passes verification on the same input");

  r = run_cli("run " + common() + " --deps " + data_file("deps_isbn_price.txt") +
              " --check-deps --plan " + data_file("plan_winnow_c1.json") + " --data " + g_data);
  expect(r.exit_code == 2 && r.err.find("violated") != std::string::npos,
         "declared dependencies are checked against the data when asked");

  // optimize: plan and trace as one JSON document; rules can be disabled
  r = run_cli("optimize " + common() + " --deps " + data_file("deps_isbn_price.txt") +
              " --plan " + data_file("plan_winnow_c1.json"));
  expect(r.exit_code == 0 && r.out.find("\"rule\": \"R1\"") != std::string::npos,
         "optimize explains the winnow removal");

  r = run_cli("optimize " + common() + " --deps " + data_file("deps_isbn_price.txt") +
              " --plan " + data_file("plan_winnow_c1.json") + " --no-rule R1");
  expect(r.exit_code == 0 && r.out.find("\"trace\": []") != std::string::npos &&
             r.out.find("\"op\": \"winnow\"") != std::string::npos,
         "disabling R1 keeps the winnow and yields an empty trace");

  r = run_cli("optimize " + common() + " --plan " + data_file("plan_select_winnow.json"));
  expect(r.exit_code == 0 && r.out.find("\"rule\": \"R4\"") != std::string::npos,
         "the selection is pushed below the winnow");

  r = run_cli("optimize " + common() + " --plan " + data_file("plan_winnow_c1.json"));
  expect(r.exit_code == 0 && r.out.find("\"trace\": []") != std::string::npos,
         "an already-optimal plan is returned unchanged with an empty trace");

  r = run_cli("optimize " + common() + " --plan " + data_file("plan_winnow_over_select.json"));
  expect(r.exit_code == 0 && r.out.find("\"algo\": \"wwo\"") != std::string::npos,
         "a single-isbn selection below the winnow licenses the single-pass algorithm");

  // gen: deterministic bundles that round-trip through check
  CliResult gen1 = run_cli("gen m3sat --size 6 --seed 5 --out " + g_tmp + "/bundle");
  CliResult gen2 = run_cli("gen m3sat --size 6 --seed 5");
  expect(gen1.exit_code == 0 && gen1.out == gen2.out, "gen output is deterministic in the seed");
  expect(gen1.out.find("# seed: 5") != std::string::npos, "the seed is printed");

  std::ifstream expected_in(g_tmp + "/bundle/expected.txt");
  std::string prop, verdict;
  expected_in >> prop >> verdict;
  r = run_cli("check " + prop + " --schema " + g_tmp + "/bundle/schema.txt --prefs " + g_tmp +
              "/bundle/prefs.txt --deps " + g_tmp + "/bundle/deps.txt --pref C");
  int want = verdict == "entailed" || verdict == "holds" ? 0 : 1;
  expect(r.exit_code == want, "the generated bundle's verdict matches the recorded expectation");

  r = run_cli("gen m3sat --size 40");
  expect(r.exit_code == 2, "over-sized generator requests exit 2");

  r = run_cli("gen 3color --preset k4");
  expect(r.exit_code == 0 && r.out.find("# expected: holds") != std::string::npos,
         "the complete graph on four vertices is not 3-colorable");

  if (g_failures == 0) {
    std::printf("all cli checks passed\n");
  } else {
    std::printf("%d cli checks FAILED\n", g_failures);
  }
  return g_failures == 0 ? 0 : 1;
}

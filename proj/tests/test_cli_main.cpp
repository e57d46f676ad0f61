// End-to-end tests of the lpb command-line tool. The binary path arrives in
// the LPB_CLI environment variable (set by ctest).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

std::string cli_path() {
  const char* env = std::getenv("LPB_CLI");
  REQUIRE_MESSAGE(env != nullptr, "LPB_CLI must point at the lpb binary");
  return env;
}

fs::path work_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("lpb_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " > " +
                          (work_dir() / "stdout.txt").string() + " 2> " +
                          (work_dir() / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -2;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), ("missing file: " + path.string()));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

std::vector<std::vector<double>> parse_csv(const std::string& text,
                                           std::string* header = nullptr) {
  std::vector<std::vector<double>> rows;
  std::stringstream ss(text);
  std::string line;
  bool first = true;
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    if (first) {
      if (header != nullptr) *header = line;
      first = false;
      continue;
    }
    if (line.find('=') != std::string::npos) continue;  // summary line
    std::vector<double> row;
    std::stringstream ls(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(ls, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (...) {
        numeric = false;
      }
    }
    if (numeric) rows.push_back(std::move(row));
  }
  return rows;
}

fs::path gaussian_prior_file() {
  const fs::path path = work_dir() / "gaussian.json";
  write_file(path, "{\"type\":\"gaussian\",\"mean\":[0.0],\"cov\":[[1.0]]}");
  return path;
}

}  // namespace

TEST_CASE("cli: estimate tabulates the linear estimator for the matched prior") {
  const fs::path prior = gaussian_prior_file();
  const fs::path out = work_dir() / "est.csv";
  REQUIRE(run("estimate --prior " + prior.string() + " --p 2 --y-range -2:2:1 --out " +
              out.string()) == 0);
  std::string header;
  const auto rows = parse_csv(read_file(out), &header);
  CHECK(header == "y,f");
  REQUIRE(rows.size() == 5);
  for (const auto& row : rows) CHECK(std::abs(row[1] - 0.5 * row[0]) <= 1e-8);
}

TEST_CASE("cli: estimate with a single-atom prior emits a constant column") {
  const fs::path prior = work_dir() / "atom.json";
  write_file(prior, "{\"type\":\"atomic\",\"atoms\":[0.0],\"probs\":[1.0]}");
  const fs::path out = work_dir() / "est_atom.csv";
  REQUIRE(run("estimate --prior " + prior.string() +
              " --p 1.5 --y-range -2:2:0.5 --out " + out.string()) == 0);
  for (const auto& row : parse_csv(read_file(out))) CHECK(row[1] == 0.0);
}

TEST_CASE("cli: verify pass and fail exit codes") {
  const fs::path prior = gaussian_prior_file();
  const fs::path out = work_dir() / "ver.csv";
  CHECK(run("verify --prior " + prior.string() + " --A 0.5 --p 1.5 --out " +
            out.string()) == 0);
  const std::string content = read_file(out);
  CHECK(content.find("pass=true") != std::string::npos);
  CHECK(content.find("max_norm=") != std::string::npos);

  CHECK(run("verify --prior " + prior.string() + " --A 0.3 --p 1.5 --out " +
            out.string()) == 1);
  CHECK(read_file(out).find("pass=false") != std::string::npos);
}

TEST_CASE("cli: construct-prior lists frequencies and writes a loadable prior") {
  const fs::path out = work_dir() / "cosine.json";
  REQUIRE(run("construct-prior --p 4 --a 0.5 --rho 1 --theta 0 --out " +
              out.string()) == 0);
  const std::string stdout_text = read_file(work_dir() / "stdout.txt");
  CHECK(stdout_text.find("omega candidates:") != std::string::npos);
  CHECK(stdout_text.find("1.7320508075688772") != std::string::npos);

  const std::string prior_json = read_file(out);
  CHECK(prior_json.find("\"type\": \"cosine\"") != std::string::npos);

  // density table companion exists and is normalized on its grid
  const auto rows = parse_csv(read_file(work_dir() / "cosine_density.csv"));
  REQUIRE(rows.size() > 100);
  double integral = 0.0;
  for (size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i][1] >= 0.0);
    integral += 0.5 * (rows[i][1] + rows[i - 1][1]) * (rows[i][0] - rows[i - 1][0]);
  }
  CHECK(std::abs(integral - 1.0) <= 1e-8);

  // round trip: the emitted prior drives verify at p = 4 with A = 0.5
  const fs::path ver = work_dir() / "cosine_ver.csv";
  CHECK(run("verify --prior " + out.string() + " --A 0.5 --p 4 --out " +
            ver.string()) == 0);

  // construction is impossible at p = 2
  CHECK(run("construct-prior --p 2 --a 0.5 --rho 1 --theta 0 --out " +
            (work_dir() / "none.json").string()) == 4);

  // non-even p > 2 still yields at least one positive frequency
  REQUIRE(run("construct-prior --p 3 --a 0.5 --rho 1 --theta 0 --out " +
              (work_dir() / "cosine_p3.json").string()) == 0);
  const std::string p3_stdout = read_file(work_dir() / "stdout.txt");
  CHECK(p3_stdout.find("selected omega = 2.124") != std::string::npos);
}

TEST_CASE("cli: estimate is linear for the constructed cosine prior at p = 4") {
  const fs::path cosine = work_dir() / "cosine.json";
  if (!fs::exists(cosine)) {
    REQUIRE(run("construct-prior --p 4 --a 0.5 --rho 1 --theta 0 --out " +
                cosine.string()) == 0);
  }
  const fs::path out = work_dir() / "est_cosine.csv";
  REQUIRE(run("estimate --prior " + cosine.string() +
              " --p 4 --y-range -2:2:0.5 --out " + out.string()) == 0);
  for (const auto& row : parse_csv(read_file(out)))
    CHECK(std::abs(row[1] - 0.5 * row[0]) <= 1e-4);
}

TEST_CASE("cli: fig1 emits normalized nonnegative density columns") {
  const fs::path out = work_dir() / "fig1.csv";
  REQUIRE(run("fig1 --out " + out.string()) == 0);
  std::string header;
  const auto rows = parse_csv(read_file(out), &header);
  CHECK(header.find("x,density_omega_0,density_omega_1.73205080757") == 0);
  REQUIRE(rows.size() > 1000);
  for (size_t c = 1; c < rows[0].size(); ++c) {
    double integral = 0.0;
    for (size_t i = 1; i < rows.size(); ++i) {
      CHECK(rows[i][c] >= 0.0);
      integral += 0.5 * (rows[i][c] + rows[i - 1][c]) * (rows[i][0] - rows[i - 1][0]);
    }
    CHECK(std::abs(integral - 1.0) <= 1e-8);
  }

  // rho = 0 collapses to the single Gaussian column
  const fs::path out0 = work_dir() / "fig1_rho0.csv";
  REQUIRE(run("fig1 --rho 0 --out " + out0.string()) == 0);
  std::string header0;
  parse_csv(read_file(out0), &header0);
  CHECK(header0 == "x,density_omega_0");
}

TEST_CASE("cli: scan-linearity verdicts") {
  const fs::path cosine = work_dir() / "cosine.json";
  if (!fs::exists(cosine)) {
    REQUIRE(run("construct-prior --p 4 --a 0.5 --rho 1 --theta 0 --out " +
                cosine.string()) == 0);
  }
  const fs::path out = work_dir() / "scan.csv";
  REQUIRE(run("scan-linearity --prior " + cosine.string() +
              " --p 4 --y-range -2:2:0.25 --out " + out.string()) == 0);
  CHECK(read_file(out).find("linear") != std::string::npos);

  REQUIRE(run("scan-linearity --prior " + cosine.string() +
              " --p 1.5 --y-range -2:2:0.25 --out " + out.string()) == 0);
  CHECK(read_file(out).find("nonlinear") != std::string::npos);
}

TEST_CASE("cli: byte-identical outputs for identical configurations") {
  const fs::path prior = gaussian_prior_file();
  const fs::path o1 = work_dir() / "det1.csv";
  const fs::path o2 = work_dir() / "det2.csv";
  const std::string args = " --prior " + prior.string() +
                           " --p 1.5 --y-range -3:3:0.5 --seed 0 --format csv --out ";
  REQUIRE(run("estimate" + args + o1.string()) == 0);
  REQUIRE(run("estimate" + args + o2.string()) == 0);
  CHECK(read_file(o1) == read_file(o2));
}

TEST_CASE("cli: json output mirrors the csv fields") {
  const fs::path prior = gaussian_prior_file();
  const fs::path out = work_dir() / "ver.json";
  CHECK(run("verify --prior " + prior.string() +
            " --A 0.5 --p 2 --format json --out " + out.string()) == 0);
  const std::string text = read_file(out);
  CHECK(text.find("\"max_norm\"") != std::string::npos);
  CHECK(text.find("\"pass\": true") != std::string::npos);
  CHECK(text.find("\"rows\"") != std::string::npos);
}

TEST_CASE("cli: usage and input errors exit with code 2") {
  CHECK(run("estimate --prior /nonexistent.json --out " +
            (work_dir() / "x.csv").string()) == 2);
  CHECK(run("nonsense-subcommand") == 2);
  CHECK(run("estimate") == 2);  // missing required flags

  const fs::path badjson = work_dir() / "bad.json";
  write_file(badjson, "{not json");
  CHECK(run("estimate --prior " + badjson.string() + " --out " +
            (work_dir() / "x.csv").string()) == 2);

  // improper-prior input surfaces as an input error
  const fs::path improper = work_dir() / "improper.json";
  write_file(improper,
             "{\"type\":\"gaussian\",\"mean\":[0.0],\"cov\":[[-1.0]]}");
  CHECK(run("estimate --prior " + improper.string() + " --out " +
            (work_dir() / "x.csv").string()) == 2);
}

TEST_CASE("cli: decimal-string numbers are accepted in prior files") {
  const fs::path prior = work_dir() / "strings.json";
  write_file(prior,
             "{\"type\":\"cosine\",\"a\":\"0.5\",\"rho\":\"1.0\","
             "\"theta\":\"0\",\"omega\":\"1.7320508075688772\"}");
  const fs::path out = work_dir() / "est_str.csv";
  CHECK(run("estimate --prior " + prior.string() + " --p 4 --y-range -1:1:1 --out " +
            out.string()) == 0);
}

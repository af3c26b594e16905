#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const std::string kCli = FREEMULT_CLI_PATH;
const std::string kData = FREEMULT_DATA_DIR;

struct Workdir {
  fs::path dir = fs::temp_directory_path() / ("freemult-cli-" + std::to_string(::getpid()));
  Workdir() { fs::create_directories(dir); }
  ~Workdir() { fs::remove_all(dir); }
  [[nodiscard]] std::string path(const std::string& name) const { return (dir / name).string(); }
};

int run(const std::string& args, const Workdir& w) {
  const std::string cmd = kCli + " " + args + " > " + w.path("stdout.txt") + " 2> " + w.path("stderr.txt");
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string data(const std::string& name) { return kData + "/" + name; }

}  // namespace

TEST_CASE("cli: density of Haar is constant") {
  Workdir w;
  REQUIRE(run("density --measure " + data("haar.json") + " --grid 256 -o " + w.path("h.csv"), w) == 0);
  const auto csv = slurp(w.path("h.csv"));
  CHECK(csv.rfind("# config: {", 0) == 0);
  CHECK(csv.find("\ntheta,density\n") != std::string::npos);
  std::size_t rows = 0;
  std::size_t pos = csv.find("theta,density\n") + 14;
  while (pos < csv.size()) {
    const auto end = csv.find('\n', pos);
    const auto comma = csv.find(',', pos);
    CHECK(std::abs(std::stod(csv.substr(comma + 1, end - comma - 1)) - 0.15915494309189535) < 1e-15);
    ++rows;
    pos = end + 1;
  }
  CHECK(rows == 256);
  CHECK(slurp(w.path("stdout.txt")).rfind("mass 1", 0) == 0);
}

TEST_CASE("cli: circle normal support edge at t = 2") {
  Workdir w;
  REQUIRE(run("density --measure " + data("circle-normal-t2.json") + " --grid 512 -o " + w.path("n.csv"), w) == 0);
  std::ifstream in(w.path("n.csv"));
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  double last = -10.0;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    if (std::stod(line.substr(comma + 1)) > 0.0) last = std::stod(line.substr(0, comma));
  }
  CHECK(std::abs(last - (1.0 + std::acos(-1.0) / 2.0)) <= 2.0 * std::acos(-1.0) / 512.0);
}

TEST_CASE("cli: half-line density support") {
  Workdir w;
  REQUIRE(run("density --measure " + data("halfline-normal.json") + " --grid 256 --format json -o " + w.path("x.json"), w) == 0);
  const auto doc = nlohmann::json::parse(slurp(w.path("x.json")));
  CHECK(doc["abscissa"] == "x");
  for (const auto& x : doc["abscissae"]) {
    CHECK(x.get<double>() >= 0.047);
    CHECK(x.get<double>() <= 21.1);
  }
  CHECK(std::abs(doc["mass"].get<double>() - 1.0) < 1e-6);
}

TEST_CASE("cli: convolve reports series, mean and certificates") {
  Workdir w;
  REQUIRE(run("convolve --measure " + data("dirac.json") + " --measure " + data("atomic-pair-a.json") + " -o " + w.path("c.json"), w) == 0);
  auto doc = nlohmann::json::parse(slurp(w.path("c.json")));
  CHECK(doc["eta_series"].size() == 13);
  CHECK(doc["sigma_product_check"] == "pass");
  CHECK(doc["max_r_fix"].get<double>() < 1e-10);
  CHECK(doc["config"]["order"] == 12);

  REQUIRE(run("convolve --measure " + data("two-point.json") + " --measure " + data("two-point.json") + " -o " + w.path("h.json"), w) == 0);
  doc = nlohmann::json::parse(slurp(w.path("h.json")));
  for (const auto& c : doc["eta_series"]) CHECK(std::hypot(c[0].get<double>(), c[1].get<double>()) < 1e-10);

  REQUIRE(run("convolve --measure " + data("atomic-pair-a.json") + " --measure " + data("atomic-pair-b.json") + " -o " + w.path("p.json"), w) == 0);
  CHECK(nlohmann::json::parse(slurp(w.path("p.json")))["sigma_product_check"] == "pass");
}

TEST_CASE("cli: verify suites and exit codes") {
  Workdir w;
  CHECK(run("verify --suite thm11 --measure " + data("dirac.json") + " --t 1 --tol 1e-8 -o " + w.path("v.json"), w) == 0);
  const auto doc = nlohmann::json::parse(slurp(w.path("v.json")));
  CHECK(doc["pass"] == true);
  CHECK(doc["grid"].size() == 128);
  CHECK(doc.contains("max_residual"));
  CHECK(doc.contains("params"));
  CHECK(run("verify --suite thm11 --measure " + data("haar.json") + " --t 1 --tol 1e-10 -o " + w.path("v.json"), w) == 0);
  CHECK(run("verify --suite cor313 --measure " + data("two-point.json") + " --measure " + data("three-quarter-i.json") +
                " --tol 1e-8 -o " + w.path("v.json"),
            w) == 0);
  CHECK(run("verify --suite thm45 --measure " + data("halfline-pair.json") + " --t 1 --tol 1e-8 -o " + w.path("v.json"), w) == 0);
  CHECK(run("verify --suite semigroup --measure " + data("rotated-normal.json") + " --t 0.5 --s 0.7 --tol 1e-7 -o " +
                w.path("v.json"),
            w) != 2);
  // A tolerance below the achievable residual is a verification failure; one outside (0, 1e-4] is bad input.
  CHECK(run("verify --suite thm11 --measure " + data("three-quarter-minus-one.json") + " --t 2 --tol 1e-3 -o " + w.path("v.json"), w) == 2);
  CHECK(run("verify --suite thm11 --measure " + data("three-quarter-minus-one.json") + " --t 2 --tol 1e-30 -o " + w.path("v.json"), w) == 1);
  CHECK(run("verify --suite thm11 --measure " + data("three-quarter-minus-one.json") + " --t 2 --tol 1e-17 -o " + w.path("v.json"), w) == 1);
}

TEST_CASE("cli: input errors exit 2 with a machine-readable line") {
  Workdir w;
  CHECK(run("density --measure /nonexistent.json -o " + w.path("x.csv"), w) == 2);
  const auto err = nlohmann::json::parse(slurp(w.path("stderr.txt")));
  CHECK(err["error"] == "SpecParse");
  CHECK(err["exit_code"] == 2);
  CHECK(run("density --measure " + data("haar.json") + " --grid 3 -o " + w.path("x.csv"), w) == 2);
  CHECK(run("verify --suite thm11 --measure " + data("dirac.json") + " --tol 0.1 -o " + w.path("x.json"), w) == 2);
  CHECK(run("verify --suite thm11 --measure " + data("halfline-normal.json") + " -o " + w.path("x.json"), w) == 2);
  CHECK(run("bogus", w) == 2);
  CHECK(run("density --measure " + data("halfline-pair.json") + " -o " + w.path("x.csv"), w) == 2);
}

TEST_CASE("cli: empty level exits 3") {
  Workdir w;
  CHECK(run("levelcurve --which arg-phi --levels 5 -o " + w.path("e.svg"), w) == 3);
  const auto err = nlohmann::json::parse(slurp(w.path("stderr.txt")));
  CHECK(err["error"] == "EmptyLevel");
  CHECK(!fs::exists(w.path("e.svg")));
}

TEST_CASE("cli: level curves emit svg and csv twins") {
  Workdir w;
  REQUIRE(run("levelcurve --which arg-phi --levels 0 -o " + w.path("g.svg"), w) == 0);
  const auto svg = slurp(w.path("g.svg"));
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("<metadata>") != std::string::npos);
  std::ifstream in(w.path("g.csv"));
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  CHECK(line == "level,polyline,vertex,r,theta");
  double rmin = 10.0;
  double rmax = 0.0;
  while (std::getline(in, line)) {
    std::size_t p = 0;
    for (int k = 0; k < 3; ++k) p = line.find(',', p) + 1;
    const double r = std::stod(line.substr(p, line.find(',', p) - p));
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
  }
  CHECK(std::abs(rmin - (2.0 - std::sqrt(3.0))) < 1e-6);
  CHECK(std::abs(rmax - (2.0 + std::sqrt(3.0))) < 1e-6);

  REQUIRE(run("levelcurve --which mod-phi --t 5 --levels 1 -o " + w.path("f.svg"), w) == 0);
  CHECK(fs::exists(w.path("f.csv")));
}

TEST_CASE("cli: identical configs give identical bytes") {
  Workdir w;
  for (const std::string args : {"density --measure " + data("circle-normal-t2.json") + " --grid 64 --route poisson -o " + w.path("d.csv"),
                                 "convolve --measure " + data("atomic-pair-a.json") + " --measure " + data("three-quarter-i.json") + " -o " + w.path("d.csv"),
                                 "levelcurve --which mod-phi --t 2 --levels 1 0.5 -o " + w.path("d.csv") + " --format csv"}) {
    REQUIRE(run(args, w) == 0);
    const auto first = slurp(w.path("d.csv"));
    REQUIRE(run(args, w) == 0);
    CHECK(first == slurp(w.path("d.csv")));
  }
}

TEST_CASE("cli: thread cap does not change results") {
  Workdir w;
  const std::string args = "density --measure " + data("circle-normal-t5.json") + " --grid 128 -o " + w.path("t.csv");
  REQUIRE(run(args, w) == 0);
  const auto many = slurp(w.path("t.csv"));
  const std::string cmd = "FREEMULT_THREADS=1 " + kCli + " " + args + " > /dev/null";
  REQUIRE(std::system(cmd.c_str()) == 0);
  CHECK(many == slurp(w.path("t.csv")));
}

// End-to-end tests for the command-line tool.  The binary path arrives in
// the SPHMAX_CLI environment variable; commands run through popen and the
// outputs are compared against direct library calls.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "sphmax/grid.hpp"
#include "sphmax/io.hpp"
#include "sphmax/operators.hpp"

namespace {

using sphmax::field::Field;
using sphmax::field::GridSpec;
using cplx = std::complex<double>;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

std::string cli_path() {
  const char* env = std::getenv("SPHMAX_CLI");
  REQUIRE(env != nullptr);
  return env;
}

// Runs the CLI with the given arguments, capturing stdout (and stderr when
// merge_stderr is set).
RunResult run_cli(const std::string& args, bool merge_stderr = false) {
  std::string cmd = cli_path() + " " + args;
  if (merge_stderr) cmd += " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof(buf), pipe)) > 0)
    result.output.append(buf, got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::filesystem::path scratch_dir() {
  static const std::filesystem::path dir = [] {
    auto d = std::filesystem::temp_directory_path() /
             ("sphmax_cli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir;
}

std::string scratch(const std::string& name) {
  return (scratch_dir() / name).string();
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

Field random_test_field(std::uint64_t seed) {
  GridSpec spec;
  spec.dim = 2;
  spec.points_per_axis = 64;
  spec.box_length = 4.0;
  Field f = sphmax::field::make_field(spec);
  std::uint64_t state = seed;
  for (auto& z : f.data) {
    // xorshift; deterministic and independent of library RNG choices.
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    const double re = static_cast<double>(state >> 11) * 0x1.0p-53 - 0.5;
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    const double im = static_cast<double>(state >> 11) * 0x1.0p-53 - 0.5;
    z = cplx(re, im);
  }
  return f;
}

double max_abs_diff(const Field& a, const Field& b) {
  REQUIRE(a.data.size() == b.data.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i)
    worst = std::max(worst, std::abs(a.data[i] - b.data[i]));
  return worst;
}

}  // namespace

TEST_CASE("exponents: point rows carry exact rational values") {
  const RunResult r = run_cli("exponents --n 3 --point 3/5,1/5");
  CHECK(r.exit_code == 0);
  const auto lines = split_lines(r.output);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "inv_p,inv_q,sigma,d,s,region,s_region");
  const auto cells = split_csv(lines[1]);
  REQUIRE(cells.size() == 7);
  CHECK(cells[0] == "3/5");
  CHECK(cells[1] == "1/5");
  CHECK(cells[2] == "0/1");  // sigma vanishes on the boundary
  CHECK(cells[3] == "0/1");  // so does the d exponent
  CHECK(cells[5] == "boundary");

  const RunResult r2 = run_cli("exponents --n 2 --point 1/2,1/2");
  CHECK(r2.exit_code == 0);
  const auto cells2 = split_csv(split_lines(r2.output).at(1));
  CHECK(cells2[2] == "0/1");  // sigma_2
  CHECK(cells2[3] == "");     // d undefined in the plane
  CHECK(cells2[4] == "0/1");  // s_2
}

TEST_CASE("exponents: multiple points and grids accumulate rows") {
  const RunResult r =
      run_cli("exponents --n 4 --point 1/2,1/4 --point 0/1,0/1");
  CHECK(r.exit_code == 0);
  CHECK(split_lines(r.output).size() == 3);

  const RunResult g = run_cli("exponents --n 3 --grid 6");
  CHECK(g.exit_code == 0);
  // Admissible lattice 0 <= j <= i <= 6 has 7*8/2 = 28 points.
  CHECK(split_lines(g.output).size() == 29);
}

TEST_CASE("exponents: rejects inadmissible input and bare invocation") {
  CHECK(run_cli("exponents --n 3 --point 1/4,1/2", true).exit_code == 2);
  CHECK(run_cli("exponents --n 3", true).exit_code == 2);
  CHECK(run_cli("exponents --n 3 --point nonsense", true).exit_code == 2);
  CHECK(run_cli("exponents --n 1 --point 0/1,0/1", true).exit_code == 2);
}

TEST_CASE("exponents: figure polygon lists the exact planar vertices") {
  const RunResult r = run_cli("exponents --n 3 --figure1");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"A\": [\"1/4\", \"1/4\"]") != std::string::npos);
  CHECK(r.output.find("\"B\": [\"3/7\", \"2/7\"]") != std::string::npos);
  CHECK(r.output.find("\"C\": [\"1/2\", \"1/2\"]") != std::string::npos);
  CHECK(r.output.find("\"D\": [\"1/1\", \"1/1\"]") != std::string::npos);
  CHECK(r.output.find("\"E\": [\"1/1\", \"0/1\"]") != std::string::npos);
  CHECK(r.output.find("\"s0\": \"2/7\"") != std::string::npos);

  // --out writes the same bytes to a file.
  const std::string path = scratch("figure.json");
  CHECK(run_cli("exponents --n 3 --figure1 --out " + path).exit_code == 0);
  CHECK(sphmax::io::read_text_file(path) == r.output);
}

TEST_CASE("multiplier: zero-radius sample reproduces the unit-ball volume") {
  const RunResult r =
      run_cli("multiplier --n 2 --alpha 1+0i --rmax 0.001 --samples 8");
  CHECK(r.exit_code == 0);
  const auto lines = split_lines(r.output);
  REQUIRE(lines.size() == 9);
  CHECK(lines[0] == "r,re,im");
  const auto cells = split_csv(lines[1]);
  CHECK(std::stod(cells[0]) == 0.0);
  CHECK(std::stod(cells[1]) ==
        doctest::Approx(std::acos(-1.0)).epsilon(1e-12));
  CHECK(std::stod(cells[2]) == 0.0);
}

TEST_CASE("multiplier: three-dimensional mean-zero order follows the sinc law") {
  const RunResult r =
      run_cli("multiplier --n 3 --alpha 0+0i --rmax 8 --samples 64");
  CHECK(r.exit_code == 0);
  const auto lines = split_lines(r.output);
  REQUIRE(lines.size() == 65);
  const double pi = std::acos(-1.0);
  for (const std::size_t idx : {std::size_t{1}, std::size_t{20},
                                std::size_t{47}, std::size_t{64}}) {
    const auto cells = split_csv(lines[idx]);
    const double rr = std::stod(cells[0]);
    const double expect =
        rr == 0.0 ? 1.0 : std::sin(2.0 * pi * rr) / (2.0 * pi * rr);
    CHECK(std::stod(cells[1]) == doctest::Approx(expect).epsilon(1e-10));
    CHECK(std::stod(cells[2]) == 0.0);
  }
}

TEST_CASE("multiplier: decomposition dump balances and its residual decays") {
  const std::string path = scratch("dec.csv");
  const RunResult r = run_cli(
      "multiplier --n 2 --alpha 0+1i --decompose 3 4 --out " + path);
  CHECK(r.exit_code == 0);

  // Summary block on stdout when the CSV goes to a file.
  double slope = 0.0;
  for (const auto& line : split_lines(r.output))
    if (line.rfind("residual_log2_slope=", 0) == 0)
      slope = std::stod(line.substr(line.find('=') + 1));
  CHECK(slope < -3.2);

  const auto lines = split_lines(sphmax::io::read_text_file(path));
  REQUIRE(lines.size() == 801);
  for (const std::size_t idx :
       {std::size_t{1}, std::size_t{400}, std::size_t{800}}) {
    const auto c = split_csv(lines[idx]);
    REQUIRE(c.size() == 11);
    const double sym_re = std::stod(c[1]), sym_im = std::stod(c[2]);
    const double sum_re =
        std::stod(c[3]) + std::stod(c[5]) + std::stod(c[7]) + std::stod(c[9]);
    const double sum_im =
        std::stod(c[4]) + std::stod(c[6]) + std::stod(c[8]) + std::stod(c[10]);
    CHECK(sum_re == doctest::Approx(sym_re).epsilon(1e-12));
    CHECK(sum_im == doctest::Approx(sym_im).epsilon(1e-12));
  }

  CHECK(run_cli("multiplier --n 2 --decompose 3", true).exit_code == 2);
  CHECK(run_cli("multiplier --n 2 --decompose 3 4 --rmax 8", true)
            .exit_code == 2);
}

TEST_CASE("apply: operators on a stored field match direct library calls") {
  namespace op = sphmax::operators;
  const Field f = random_test_field(42u);
  const std::string in = scratch("in.fld");
  const std::string out = scratch("out.fld");
  sphmax::field::write_field(f, in);

  const cplx alpha(0.5, 0.0);
  CHECK(run_cli("apply --in " + in + " --out " + out +
                " --op mean --alpha 0.5+0i --t 1.25")
            .exit_code == 0);
  CHECK(max_abs_diff(sphmax::field::read_field(out),
                     op::spherical_mean(f, alpha, 1.25)) < 1e-13);

  CHECK(run_cli("apply --in " + in + " --out " + out +
                " --op halfwave+ --t 0.375")
            .exit_code == 0);
  CHECK(max_abs_diff(sphmax::field::read_field(out),
                     op::half_wave(f, 0.375, +1)) < 1e-13);

  CHECK(run_cli("apply --in " + in + " --out " + out + " --op bracket --s -2")
            .exit_code == 0);
  CHECK(max_abs_diff(sphmax::field::read_field(out),
                     op::bracket_power(f, -2.0)) < 1e-13);

  const std::string profile = scratch("profile.csv");
  CHECK(run_cli("apply --in " + in + " --out " + out +
                " --op cutoff --cutoff annular --j 1 --profile " + profile +
                " --bins 32")
            .exit_code == 0);
  op::CutoffSpec spec;
  spec.kind = op::CutoffSpec::Kind::AnnularBump;
  spec.j = 1;
  CHECK(max_abs_diff(sphmax::field::read_field(out),
                     op::apply_cutoff(f, spec)) < 1e-13);
  const auto profile_lines =
      split_lines(sphmax::io::read_text_file(profile));
  REQUIRE(profile_lines.size() >= 2);
  CHECK(profile_lines[0].find("radius") != std::string::npos);
}

TEST_CASE("apply: refusal and argument errors use distinct exit codes") {
  const Field f = random_test_field(7u);
  const std::string in = scratch("in2.fld");
  const std::string out = scratch("out2.fld");
  sphmax::field::write_field(f, in);
  // Low-pass scale far beyond the grid's resolvable band.
  CHECK(run_cli("apply --in " + in + " --out " + out +
                " --op cutoff --cutoff lowpass --M 4096", true)
            .exit_code == 3);
  CHECK(run_cli("apply --in " + in + " --out " + out + " --op nonsense", true)
            .exit_code == 2);
  CHECK(run_cli("apply --in " + scratch("missing.fld") + " --out " + out +
                " --op mean", true)
            .exit_code == 2);
}

TEST_CASE("maximal: pointwise maximum matches the library on a t-grid") {
  namespace op = sphmax::operators;
  const Field f = random_test_field(314u);
  const std::string in = scratch("in3.fld");
  const std::string out = scratch("out3.fld");
  sphmax::field::write_field(f, in);
  CHECK(run_cli("maximal --in " + in + " --out " + out +
                " --alpha 0+0i --tmin 1 --tmax 2 --tcount 5")
            .exit_code == 0);
  std::vector<double> ts{1.0, 1.25, 1.5, 1.75, 2.0};
  CHECK(max_abs_diff(sphmax::field::read_field(out),
                     op::maximal_over_t(f, cplx(0.0, 0.0), ts)) < 1e-13);

  CHECK(run_cli("maximal --in " + in + " --out " + out + " --tcount 0", true)
            .exit_code == 2);
  CHECK(run_cli("maximal --in " + in + " --out " + out +
                " --tmin -1 --tmax 2", true)
            .exit_code == 2);
}

TEST_CASE("experiment: runs are reproducible and manifests replay") {
  const std::string cfg = scratch("cfg.json");
  sphmax::io::write_text_file(cfg, R"({
    "family": "smoothing",
    "n": 2,
    "inv_p": "1/2",
    "inv_q": "1/2",
    "j_min": 3,
    "j_max": 4,
    "seed": 11,
    "tolerance": 0.05
  })");
  const std::string dir1 = scratch("run1");
  const std::string dir2 = scratch("run2");
  const std::string dir3 = scratch("run3");

  const RunResult r1 =
      run_cli("experiment --config " + cfg + " --outdir " + dir1);
  CHECK(r1.exit_code == 0);
  CHECK(r1.output.find("verdict=pass") != std::string::npos);
  for (const char* name : {"report.csv", "report.json", "manifest.json"})
    CHECK(std::filesystem::exists(dir1 + "/" + name));

  // Identical rerun: byte-identical reports.
  CHECK(run_cli("experiment --config " + cfg + " --outdir " + dir2)
            .exit_code == 0);
  CHECK(sphmax::io::read_text_file(dir1 + "/report.csv") ==
        sphmax::io::read_text_file(dir2 + "/report.csv"));
  CHECK(sphmax::io::read_text_file(dir1 + "/report.json") ==
        sphmax::io::read_text_file(dir2 + "/report.json"));

  // The manifest digests the outputs it lists.
  const std::string manifest =
      sphmax::io::read_text_file(dir1 + "/manifest.json");
  CHECK(manifest.find(sphmax::io::sha256_file(dir1 + "/report.csv")) !=
        std::string::npos);
  CHECK(manifest.find(sphmax::io::sha256_file(dir1 + "/report.json")) !=
        std::string::npos);
  CHECK(manifest.find("\"seed\": 11") != std::string::npos);
  CHECK(manifest.find("\"tool_version\"") != std::string::npos);

  // Replaying the manifest itself reproduces the reports bit for bit.
  CHECK(run_cli("experiment --config " + dir1 + "/manifest.json --outdir " +
                dir3)
            .exit_code == 0);
  CHECK(sphmax::io::read_text_file(dir1 + "/report.csv") ==
        sphmax::io::read_text_file(dir3 + "/report.csv"));
  CHECK(sphmax::io::read_text_file(dir1 + "/report.json") ==
        sphmax::io::read_text_file(dir3 + "/report.json"));
}

TEST_CASE("experiment: exit codes distinguish failure, misuse, refusal") {
  // A slope that cannot sit within a 1e-9 tolerance: verdict failure.
  const std::string fail_cfg = scratch("fail.json");
  sphmax::io::write_text_file(fail_cfg,
                              R"({"family": "focusing", "n": 2,
    "inv_p": "1/2", "inv_q": "0/1", "j_min": 3, "j_max": 4,
    "tolerance": 1e-9})");
  const RunResult rf = run_cli("experiment --config " + fail_cfg +
                               " --outdir " + scratch("failrun"));
  CHECK(rf.exit_code == 1);
  CHECK(rf.output.find("verdict=fail") != std::string::npos);

  // Inadmissible exponents: invalid config.
  const std::string bad_cfg = scratch("bad.json");
  sphmax::io::write_text_file(
      bad_cfg, R"({"family": "focusing", "inv_p": "1/4", "inv_q": "1/2"})");
  CHECK(run_cli("experiment --config " + bad_cfg + " --outdir " +
                scratch("badrun"), true)
            .exit_code == 2);

  // Unparseable JSON: invalid config.
  const std::string junk_cfg = scratch("junk.json");
  sphmax::io::write_text_file(junk_cfg, "not json at all");
  CHECK(run_cli("experiment --config " + junk_cfg + " --outdir " +
                scratch("junkrun"), true)
            .exit_code == 2);

  // Under-resolved explicit grid: refusal.
  const std::string coarse_cfg = scratch("coarse.json");
  sphmax::io::write_text_file(coarse_cfg,
                              R"({"family": "smoothing", "n": 2,
    "j_min": 3, "j_max": 3,
    "grids": [{"points_per_axis": 64, "box_length": "5"}]})");
  CHECK(run_cli("experiment --config " + coarse_cfg + " --outdir " +
                scratch("coarserun"), true)
            .exit_code == 3);

  // Missing config file: invalid config.
  CHECK(run_cli("experiment --config " + scratch("absent.json") +
                " --outdir " + scratch("absentrun"), true)
            .exit_code == 2);
}

TEST_CASE("selftest: passes clean and trips on injected faults") {
  const RunResult clean = run_cli("selftest");
  CHECK(clean.exit_code == 0);
  CHECK(clean.output.find("9/9 checks passed") != std::string::npos);
  CHECK(clean.output.find("[FAIL]") == std::string::npos);

  const RunResult s2 = run_cli("selftest --fault s2-branch");
  CHECK(s2.exit_code == 1);
  CHECK(s2.output.find("[FAIL] exponent-identity") != std::string::npos);

  const RunResult hk = run_cli("selftest --fault hankel-phase");
  CHECK(hk.exit_code == 1);
  CHECK(hk.output.find("[FAIL] hankel-expansion-decay") != std::string::npos);

  CHECK(run_cli("selftest --fault nonsense", true).exit_code == 2);
}

TEST_CASE("top level: version flag works and misuse exits with code 2") {
  const RunResult v = run_cli("--version");
  CHECK(v.exit_code == 0);
  CHECK(v.output.find("sphmax") != std::string::npos);
  CHECK(run_cli("", true).exit_code == 2);
  CHECK(run_cli("frobnicate", true).exit_code == 2);
  CHECK(run_cli("multiplier --n 2 --unknown-flag 3", true).exit_code == 2);
}

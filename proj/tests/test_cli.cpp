#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "cli.hpp"
#include "qclat/criteria.hpp"
#include "qclat/geometry.hpp"
#include "qclat/io.hpp"

using namespace qclat;

namespace {

struct Run {
  int code;
  json envelope;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run_command(args, out, err);
  Run r{code, json(), err.str()};
  if (code == 0 && !out.str().empty()) r.envelope = json::parse(out.str());
  return r;
}

std::string temp_file(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / ("qclat_cli_" + name);
  std::ofstream(p, std::ios::binary) << text;
  return p.string();
}

}  // namespace

TEST(Cli, BoundsC) {
  const auto r = run({"bounds", "C", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.envelope["payload"]["C"], 30.0);
  EXPECT_EQ(r.envelope["schema"], 1);
  EXPECT_EQ(r.envelope["command"], "bounds C");
  EXPECT_EQ(r.envelope["input_digest"].get<std::string>().size(), 64u);
}

TEST(Cli, OtherBounds) {
  EXPECT_EQ(run({"bounds", "L", "2"}).envelope["payload"]["L"], 32.0);
  const auto k = run({"bounds", "k-from-gap", "1e10"});
  EXPECT_NEAR(k.envelope["payload"]["K_lower"].get<double>(), k_lower_bound_from_gap(1e10), 0);
  const auto rb = run({"bounds", "ratio-bound", "1", "1"});
  EXPECT_EQ(rb.envelope["payload"]["ratio_bound"].get<double>(), ratio_bound_from_K_A(1, 1));
  EXPECT_EQ(run({"bounds", "C", "0.5"}).code, cli::kExitInput);
}

TEST(Cli, AnnulusModulus) {
  const auto r = run({"modulus", "annulus", "1", "2.718281828"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(r.envelope["payload"]["value"].get<double>(), 2 * std::numbers::pi, 1e-8);
  EXPECT_EQ(r.envelope["payload"]["method"], "analytic_annulus");
}

TEST(Cli, DecideOnE1Corpus) {
  const auto path = (std::filesystem::temp_directory_path() / "qclat_cli_e1.json").string();
  ASSERT_EQ(run({"--out", path, "corpus", "e1"}).code, 0);
  const auto r = run({"decide", path});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.envelope["payload"]["verdict"], "ExactNo");
  EXPECT_EQ(r.envelope["payload"]["theorem"], "Thm A");
}

TEST(Cli, PayloadEqualsLibraryCall) {
  const auto csv = temp_file("seq.csv", "-3,0\n-1,0\n0,0\n2,0\n6,0\n7,0\n");
  const auto r = run({"check-ratio", csv, "--base", "-2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto seq = build_sequence({-3, -1, 0, 2, 6, 7}, -2);
  EXPECT_EQ(r.envelope["payload"], json(ratio_report(seq)));
  const auto c = run({"check-ratio", csv, "--base", "-2", "--M", "1.5"});
  EXPECT_EQ(c.envelope["payload"], json(check_ratio(seq, 1.5)));

  const auto por = run({"porosity", csv, "--disks", "0,0,2;1,1,1", "--resolution", "32", "--c", "3"});
  ASSERT_EQ(por.code, 0) << por.err;
  const auto set = load_points(csv);
  const std::vector<Disk> disks{{{0, 0}, 2}, {{1, 1}, 1}};
  EXPECT_EQ(por.envelope["payload"], json(porosity_estimate(set, disks, 32, 3.0)));

  const auto tr = run({"turning", temp_file("poly.csv", "0,0\n10,0\n1,0\n")});
  EXPECT_EQ(tr.envelope["payload"]["a_hat"], 10.0);
}

TEST(Cli, DeterministicPayloadAndDigest) {
  const auto csv = temp_file("det.csv", "0,0\n1,0\n3,0\n4,0\n");
  const auto a = run({"extend", csv, "--grid", "-2,2,0,2,5"});
  const auto b = run({"extend", csv, "--grid", "-2,2,0,2,5"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.envelope["payload"].dump(), b.envelope["payload"].dump());
  EXPECT_EQ(a.envelope["input_digest"], b.envelope["input_digest"]);
  EXPECT_EQ(a.envelope["input_digest"], cli::sha256_hex("0,0\n1,0\n3,0\n4,0\n"));
}

TEST(Cli, Sha256KnownVector) {
  EXPECT_EQ(cli::sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Cli, SvgOutputs) {
  const auto csv = temp_file("svg.csv", "0,0\n1,0\n3,0\n4,0\n");
  const auto svg = (std::filesystem::temp_directory_path() / "qclat_cli_k.svg").string();
  const auto r = run({"dilatation", csv, "--grid", "-2,2,0.5,2.5,5", "--svg", svg});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream f(svg);
  std::string text((std::istreambuf_iterator<char>(f)), {});
  EXPECT_NE(text.find("<svg"), std::string::npos);
  EXPECT_NE(text.find("</svg>"), std::string::npos);
}

TEST(Cli, CondenserCommand) {
  const auto spec = temp_file("cond.json", R"({"box":[-2,2,-2,2],"h":0.125,
      "c1":{"shape":"disk","center":[0,0],"radius":0.5},
      "c2":{"shape":"outside_disk","center":[0,0],"radius":1.5}})");
  const auto r = run({"modulus", "condenser", spec});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.envelope["payload"]["method"], "grid_capacity");
  EXPECT_NEAR(r.envelope["payload"]["value"].get<double>(), annulus_modulus(0.5, 1.5), 0.1 * annulus_modulus(0.5, 1.5));
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, cli::kExitInput);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kExitInput);
  EXPECT_EQ(run({"check-ratio", "/nonexistent.csv"}).code, cli::kExitInput);
  EXPECT_EQ(run({"check-ratio", temp_file("bad.csv", "0,0\nzz\n")}).code, cli::kExitInput);
  EXPECT_EQ(run({"corpus", "nope"}).code, cli::kExitInput);
  // numeric failure: iteration budget too small to converge
  const auto spec = temp_file("cond2.json", R"({"box":[-2,2,-2,2],"h":0.125,
      "c1":{"shape":"disk","center":[0,0],"radius":0.5},
      "c2":{"shape":"outside_disk","center":[0,0],"radius":1.5}})");
  EXPECT_EQ(run({"modulus", "condenser", spec, "--max-iterations", "1"}).code, cli::kExitNumeric);
  std::ostringstream out, err;
  EXPECT_EQ(cli::run_command({"--help"}, out, err), cli::kExitOk);
}

TEST(Cli, VerdictsNeverInExitCode) {
  const auto csv = temp_file("geo.csv", "1,0\n2,0\n4,0\n8,0\n16,0\n32,0\n64,0\n128,0\n256,0\n512,0\n1024,0\n");
  const auto r = run({"decide", csv});
  EXPECT_EQ(r.code, 0);
  const auto p = run({"periodic", csv});
  EXPECT_EQ(p.code, cli::kExitInput);  // explicit set has no periodic descriptor
}

// Copyright 2026 The enlg Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "enlg/cli.h"

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "enlg/construct.h"
#include "enlg/io.h"
#include "enlg/random.h"

namespace enlg {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

struct CliRun {
  int status = -1;
  std::string out;
  std::string err;
  Json summary;
  std::string body;
};

CliRun Invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliRun r;
  r.status = RunCli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  const auto nl = r.out.find('\n');
  EXPECT_NE(nl, std::string::npos) << r.out;
  r.summary = Json::parse(r.out.substr(0, nl));  // line 1 is always JSON
  r.body = r.out.substr(nl + 1);
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() /
           (std::string("enlg_cli_") + info->name() + "_" +
            std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const {
    return (dir_ / name).string();
  }

  std::string WriteGame(const std::string& name, const QcGame& g) {
    GameFile file;
    file.name = name;
    file.game = g;
    WriteTextFile(Path(name + ".json"), SerializeGame(file));
    return Path(name + ".json");
  }

  std::string WriteStrategy(const std::string& name, const QcStrategy& s) {
    StrategyFile file;
    file.strategy = s;
    WriteTextFile(Path(name + ".json"), SerializeStrategy(file));
    return Path(name + ".json");
  }

  fs::path dir_;
};

// Q_00 = Q_11 = 0 and Q_01 = Q_10 = I: the players win exactly when a != b.
QcGame DisagreeGame(std::size_t n, std::size_t s, std::size_t m) {
  CounterRng rng(7, 0);
  QcGame g;
  g.n = n;
  g.s = s;
  g.m = m;
  g.num_a = 2;
  g.num_b = 2;
  g.rho = RandomDensity(n * s * m, rng);
  g.win_ops = {ComplexMatrix(s, s), ComplexMatrix::Identity(s),
               ComplexMatrix::Identity(s), ComplexMatrix(s, s)};
  return g;
}

// Every Q_{a,b} = I.
QcGame AlwaysWinGame(std::size_t n, std::size_t s, std::size_t m) {
  QcGame g = DisagreeGame(n, s, m);
  g.win_ops.assign(4, ComplexMatrix::Identity(s));
  return g;
}

// Answers a and b regardless of the question, with trivial ancillas.
QcStrategy FixedAnswers(const QcGame& g, std::size_t a, std::size_t b) {
  QcStrategy s;
  s.sigma = ComplexMatrix::Identity(1);
  s.alice = {ComplexMatrix(g.n, g.n), ComplexMatrix(g.n, g.n)};
  s.bob = {ComplexMatrix(g.m, g.m), ComplexMatrix(g.m, g.m)};
  s.alice[a] = ComplexMatrix::Identity(g.n);
  s.bob[b] = ComplexMatrix::Identity(g.m);
  return s;
}

TEST_F(CliTest, ConstructBuildsExpectedDimensions) {
  CounterRng rng(1, 0);
  const std::string game = WriteGame("g", RandomQcGame(2, 2, 2, 2, 2, rng));
  const CliRun r = Invoke({"construct", game, "-o", Path("h.json")});
  ASSERT_EQ(r.status, kExitOk) << r.out << r.err;
  EXPECT_EQ(r.summary["num_x"], 4);
  EXPECT_EQ(r.summary["num_y"], 4);
  EXPECT_EQ(r.summary["ref_dim"], 4);
  const GameFile h = LoadGame(Path("h.json"));
  ASSERT_FALSE(h.is_qc());
  EXPECT_EQ(h.extended().ref_dim, 4u);
  const CliRun v = Invoke({"validate", Path("h.json")});
  EXPECT_EQ(v.status, kExitOk) << v.out;
}

TEST_F(CliTest, NonPsdStateIsRejected) {
  CounterRng rng(2, 0);
  QcGame g = RandomQcGame(2, 1, 2, 2, 2, rng);
  g.rho(0, 0) -= 1.5;
  g.rho(3, 3) += 1.5;
  const CliRun r = Invoke({"construct", WriteGame("bad", g)});
  EXPECT_EQ(r.status, kExitValidation);
  EXPECT_EQ(r.summary["status"], "error");
  EXPECT_NE(r.summary["message"].get<std::string>().find("eigenvalue"),
            std::string::npos)
      << r.out;
}

TEST_F(CliTest, EvaluateFixedAnswers) {
  const QcGame g = DisagreeGame(2, 1, 2);
  const std::string game = WriteGame("disagree", g);
  const CliRun r =
      Invoke({"evaluate", game, WriteStrategy("s", FixedAnswers(g, 0, 1))});
  ASSERT_EQ(r.status, kExitOk) << r.out;
  EXPECT_NE(r.body.find("win probability:  1.000000000000"),
            std::string::npos)
      << r.body;
  EXPECT_NE(r.body.find("lose probability: 0.000000000000"),
            std::string::npos);
  const CliRun lose =
      Invoke({"evaluate", game, WriteStrategy("t", FixedAnswers(g, 0, 0))});
  EXPECT_EQ(lose.summary["win"].get<double>(), 0.0);
}

TEST_F(CliTest, DimensionMismatchNamesBothShapes) {
  CounterRng rng(3, 0);
  const QcGame g = RandomQcGame(2, 1, 2, 2, 2, rng);
  const QcGame other = RandomQcGame(3, 1, 2, 2, 2, rng);
  const std::string game = WriteGame("g", g);
  const std::string strategy =
      WriteStrategy("s", RandomQcStrategy(other, 1, 1, rng));
  const CliRun r = Invoke({"evaluate", game, strategy});
  EXPECT_EQ(r.status, kExitDimension) << r.out;
  const std::string msg = r.summary["message"];
  EXPECT_NE(msg.find("(2, 1, 2, 2, 2)"), std::string::npos) << msg;
  EXPECT_NE(msg.find("3x3 and 2x2, expected 2x2 and 2x2"), std::string::npos)
      << msg;
}

TEST_F(CliTest, CorruptedStrategyIsParseError) {
  const std::string game = WriteGame("win", AlwaysWinGame(2, 1, 2));
  std::string text = SerializeStrategy(
      StrategyFile{FixedAnswers(DisagreeGame(2, 1, 2), 0, 1), {}});
  text.resize(text.size() / 2);
  WriteTextFile(Path("broken.json"), text);
  const CliRun r = Invoke({"evaluate", game, Path("broken.json")});
  EXPECT_EQ(r.status, kExitParse);
  EXPECT_EQ(r.summary["error"], "Parse");
}

TEST_F(CliTest, UnknownOptionIsParseError) {
  const CliRun r = Invoke({"sweep", "--frobnicate"});
  EXPECT_EQ(r.status, kExitParse);
  EXPECT_EQ(r.summary["status"], "error");
}

TEST_F(CliTest, AdaptRoundTripAndReceipts) {
  CounterRng rng(4, 0);
  const QcGame g = RandomQcGame(2, 2, 2, 2, 2, rng);
  const QcStrategy s = RandomQcStrategy(g, 2, 1, rng);
  const std::string game = WriteGame("g", g);
  const std::string start = WriteStrategy("s", s);

  const CliRun fwd = Invoke(
      {"adapt", "qc-to-enlg", game, start, "-o", Path("fwd.json")});
  ASSERT_EQ(fwd.status, kExitOk) << fwd.out << fwd.err;
  EXPECT_EQ(fwd.summary["scale"], Json::array({1, 4}));
  EXPECT_LE(fwd.summary["residual"].get<double>(), 1e-9);
  const StrategyFile fwd_file = LoadStrategy(Path("fwd.json"));
  ASSERT_TRUE(fwd_file.receipt.has_value());

  // Evaluating the adapted strategy on H reproduces the receipt.
  ASSERT_EQ(Invoke({"construct", game, "-o", Path("h.json")}).status, 0);
  const CliRun ev = Invoke({"evaluate", Path("h.json"), Path("fwd.json")});
  ASSERT_EQ(ev.status, kExitOk) << ev.out;
  EXPECT_NEAR(ev.summary["lose"].get<double>(),
              fwd.summary["target_loss"].get<double>(), 1e-9);

  const CliRun back = Invoke(
      {"adapt", "enlg-to-qc", game, Path("fwd.json"), "-o", Path("b.json")});
  ASSERT_EQ(back.status, kExitOk) << back.out << back.err;
  EXPECT_EQ(back.summary["scale"], Json::array({4, 1}));
  EXPECT_LE(back.summary["residual"].get<double>(), 1e-9);
  EXPECT_NEAR(back.summary["target_loss"].get<double>(),
              1.0 - QcWinProbability(g, s).value, 1e-9);

  const CliRun again = Invoke(
      {"adapt", "qc-to-enlg", game, Path("b.json"), "-o", Path("f2.json")});
  ASSERT_EQ(again.status, kExitOk) << again.out;
  EXPECT_NEAR(again.summary["target_loss"].get<double>(),
              fwd.summary["target_loss"].get<double>(), 1e-9);
}

TEST_F(CliTest, AdaptWrongDirectionIsDimensionError) {
  const QcGame g = AlwaysWinGame(2, 1, 2);
  const CliRun r = Invoke({"adapt", "enlg-to-qc", WriteGame("win", g),
                           WriteStrategy("s", FixedAnswers(g, 0, 1))});
  EXPECT_EQ(r.status, kExitDimension);
}

TEST_F(CliTest, SweepAlwaysWin) {
  const std::string game = WriteGame("win", AlwaysWinGame(2, 1, 2));
  const CliRun r = Invoke({"sweep", game, "--dims", "1x1", "--restarts", "3",
                        "--no-timing", "-o", Path("sweep.csv")});
  ASSERT_EQ(r.status, kExitOk) << r.out << r.err;
  const std::string csv = ReadTextFile(Path("sweep.csv"));
  std::istringstream lines(csv);
  std::string header, row, extra;
  std::getline(lines, header);
  std::getline(lines, row);
  EXPECT_FALSE(std::getline(lines, extra));
  EXPECT_EQ(header, kSweepCsvHeader);
  EXPECT_EQ(row.rfind("1,1.0,3,", 0), 0u) << row;
  EXPECT_EQ(row.substr(row.size() - 4), ",0.0");
}

TEST_F(CliTest, SweepRejectsNonBinaryAnswers) {
  CounterRng rng(5, 0);
  const std::string game = WriteGame("tri", RandomQcGame(2, 1, 2, 3, 2, rng));
  const CliRun r = Invoke({"sweep", game, "--dims", "1x1", "--restarts", "1"});
  EXPECT_EQ(r.status, kExitUnsupported) << r.out;
}

TEST_F(CliTest, SweepIsDeterministicWithoutTiming) {
  CounterRng rng(6, 0);
  const std::string game = WriteGame("g", RandomQcGame(2, 1, 2, 2, 2, rng));
  const std::vector<std::string> args = {
      "sweep", game, "--dims", "1x1,2x1", "--seed", "11", "--restarts", "3",
      "--no-timing"};
  auto with_output = [&](const std::string& name) {
    auto a = args;
    a.push_back("-o");
    a.push_back(Path(name));
    return a;
  };
  ASSERT_EQ(Invoke(with_output("a.csv")).status, kExitOk);
  ASSERT_EQ(Invoke(with_output("b.csv")).status, kExitOk);
  EXPECT_EQ(ReadTextFile(Path("a.csv")), ReadTextFile(Path("b.csv")));
  const CliRun other = Invoke({"sweep", game, "--dims", "1x1,2x1", "--seed",
                            "11", "--restarts", "3", "--no-timing"});
  EXPECT_EQ(other.body.substr(other.body.find("N,")),
            ReadTextFile(Path("a.csv")));
}

TEST_F(CliTest, BadDimsList) {
  const std::string game = WriteGame("win", AlwaysWinGame(2, 1, 2));
  EXPECT_EQ(Invoke({"sweep", game, "--dims", "0x1"}).status, kExitParse);
  EXPECT_EQ(Invoke({"sweep", game, "--dims", "2y"}).status, kExitParse);
  EXPECT_EQ(ParseDimsList("3"), (std::vector<AncillaDims>{{3, 1}}));
  EXPECT_EQ(ParseDimsList("1x1,2x3"),
            (std::vector<AncillaDims>{{1, 1}, {2, 3}}));
}

TEST_F(CliTest, CatalogEmitsGoldenRv) {
  const CliRun list = Invoke({"catalog"});
  ASSERT_EQ(list.status, kExitOk);
  EXPECT_EQ(list.summary["games"], Json::array({"chsh", "rv"}));
  const CliRun rv = Invoke({"catalog", "rv"});
  ASSERT_EQ(rv.status, kExitOk);
  EXPECT_EQ(rv.body,
            ReadTextFile(std::string(ENLG_TEST_DATA) + "/rv_game.json"));
  EXPECT_EQ(rv.summary["dims"]["ref_dim"], 9);
  EXPECT_EQ(Invoke({"catalog", "nope"}).status, kExitParse);
}

TEST_F(CliTest, ValidateStrategyAgainstGame) {
  const QcGame g = AlwaysWinGame(2, 1, 2);
  const std::string game = WriteGame("win", g);
  QcStrategy bad = FixedAnswers(g, 0, 1);
  bad.alice[0] *= 0.5;  // POVM no longer sums to identity
  const std::string strategy = WriteStrategy("bad", bad);
  EXPECT_EQ(Invoke({"validate", strategy, "--game", game}).status,
            kExitValidation);
  EXPECT_EQ(Invoke({"validate", strategy}).status, kExitParse);
  EXPECT_EQ(Invoke({"validate", WriteStrategy("ok", FixedAnswers(g, 1, 0)),
                    "--game", game})
                .status,
            kExitOk);
}

#ifdef ENLG_CLI_PATH
TEST_F(CliTest, ExecutableReportsExitStatus) {
  const std::string cmd = std::string(ENLG_CLI_PATH) + " catalog nope > " +
                          Path("out.txt") + " 2> " + Path("err.txt");
  const int raw = std::system(cmd.c_str());
  ASSERT_TRUE(WIFEXITED(raw));
  EXPECT_EQ(WEXITSTATUS(raw), kExitParse);
  const std::string out = ReadTextFile(Path("out.txt"));
  EXPECT_EQ(Json::parse(out.substr(0, out.find('\n')))["status"], "error");
}
#endif

}  // namespace
}  // namespace enlg

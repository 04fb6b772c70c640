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

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "CLI11.hpp"
#include "enlg/adapt.h"
#include "enlg/construct.h"
#include "enlg/io.h"
#include "enlg/model.h"
#include "json.hpp"

namespace enlg {

namespace {

using Json = nlohmann::json;

constexpr double kReceiptTol = 1e-9;

struct Options {
  std::string input;
  std::string strategy;
  std::string direction;
  std::string game;
  std::string output;
  std::string catalog;
  std::string dims = "1x1";
  std::uint64_t seed = 0;
  int restarts = 10;
  int max_rounds = 500;
  double tol = 1e-9;
  bool no_timing = false;
};

struct Outcome {
  Json summary;
  std::string body;
  int status = kExitOk;
};

std::string Fixed12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12f", v);
  return buf;
}

const std::vector<std::string>& CatalogNames() {
  static const std::vector<std::string> names = {"chsh", "rv"};
  return names;
}

GameFile CatalogGame(const std::string& name) {
  GameFile file;
  file.name = name;
  if (name == "rv") {
    file.description =
        "Qutrit-pair referee register; answers are judged on the parity "
        "a xor b. Value below 1 at every finite dimension.";
    file.game = BuildRvGame();
  } else if (name == "chsh") {
    file.description = "CHSH game embedded with a one-dimensional register.";
    file.game = BuildChshGame();
  } else {
    throw Error(ErrorCode::kInvalidConfig, "unknown catalog game '" + name +
                                               "' (known: chsh, rv)");
  }
  return file;
}

const QcGame& RequireQcGame(const GameFile& file) {
  if (!file.is_qc()) {
    throw Error(ErrorCode::kValidationFailed, "expected a QC game file");
  }
  return file.qc();
}

void RequireSameKind(const GameFile& game, const StrategyFile& strategy) {
  if (game.is_qc() != strategy.is_qc()) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string("strategy kind '") +
                    (strategy.is_qc() ? "qc" : "enlg") +
                    "' does not match game kind '" +
                    (game.is_qc() ? "qc" : "enlg") + "'");
  }
}

// Dimension check first (exit 4), then the density and POVM conditions.
void CheckStrategy(const GameFile& game, const StrategyFile& strategy) {
  RequireSameKind(game, strategy);
  if (game.is_qc()) {
    RequireCompatible(game.qc(), strategy.qc());
    RequireValid(ValidateQcStrategy(game.qc(), strategy.qc()), "QC strategy");
  } else {
    RequireCompatible(game.extended(), strategy.extended());
    RequireValid(ValidateExtendedStrategy(game.extended(),
                                          strategy.extended()),
                 "extended strategy");
  }
}

Json GameDims(const GameFile& file) {
  if (file.is_qc()) {
    const QcGame& g = file.qc();
    return {{"kind", "qc"}, {"n", g.n}, {"s", g.s}, {"m", g.m},
            {"num_a", g.num_a}, {"num_b", g.num_b}};
  }
  const ExtendedGame& h = file.extended();
  return {{"kind", "enlg"}, {"num_x", h.num_x}, {"num_y", h.num_y},
          {"num_a", h.num_a}, {"num_b", h.num_b}, {"ref_dim", h.ref_dim}};
}

// Writes to --output when given, otherwise returns the text as the body.
std::string Deliver(const Options& opt, const std::string& text) {
  if (opt.output.empty()) return text;
  WriteTextFile(opt.output, text);
  return "";
}

Outcome Construct(const Options& opt) {
  GameFile out;
  Json summary = {{"command", "construct"}};
  if (!opt.catalog.empty()) {
    out = CatalogGame(opt.catalog);
    summary["catalog"] = opt.catalog;
  } else {
    if (opt.input.empty()) {
      throw Error(ErrorCode::kInvalidConfig,
                  "construct needs a QC game file or --catalog");
    }
    const GameFile in = LoadGame(opt.input);
    const QcGame& g = RequireQcGame(in);
    out.name = in.name.empty() ? "extended" : in.name + "-extended";
    out.description = "Extended nonlocal game built from QC game '" +
                      in.name + "'.";
    out.game = BuildExtendedGame(g);
    summary["n"] = g.n;
    summary["m"] = g.m;
  }
  const ExtendedGame& h = out.extended();
  summary["num_x"] = h.num_x;
  summary["num_y"] = h.num_y;
  summary["ref_dim"] = h.ref_dim;
  summary["status"] = "ok";
  if (!opt.output.empty()) summary["output"] = opt.output;

  Outcome result;
  std::ostringstream text;
  text << "questions " << h.num_x << " x " << h.num_y << ", answers "
       << h.num_a << " x " << h.num_b << ", register dimension " << h.ref_dim
       << "\n";
  result.body = text.str() + Deliver(opt, SerializeGame(out));
  result.summary = std::move(summary);
  return result;
}

Outcome Catalog(const Options& opt) {
  Outcome result;
  if (opt.input.empty() && opt.catalog.empty()) {
    result.summary = {{"command", "catalog"}, {"games", CatalogNames()},
                      {"status", "ok"}};
    for (const auto& name : CatalogNames()) result.body += name + "\n";
    return result;
  }
  const std::string name = opt.catalog.empty() ? opt.input : opt.catalog;
  const GameFile file = CatalogGame(name);
  result.summary = {{"command", "catalog"}, {"game", name},
                    {"dims", GameDims(file)}, {"status", "ok"}};
  result.body = Deliver(opt, SerializeGame(file));
  return result;
}

Outcome Evaluate(const Options& opt) {
  const GameFile game = LoadGame(opt.input);
  const StrategyFile strategy = LoadStrategy(opt.strategy);
  CheckStrategy(game, strategy);
  const Probability p =
      game.is_qc() ? QcWinProbability(game.qc(), strategy.qc())
                   : ExtendedWinProbability(game.extended(),
                                            strategy.extended());
  Outcome result;
  result.summary = {{"command", "evaluate"}, {"kind", GameDims(game)["kind"]},
                    {"win", p.value}, {"lose", 1.0 - p.value},
                    {"status", "ok"}};
  result.body = "win probability:  " + Fixed12(p.value) +
                "\nlose probability: " + Fixed12(1.0 - p.value) + "\n";
  return result;
}

Outcome Adapt(const Options& opt) {
  const GameFile game = LoadGame(opt.input);
  const QcGame& g = RequireQcGame(game);
  const StrategyFile in = LoadStrategy(opt.strategy);
  StrategyFile out;
  AdaptationReceipt receipt;
  if (opt.direction == "qc-to-enlg") {
    if (!in.is_qc()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "qc-to-enlg needs a QC strategy");
    }
    RequireCompatible(g, in.qc());
    auto adapted = AdaptQcToExtended(g, in.qc());
    out.strategy = std::move(adapted.strategy);
    receipt = adapted.receipt;
  } else if (opt.direction == "enlg-to-qc") {
    if (in.is_qc()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "enlg-to-qc needs an extended strategy");
    }
    RequireCompatible(BuildExtendedGame(g), in.extended());
    auto adapted = AdaptExtendedToQc(g, in.extended());
    out.strategy = std::move(adapted.strategy);
    receipt = adapted.receipt;
  } else {
    throw Error(ErrorCode::kInvalidConfig,
                "direction must be qc-to-enlg or enlg-to-qc");
  }
  out.receipt = receipt;

  Outcome result;
  result.summary = {
      {"command", "adapt"},
      {"direction", opt.direction},
      {"source_loss", receipt.source_loss},
      {"target_loss", receipt.target_loss},
      {"scale", Json::array({receipt.scale_num, receipt.scale_den})},
      {"residual", receipt.residual}};
  if (!(receipt.residual <= kReceiptTol)) {
    result.summary["status"] = "residual";
    result.status = kExitResidual;
    result.body = "loss identity residual " + FormatDouble(receipt.residual) +
                  " exceeds 1e-9; nothing written\n";
    return result;
  }
  result.summary["status"] = "ok";
  if (!opt.output.empty()) result.summary["output"] = opt.output;
  result.body = "source loss " + Fixed12(receipt.source_loss) +
                ", target loss " + Fixed12(receipt.target_loss) + ", scale " +
                std::to_string(receipt.scale_num) + "/" +
                std::to_string(receipt.scale_den) + "\n" +
                Deliver(opt, SerializeStrategy(out));
  return result;
}

template <typename Report>
std::vector<SweepRow> RowsOf(const std::vector<Report>& reports,
                             bool timing) {
  std::vector<SweepRow> rows;
  for (const auto& r : reports) {
    SweepRow row;
    row.n = r.dim_u * r.dim_v;
    row.lower_bound = r.best_value;
    row.restarts_used = static_cast<int>(r.per_restart_values.size());
    for (int k : r.rounds_used) row.rounds += k;
    row.wall_time_seconds = timing ? r.wall_time_seconds : 0.0;
    rows.push_back(row);
  }
  return rows;
}

Outcome Sweep(const Options& opt) {
  const GameFile game = LoadGame(opt.input);
  const auto dims = ParseDimsList(opt.dims);
  SeeSawConfig config;
  config.seed = opt.seed;
  config.restarts = opt.restarts;
  config.max_rounds = opt.max_rounds;
  config.improve_tol = opt.tol;
  ValidateConfig(config);

  std::vector<SweepRow> rows;
  bool monotone = true;
  if (game.is_qc()) {
    const auto reports = SweepQc(game.qc(), dims, config);
    for (const auto& r : reports) monotone = monotone && r.monotone_ok;
    rows = RowsOf(reports, !opt.no_timing);
  } else {
    const auto reports = SweepExtended(game.extended(), dims, config);
    for (const auto& r : reports) monotone = monotone && r.monotone_ok;
    rows = RowsOf(reports, !opt.no_timing);
  }

  Json table = Json::array();
  bool non_decreasing = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    table.push_back({{"N", rows[i].n},
                     {"dims", Json::array({dims[i].first, dims[i].second})},
                     {"lower_bound", rows[i].lower_bound}});
    if (i > 0 && rows[i].lower_bound < rows[i - 1].lower_bound) {
      non_decreasing = false;
    }
  }
  Outcome result;
  result.summary = {{"command", "sweep"},
                    {"game", game.name},
                    {"seed", opt.seed},
                    {"restarts", opt.restarts},
                    {"rows", std::move(table)},
                    {"non_decreasing", non_decreasing},
                    {"monotone_rounds", monotone},
                    {"status", "ok"}};
  if (!opt.output.empty()) result.summary["output"] = opt.output;
  std::string text;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    text += "ancilla " + std::to_string(dims[i].first) + "x" +
            std::to_string(dims[i].second) + ": lower bound " +
            Fixed12(rows[i].lower_bound) + "\n";
  }
  result.body = text + Deliver(opt, SweepCsv(rows));
  return result;
}

Outcome Validate(const Options& opt) {
  const std::string text = ReadTextFile(opt.input);
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
  const std::string format =
      doc.is_object() && doc.contains("format") && doc["format"].is_string()
          ? doc["format"].get<std::string>()
          : "";
  Outcome result;
  if (format == "enlg-strategy") {
    const StrategyFile strategy = ParseStrategy(text);
    if (opt.game.empty()) {
      throw Error(ErrorCode::kInvalidConfig,
                  "validating a strategy needs --game");
    }
    const GameFile game = LoadGame(opt.game);
    CheckStrategy(game, strategy);
    result.summary = {{"command", "validate"},
                      {"document", "strategy"},
                      {"status", "ok"}};
  } else {
    const GameFile game = ParseGame(text);
    result.summary = {{"command", "validate"},
                      {"document", "game"},
                      {"dims", GameDims(game)},
                      {"status", "ok"}};
  }
  result.body = "valid\n";
  return result;
}

}  // namespace

int ExitStatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse:
    case ErrorCode::kInvalidConfig:
      return kExitParse;
    case ErrorCode::kValidationFailed:
    case ErrorCode::kNotHermitian:
    case ErrorCode::kNonSquare:
      return kExitValidation;
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kShapeMismatch:
    case ErrorCode::kInvalidDimension:
      return kExitDimension;
    case ErrorCode::kComplexResidual:
      return kExitResidual;
    case ErrorCode::kUnsupportedAnswerAlphabet:
      return kExitUnsupported;
    default:
      return kExitFailure;
  }
}

std::vector<AncillaDims> ParseDimsList(const std::string& text) {
  std::vector<AncillaDims> out;
  std::stringstream list(text);
  std::string item;
  auto positive = [&](const std::string& s) -> std::size_t {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size() || v == 0) {
      throw Error(ErrorCode::kInvalidConfig, "bad --dims entry '" + s + "'");
    }
    return v;
  };
  while (std::getline(list, item, ',')) {
    const auto x = item.find('x');
    if (x == std::string::npos) {
      out.emplace_back(positive(item), 1);
    } else {
      out.emplace_back(positive(item.substr(0, x)),
                       positive(item.substr(x + 1)));
    }
  }
  if (out.empty()) throw Error(ErrorCode::kInvalidConfig, "--dims is empty");
  return out;
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  Options opt;
  CLI::App app{"Extended nonlocal games: construction, adaptation and "
               "see-saw lower bounds."};
  app.name("enlg");
  app.require_subcommand(1);

  auto* construct = app.add_subcommand("construct", "Build H from a QC game");
  construct->add_option("game", opt.input, "QC game file");
  construct->add_option("--catalog", opt.catalog, "Catalog game instead");
  construct->add_option("--output,-o", opt.output, "Output game file");

  auto* evaluate =
      app.add_subcommand("evaluate", "Winning probability of a strategy");
  evaluate->add_option("game", opt.input, "Game file")->required();
  evaluate->add_option("strategy", opt.strategy, "Strategy file")->required();

  auto* adapt = app.add_subcommand("adapt", "Carry a strategy across G and H");
  adapt->add_option("direction", opt.direction, "qc-to-enlg or enlg-to-qc")
      ->required()
      ->check(CLI::IsMember({"qc-to-enlg", "enlg-to-qc"}));
  adapt->add_option("game", opt.input, "The QC game G")->required();
  adapt->add_option("strategy", opt.strategy, "Strategy file")->required();
  adapt->add_option("--output,-o", opt.output, "Output strategy file");

  auto* sweep = app.add_subcommand("sweep", "See-saw lower bounds by size");
  sweep->add_option("game", opt.input, "Game file")->required();
  sweep->add_option("--dims", opt.dims, "Ancilla sizes, e.g. 1x1,2x2");
  sweep->add_option("--seed", opt.seed, "RNG seed");
  sweep->add_option("--restarts", opt.restarts, "Restarts per size");
  sweep->add_option("--max-rounds", opt.max_rounds, "Round cap per restart");
  sweep->add_option("--tol", opt.tol, "Stop when a round gains less");
  sweep->add_option("--output,-o", opt.output, "CSV report path");
  sweep->add_flag("--no-timing", opt.no_timing,
                  "Write 0 for wall time so reports are byte-stable");

  auto* validate = app.add_subcommand("validate", "Check a game or strategy");
  validate->add_option("file", opt.input, "Game or strategy file")
      ->required();
  validate->add_option("--game", opt.game, "Game for a strategy file");

  auto* catalog = app.add_subcommand("catalog", "List or emit catalog games");
  catalog->add_option("name", opt.input, "Catalog game name");
  catalog->add_option("--catalog", opt.catalog, "Catalog game name");
  catalog->add_option("--output,-o", opt.output, "Output game file");

  std::string command = "enlg";
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    command = app.get_subcommands().front()->get_name();
    Outcome result;
    if (command == "construct") {
      result = Construct(opt);
    } else if (command == "evaluate") {
      result = Evaluate(opt);
    } else if (command == "adapt") {
      result = Adapt(opt);
    } else if (command == "sweep") {
      result = Sweep(opt);
    } else if (command == "validate") {
      result = Validate(opt);
    } else {
      result = Catalog(opt);
    }
    out << result.summary.dump() << "\n" << result.body;
    return result.status;
  } catch (const CLI::Success& e) {
    out << Json{{"command", "help"}, {"status", "ok"}}.dump() << "\n";
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    out << Json{{"command", command}, {"status", "error"},
                {"error", "kParse"}, {"message", e.what()}}
               .dump()
        << "\n";
    app.exit(e, out, err);
    return kExitParse;
  } catch (const Error& e) {
    out << Json{{"command", command}, {"status", "error"},
                {"error", ErrorCodeName(e.code())}, {"message", e.what()}}
               .dump()
        << "\n";
    err << e.what() << "\n";
    return ExitStatusFor(e.code());
  } catch (const std::exception& e) {
    out << Json{{"command", command}, {"status", "error"},
                {"error", "internal"}, {"message", e.what()}}
               .dump()
        << "\n";
    err << e.what() << "\n";
    return kExitFailure;
  }
}

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return RunCli(args, out, err);
}

}  // namespace enlg

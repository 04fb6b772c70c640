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

#ifndef ENLG_IO_H_
#define ENLG_IO_H_

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "enlg/adapt.h"
#include "enlg/matrix.h"
#include "enlg/model.h"

namespace enlg {

// Game and strategy documents are JSON. Complex matrices are arrays of rows,
// each row an array of [re, im] pairs. The canonical writer sorts keys, indents
// by two spaces, keeps each matrix row on one line and prints doubles in
// shortest round-trip form, so save(load(text)) == text for canonical text.

struct GameFile {
  std::string name;
  std::string description;
  std::variant<QcGame, ExtendedGame> game;

  bool is_qc() const { return std::holds_alternative<QcGame>(game); }
  const QcGame& qc() const { return std::get<QcGame>(game); }
  const ExtendedGame& extended() const { return std::get<ExtendedGame>(game); }
};

struct StrategyFile {
  std::variant<QcStrategy, ExtendedStrategy> strategy;
  std::optional<AdaptationReceipt> receipt;

  bool is_qc() const { return std::holds_alternative<QcStrategy>(strategy); }
  const QcStrategy& qc() const { return std::get<QcStrategy>(strategy); }
  const ExtendedStrategy& extended() const {
    return std::get<ExtendedStrategy>(strategy);
  }
};

// Parsing throws kParse on malformed documents; game loading also validates
// and throws kValidationFailed with the report text.
GameFile ParseGame(const std::string& text);
std::string SerializeGame(const GameFile& file);

// Strategies are only checked for shape here; compatibility with a game and
// the density/POVM conditions are checked against that game by the caller.
StrategyFile ParseStrategy(const std::string& text);
std::string SerializeStrategy(const StrategyFile& file);

std::string ReadTextFile(const std::string& path);
void WriteTextFile(const std::string& path, const std::string& text);

GameFile LoadGame(const std::string& path);
StrategyFile LoadStrategy(const std::string& path);

struct SweepRow {
  std::size_t n = 1;  // dim U * dim V
  double lower_bound = 0.0;
  int restarts_used = 0;
  long rounds = 0;
  double wall_time_seconds = 0.0;
};

inline constexpr char kSweepCsvHeader[] =
    "N,lower_bound,restarts_used,rounds,wall_time_seconds";

std::string SweepCsv(const std::vector<SweepRow>& rows);

// Shortest decimal that parses back to the same double (at most 17 digits).
std::string FormatDouble(double value);

}  // namespace enlg

#endif  // ENLG_IO_H_

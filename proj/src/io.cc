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

#include "enlg/io.h"

#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "enlg/error.h"
#include "json.hpp"

namespace enlg {

namespace {

using Json = nlohmann::json;

constexpr char kGameFormat[] = "enlg-game";
constexpr char kStrategyFormat[] = "enlg-strategy";
constexpr int kVersion = 1;

[[noreturn]] void Fail(const std::string& message) {
  throw Error(ErrorCode::kParse, message);
}

const Json& Field(const Json& object, const char* key) {
  if (!object.is_object()) Fail(std::string("expected an object around '") +
                                key + "'");
  auto it = object.find(key);
  if (it == object.end()) Fail(std::string("missing field '") + key + "'");
  return *it;
}

std::size_t Count(const Json& object, const char* key) {
  const Json& v = Field(object, key);
  if (!v.is_number_unsigned() || v.get<std::size_t>() == 0) {
    Fail(std::string("field '") + key + "' must be a positive integer");
  }
  return v.get<std::size_t>();
}

std::size_t Index(const Json& object, const char* key, std::size_t bound) {
  const Json& v = Field(object, key);
  if (!v.is_number_unsigned() || v.get<std::size_t>() >= bound) {
    Fail(std::string("field '") + key + "' out of range");
  }
  return v.get<std::size_t>();
}

double Number(const Json& v, const char* what) {
  if (!v.is_number()) Fail(std::string(what) + " must be a number");
  return v.get<double>();
}

std::string Text(const Json& object, const char* key) {
  auto it = object.find(key);
  if (it == object.end()) return "";
  if (!it->is_string()) Fail(std::string("field '") + key + "' must be text");
  return it->get<std::string>();
}

Json MatrixToJson(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix MatrixFromJson(const Json& v, const std::string& what) {
  if (!v.is_array() || v.empty()) Fail(what + " must be a non-empty matrix");
  const std::size_t rows = v.size();
  if (!v[0].is_array() || v[0].empty()) Fail(what + " has an empty row");
  const std::size_t cols = v[0].size();
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!v[i].is_array() || v[i].size() != cols) {
      Fail(what + " is not rectangular");
    }
    for (std::size_t j = 0; j < cols; ++j) {
      const Json& entry = v[i][j];
      if (!entry.is_array() || entry.size() != 2) {
        Fail(what + " entries must be [re, im] pairs");
      }
      m(i, j) = Complex(Number(entry[0], "real part"),
                        Number(entry[1], "imaginary part"));
    }
  }
  return m;
}

ComplexMatrix SquareMatrix(const Json& v, const std::string& what,
                           std::size_t dim) {
  ComplexMatrix m = MatrixFromJson(v, what);
  if (m.rows() != dim || m.cols() != dim) {
    Fail(what + " must be " + std::to_string(dim) + "x" + std::to_string(dim));
  }
  return m;
}

ComplexMatrix AnySquare(const Json& v, const std::string& what) {
  ComplexMatrix m = MatrixFromJson(v, what);
  if (!m.is_square()) Fail(what + " must be square");
  return m;
}

void CheckHeader(const Json& doc, const char* format) {
  if (!doc.is_object()) Fail("document must be a JSON object");
  const Json& f = Field(doc, "format");
  if (!f.is_string() || f.get<std::string>() != format) {
    Fail(std::string("format must be '") + format + "'");
  }
  const Json& v = Field(doc, "version");
  if (!v.is_number_unsigned() || v.get<int>() != kVersion) {
    Fail("unsupported version");
  }
}

Json ParseJson(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    Fail(e.what());
  }
}

// Arrays of scalars, or of arrays of scalars, stay on one line.
bool IsFlat(const Json& v, int depth) {
  if (!v.is_structured()) return true;
  if (!v.is_array() || depth == 0) return false;
  for (const auto& e : v) {
    if (!IsFlat(e, depth - 1)) return false;
  }
  return true;
}

void Emit(const Json& v, int indent, std::string& out) {
  if (!v.is_structured()) {
    out += v.dump();
    return;
  }
  if (v.empty()) {
    out += v.is_array() ? "[]" : "{}";
    return;
  }
  if (v.is_array() && IsFlat(v, 2)) {
    out += '[';
    bool first = true;
    for (const auto& e : v) {
      if (!first) out += ", ";
      first = false;
      Emit(e, indent, out);
    }
    out += ']';
    return;
  }
  const std::string pad(indent + 2, ' ');
  out += v.is_array() ? "[\n" : "{\n";
  bool first = true;
  for (auto it = v.begin(); it != v.end(); ++it) {
    if (!first) out += ",\n";
    first = false;
    out += pad;
    if (v.is_object()) out += Json(it.key()).dump() + ": ";
    Emit(*it, indent + 2, out);
  }
  out += '\n' + std::string(indent, ' ') + (v.is_array() ? ']' : '}');
}

std::string Canonical(const Json& doc) {
  std::string out;
  Emit(doc, 0, out);
  out += '\n';
  return out;
}

Json QcGameToJson(const QcGame& g) {
  Json doc;
  doc["kind"] = "qc";
  doc["dims"] = {{"n", g.n}, {"s", g.s}, {"m", g.m},
                 {"num_a", g.num_a}, {"num_b", g.num_b}};
  doc["rho"] = MatrixToJson(g.rho);
  Json ops = Json::array();
  for (std::size_t a = 0; a < g.num_a; ++a) {
    for (std::size_t b = 0; b < g.num_b; ++b) {
      ops.push_back({{"a", a}, {"b", b}, {"op", MatrixToJson(g.Q(a, b))}});
    }
  }
  doc["win_ops"] = std::move(ops);
  return doc;
}

QcGame QcGameFromJson(const Json& doc) {
  QcGame g;
  const Json& dims = Field(doc, "dims");
  g.n = Count(dims, "n");
  g.s = Count(dims, "s");
  g.m = Count(dims, "m");
  g.num_a = Count(dims, "num_a");
  g.num_b = Count(dims, "num_b");
  g.rho = SquareMatrix(Field(doc, "rho"), "rho", g.n * g.s * g.m);
  const Json& ops = Field(doc, "win_ops");
  if (!ops.is_array() || ops.size() != g.num_a * g.num_b) {
    Fail("win_ops must list every answer pair exactly once");
  }
  g.win_ops.assign(g.num_a * g.num_b, ComplexMatrix());
  std::set<std::size_t> seen;
  for (const auto& entry : ops) {
    const std::size_t a = Index(entry, "a", g.num_a);
    const std::size_t b = Index(entry, "b", g.num_b);
    const std::size_t k = a * g.num_b + b;
    if (!seen.insert(k).second) Fail("duplicate win_ops entry");
    g.win_ops[k] = SquareMatrix(Field(entry, "op"),
                                "Q[" + std::to_string(a) + "," +
                                    std::to_string(b) + "]",
                                g.s);
  }
  return g;
}

Json ExtendedGameToJson(const ExtendedGame& g) {
  Json doc;
  doc["kind"] = "enlg";
  doc["dims"] = {{"num_x", g.num_x}, {"num_y", g.num_y}, {"num_a", g.num_a},
                 {"num_b", g.num_b}, {"ref_dim", g.ref_dim}};
  Json pi = Json::array();
  for (std::size_t x = 0; x < g.num_x; ++x) {
    Json row = Json::array();
    for (std::size_t y = 0; y < g.num_y; ++y) row.push_back(g.Pi(x, y));
    pi.push_back(std::move(row));
  }
  doc["pi"] = std::move(pi);
  Json ops = Json::array();
  for (std::size_t a = 0; a < g.num_a; ++a) {
    for (std::size_t b = 0; b < g.num_b; ++b) {
      for (std::size_t x = 0; x < g.num_x; ++x) {
        for (std::size_t y = 0; y < g.num_y; ++y) {
          ops.push_back({{"a", a}, {"b", b}, {"x", x}, {"y", y},
                         {"op", MatrixToJson(g.P(a, b, x, y))}});
        }
      }
    }
  }
  doc["ref_ops"] = std::move(ops);
  return doc;
}

ExtendedGame ExtendedGameFromJson(const Json& doc) {
  ExtendedGame g;
  const Json& dims = Field(doc, "dims");
  g.num_x = Count(dims, "num_x");
  g.num_y = Count(dims, "num_y");
  g.num_a = Count(dims, "num_a");
  g.num_b = Count(dims, "num_b");
  g.ref_dim = Count(dims, "ref_dim");
  const Json& pi = Field(doc, "pi");
  if (!pi.is_array() || pi.size() != g.num_x) Fail("pi must have num_x rows");
  for (const auto& row : pi) {
    if (!row.is_array() || row.size() != g.num_y) {
      Fail("pi rows must have num_y entries");
    }
    for (const auto& p : row) g.pi.push_back(Number(p, "pi entry"));
  }
  const Json& ops = Field(doc, "ref_ops");
  const std::size_t total = g.num_a * g.num_b * g.num_x * g.num_y;
  if (!ops.is_array() || ops.size() != total) {
    Fail("ref_ops must list every (a, b, x, y) exactly once");
  }
  g.ref_ops.assign(total, ComplexMatrix());
  std::set<std::size_t> seen;
  for (const auto& entry : ops) {
    const std::size_t a = Index(entry, "a", g.num_a);
    const std::size_t b = Index(entry, "b", g.num_b);
    const std::size_t x = Index(entry, "x", g.num_x);
    const std::size_t y = Index(entry, "y", g.num_y);
    const std::size_t k = g.RefIndex(a, b, x, y);
    if (!seen.insert(k).second) Fail("duplicate ref_ops entry");
    g.ref_ops[k] = SquareMatrix(
        Field(entry, "op"),
        "P[" + std::to_string(a) + "," + std::to_string(b) + "," +
            std::to_string(x) + "," + std::to_string(y) + "]",
        g.ref_dim);
  }
  return g;
}

Json PovmToJson(const std::vector<ComplexMatrix>& povm) {
  Json out = Json::array();
  for (const auto& e : povm) out.push_back(MatrixToJson(e));
  return out;
}

std::vector<ComplexMatrix> PovmFromJson(const Json& v,
                                        const std::string& what) {
  if (!v.is_array() || v.empty()) Fail(what + " must be a non-empty list");
  std::vector<ComplexMatrix> out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    out.push_back(AnySquare(v[k], what + "[" + std::to_string(k) + "]"));
    if (out.back().rows() != out.front().rows()) {
      Fail(what + " elements differ in size");
    }
  }
  return out;
}

std::vector<std::vector<ComplexMatrix>> FamilyFromJson(
    const Json& v, const std::string& what) {
  if (!v.is_array() || v.empty()) Fail(what + " must be a non-empty list");
  std::vector<std::vector<ComplexMatrix>> out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    out.push_back(PovmFromJson(v[k], what + "[" + std::to_string(k) + "]"));
  }
  return out;
}

}  // namespace

std::string FormatDouble(double value) { return Json(value).dump(); }

GameFile ParseGame(const std::string& text) {
  const Json doc = ParseJson(text);
  CheckHeader(doc, kGameFormat);
  GameFile file;
  file.name = Text(doc, "name");
  file.description = Text(doc, "description");
  const Json& kind = Field(doc, "kind");
  if (kind == "qc") {
    file.game = QcGameFromJson(doc);
    RequireValid(ValidateQcGame(file.qc()), "QC game");
  } else if (kind == "enlg") {
    file.game = ExtendedGameFromJson(doc);
    RequireValid(ValidateExtendedGame(file.extended()), "extended game");
  } else {
    Fail("kind must be 'qc' or 'enlg'");
  }
  return file;
}

std::string SerializeGame(const GameFile& file) {
  Json doc = file.is_qc() ? QcGameToJson(file.qc())
                          : ExtendedGameToJson(file.extended());
  doc["format"] = kGameFormat;
  doc["version"] = kVersion;
  doc["name"] = file.name;
  doc["description"] = file.description;
  return Canonical(doc);
}

StrategyFile ParseStrategy(const std::string& text) {
  const Json doc = ParseJson(text);
  CheckHeader(doc, kStrategyFormat);
  StrategyFile file;
  const Json& kind = Field(doc, "kind");
  const Json& dims = Field(doc, "dims");
  if (kind == "qc") {
    QcStrategy s;
    s.dim_u = Count(dims, "dim_u");
    s.dim_v = Count(dims, "dim_v");
    s.sigma = SquareMatrix(Field(doc, "sigma"), "sigma", s.dim_u * s.dim_v);
    s.alice = PovmFromJson(Field(doc, "alice"), "alice");
    s.bob = PovmFromJson(Field(doc, "bob"), "bob");
    file.strategy = std::move(s);
  } else if (kind == "enlg") {
    ExtendedStrategy s;
    s.dim_u = Count(dims, "dim_u");
    s.dim_r = Count(dims, "dim_r");
    s.dim_v = Count(dims, "dim_v");
    s.sigma = SquareMatrix(Field(doc, "sigma"), "sigma",
                           s.dim_u * s.dim_r * s.dim_v);
    s.alice = FamilyFromJson(Field(doc, "alice"), "alice");
    s.bob = FamilyFromJson(Field(doc, "bob"), "bob");
    file.strategy = std::move(s);
  } else {
    Fail("kind must be 'qc' or 'enlg'");
  }
  if (auto it = doc.find("receipt"); it != doc.end()) {
    AdaptationReceipt r;
    r.source_loss = Number(Field(*it, "source_loss"), "source_loss");
    r.target_loss = Number(Field(*it, "target_loss"), "target_loss");
    r.residual = Number(Field(*it, "residual"), "residual");
    const Json& scale = Field(*it, "scale");
    if (!scale.is_array() || scale.size() != 2 ||
        !scale[0].is_number_unsigned() || !scale[1].is_number_unsigned() ||
        scale[1].get<std::size_t>() == 0) {
      Fail("receipt scale must be [numerator, denominator]");
    }
    r.scale_num = scale[0].get<std::size_t>();
    r.scale_den = scale[1].get<std::size_t>();
    file.receipt = r;
  }
  return file;
}

std::string SerializeStrategy(const StrategyFile& file) {
  Json doc;
  doc["format"] = kStrategyFormat;
  doc["version"] = kVersion;
  if (file.is_qc()) {
    const QcStrategy& s = file.qc();
    doc["kind"] = "qc";
    doc["dims"] = {{"dim_u", s.dim_u}, {"dim_v", s.dim_v}};
    doc["sigma"] = MatrixToJson(s.sigma);
    doc["alice"] = PovmToJson(s.alice);
    doc["bob"] = PovmToJson(s.bob);
  } else {
    const ExtendedStrategy& s = file.extended();
    doc["kind"] = "enlg";
    doc["dims"] = {{"dim_u", s.dim_u}, {"dim_r", s.dim_r}, {"dim_v", s.dim_v}};
    doc["sigma"] = MatrixToJson(s.sigma);
    Json alice = Json::array();
    for (const auto& povm : s.alice) alice.push_back(PovmToJson(povm));
    Json bob = Json::array();
    for (const auto& povm : s.bob) bob.push_back(PovmToJson(povm));
    doc["alice"] = std::move(alice);
    doc["bob"] = std::move(bob);
  }
  if (file.receipt) {
    const AdaptationReceipt& r = *file.receipt;
    doc["receipt"] = {{"source_loss", r.source_loss},
                      {"target_loss", r.target_loss},
                      {"scale", Json::array({r.scale_num, r.scale_den})},
                      {"residual", r.residual}};
  }
  return Canonical(doc);
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kInvalidConfig, "cannot write '" + path + "'");
  }
  out << text;
  if (!out) {
    throw Error(ErrorCode::kInvalidConfig, "write to '" + path + "' failed");
  }
}

GameFile LoadGame(const std::string& path) {
  return ParseGame(ReadTextFile(path));
}

StrategyFile LoadStrategy(const std::string& path) {
  return ParseStrategy(ReadTextFile(path));
}

std::string SweepCsv(const std::vector<SweepRow>& rows) {
  std::string out = kSweepCsvHeader;
  out += '\n';
  for (const auto& r : rows) {
    out += std::to_string(r.n) + ',' + FormatDouble(r.lower_bound) + ',' +
           std::to_string(r.restarts_used) + ',' + std::to_string(r.rounds) +
           ',' + FormatDouble(r.wall_time_seconds) + '\n';
  }
  return out;
}

}  // namespace enlg

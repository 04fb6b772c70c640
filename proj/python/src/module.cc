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

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>

#include "enlg/adapt.h"
#include "enlg/construct.h"
#include "enlg/error.h"
#include "enlg/io.h"
#include "enlg/linalg.h"
#include "enlg/model.h"
#include "enlg/optimize.h"
#include "enlg/random.h"

namespace py = pybind11;

namespace pybind11::detail {

// ComplexMatrix <-> 2-D numpy complex128 array (copies both ways).
template <>
struct type_caster<enlg::ComplexMatrix> {
  PYBIND11_TYPE_CASTER(enlg::ComplexMatrix, const_name("numpy.ndarray"));

  bool load(handle src, bool convert) {
    using Array = py::array_t<std::complex<double>,
                              py::array::c_style | py::array::forcecast>;
    if (!convert && !Array::check_(src)) return false;
    Array array = Array::ensure(src);
    if (!array) return false;
    if (array.ndim() == 1) {
      value = enlg::ComplexMatrix(array.shape(0), 1);
    } else if (array.ndim() == 2) {
      value = enlg::ComplexMatrix(array.shape(0), array.shape(1));
    } else {
      return false;
    }
    if (value.size() > 0) {
      std::memcpy(value.entries().data(), array.data(),
                  value.size() * sizeof(std::complex<double>));
    }
    return true;
  }

  static handle cast(const enlg::ComplexMatrix& m, return_value_policy,
                     handle) {
    py::array_t<std::complex<double>> array(
        {static_cast<py::ssize_t>(m.rows()), static_cast<py::ssize_t>(m.cols())});
    if (m.size() > 0) {
      std::memcpy(array.mutable_data(), m.entries().data(),
                  m.size() * sizeof(std::complex<double>));
    }
    return array.release();
  }
};

}  // namespace pybind11::detail

namespace {

enlg::SeeSawConfig MakeConfig(std::size_t dim_u, std::size_t dim_v,
                              int restarts, int max_rounds, double tol,
                              std::uint64_t seed) {
  enlg::SeeSawConfig c;
  c.dim_u = dim_u;
  c.dim_v = dim_v;
  c.restarts = restarts;
  c.max_rounds = max_rounds;
  c.improve_tol = tol;
  c.seed = seed;
  return c;
}

template <typename Report>
py::dict ReportDict(const Report& r) {
  py::dict d;
  d["best_value"] = r.best_value;
  d["best_strategy"] = r.best_strategy;
  d["per_restart_values"] = r.per_restart_values;
  d["rounds_used"] = r.rounds_used;
  d["monotone_ok"] = r.monotone_ok;
  d["seed"] = r.seed;
  d["dim_u"] = r.dim_u;
  d["dim_v"] = r.dim_v;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  using namespace enlg;
  m.doc() = "Extended nonlocal games and QC games: evaluation, construction, "
            "strategy adaptation and see-saw lower bounds.";

  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  py::class_<QcGame>(m, "QcGame")
      .def(py::init<>())
      .def_readwrite("n", &QcGame::n)
      .def_readwrite("s", &QcGame::s)
      .def_readwrite("m", &QcGame::m)
      .def_readwrite("num_a", &QcGame::num_a)
      .def_readwrite("num_b", &QcGame::num_b)
      .def_readwrite("rho", &QcGame::rho)
      .def_readwrite("win_ops", &QcGame::win_ops)
      .def("Q", &QcGame::Q, py::arg("a"), py::arg("b"));

  py::class_<ExtendedGame>(m, "ExtendedGame")
      .def(py::init<>())
      .def_readwrite("num_x", &ExtendedGame::num_x)
      .def_readwrite("num_y", &ExtendedGame::num_y)
      .def_readwrite("num_a", &ExtendedGame::num_a)
      .def_readwrite("num_b", &ExtendedGame::num_b)
      .def_readwrite("ref_dim", &ExtendedGame::ref_dim)
      .def_readwrite("pi", &ExtendedGame::pi)
      .def_readwrite("ref_ops", &ExtendedGame::ref_ops)
      .def("P", &ExtendedGame::P, py::arg("a"), py::arg("b"), py::arg("x"),
           py::arg("y"));

  py::class_<QcStrategy>(m, "QcStrategy")
      .def(py::init<>())
      .def_readwrite("dim_u", &QcStrategy::dim_u)
      .def_readwrite("dim_v", &QcStrategy::dim_v)
      .def_readwrite("sigma", &QcStrategy::sigma)
      .def_readwrite("alice", &QcStrategy::alice)
      .def_readwrite("bob", &QcStrategy::bob);

  py::class_<ExtendedStrategy>(m, "ExtendedStrategy")
      .def(py::init<>())
      .def_readwrite("dim_u", &ExtendedStrategy::dim_u)
      .def_readwrite("dim_r", &ExtendedStrategy::dim_r)
      .def_readwrite("dim_v", &ExtendedStrategy::dim_v)
      .def_readwrite("sigma", &ExtendedStrategy::sigma)
      .def_readwrite("alice", &ExtendedStrategy::alice)
      .def_readwrite("bob", &ExtendedStrategy::bob);

  py::class_<AdaptationReceipt>(m, "AdaptationReceipt")
      .def_readonly("source_loss", &AdaptationReceipt::source_loss)
      .def_readonly("target_loss", &AdaptationReceipt::target_loss)
      .def_readonly("scale_num", &AdaptationReceipt::scale_num)
      .def_readonly("scale_den", &AdaptationReceipt::scale_den)
      .def_readonly("residual", &AdaptationReceipt::residual)
      .def_property_readonly("scale", &AdaptationReceipt::scale);

  // Linear algebra.
  m.def("hermitian_eig", [](const ComplexMatrix& a) {
    auto e = HermitianEig(a);
    return py::make_tuple(e.values, e.vectors);
  });
  m.def("kron", [](const ComplexMatrix& a, const ComplexMatrix& b) {
    return Kron(a, b);
  });
  m.def("partial_trace",
        [](const ComplexMatrix& a, std::vector<std::size_t> dims,
           std::vector<std::size_t> keep) {
          return PartialTrace(a, RegisterShape{std::move(dims)}, keep);
        },
        py::arg("m"), py::arg("dims"), py::arg("keep"));
  m.def("permute_registers",
        [](const ComplexMatrix& a, std::vector<std::size_t> dims,
           std::vector<std::size_t> perm) {
          return PermuteRegisters(a, RegisterShape{std::move(dims)}, perm);
        },
        py::arg("m"), py::arg("dims"), py::arg("perm"));

  // Games.
  m.def("validate_qc_game", [](const QcGame& g) {
    return ValidateQcGame(g).ToString();
  });
  m.def("validate_enlg", [](const ExtendedGame& g) {
    return ValidateExtendedGame(g).ToString();
  });
  m.def("qc_win_prob", [](const QcGame& g, const QcStrategy& s) {
    return QcWinProbability(g, s).value;
  });
  m.def("enlg_win_prob", [](const ExtendedGame& g, const ExtendedStrategy& s) {
    return ExtendedWinProbability(g, s).value;
  });
  m.def("weyl_basis", [](std::size_t d) { return MakeWeylBasis(d).ops; });
  m.def("max_entangled", &MaxEntangled);
  m.def("build_enlg", &BuildExtendedGame);
  m.def("build_rv_game", &BuildRvGame);
  m.def("build_chsh_game", &BuildChshGame);

  // Random instances.
  m.def("random_qc_game",
        [](std::size_t n, std::size_t s, std::size_t mm, std::size_t na,
           std::size_t nb, std::uint64_t seed) {
          CounterRng rng(seed, 0);
          return RandomQcGame(n, s, mm, na, nb, rng);
        },
        py::arg("n"), py::arg("s"), py::arg("m"), py::arg("num_a") = 2,
        py::arg("num_b") = 2, py::arg("seed") = 0);
  m.def("random_qc_strategy",
        [](const QcGame& g, std::size_t du, std::size_t dv,
           std::uint64_t seed) {
          CounterRng rng(seed, 1);
          return RandomQcStrategy(g, du, dv, rng);
        },
        py::arg("game"), py::arg("dim_u") = 1, py::arg("dim_v") = 1,
        py::arg("seed") = 0);
  m.def("random_enlg_strategy",
        [](const ExtendedGame& g, std::size_t du, std::size_t dv,
           std::uint64_t seed) {
          CounterRng rng(seed, 2);
          return RandomExtendedStrategy(g, du, dv, rng);
        },
        py::arg("game"), py::arg("dim_u") = 1, py::arg("dim_v") = 1,
        py::arg("seed") = 0);

  // Adaptation.
  m.def("adapt_qc_to_enlg", [](const QcGame& g, const QcStrategy& s) {
    auto a = AdaptQcToExtended(g, s);
    return py::make_tuple(a.strategy, a.receipt);
  });
  m.def("adapt_enlg_to_qc", [](const QcGame& g, const ExtendedStrategy& s) {
    auto a = AdaptExtendedToQc(g, s);
    return py::make_tuple(a.strategy, a.receipt);
  });
  m.def("loss_operator_h", &ForwardLossOperator);
  m.def("loss_operator_g", &BackwardLossOperator);

  // Optimization.
  m.def("helstrom", [](const ComplexMatrix& r) {
    auto p = HelstromMeasurement(r);
    return py::make_tuple(p.e0, p.e1);
  });
  m.def("seesaw_enlg",
        [](const ExtendedGame& g, std::size_t du, std::size_t dv, int restarts,
           int max_rounds, double tol, std::uint64_t seed) {
          return ReportDict(SeeSawExtended(
              g, MakeConfig(du, dv, restarts, max_rounds, tol, seed)));
        },
        py::arg("game"), py::arg("dim_u") = 1, py::arg("dim_v") = 1,
        py::arg("restarts") = 10, py::arg("max_rounds") = 500,
        py::arg("tol") = 1e-9, py::arg("seed") = 0);
  m.def("seesaw_qc",
        [](const QcGame& g, std::size_t du, std::size_t dv, int restarts,
           int max_rounds, double tol, std::uint64_t seed) {
          return ReportDict(SeeSawQc(
              g, MakeConfig(du, dv, restarts, max_rounds, tol, seed)));
        },
        py::arg("game"), py::arg("dim_u") = 1, py::arg("dim_v") = 1,
        py::arg("restarts") = 10, py::arg("max_rounds") = 500,
        py::arg("tol") = 1e-9, py::arg("seed") = 0);
  m.def("value_relation_check",
        [](const QcGame& g, std::size_t du, std::size_t dv, int restarts,
           int max_rounds, double tol, std::uint64_t seed) {
          auto r = CheckValueRelation(
              g, MakeConfig(du, dv, restarts, max_rounds, tol, seed));
          py::dict d;
          d["dim_n"] = r.dim_n;
          d["scale"] = r.scale;
          d["v_g"] = r.v_g;
          d["v_h_certified"] = r.v_h_certified;
          d["v_h_seesaw"] = r.v_h_seesaw;
          d["v_h"] = r.v_h;
          d["bound"] = r.bound;
          d["holds"] = r.holds;
          return d;
        },
        py::arg("game"), py::arg("dim_u") = 1, py::arg("dim_v") = 1,
        py::arg("restarts") = 10, py::arg("max_rounds") = 500,
        py::arg("tol") = 1e-9, py::arg("seed") = 0);

  // Files.
  m.def("game_to_json", [](const QcGame& g, std::string name) {
    GameFile f;
    f.name = std::move(name);
    f.game = g;
    return SerializeGame(f);
  }, py::arg("game"), py::arg("name") = "");
  m.def("game_to_json", [](const ExtendedGame& g, std::string name) {
    GameFile f;
    f.name = std::move(name);
    f.game = g;
    return SerializeGame(f);
  }, py::arg("game"), py::arg("name") = "");
  m.def("game_from_json", [](const std::string& text) -> py::object {
    GameFile f = ParseGame(text);
    if (f.is_qc()) return py::cast(f.qc());
    return py::cast(f.extended());
  });
}

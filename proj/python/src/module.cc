// Copyright 2026 The Boundex Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Python bindings: the distance primitives, the date SUT and the request
// layer. Requests and responses cross the boundary as JSON text; the
// package wrapper turns them into dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "boundex/distance.h"
#include "boundex/julia_date.h"
#include "boundex/service.h"

namespace py = pybind11;

namespace {

py::tuple ToTuple(const boundex::Response& response) {
  return py::make_tuple(response.http_status, response.exit_code,
                        py::bytes(response.body), response.content_type);
}

}  // namespace

PYBIND11_MODULE(_boundex, m) {
  m.doc() = "Boundary value exploration core";

  m.def(
      "compressed_size",
      [](py::bytes blob, const std::string& codec) {
        return boundex::CompressedSize(std::string(blob), boundex::Codec::Parse(codec));
      },
      py::arg("blob"), py::arg("codec") = boundex::DefaultCodec().Id());
  m.def(
      "ncd",
      [](py::bytes a, py::bytes b, const std::string& codec) {
        return boundex::Ncd(std::string(a), std::string(b), boundex::Codec::Parse(codec));
      },
      py::arg("a"), py::arg("b"), py::arg("codec") = boundex::DefaultCodec().Id());
  m.def("edit_distance", [](const std::string& a, const std::string& b) {
    return boundex::EditDistance(a, b);
  });
  m.def(
      "date_construct",
      [](int64_t year, int64_t month, int64_t day) {
        auto out = boundex::julia_date::Construct({year, month, day});
        return py::make_tuple(std::string(boundex::StatusName(out.status)), out.text);
      },
      py::arg("year"), py::arg("month"), py::arg("day"));
  m.def("total_days", &boundex::julia_date::TotalDays);

  // The GIL is released around every request: grids fan out to threads and
  // searches can take a while.
  py::class_<boundex::Service>(m, "Service")
      .def(py::init([](uint64_t budget, size_t threads) {
             boundex::ServiceOptions options;
             options.budget = budget;
             options.grid_threads = threads;
             return std::make_unique<boundex::Service>(options);
           }),
           py::arg("budget") = boundex::kDefaultCellBudget, py::arg("threads") = 0)
      .def("suts", [](const boundex::Service& s) { return ToTuple(s.Suts()); })
      .def(
          "dispatch",
          [](const boundex::Service& s, const std::string& op, const std::string& body) {
            boundex::Response response;
            {
              py::gil_scoped_release release;
              response = s.Dispatch(op, body);
            }
            return ToTuple(response);
          },
          py::arg("operation"), py::arg("body"));
}

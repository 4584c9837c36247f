// Python bindings: typed access to the algebra kernel and multiplicities, and
// the command layer for everything that works on catalog models.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "thg/abelian.hpp"
#include "thg/cli.hpp"
#include "thg/error.hpp"
#include "thg/fox.hpp"

namespace py = pybind11;

namespace {

std::vector<std::string> to_strings(const thg::Vector& v) {
  std::vector<std::string> out;
  for (const auto& x : v) out.push_back(x.get_str());
  return out;
}

thg::IntMatrix to_matrix(const std::vector<std::vector<long>>& rows, std::size_t cols) {
  std::vector<thg::Vector> vs;
  for (const auto& r : rows) vs.emplace_back(r.begin(), r.end());
  return thg::IntMatrix::from_rows(vs, cols);
}

std::size_t column_count(const std::vector<std::vector<long>>& rows, std::optional<std::size_t> cols) {
  if (cols) return *cols;
  return rows.empty() ? 0 : rows.front().size();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Torus homotopy groups, Rhodes groups and Gottlieb subgroups";

  static py::exception<thg::Error> error_type(m, "ThgError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const thg::Error& e) {
      py::set_error(error_type, (std::string(thg::to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  m.def(
      "run",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = thg::cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs one thg command; returns (exit_code, stdout, stderr).");

  m.def(
      "multiplicities",
      [](int n, int i) {
        auto t = thg::fox::multiplicities(n, i);
        return py::dict(py::arg("alpha") = t.alpha.get_str(), py::arg("beta") = t.beta.get_str(),
                        py::arg("gamma") = t.gamma.get_str());
      },
      py::arg("n"), py::arg("i"), "alpha, beta, gamma for 1 <= i <= n as decimal strings.");

  m.def(
      "invariant_factors",
      [](std::size_t rank, const std::vector<long>& torsion) {
        thg::FgAbelian g = thg::canonical_form(rank, thg::Vector(torsion.begin(), torsion.end()));
        return py::make_tuple(g.rank(), to_strings(g.torsion()));
      },
      py::arg("rank"), py::arg("torsion"), "Canonical (rank, invariant factors) of Z^rank + sum Z/t.");

  m.def(
      "smith_diagonal",
      [](const std::vector<std::vector<long>>& rows, std::optional<std::size_t> cols) {
        return to_strings(thg::smith_normal_form(to_matrix(rows, column_count(rows, cols))).diag);
      },
      py::arg("rows"), py::arg("cols") = py::none());

  m.def(
      "cokernel",
      [](std::size_t rank, const std::vector<std::vector<long>>& rows) {
        thg::FgAbelian g = thg::cokernel(thg::FgAbelian::free(rank), to_matrix(rows, rank));
        return py::make_tuple(g.rank(), to_strings(g.torsion()));
      },
      py::arg("rank"), py::arg("rows"), "Z^rank modulo the row span.");

  m.def(
      "subgroup_index",
      [](std::size_t rank, const std::vector<std::vector<long>>& rows) {
        return thg::subgroup_index(thg::FgAbelian::free(rank), to_matrix(rows, rank)).to_string();
      },
      py::arg("rank"), py::arg("rows"), "Index of the row span in Z^rank, \"inf\" when infinite.");
}

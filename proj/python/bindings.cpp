#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "linqubo/errors.hpp"
#include "linqubo/io.hpp"
#include "linqubo/report.hpp"
#include "linqubo/solver.hpp"

namespace py = pybind11;
using namespace linqubo;

namespace {

using Rows = std::vector<std::vector<double>>;

Matrix to_matrix(const Rows& rows) {
  if (rows.empty()) throw DimensionMismatch("matrix must have at least one row");
  std::vector<double> flat;
  for (const auto& r : rows) {
    if (r.size() != rows.front().size()) throw DimensionMismatch("ragged matrix");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return Matrix(rows.size(), rows.front().size(), std::move(flat));
}

Rows to_rows(const Matrix& M) {
  Rows out(M.rows(), std::vector<double>(M.cols()));
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) out[i][j] = M(i, j);
  return out;
}

Vector to_vector(const std::vector<double>& v) { return Vector(v); }
std::vector<double> to_list(const Vector& v) { return {v.entries().begin(), v.entries().end()}; }

QubitAssignment to_bits(const std::vector<int>& bits) {
  QubitAssignment q;
  for (int b : bits) {
    if (b != 0 && b != 1) throw DimensionMismatch("bits must be 0 or 1");
    q.bits.push_back(static_cast<std::uint8_t>(b));
  }
  return q;
}

std::vector<int> from_bits(const QubitAssignment& q) { return {q.bits.begin(), q.bits.end()}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "QUBO formulations of linear systems (C++ core).";

  py::register_exception<Error>(m, "LinquboError");
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch", PyExc_ValueError);
  py::register_exception<NotSymmetric>(m, "NotSymmetric", PyExc_ValueError);
  py::register_exception<NotPSD>(m, "NotPSD", PyExc_ValueError);
  py::register_exception<NotRepresentable>(m, "NotRepresentable", PyExc_ValueError);
  py::register_exception<TooLarge>(m, "TooLarge", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<DuplicateEntry>(m, "DuplicateEntry", PyExc_ValueError);

  m.def("gram", [](const Rows& A) { return to_rows(gram(to_matrix(A))); }, py::arg("A"));

  py::class_<CongruenceDecomposition>(m, "CongruenceDecomposition")
      .def_property_readonly("R", [](const CongruenceDecomposition& d) { return to_rows(d.R); })
      .def_property_readonly("D", [](const CongruenceDecomposition& d) { return to_list(d.D); })
      .def_property_readonly("scale", [](const CongruenceDecomposition& d) { return to_list(d.scale); })
      .def_readonly("singular_warning", &CongruenceDecomposition::singular_warning);

  m.def(
      "congruence_diagonalize",
      [](const Rows& M, std::optional<std::vector<double>> scale) {
        const Matrix mat = to_matrix(M);
        return scale ? congruence_diagonalize(mat, to_vector(*scale)) : congruence_diagonalize(mat);
      },
      py::arg("M"), py::arg("scale") = py::none());

  m.def(
      "solve_via_congruence",
      [](const Rows& A, const std::vector<double>& b, const CongruenceDecomposition& dec) {
        const auto sol = solve_via_congruence({to_matrix(A), to_vector(b)}, dec);
        return py::make_tuple(to_list(sol.y), to_list(sol.x));
      },
      py::arg("A"), py::arg("b"), py::arg("dec"));

  m.def(
      "residual_norm_sq",
      [](const Rows& A, const std::vector<double>& b, const std::vector<double>& x) {
        return residual_norm_sq({to_matrix(A), to_vector(b)}, to_vector(x));
      },
      py::arg("A"), py::arg("b"), py::arg("x"));

  py::class_<RadixEncoding>(m, "RadixEncoding")
      .def(py::init<std::size_t, int, int>(), py::arg("num_vars"), py::arg("low_exp") = 0, py::arg("high_exp") = 2)
      .def_readonly("num_vars", &RadixEncoding::num_vars)
      .def_readonly("low_exp", &RadixEncoding::low_exp)
      .def_readonly("high_exp", &RadixEncoding::high_exp)
      .def_property_readonly("num_qubits", [](const RadixEncoding& e) { return num_qubits(e); });

  m.def("decode", [](const RadixEncoding& e, const std::vector<int>& bits) {
    return to_list(decode(e, to_bits(bits)));
  });
  m.def("canonical_encode", [](const RadixEncoding& e, const std::vector<double>& v) {
    return from_bits(canonical_encode(e, to_vector(v)));
  });
  m.def("enumerate_representations", [](const RadixEncoding& e, double value, std::size_t var) {
    std::vector<std::vector<int>> out;
    for (const auto& p : enumerate_representations(e, value, var)) out.emplace_back(p.begin(), p.end());
    return out;
  });

  py::class_<QuboMatrix>(m, "QuboMatrix")
      .def(py::init<>())
      .def_readwrite("n", &QuboMatrix::n)
      .def_readwrite("offset", &QuboMatrix::offset)
      .def_property_readonly("coeffs",
                             [](const QuboMatrix& Q) {
                               py::dict d;
                               for (const auto& [k, v] : Q.coeffs) d[py::make_tuple(k.first, k.second)] = v;
                               return d;
                             })
      .def("at", &QuboMatrix::at)
      .def("add", &QuboMatrix::add)
      .def("__len__", [](const QuboMatrix& Q) { return Q.coeffs.size(); });

  m.def(
      "build_vanilla",
      [](const Rows& A, const std::vector<double>& b, const RadixEncoding& enc, bool annihilate_pm) {
        return build_vanilla({to_matrix(A), to_vector(b)}, enc, {true, annihilate_pm});
      },
      py::arg("A"), py::arg("b"), py::arg("encoding"), py::arg("annihilate_pm") = false);

  m.def(
      "build_congruence",
      [](const Rows& A, const std::vector<double>& b, const CongruenceDecomposition& dec, const RadixEncoding& enc,
         bool annihilate_pm) {
        return build_congruence({to_matrix(A), to_vector(b)}, dec, enc, {true, annihilate_pm});
      },
      py::arg("A"), py::arg("b"), py::arg("dec"), py::arg("encoding"), py::arg("annihilate_pm") = true);

  m.def("energy", [](const QuboMatrix& Q, const std::vector<int>& bits) { return energy(Q, to_bits(bits)); });
  m.def("total_objective",
        [](const QuboMatrix& Q, const std::vector<int>& bits) { return total_objective(Q, to_bits(bits)); });
  m.def("sparsity_report", [](const QuboMatrix& Q) {
    const auto r = sparsity_report(Q);
    py::dict d;
    d["nnz"] = r.nnz;
    d["bound"] = r.bound;
    d["block_sizes"] = r.block_sizes;
    return d;
  });

  py::class_<SampleRecord>(m, "SampleRecord")
      .def_property_readonly("assignment", [](const SampleRecord& r) { return from_bits(r.assignment); })
      .def_readonly("energy", &SampleRecord::energy)
      .def_readonly("occurrences", &SampleRecord::occurrences);

  py::class_<SolveResult>(m, "SolveResult")
      .def_readonly("records", &SolveResult::records)
      .def_readonly("ground_energy", &SolveResult::ground_energy)
      .def_property_readonly("ground_states",
                             [](const SolveResult& r) {
                               std::vector<std::vector<int>> out;
                               for (const auto& g : r.ground_states) out.push_back(from_bits(g));
                               return out;
                             })
      .def_readonly("total_reads", &SolveResult::total_reads)
      .def_readonly("omitted", &SolveResult::omitted);

  m.def(
      "brute_force",
      [](const QuboMatrix& Q, std::optional<std::size_t> max_other) {
        py::gil_scoped_release release;
        return brute_force(Q, max_other.value_or(std::numeric_limits<std::size_t>::max()));
      },
      py::arg("Q"), py::arg("max_other_records") = py::none());

  m.def(
      "simulated_anneal",
      [](const QuboMatrix& Q, std::uint64_t num_reads, std::uint64_t sweeps, double beta_initial, double beta_final,
         std::uint64_t seed, unsigned threads) {
        py::gil_scoped_release release;
        return simulated_anneal(Q, {num_reads, sweeps, beta_initial, beta_final, seed, threads});
      },
      py::arg("Q"), py::arg("num_reads") = 1000, py::arg("sweeps_per_read") = 100, py::arg("beta_initial") = 0.05,
      py::arg("beta_final") = 5.0, py::arg("seed") = 0, py::arg("threads") = 0);

  m.def("ground_hit_rate", [](const SolveResult& r, const std::vector<std::vector<int>>& ground) {
    std::vector<QubitAssignment> ref;
    for (const auto& g : ground) ref.push_back(to_bits(g));
    return ground_hit_rate(r, ref);
  });

  m.def("write_qubo_coordinates", &write_qubo_coordinates, py::arg("Q"), py::arg("include_zeros") = false);
  m.def("read_qubo", [](const std::string& text) { return read_qubo(text).matrix; });

  m.def(
      "build_from_problem",
      [](const std::string& text, const std::string& model) {
        const QuboModel which = parse_model(model);
        if (which == QuboModel::unknown) throw DimensionMismatch("model must be 'vanilla' or 'congruence'");
        return build_model(read_problem(text), which).matrix;
      },
      py::arg("problem_text"), py::arg("model"));

  m.def(
      "compare",
      [](const std::string& text, std::uint64_t num_reads, std::uint64_t sweeps, std::uint64_t seed,
         std::size_t trials) {
        const ProblemFile p = read_problem(text);
        py::gil_scoped_release release;
        AnnealParams params;
        params.num_reads = num_reads;
        params.sweeps_per_read = sweeps;
        params.seed = seed;
        return render_compare(run_compare(p, params, trials));
      },
      py::arg("problem_text"), py::arg("num_reads") = 10000, py::arg("sweeps_per_read") = 100, py::arg("seed") = 1,
      py::arg("trials") = 3);
}

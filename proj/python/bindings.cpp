// Python bindings for the core simulator, problem generators, gradients,
// and the three optimization procedures.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <variant>

#include "vqnn/algorithms.hpp"
#include "vqnn/harness.hpp"
#include "vqnn/json_io.hpp"
#include "vqnn/noise.hpp"

namespace py = pybind11;
using namespace vqnn;

namespace {

std::vector<std::vector<int>> spins_as_rows(const std::vector<Spin>& flat,
                                            int num_qubits) {
  std::vector<std::vector<int>> rows(flat.size() / num_qubits,
                                     std::vector<int>(num_qubits));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (int q = 0; q < num_qubits; ++q)
      rows[r][q] = flat[r * num_qubits + q];
  return rows;
}

std::vector<Spin> to_spins(const std::vector<int>& x) {
  std::vector<Spin> s(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) s[i] = static_cast<Spin>(x[i]);
  return s;
}

Matrix matrix_from_rows(const std::vector<std::vector<double>>& rows) {
  const int n = static_cast<int>(rows.size());
  Matrix m(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n)
      throw std::invalid_argument("matrix rows must be square");
    for (int k = 0; k < n; ++k) m.at(i, k) = rows[i][k];
  }
  return m;
}

std::vector<std::vector<double>> matrix_to_rows(const Matrix& m) {
  std::vector<std::vector<double>> rows(m.dim(), std::vector<double>(m.dim()));
  for (int i = 0; i < m.dim(); ++i)
    for (int k = 0; k < m.dim(); ++k) rows[i][k] = m.at(i, k);
  return rows;
}

GradientMode parse_mode(const std::string& mode) {
  if (mode == "exact") return GradientMode::exact();
  if (mode.rfind("shots:", 0) == 0) {
    const int n = std::atoi(mode.c_str() + 6);
    if (n >= 1) return GradientMode::with_shots(n);
  }
  throw std::invalid_argument("mode must be \"exact\" or \"shots:N\"");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Statevector QAOA/Max-Cut toolkit with neural-network "
            "landscape deformation (ESCAPE and GUIDE)";

  py::class_<RngStream>(m, "RngStream")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("uniform", [](RngStream& r) { return r.uniform(); })
      .def("gaussian", &RngStream::gaussian, py::arg("mean"),
           py::arg("stddev"))
      .def_static("derive_seed", &RngStream::derive_seed);

  py::enum_<Axis>(m, "Axis")
      .value("X", Axis::X)
      .value("Y", Axis::Y)
      .value("Z", Axis::Z);

  py::class_<StateVector>(m, "StateVector")
      .def(py::init<int>(), py::arg("num_qubits"))
      .def_static("plus_state", &StateVector::plus_state)
      .def_static("ry_quarter_state", &StateVector::ry_quarter_state)
      .def_property_readonly("num_qubits", &StateVector::num_qubits)
      .def("amplitudes",
           [](const StateVector& sv) {
             return std::vector<cplx>(sv.amplitudes().begin(),
                                      sv.amplitudes().end());
           })
      .def("probabilities", &StateVector::probabilities)
      .def("apply_diagonal_phase",
           [](StateVector& sv, const DiagonalCost& cost, double gamma) {
             sv.apply_diagonal_phase(cost.span(), gamma);
           })
      .def("apply_rotation", &StateVector::apply_rotation, py::arg("qubit"),
           py::arg("axis"), py::arg("theta"))
      .def("apply_cz", &StateVector::apply_cz)
      .def("apply_x", &StateVector::apply_x)
      .def("apply_mixer", &StateVector::apply_mixer)
      .def("expectation_diagonal",
           [](const StateVector& sv, const DiagonalCost& cost) {
             return sv.expectation_diagonal(cost.span());
           })
      .def("sample_spins", [](const StateVector& sv, int n, RngStream& rng) {
        return spins_as_rows(sv.sample_spins(n, rng), sv.num_qubits());
      });

  py::class_<Edge>(m, "Edge")
      .def(py::init<int, int, double>())
      .def_readonly("u", &Edge::u)
      .def_readonly("v", &Edge::v)
      .def_readonly("weight", &Edge::weight);

  py::class_<MaxCutInstance>(m, "MaxCutInstance")
      .def(py::init<int, std::vector<Edge>>(), py::arg("num_nodes"),
           py::arg("edges"))
      .def_property_readonly("num_nodes", &MaxCutInstance::num_nodes)
      .def_property_readonly("edges", &MaxCutInstance::edges)
      .def_property_readonly("connected", &MaxCutInstance::connected)
      .def_readwrite("id", &MaxCutInstance::id)
      .def("to_json", [](const MaxCutInstance& inst) {
        return instance_to_json(inst).dump();
      });

  m.def("gen_fully_connected", &gen_fully_connected, py::arg("n"),
        py::arg("mean"), py::arg("variance"), py::arg("seed"));
  m.def("gen_k_regular_bimodal", &gen_k_regular_bimodal, py::arg("n"),
        py::arg("k"), py::arg("mean_abs"), py::arg("variance"),
        py::arg("seed"));
  m.def("load_instance", &load_instance);
  m.def("save_instance", &save_instance);

  py::class_<DiagonalCost>(m, "DiagonalCost")
      .def_readonly("num_qubits", &DiagonalCost::num_qubits)
      .def_readonly("values", &DiagonalCost::values);

  m.def("cost_of_assignment",
        [](const MaxCutInstance& inst, const std::vector<int>& x) {
          return cost_of_assignment(inst, to_spins(x));
        });
  m.def("build_cost_vector", &build_cost_vector);
  m.def("brute_force_minimum", [](const MaxCutInstance& inst) {
    const BruteForceResult r = brute_force_minimum(inst);
    return py::make_tuple(r.min_cost, r.minimizers);
  });

  py::class_<QaoaAnsatz>(m, "QaoaAnsatz")
      .def(py::init<int>(), py::arg("depth"))
      .def_readonly("depth", &QaoaAnsatz::depth);
  py::class_<HardwareEfficientAnsatz>(m, "HardwareEfficientAnsatz")
      .def(py::init(
               [](const std::string& axes) { return hea_from_axes_string(axes); }),
           py::arg("axes"))
      .def_property_readonly("axes", [](const HardwareEfficientAnsatz& h) {
        return axes_string(h);
      });
  m.def("random_hea", &random_hea, py::arg("num_qubits"), py::arg("rng"));

  m.def("num_params",
        [](const AnsatzSpec& a, int n) { return num_params(a, n); });
  m.def("random_init", [](const AnsatzSpec& a, int n, RngStream& rng) {
    return random_init(a, n, rng);
  });

  py::class_<CircuitRunner>(m, "CircuitRunner")
      .def(py::init<AnsatzSpec, const MaxCutInstance&>(), py::arg("ansatz"),
           py::arg("instance"), py::keep_alive<1, 3>())
      .def_property_readonly("num_qubits", &CircuitRunner::num_qubits)
      .def_property_readonly("num_params", &CircuitRunner::num_params)
      .def("state",
           [](const CircuitRunner& r, const std::vector<double>& theta) {
             return r.state(theta);
           })
      .def("exact_expectation",
           [](const CircuitRunner& r, const std::vector<double>& theta,
              const DiagonalCost& measure) {
             return r.exact_expectation(theta, measure);
           })
      .def("sampled_expectation",
           [](const CircuitRunner& r, const std::vector<double>& theta,
              const DiagonalCost& measure, int shots, RngStream& rng) {
             return r.sampled_expectation(theta, measure, shots, rng);
           });

  m.def("prepare_state", [](const AnsatzSpec& a, const MaxCutInstance& inst,
                            const std::vector<double>& theta) {
    return prepare_state(a, inst, theta);
  });

  py::class_<Matrix>(m, "Matrix")
      .def(py::init(&matrix_from_rows), py::arg("rows"))
      .def_static("identity", &Matrix::identity)
      .def_property_readonly("dim", &Matrix::dim)
      .def("to_rows", &matrix_to_rows);

  m.def("nn_forward", [](const Matrix& w, const std::vector<int>& x) {
    return nn_forward(w, to_spins(x));
  });
  m.def("relaxed_cost",
        [](const MaxCutInstance& inst, const std::vector<double>& y) {
          return relaxed_cost(inst, y);
        });
  m.def("grad_w", [](const MaxCutInstance& inst, const Matrix& w,
                     const std::vector<int>& x) {
    return grad_w(inst, w, to_spins(x));
  });
  m.def("modified_cost_vector", &modified_cost_vector);
  m.def("exact_weight_gradient",
        [](const MaxCutInstance& inst, const Matrix& w,
           const std::vector<double>& probs) {
          return exact_weight_gradient(inst, w, probs);
        });
  m.def("reg_value", &reg_value);
  m.def("reg_subgrad", &reg_subgrad);

  m.def(
      "param_shift_grad",
      [](const CircuitRunner& runner, const DiagonalCost& measure,
         const std::vector<double>& theta, const std::string& mode,
         RngStream* rng) {
        return param_shift_grad(runner, measure, theta, parse_mode(mode), rng);
      },
      py::arg("runner"), py::arg("measure"), py::arg("theta"),
      py::arg("mode") = "exact", py::arg("rng") = nullptr);
  m.def(
      "finite_diff_grad",
      [](const CircuitRunner& runner, const DiagonalCost& measure,
         const std::vector<double>& theta, double h) {
        return finite_diff_grad(runner, measure, theta, h);
      },
      py::arg("runner"), py::arg("measure"), py::arg("theta"),
      py::arg("h") = 1e-5);
  m.def(
      "modified_grad",
      [](const CircuitRunner& runner, const Matrix& w,
         const std::vector<double>& theta) {
        return modified_grad(runner, w, theta);
      },
      py::arg("runner"), py::arg("w"), py::arg("theta"));

  py::class_<GdConfig>(m, "GdConfig")
      .def(py::init([](double eta) { return GdConfig{eta}; }),
           py::arg("step_size") = 0.1)
      .def_readwrite("step_size", &GdConfig::step_size);
  py::class_<AdamConfig>(m, "AdamConfig")
      .def(py::init([](double eta) {
             AdamConfig c;
             c.step_size = eta;
             return c;
           }),
           py::arg("step_size") = 0.1)
      .def_readwrite("step_size", &AdamConfig::step_size);

  py::class_<Schedule>(m, "Schedule")
      .def_static(
          "heaviside",
          [](int threshold, int horizon) {
            Schedule s{Schedule::Kind::Heaviside, threshold, horizon};
            s.validate();
            return s;
          },
          py::arg("threshold"), py::arg("horizon"))
      .def_static(
          "linear",
          [](int horizon) {
            Schedule s{Schedule::Kind::Linear, 0, horizon};
            s.validate();
            return s;
          },
          py::arg("horizon"))
      .def("value", &Schedule::value);

  py::class_<ConvergenceCriterion>(m, "ConvergenceCriterion")
      .def(py::init([](double grad_inf_tol, double cost_change_tol, int window,
                       int max_iters) {
             ConvergenceCriterion c{grad_inf_tol, cost_change_tol, window,
                                    max_iters};
             c.validate();
             return c;
           }),
           py::arg("grad_inf_tol") = 1e-3, py::arg("cost_change_tol") = 1e-5,
           py::arg("window") = 20, py::arg("max_iters") = 2000);

  py::class_<NoiseModel>(m, "NoiseModel")
      .def(py::init([](double q, int trajectories) {
             NoiseModel n{q, trajectories};
             validate(n);
             return n;
           }),
           py::arg("bit_flip_prob"), py::arg("trajectories") = 100);
  m.def(
      "noisy_expectation",
      [](const CircuitRunner& runner, const std::vector<double>& theta,
         const DiagonalCost& measure, const NoiseModel& noise,
         RngStream& rng) {
        return noisy_expectation(runner, theta, measure, noise, rng);
      },
      py::arg("runner"), py::arg("theta"), py::arg("measure"),
      py::arg("noise"), py::arg("rng"));

  py::class_<EscapeConfig>(m, "EscapeConfig")
      .def(py::init<>())
      .def_readwrite("nn_steps", &EscapeConfig::nn_steps)
      .def_readwrite("nn_step_size", &EscapeConfig::nn_step_size)
      .def_readwrite("schedule", &EscapeConfig::schedule)
      .def_readwrite("improvement_threshold",
                     &EscapeConfig::improvement_threshold)
      .def_readwrite("circuit_optimizer", &EscapeConfig::circuit_optimizer)
      .def_readwrite("criterion", &EscapeConfig::criterion)
      .def_readwrite("noise", &EscapeConfig::noise);

  py::class_<GuideConfig>(m, "GuideConfig")
      .def(py::init<>())
      .def_readwrite("alpha", &GuideConfig::alpha)
      .def_readwrite("schedule", &GuideConfig::schedule)
      .def_readwrite("theta_optimizer", &GuideConfig::theta_optimizer)
      .def_readwrite("w_step_size", &GuideConfig::w_step_size)
      .def_readwrite("criterion", &GuideConfig::criterion)
      .def_readwrite("noise", &GuideConfig::noise);

  py::class_<PhaseTrace>(m, "PhaseTrace")
      .def_readonly("name", &PhaseTrace::name)
      .def_readonly("costs", &PhaseTrace::costs)
      .def_readonly("original_costs", &PhaseTrace::original_costs);

  py::class_<RunRecord>(m, "RunRecord")
      .def_readonly("algorithm", &RunRecord::algorithm)
      .def_readonly("instance_id", &RunRecord::instance_id)
      .def_readonly("init_seed", &RunRecord::init_seed)
      .def_readonly("initial_theta", &RunRecord::initial_theta)
      .def_readonly("final_theta", &RunRecord::final_theta)
      .def_readonly("pre_cost", &RunRecord::pre_cost)
      .def_readonly("final_cost", &RunRecord::final_cost)
      .def_readonly("improved", &RunRecord::improved)
      .def_readonly("phases", &RunRecord::phases)
      .def_readonly("wall_time_ms", &RunRecord::wall_time_ms)
      .def_property_readonly(
          "trained_weights",
          [](const RunRecord& r) { return matrix_to_rows(r.trained_weights); })
      .def_property_readonly(
          "final_weights",
          [](const RunRecord& r) { return matrix_to_rows(r.final_weights); })
      .def("to_json",
           [](const RunRecord& r) { return record_to_json(r).dump(); });

  m.def(
      "run_standard",
      [](const CircuitRunner& runner, const std::vector<double>& theta0,
         const OptimizerConfig& optimizer, const ConvergenceCriterion& crit,
         std::uint64_t seed) {
        return run_standard(runner, theta0, optimizer, crit,
                            GradientMode::exact(), std::nullopt, seed);
      },
      py::arg("runner"), py::arg("theta0"),
      py::arg("optimizer") = OptimizerConfig{AdamConfig{}},
      py::arg("criterion") = ConvergenceCriterion{}, py::arg("seed") = 0);
  m.def(
      "run_escape",
      [](const CircuitRunner& runner, const std::vector<double>& theta0,
         const EscapeConfig& config, std::uint64_t seed) {
        return run_escape(runner, theta0, config, seed);
      },
      py::arg("runner"), py::arg("theta0"), py::arg("config"),
      py::arg("seed") = 0);
  m.def(
      "run_guide",
      [](const CircuitRunner& runner, const std::vector<double>& theta0,
         const GuideConfig& config, std::uint64_t seed) {
        return run_guide(runner, theta0, config, seed);
      },
      py::arg("runner"), py::arg("theta0"), py::arg("config"),
      py::arg("seed") = 0);

  m.def("run_experiment", [](const std::string& config_path) {
    const ExperimentConfig config = load_config(config_path);
    const BatchResult result = run_batch(config);
    emit_outputs(config, result);
    return records_document(config, result).dump();
  });
}

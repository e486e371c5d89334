#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>
#include <sstream>

#include "unicl/cl_eval.hpp"
#include "unicl/estimation.hpp"
#include "unicl/index_sets.hpp"
#include "unicl/inference.hpp"
#include "unicl/model.hpp"
#include "unicl/simulation.hpp"

namespace py = pybind11;
using namespace unicl;

namespace {

Dataset dataset_from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 2) throw std::invalid_argument("data must be a 2-D array");
    const auto rows = static_cast<std::size_t>(a.shape(0));
    const auto cols = static_cast<std::size_t>(a.shape(1));
    std::vector<double> buf(a.data(), a.data() + rows * cols);
    return Dataset(std::move(buf), cols);
}

py::array_t<double> array_from_dataset(const Dataset& d) {
    py::array_t<double> out({d.rows(), d.cols()});
    std::copy(d.raw().begin(), d.raw().end(), out.mutable_data());
    return out;
}

WeightScheme default_weights(const ConditionalModel& m) {
    return WeightScheme::all_conditionals(m.dim(), 0.5);
}

Method method_from_string(const std::string& s) {
    if (s == "split") return Method::split;
    if (s == "swap") return Method::swap;
    throw std::invalid_argument("method must be 'split' or 'swap'");
}

SamplePart part_from_int(int p) {
    if (p == 1) return SamplePart::part1;
    if (p == 2) return SamplePart::part2;
    return SamplePart::unspecified;
}

} // namespace

PYBIND11_MODULE(_unicl, m) {
    m.doc() = "Composite-likelihood universal inference core";
    m.attr("__version__") = "0.1.0";

    py::register_exception<CapabilityError>(m, "CapabilityError");
    py::register_exception<InvalidWeightScheme>(m, "InvalidWeightSchemeError");
    py::register_exception<ProvenanceError>(m, "ProvenanceError");
    py::register_exception<DegenerateDataError>(m, "DegenerateDataError");

    m.def("enumerate_subsets", [](int d) {
        std::vector<std::vector<int>> out;
        for (const auto& s : enumerate_subsets(d)) out.push_back(s.members());
        return out;
    }, py::arg("d"));
    m.def("enumerate_divisions", [](int d) {
        std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
        for (const auto& t : enumerate_divisions(d))
            out.emplace_back(t.left().members(), t.right().members());
        return out;
    }, py::arg("d"));

    py::class_<WeightScheme>(m, "WeightScheme")
        .def_static("all_conditionals", &WeightScheme::all_conditionals, py::arg("d"),
                    py::arg("w"))
        .def_static("joint_only", &WeightScheme::joint_only, py::arg("d"))
        .def_static("from_json", [](const std::string& text) {
            return weight_scheme_from_json(nlohmann::json::parse(text));
        })
        .def("to_json", [](const WeightScheme& w) { return weight_scheme_to_json(w).dump(); })
        .def("total_weight", [](const WeightScheme& w) { return total_weight(w); })
        .def_readonly("d", &WeightScheme::d);

    py::class_<ConditionalModel>(m, "Model")
        .def_property_readonly("id", [](const ConditionalModel& mm) { return mm.id(); })
        .def_property_readonly("dim", &ConditionalModel::dim)
        .def_property_readonly("param_dim", &ConditionalModel::param_dim)
        .def("sample",
             [](const ConditionalModel& mm, const std::vector<double>& theta, std::size_t n,
                std::uint64_t seed) {
                 Rng rng(seed);
                 return array_from_dataset(mm.sample(theta, n, rng));
             },
             py::arg("theta"), py::arg("n"), py::arg("seed") = 0);

    m.def("make_model", [](const std::string& id) { return make_model(id); }, py::arg("id"));

    m.def("icl_log_density",
          [](const ConditionalModel& mm, const std::vector<double>& x,
             const std::vector<double>& theta, const WeightScheme* w) {
              return icl_log_density(mm, w ? *w : default_weights(mm), x, theta);
          },
          py::arg("model"), py::arg("x"), py::arg("theta"), py::arg("weights") = nullptr);

    m.def("cl_log_likelihood",
          [](const ConditionalModel& mm, const py::array_t<double>& data,
             const std::vector<double>& theta, const WeightScheme* w) {
              return cl_log_likelihood(mm, w ? *w : default_weights(mm),
                                       dataset_from_array(data), theta);
          },
          py::arg("model"), py::arg("data"), py::arg("theta"), py::arg("weights") = nullptr);

    py::class_<EstimateResult>(m, "EstimateResult")
        .def_readonly("theta_hat", &EstimateResult::theta_hat)
        .def_readonly("logcl_at_max", &EstimateResult::logcl_at_max)
        .def_readonly("converged", &EstimateResult::converged)
        .def_readonly("iterations", &EstimateResult::iterations)
        .def("__repr__", [](const EstimateResult& e) {
            std::ostringstream os;
            os << "EstimateResult(theta_hat=[";
            for (std::size_t i = 0; i < e.theta_hat.size(); ++i)
                os << (i ? ", " : "") << e.theta_hat[i];
            os << "], logcl=" << e.logcl_at_max << ", converged=" << (e.converged ? "True" : "False")
               << ")";
            return os.str();
        });

    m.def("fit",
          [](const ConditionalModel& mm, const py::array_t<double>& data, bool null_c0,
             int part) {
              const Dataset d = dataset_from_array(data);
              const WeightScheme w = default_weights(mm);
              if (mm.id() == "exp-cond")
                  return mcle_scalar(mm, w, d, {}, part_from_int(part));
              return mcle_lognorm(mm, w, d, {}, null_c0, part_from_int(part));
          },
          py::arg("model"), py::arg("data"), py::arg("null_c0") = false, py::arg("part") = 0);

    m.def("external_estimate",
          [](std::vector<double> theta, int part) {
              return external_estimate(std::move(theta), part_from_int(part));
          },
          py::arg("theta"), py::arg("part"));

    m.def("confidence_set",
          [](const ConditionalModel& mm, const py::array_t<double>& data, double alpha,
             const std::string& method, std::uint64_t seed, bool random_split) {
              const Dataset d = dataset_from_array(data);
              const WeightScheme w = default_weights(mm);
              const SplitSample ss =
                  split(d, random_split ? SplitRule::random : SplitRule::first_half, seed);
              const auto e1 = mcle_scalar(mm, w, ss.part1, {}, SamplePart::part1);
              const auto e2 = mcle_scalar(mm, w, ss.part2, {}, SamplePart::part2);
              const auto set =
                  confidence_set_1d(mm, w, ss, alpha, {e1, e2}, method_from_string(method));
              py::dict out;
              out["alpha"] = set.alpha;
              out["method"] = method;
              py::list iv;
              for (const auto& pair : set.intervals) iv.append(py::make_tuple(pair[0], pair[1]));
              out["intervals"] = iv;
              out["diameter"] = set.diameter;
              out["unbounded"] = set.unbounded;
              return out;
          },
          py::arg("model"), py::arg("data"), py::arg("alpha"), py::arg("method"),
          py::arg("seed") = 0, py::arg("random_split") = false);

    m.def("test_c_zero",
          [](const ConditionalModel& mm, const py::array_t<double>& data, double alpha,
             const std::string& method, std::uint64_t seed, bool random_split) {
              const Dataset d = dataset_from_array(data);
              const WeightScheme w = default_weights(mm);
              const SplitSample ss =
                  split(d, random_split ? SplitRule::random : SplitRule::first_half, seed);
              std::pair<EstimateResult, EstimateResult> nulls{
                  mcle_lognorm(mm, w, ss.part1, {}, true, SamplePart::part1),
                  mcle_lognorm(mm, w, ss.part2, {}, true, SamplePart::part2)};
              std::pair<EstimateResult, EstimateResult> frees{
                  mcle_lognorm(mm, w, ss.part1, {}, false, SamplePart::part1),
                  mcle_lognorm(mm, w, ss.part2, {}, false, SamplePart::part2)};
              const auto r = clr_test(mm, w, ss, alpha, nulls, frees, method_from_string(method));
              py::dict out;
              out["method"] = method;
              out["alpha"] = r.alpha;
              out["log_statistic"] = r.statistic_log;
              out["reject"] = r.reject;
              out["e_value"] = r.e_value;
              return out;
          },
          py::arg("model"), py::arg("data"), py::arg("alpha"), py::arg("method"),
          py::arg("seed") = 0, py::arg("random_split") = false);

    const auto report_to_rows = [](const ExperimentReport& rep) {
        py::list rows;
        for (const auto& r : rep.rows) {
            py::dict row;
            row["method"] = r.method;
            row["param"] = r.param;
            row["n1"] = r.n1;
            row["metric"] = r.metric;
            row["value"] = r.value;
            row["reps"] = r.reps;
            row["excluded"] = r.excluded;
            rows.append(row);
        }
        return rows;
    };

    m.def("run_coverage",
          [report_to_rows](const std::string& config_json) {
              const auto cfg = coverage_config_from_json(nlohmann::json::parse(config_json));
              return report_to_rows(run_coverage(cfg));
          },
          py::arg("config_json"));

    m.def("run_power",
          [report_to_rows](const std::string& config_json) {
              const auto cfg = power_config_from_json(nlohmann::json::parse(config_json));
              return report_to_rows(run_power(cfg));
          },
          py::arg("config_json"));
}

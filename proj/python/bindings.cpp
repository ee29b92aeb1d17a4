#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>

#include "fkmix/degree_sequence.hpp"
#include "fkmix/diagnostics.hpp"
#include "fkmix/dynamics.hpp"
#include "fkmix/generate.hpp"
#include "fkmix/multigraph.hpp"
#include "fkmix/partition.hpp"
#include "fkmix/rc.hpp"
#include "fkmix/rng.hpp"
#include "fkmix/thresholds.hpp"

namespace py = pybind11;
using namespace fkmix;

PYBIND11_MODULE(_fkmix, m) {
    m.doc() = "random-cluster and Potts dynamics on random graphs";

    py::class_<MultiGraph>(m, "MultiGraph")
        .def(py::init<int>(), py::arg("n"))
        .def("add_edge", &MultiGraph::add_edge)
        .def("n", &MultiGraph::n)
        .def("m", &MultiGraph::m)
        .def("edge", &MultiGraph::edge)
        .def("degree", &MultiGraph::degree)
        .def("edges", &MultiGraph::edges);

    py::class_<BoundaryPartition>(m, "BoundaryPartition")
        .def(py::init<int>(), py::arg("universe"))
        .def_static("wired", &BoundaryPartition::wired)
        .def("component_count", &BoundaryPartition::component_count)
        .def("sparsity", &BoundaryPartition::sparsity);

    py::class_<RcParams>(m, "RcParams")
        .def(py::init<double, double>(), py::arg("p"), py::arg("q"))
        .def_readonly("p", &RcParams::p)
        .def_readonly("q", &RcParams::q)
        .def_readonly("phat", &RcParams::phat);

    py::class_<Rng>(m, "Rng")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def("uniform", &Rng::uniform)
        .def("next_u64", &Rng::next_u64);

    // thresholds
    m.def("p_u", &p_u, py::arg("q"), py::arg("gamma"));
    m.def("beta_u", &beta_u, py::arg("q"), py::arg("gamma"));
    m.def("check_alternate_form", &check_alternate_form, py::arg("p"), py::arg("q"),
          py::arg("gamma"));
    m.def(
        "tree_phi_regular",
        [](int arity, int height, double p, double q) {
            return tree_phi_regular(arity, height, RcParams(p, q));
        },
        py::arg("arity"), py::arg("height"), py::arg("p"), py::arg("q"));

    // generation
    m.def(
        "sample_configuration_model",
        [](const std::vector<int>& degrees, std::uint64_t seed) {
            return sample_configuration_model(DegreeSequence(degrees), seed);
        },
        py::arg("degrees"), py::arg("seed"));
    m.def("sample_er_poisson_cloning", &sample_er_poisson_cloning, py::arg("n"),
          py::arg("lambda_"), py::arg("seed"));

    // exact laws
    py::class_<ExactRcDistribution>(m, "ExactRcDistribution")
        .def(py::init<const MultiGraph&, const BoundaryPartition&, const RcParams&>())
        .def("probability", &ExactRcDistribution::probability)
        .def("log_weight", &ExactRcDistribution::log_weight)
        .def("probabilities", &ExactRcDistribution::probabilities)
        .def("edge_marginal", &ExactRcDistribution::edge_marginal)
        .def("pair_connectivity", &ExactRcDistribution::pair_connectivity);

    // dynamics
    py::class_<FkChain>(m, "FkChain")
        .def(py::init([](const MultiGraph& g, const BoundaryPartition& bc, const RcParams& params,
                         const std::vector<int>& init) {
                 return FkChain(g, bc, params, RcConfiguration(init.begin(), init.end()));
             }),
             py::arg("graph"), py::arg("bc"), py::arg("params"), py::arg("init"))
        .def("run_continuous", &FkChain::run_continuous)
        .def("run_discrete", &FkChain::run_discrete)
        .def("config",
             [](const FkChain& c) {
                 std::vector<int> out(c.config().begin(), c.config().end());
                 return out;
             })
        .def("steps", &FkChain::steps);

    py::class_<CouplingResult>(m, "CouplingResult")
        .def_readonly("time", &CouplingResult::time)
        .def_readonly("coupled", &CouplingResult::coupled)
        .def_readonly("events", &CouplingResult::events);
    m.def(
        "couple_extremes",
        [](const MultiGraph& g, const BoundaryPartition& bc, const RcParams& params,
           std::uint64_t seed, double t_max) { return couple_extremes(g, bc, params, seed, t_max); },
        py::arg("graph"), py::arg("bc"), py::arg("params"), py::arg("seed"), py::arg("t_max"));

    // diagnostics
    py::class_<ShatterReport>(m, "ShatterReport")
        .def_readonly("max_cluster", &ShatterReport::max_cluster)
        .def_readonly("component_sizes", &ShatterReport::component_sizes);
    m.def(
        "shatter_stats",
        [](const MultiGraph& g, const RcParams& params, double t, int n_seeds,
           std::uint64_t seed) { return shatter_stats(g, params, t, n_seeds, seed); },
        py::arg("graph"), py::arg("params"), py::arg("t"), py::arg("n_seeds"), py::arg("seed"));
    m.def(
        "kr_sparse_check",
        [](const MultiGraph& g, const std::vector<int>& omega, int K, int R) {
            const auto rep = kr_sparse_check(g, RcConfiguration(omega.begin(), omega.end()), K, R);
            return py::make_tuple(rep.ok, rep.max_sparsity);
        },
        py::arg("graph"), py::arg("omega"), py::arg("K"), py::arg("R"));

    // potts
    py::class_<PottsChain>(m, "PottsChain")
        .def(py::init<const MultiGraph&, double, int, const PottsConfiguration&>(),
             py::arg("graph"), py::arg("beta"), py::arg("q"), py::arg("init"))
        .def("run_discrete", &PottsChain::run_discrete)
        .def("config", &PottsChain::config);
    m.def("potts_beta_from_p", [](double p) { return -std::log1p(-p); });
}

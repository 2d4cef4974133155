#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "segmerge/baseline.hpp"
#include "segmerge/eval.hpp"
#include "segmerge/grid.hpp"
#include "segmerge/io.hpp"
#include "segmerge/merge.hpp"
#include "segmerge/synth.hpp"

namespace py = pybind11;
using namespace segmerge;

namespace {

Dataset make_dataset(Eigen::MatrixXd features, Eigen::VectorXd labels, int d_prime,
                     std::optional<Eigen::VectorXd> truth) {
  Dataset ds;
  ds.features = std::move(features);
  ds.labels = std::move(labels);
  ds.d_prime = d_prime;
  ds.truth = std::move(truth);
  ds.validate();
  return ds;
}

FittedModel fit(const Dataset& ds, const std::string& kernel, double sigma, int stop_count) {
  Grid grid = build_grid(ds);
  auto tree = build_tree(grid, ds);
  MergeConfig cfg{sigma, stop_count, kernel_from_string(kernel)};
  return greedy_merge(*tree, ds, grid, cfg);
}

NoiseSpec noise_from_string(const std::string& kind, double s2, std::uint64_t seed) {
  if (kind == "gaussian") return NoiseSpec::gaussian(s2, seed);
  if (kind == "uniform") return NoiseSpec::uniform(s2, seed);
  if (kind == "none") return NoiseSpec::none();
  throw std::invalid_argument("unknown noise kind: " + kind);
}

}  // namespace

PYBIND11_MODULE(_segmerge, m) {
  m.doc() = "multidimensional segmented regression by greedy merging";

  py::class_<Dataset>(m, "Dataset")
      .def(py::init(&make_dataset), py::arg("features"), py::arg("labels"),
           py::arg("d_prime") = 1, py::arg("truth") = std::nullopt)
      .def_readonly("features", &Dataset::features)
      .def_readonly("labels", &Dataset::labels)
      .def_readonly("d_prime", &Dataset::d_prime)
      .def_readonly("truth", &Dataset::truth)
      .def_property_readonly("n", &Dataset::n)
      .def_property_readonly("d", &Dataset::dim);

  py::class_<FittedPiece>(m, "FittedPiece")
      .def_property_readonly("lo", [](const FittedPiece& p) { return p.rect.lo; })
      .def_property_readonly("hi", [](const FittedPiece& p) { return p.rect.hi; })
      .def_readonly("level", &FittedPiece::level)
      .def_readonly("theta", &FittedPiece::theta)
      .def_readonly("sse", &FittedPiece::sse)
      .def_readonly("count", &FittedPiece::count)
      .def_readonly("effective_rank", &FittedPiece::effective_rank);

  py::class_<FittedModel>(m, "Model")
      .def_property_readonly("pieces", [](const FittedModel& m_) { return m_.pieces; })
      .def_property_readonly("num_pieces",
                             [](const FittedModel& m_) { return m_.pieces.size(); })
      .def_property_readonly("kernel",
                             [](const FittedModel& m_) { return to_string(m_.kernel); })
      .def("predict",
           [](const FittedModel& m_, const Eigen::MatrixXd& X) {
             return predict_many(m_, X);
           })
      .def("save", [](const FittedModel& m_, const std::string& path) { save_model(path, m_); });

  py::class_<CartModel>(m, "CartModel")
      .def_property_readonly("num_leaves", &CartModel::leaf_count)
      .def("predict", &CartModel::predict_many)
      .def("save", [](const CartModel& m_, const std::string& path) { save_cart(path, m_); });

  py::class_<SyntheticData>(m, "SyntheticData")
      .def_readonly("dataset", &SyntheticData::dataset)
      .def_readonly("cell", &SyntheticData::cell)
      .def_readonly("k", &SyntheticData::k);

  m.def("fit", &fit, py::arg("dataset"), py::arg("kernel") = "affine", py::arg("sigma"),
        py::arg("stop_count"));
  m.def("default_stop_count", &default_stop_count, py::arg("k"), py::arg("n"),
        py::arg("d_prime"));
  m.def("piece_count_bound", &piece_count_bound, py::arg("n_padded"), py::arg("d_prime"),
        py::arg("stop_count"));
  m.def(
      "gen_synthetic",
      [](int n, int d, int d_prime, int k, const std::string& noise, double s2,
         std::uint64_t seed, bool affine_truth) {
        return gen_synthetic(n, d, d_prime, k, noise_from_string(noise, s2, seed + 1), seed,
                             affine_truth);
      },
      py::arg("n"), py::arg("d"), py::arg("d_prime"), py::arg("k"),
      py::arg("noise") = "gaussian", py::arg("s2") = 1.0, py::arg("seed") = 0,
      py::arg("affine_truth") = false);
  m.def("true_fit_mse",
        [](const SyntheticData& data, const std::string& kernel) {
          return true_fit_mse(data, kernel_from_string(kernel));
        },
        py::arg("data"), py::arg("kernel") = "constant");
  m.def("oracle_mse", &oracle_mse);
  m.def("empirical_risk", &empirical_risk);
  m.def("cart_fit", &cart_fit, py::arg("dataset"), py::arg("max_leaves"),
        py::arg("allowed_coords") = 0);
  m.def("cart_oracle_mse", &cart_oracle_mse);
  m.def("cart_empirical_risk", &cart_empirical_risk);
  m.def("load_model", &load_model);
  m.def("load_cart", &load_cart);
  m.def("read_dataset_csv", &read_dataset_csv, py::arg("path"), py::arg("d_prime") = 1);
  m.def("write_dataset_csv", &write_dataset_csv);
}

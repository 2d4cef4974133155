#include "segmerge/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace segmerge {

namespace {

using nlohmann::json;

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

json to_json(const Grid& grid) {
  return json{{"n_padded", grid.n_padded},
              {"levels", grid.levels},
              {"d_prime", grid.d_prime},
              {"boundaries", grid.boundaries}};
}

Grid grid_from_json(const json& j) {
  Grid grid;
  grid.n_padded = j.at("n_padded");
  grid.levels = j.at("levels");
  grid.d_prime = j.at("d_prime");
  grid.boundaries = j.at("boundaries").get<std::vector<std::vector<double>>>();
  return grid;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

}  // namespace

Dataset read_dataset_csv(const std::string& path, int d_prime) {
  std::ifstream in(path);
  if (!in) throw CsvError(0, "cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw CsvError(0, "empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  std::vector<std::string> header = split_csv_line(line);
  bool has_truth = !header.empty() && header.back() == "truth";
  int d = static_cast<int>(header.size()) - 1 - (has_truth ? 1 : 0);
  if (d < 1 || header[d] != "y")
    throw CsvError(1, "expected header f1,...,fd,y[,truth]");
  for (int c = 0; c < d; ++c)
    if (header[c] != "f" + std::to_string(c + 1))
      throw CsvError(1, "expected column f" + std::to_string(c + 1) + ", got " + header[c]);

  std::vector<std::vector<double>> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields = split_csv_line(line);
    if (static_cast<int>(fields.size()) != static_cast<int>(header.size()))
      throw CsvError(line_no, "expected " + std::to_string(header.size()) + " fields, got " +
                                  std::to_string(fields.size()));
    std::vector<double> row(fields.size());
    for (size_t c = 0; c < fields.size(); ++c) {
      try {
        size_t used = 0;
        row[c] = std::stod(fields[c], &used);
        if (used != fields[c].size()) throw std::invalid_argument(fields[c]);
      } catch (const std::exception&) {
        throw CsvError(line_no, "bad number '" + fields[c] + "' in column " +
                                    std::to_string(c + 1));
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw CsvError(line_no, "no data rows");

  Dataset ds;
  ds.d_prime = d_prime;
  const int n = static_cast<int>(rows.size());
  ds.features.resize(n, d);
  ds.labels.resize(n);
  Eigen::VectorXd truth(n);
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < d; ++c) ds.features(i, c) = rows[i][c];
    ds.labels[i] = rows[i][d];
    if (has_truth) truth[i] = rows[i][d + 1];
  }
  if (has_truth) ds.truth = std::move(truth);
  ds.validate();
  return ds;
}

void write_dataset_csv(const std::string& path, const Dataset& dataset) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  char buf[64];
  for (int c = 0; c < dataset.dim(); ++c) out << "f" << c + 1 << ",";
  out << "y";
  if (dataset.truth) out << ",truth";
  out << "\n";
  auto emit = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
  };
  for (int i = 0; i < dataset.n(); ++i) {
    for (int c = 0; c < dataset.dim(); ++c) {
      emit(dataset.features(i, c));
      out << ",";
    }
    emit(dataset.labels[i]);
    if (dataset.truth) {
      out << ",";
      emit((*dataset.truth)[i]);
    }
    out << "\n";
  }
}

void save_model(const std::string& path, const FittedModel& model) {
  json pieces = json::array();
  for (const FittedPiece& p : model.pieces) {
    pieces.push_back(json{{"lo", p.rect.lo},
                          {"hi", p.rect.hi},
                          {"level", p.level},
                          {"theta", std::vector<double>(p.theta.begin(), p.theta.end())},
                          {"sse", p.sse},
                          {"count", p.count},
                          {"effective_rank", p.effective_rank}});
  }
  json j{{"type", "merge"},
         {"d", model.d},
         {"kernel", to_string(model.kernel)},
         {"fallback", model.fallback},
         {"grid", to_json(model.grid)},
         {"pieces", std::move(pieces)}};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
}

FittedModel load_model(const std::string& path) {
  json j = load_json(path);
  if (j.at("type") != "merge") throw std::runtime_error(path + " is not a merge model");
  FittedModel model;
  model.d = j.at("d");
  model.kernel = kernel_from_string(j.at("kernel"));
  model.fallback = j.at("fallback");
  model.grid = grid_from_json(j.at("grid"));
  for (const json& pj : j.at("pieces")) {
    FittedPiece p;
    p.rect.lo = pj.at("lo").get<std::vector<int>>();
    p.rect.hi = pj.at("hi").get<std::vector<int>>();
    p.level = pj.at("level");
    std::vector<double> theta = pj.at("theta").get<std::vector<double>>();
    p.theta = Eigen::Map<Eigen::VectorXd>(theta.data(), static_cast<Eigen::Index>(theta.size()));
    p.sse = pj.at("sse");
    p.count = pj.at("count");
    p.effective_rank = pj.at("effective_rank");
    model.pieces.push_back(std::move(p));
  }
  return model;
}

void save_cart(const std::string& path, const CartModel& model) {
  json nodes = json::array();
  for (const CartNode& n : model.nodes) {
    nodes.push_back(json{{"split_coord", n.split_coord},
                         {"threshold", n.threshold},
                         {"left", n.left},
                         {"right", n.right},
                         {"value", n.value},
                         {"sse", n.sse},
                         {"count", n.count}});
  }
  json j{{"type", "cart"}, {"d", model.d}, {"splits", std::move(nodes)}};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
}

CartModel load_cart(const std::string& path) {
  json j = load_json(path);
  if (j.at("type") != "cart") throw std::runtime_error(path + " is not a cart model");
  CartModel model;
  model.d = j.at("d");
  for (const json& nj : j.at("splits")) {
    CartNode n;
    n.split_coord = nj.at("split_coord");
    n.threshold = nj.at("threshold");
    n.left = nj.at("left");
    n.right = nj.at("right");
    n.value = nj.at("value");
    n.sse = nj.at("sse");
    n.count = nj.at("count");
    model.nodes.push_back(n);
  }
  return model;
}

std::string model_file_type(const std::string& path) {
  return load_json(path).at("type").get<std::string>();
}

}  // namespace segmerge

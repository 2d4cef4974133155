#pragma once

#include <stdexcept>
#include <string>

#include "segmerge/baseline.hpp"
#include "segmerge/types.hpp"

namespace segmerge {

struct CsvError : std::runtime_error {
  int line;
  CsvError(int line_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

// Header f1,...,fd,y[,truth]; one sample per row.
Dataset read_dataset_csv(const std::string& path, int d_prime = 1);
void write_dataset_csv(const std::string& path, const Dataset& dataset);

// Model files are JSON with a "type" discriminator ("merge" or "cart").
void save_model(const std::string& path, const FittedModel& model);
FittedModel load_model(const std::string& path);

void save_cart(const std::string& path, const CartModel& model);
CartModel load_cart(const std::string& path);

std::string model_file_type(const std::string& path);

}  // namespace segmerge

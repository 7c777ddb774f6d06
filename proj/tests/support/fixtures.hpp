#pragma once

#include <filesystem>
#include <string>

#include "dcloc/io.hpp"

namespace dcloc::testgen {

inline std::filesystem::path fixture_path(const std::string& name) {
  return std::filesystem::path(DCLOC_FIXTURE_DIR) / name;
}

inline ProblemInstance load_fixture(const std::string& name) {
  return load_instance(fixture_path(name)).instance;
}

inline Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index k = 0;
  for (double x : xs) v[k++] = x;
  return v;
}

}  // namespace dcloc::testgen

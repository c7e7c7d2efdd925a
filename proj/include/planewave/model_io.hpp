// Structured-text model files.
//
// Grammar (one key per line, '#' starts a comment, blank lines ignored):
//   n <int>
//   family a|b
//   F <n*n reals, row-major>
//   B <n*n reals, row-major>
//   tol <real>            (optional, default 1e-10)
// Keys may appear in any order; n must precede F and B.
#ifndef PLANEWAVE_MODEL_IO_HPP
#define PLANEWAVE_MODEL_IO_HPP

#include "planewave/homogeneous.hpp"

#include <iosfwd>
#include <string>

namespace planewave {

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ModelFile {
  HomogeneousModel model;
  double tol = 1e-10;
};

ModelFile parse_model(std::istream& in);
ModelFile parse_model_file(const std::string& path);
// Serialization with stable key order (n, family, F, B, tol).
std::string write_model(const ModelFile& m);

}  // namespace planewave

#endif

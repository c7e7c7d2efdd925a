#include "planewave/model_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace planewave {

namespace {
std::string strip_comment(const std::string& line) {
  const auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

Matrix read_matrix(std::istringstream& is, int n, const std::string& key) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!(is >> m(i, j)))
        throw parse_error("model: key '" + key + "' needs " + std::to_string(n * n) +
                          " numbers");
  double extra;
  if (is >> extra) throw parse_error("model: key '" + key + "' has trailing numbers");
  return m;
}
}  // namespace

ModelFile parse_model(std::istream& in) {
  ModelFile out;
  bool have_n = false, have_family = false, have_F = false, have_B = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream is(strip_comment(line));
    std::string key;
    if (!(is >> key)) continue;
    const std::string where = " (line " + std::to_string(lineno) + ")";
    if (key == "n") {
      if (!(is >> out.model.n) || out.model.n < 1)
        throw parse_error("model: bad rank" + where);
      have_n = true;
    } else if (key == "family") {
      std::string fam;
      if (!(is >> fam) || (fam != "a" && fam != "b"))
        throw parse_error("model: family must be 'a' or 'b'" + where);
      out.model.family = fam == "a" ? Family::a : Family::b;
      have_family = true;
    } else if (key == "F") {
      if (!have_n) throw parse_error("model: n must precede F" + where);
      out.model.F = read_matrix(is, out.model.n, "F");
      have_F = true;
    } else if (key == "B") {
      if (!have_n) throw parse_error("model: n must precede B" + where);
      out.model.B = read_matrix(is, out.model.n, "B");
      have_B = true;
    } else if (key == "tol") {
      if (!(is >> out.tol) || !(out.tol > 0))
        throw parse_error("model: bad tol" + where);
    } else {
      throw parse_error("model: unknown key '" + key + "'" + where);
    }
  }
  if (!have_n || !have_family || !have_F || !have_B)
    throw parse_error("model: required keys are n, family, F, B");
  return out;
}

ModelFile parse_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("model: cannot open '" + path + "'");
  return parse_model(in);
}

std::string write_model(const ModelFile& m) {
  std::ostringstream os;
  char buf[32];
  auto put = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    os << buf;
  };
  os << "n " << m.model.n << "\n";
  os << "family " << to_string(m.model.family) << "\n";
  for (const char* key : {"F", "B"}) {
    const Matrix& mat = key[0] == 'F' ? m.model.F : m.model.B;
    os << key;
    for (int i = 0; i < m.model.n; ++i)
      for (int j = 0; j < m.model.n; ++j) {
        os << ' ';
        put(mat(i, j));
      }
    os << "\n";
  }
  os << "tol ";
  put(m.tol);
  os << "\n";
  return os.str();
}

}  // namespace planewave

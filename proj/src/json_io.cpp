#include "cohcert/json_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <utility>

namespace cohcert::json_io {

json matrix_to_json(const Matrix& m) {
  json re = json::array(), im = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json rre = json::array(), rim = json::array();
    for (int j = 0; j < m.cols(); ++j) {
      rre.push_back(m(i, j).real());
      rim.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rre));
    im.push_back(std::move(rim));
  }
  json out;
  if (m.rows() == m.cols()) {
    out["dim"] = m.rows();
  } else {
    out["rows"] = m.rows();
    out["cols"] = m.cols();
  }
  out["re"] = std::move(re);
  out["im"] = std::move(im);
  return out;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_object()) throw InputError("matrix: expected a JSON object");
  long rows = 0, cols = 0;
  if (j.contains("dim")) {
    rows = cols = j.at("dim").get<long>();
  } else if (j.contains("rows") && j.contains("cols")) {
    rows = j.at("rows").get<long>();
    cols = j.at("cols").get<long>();
  } else {
    throw InputError("matrix: missing dim (or rows/cols)");
  }
  if (rows < 1 || cols < 1 || rows > kDimensionCap || cols > kDimensionCap)
    throw InputError("matrix: dimensions out of range");
  if (!j.contains("re") || !j.at("re").is_array())
    throw InputError("matrix: missing re array");
  const json& re = j.at("re");
  const json* im = j.contains("im") ? &j.at("im") : nullptr;
  if (static_cast<long>(re.size()) != rows || (im && static_cast<long>(im->size()) != rows))
    throw InputError("matrix: row count mismatch");
  Matrix m(rows, cols);
  for (long i = 0; i < rows; ++i) {
    const json& rre = re.at(i);
    if (static_cast<long>(rre.size()) != cols) throw InputError("matrix: column count mismatch");
    for (long k = 0; k < cols; ++k) {
      double x = rre.at(k).get<double>();
      double y = 0.0;
      if (im) {
        const json& rim = im->at(i);
        if (static_cast<long>(rim.size()) != cols)
          throw InputError("matrix: column count mismatch in im");
        y = rim.at(k).get<double>();
      }
      m(i, k) = Complex(x, y);
    }
  }
  if (!m.allFinite()) throw InputError("matrix: non-finite entry");
  return m;
}

json state_to_json(const linalg::DensityMatrix& rho) { return matrix_to_json(rho.mat()); }

linalg::DensityMatrix state_from_json(const json& j, bool allow_subnormalized) {
  return linalg::DensityMatrix(matrix_from_json(j), allow_subnormalized);
}

json channel_to_json(const channels::KrausChannel& ch) {
  json out;
  out["dim_in"] = ch.dim_in();
  out["dim_out"] = ch.dim_out();
  json kraus = json::array();
  for (const Matrix& k : ch.kraus()) kraus.push_back(matrix_to_json(k));
  out["kraus"] = std::move(kraus);
  return out;
}

channels::KrausChannel channel_from_json(const json& j) {
  if (!j.is_object()) throw InputError("channel: expected a JSON object");
  if (!j.contains("dim_in") || !j.contains("dim_out"))
    throw InputError("channel: missing dim_in/dim_out");
  const int din = j.at("dim_in").get<int>();
  const int dout = j.at("dim_out").get<int>();
  if (j.contains("kraus")) {
    std::vector<Matrix> ops;
    for (const json& k : j.at("kraus")) ops.push_back(matrix_from_json(k));
    return channels::KrausChannel(din, dout, std::move(ops));
  }
  if (j.contains("choi")) {
    return channels::from_choi(
        channels::ChoiMatrix(din, dout, matrix_from_json(j.at("choi"))));
  }
  throw InputError("channel: expected kraus list or choi matrix");
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

void write_json_atomic(const std::string& path, const json& j) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
  }
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw InputError("cannot write file: " + tmp.string());
    out << j.dump(2) << '\n';
  }
  fs::rename(tmp, target);
}

}  // namespace cohcert::json_io

#include "entgeo/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace entgeo {

namespace {

using nlohmann::json;

json matrix_json(const ComplexMatrix& m) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json rr = json::array();
    json ri = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      rr.push_back(m(i, j).real());
      ri.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

RealMatrix real_rows(const json& rows, const char* what) {
  if (!rows.is_array() || rows.empty()) throw Error(ErrorCode::Io, std::string(what) + " must be a non-empty array of rows");
  const std::size_t r = rows.size();
  const std::size_t c = rows.front().is_array() ? rows.front().size() : 0;
  if (c == 0) throw Error(ErrorCode::Io, std::string(what) + " rows must be non-empty arrays");
  RealMatrix m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  for (std::size_t i = 0; i < r; ++i) {
    if (!rows[i].is_array() || rows[i].size() != c) throw Error(ErrorCode::Io, std::string(what) + " is ragged");
    for (std::size_t j = 0; j < c; ++j) {
      if (!rows[i][j].is_number()) throw Error(ErrorCode::Io, std::string(what) + " entries must be numbers");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j].get<double>();
    }
  }
  return m;
}

ComplexMatrix complex_from(const json& obj) {
  if (!obj.is_object() || !obj.contains("re")) throw Error(ErrorCode::Io, "matrix object needs an \"re\" field");
  const RealMatrix re = real_rows(obj.at("re"), "re");
  RealMatrix im = RealMatrix::Zero(re.rows(), re.cols());
  if (obj.contains("im")) {
    im = real_rows(obj.at("im"), "im");
    if (im.rows() != re.rows() || im.cols() != re.cols()) throw Error(ErrorCode::Io, "re and im shapes differ");
  }
  ComplexMatrix m(re.rows(), re.cols());
  m.real() = re;
  m.imag() = im;
  return m;
}

Dims dims_from(const json& j, const char* key) {
  if (!j.contains(key)) return {};
  const json& d = j.at(key);
  if (!d.is_array()) throw Error(ErrorCode::Io, std::string("\"") + key + "\" must be an array");
  Dims dims;
  for (const json& v : d) {
    if (!v.is_number_integer()) throw Error(ErrorCode::Io, std::string("\"") + key + "\" entries must be integers");
    dims.push_back(v.get<int>());
  }
  return dims;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Io, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write '" + tmp + "'");
    out << content;
    out.flush();
    if (!out) {
      std::remove(tmp.c_str());
      throw Error(ErrorCode::Io, "write to '" + tmp + "' failed");
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw Error(ErrorCode::Io, "cannot rename '" + tmp + "' to '" + path + "'");
  }
}

std::string state_to_json(const DensityOperator& rho) {
  json j = matrix_json(rho.matrix());
  j["dims"] = rho.dims();
  return j.dump(2) + "\n";
}

DensityOperator state_from_json(const std::string& text) {
  const json j = parse(text);
  ComplexMatrix m = complex_from(j);
  Dims dims = dims_from(j, "dims");
  if (dims.empty()) dims = {static_cast<int>(m.rows())};
  return DensityOperator(std::move(m), std::move(dims));
}

DensityOperator read_state(const std::string& path) { return state_from_json(read_text(path)); }

void write_state(const std::string& path, const DensityOperator& rho) { write_text_atomic(path, state_to_json(rho)); }

KrausChannel channel_from_json(const std::string& text) {
  const json j = parse(text);
  if (!j.contains("kraus") || !j.at("kraus").is_array() || j.at("kraus").empty())
    throw Error(ErrorCode::Io, "channel file needs a non-empty \"kraus\" list");
  std::vector<ComplexMatrix> ops;
  for (const json& k : j.at("kraus")) ops.push_back(complex_from(k));
  Dims in = dims_from(j, "dims_in");
  Dims out = dims_from(j, "dims_out");
  if (in.empty()) in = {static_cast<int>(ops.front().cols())};
  if (out.empty()) out = {static_cast<int>(ops.front().rows())};
  return KrausChannel(std::move(ops), std::move(in), std::move(out));
}

std::string channel_to_json(const KrausChannel& ch) {
  json ops = json::array();
  for (const ComplexMatrix& a : ch.operators()) ops.push_back(matrix_json(a));
  json j{{"kraus", std::move(ops)}, {"dims_in", ch.dims_in()}, {"dims_out", ch.dims_out()}};
  return j.dump(2) + "\n";
}

KrausChannel read_channel(const std::string& path) { return channel_from_json(read_text(path)); }

std::string model_to_json(const SeparableModel& model) {
  const Ellipsoid& e = model.ellipsoid;
  json shape = json::array();
  for (Eigen::Index i = 0; i < e.shape().rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < e.shape().cols(); ++k) row.push_back(e.shape()(i, k));
    shape.push_back(std::move(row));
  }
  json j{{"center", std::vector<double>(e.center().data(), e.center().data() + e.center().size())},
         {"shape", std::move(shape)},
         {"eps", model.eps},
         {"ensemble_norm", model.eta},
         {"dims", model.dims},
         {"ensemble_size", model.ensemble_size}};
  return j.dump(2) + "\n";
}

SeparableModel model_from_json(const std::string& text) {
  const json j = parse(text);
  for (const char* key : {"center", "shape", "eps", "ensemble_norm", "dims"})
    if (!j.contains(key)) throw Error(ErrorCode::Io, std::string("ellipsoid file lacks \"") + key + "\"");
  const json& c = j.at("center");
  if (!c.is_array()) throw Error(ErrorCode::Io, "\"center\" must be an array");
  RealVector center(static_cast<Eigen::Index>(c.size()));
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!c[i].is_number()) throw Error(ErrorCode::Io, "\"center\" entries must be numbers");
    center(static_cast<Eigen::Index>(i)) = c[i].get<double>();
  }
  RealMatrix shape = real_rows(j.at("shape"), "shape");
  Dims dims = dims_from(j, "dims");
  if (!j.at("eps").is_number() || !j.at("ensemble_norm").is_number())
    throw Error(ErrorCode::Io, "\"eps\" and \"ensemble_norm\" must be numbers");
  const int size = j.contains("ensemble_size") ? j.at("ensemble_size").get<int>() : 0;
  return SeparableModel{Ellipsoid(std::move(center), std::move(shape)), std::move(dims), j.at("ensemble_norm").get<double>(),
                        j.at("eps").get<double>(), size};
}

SeparableModel read_model(const std::string& path) { return model_from_json(read_text(path)); }

void write_model(const std::string& path, const SeparableModel& model) { write_text_atomic(path, model_to_json(model)); }

}  // namespace entgeo

#include "json_codec.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <limits>

namespace qig::cli {

namespace {

[[noreturn]] void fail(const std::string& msg, const std::string& path) {
  throw ValidationError(msg, path);
}

double need_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail("expected a number", path);
  return j.get<double>();
}

Complex entry_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2)
    fail("expected a complex entry as [re, im]", path);
  return {need_number(j[0], path + "[0]"), need_number(j[1], path + "[1]")};
}

}  // namespace

json matrix_to_json(const MatrixAlgebra& alg, const Blocks& blocks) {
  json dims = json::array();
  for (auto d : alg.block_dims()) dims.push_back(static_cast<int64_t>(d));
  json jblocks = json::array();
  for (const auto& b : blocks) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < b.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < b.cols(); ++c)
        row.push_back(json::array({b(r, c).real(), b(r, c).imag()}));
      rows.push_back(std::move(row));
    }
    jblocks.push_back(std::move(rows));
  }
  return json{{"block_dims", dims}, {"blocks", jblocks}};
}

MatrixAlgebra algebra_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) fail("expected an object", path);
  if (!j.contains("block_dims")) fail("missing field", path + ".block_dims");
  const json& dims = j["block_dims"];
  if (!dims.is_array() || dims.empty()) fail("expected a nonempty array", path + ".block_dims");
  std::vector<Eigen::Index> out;
  for (size_t i = 0; i < dims.size(); ++i) {
    const std::string p = path + ".block_dims[" + std::to_string(i) + "]";
    if (!dims[i].is_number_integer()) fail("expected an integer", p);
    const int64_t d = dims[i].get<int64_t>();
    if (d < 1) fail("block dimension must be >= 1", p);
    out.push_back(static_cast<Eigen::Index>(d));
  }
  return MatrixAlgebra(out);
}

Blocks blocks_from_json(const json& j, const MatrixAlgebra& alg, const std::string& path) {
  if (!j.contains("blocks")) fail("missing field", path + ".blocks");
  const json& jb = j["blocks"];
  if (!jb.is_array() || jb.size() != static_cast<size_t>(alg.num_blocks()))
    fail("blocks must match block_dims", path + ".blocks");
  Blocks out;
  for (size_t b = 0; b < jb.size(); ++b) {
    const auto n = alg.block_dims()[b];
    const std::string pb = path + ".blocks[" + std::to_string(b) + "]";
    if (!jb[b].is_array() || jb[b].size() != static_cast<size_t>(n))
      fail("expected " + std::to_string(n) + " rows", pb);
    Matrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      const json& row = jb[b][static_cast<size_t>(r)];
      const std::string pr = pb + "[" + std::to_string(r) + "]";
      if (!row.is_array() || row.size() != static_cast<size_t>(n))
        fail("expected " + std::to_string(n) + " entries", pr);
      for (Eigen::Index c = 0; c < n; ++c)
        m(r, c) = entry_from_json(row[static_cast<size_t>(c)],
                                  pr + "[" + std::to_string(c) + "]");
    }
    out.push_back(std::move(m));
  }
  return out;
}

PositiveFunctional read_positive(const json& j, const std::string& path) {
  MatrixAlgebra alg = algebra_from_json(j, path);
  return PositiveFunctional(alg, blocks_from_json(j, alg, path));
}

HermitianElement read_hermitian(const json& j, const std::string& path) {
  MatrixAlgebra alg = algebra_from_json(j, path);
  return HermitianElement(alg, blocks_from_json(j, alg, path));
}

SelfAdjointFunctional read_selfadjoint(const json& j, const std::string& path) {
  MatrixAlgebra alg = algebra_from_json(j, path);
  return SelfAdjointFunctional(alg, blocks_from_json(j, alg, path));
}

namespace {

std::vector<Eigen::Index> dims_field(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail("expected a nonempty array", path);
  std::vector<Eigen::Index> out;
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer() || j[i].get<int64_t>() < 1)
      fail("expected a positive integer", path + "[" + std::to_string(i) + "]");
    out.push_back(static_cast<Eigen::Index>(j[i].get<int64_t>()));
  }
  return out;
}

Matrix rect_matrix_from_json(const json& j, Eigen::Index rows, Eigen::Index cols,
                             const std::string& path) {
  if (!j.is_array() || j.size() != static_cast<size_t>(rows))
    fail("expected " + std::to_string(rows) + " rows", path);
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<size_t>(r)];
    const std::string pr = path + "[" + std::to_string(r) + "]";
    if (!row.is_array() || row.size() != static_cast<size_t>(cols))
      fail("expected " + std::to_string(cols) + " entries", pr);
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = entry_from_json(row[static_cast<size_t>(c)],
                                pr + "[" + std::to_string(c) + "]");
  }
  return m;
}

}  // namespace

json channel_to_json(const Channel& T) {
  json src = json::array(), tgt = json::array();
  for (auto d : T.source().block_dims()) src.push_back(static_cast<int64_t>(d));
  for (auto d : T.target().block_dims()) tgt.push_back(static_cast<int64_t>(d));
  json kraus = json::array();
  for (const auto& k : T.kraus()) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < k.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < k.cols(); ++c)
        row.push_back(json::array({k(r, c).real(), k(r, c).imag()}));
      rows.push_back(std::move(row));
    }
    kraus.push_back(std::move(rows));
  }
  return json{{"source_dims", src}, {"target_dims", tgt}, {"kraus", kraus}};
}

Channel read_channel(const json& j, const std::string& path) {
  if (!j.is_object()) fail("expected an object", path);
  for (const char* f : {"source_dims", "target_dims", "kraus"})
    if (!j.contains(f)) fail("missing field", path + "." + f);
  MatrixAlgebra source(dims_field(j["source_dims"], path + ".source_dims"));
  MatrixAlgebra target(dims_field(j["target_dims"], path + ".target_dims"));
  const json& jk = j["kraus"];
  if (!jk.is_array() || jk.empty()) fail("expected a nonempty array", path + ".kraus");
  std::vector<Matrix> kraus;
  for (size_t i = 0; i < jk.size(); ++i)
    kraus.push_back(rect_matrix_from_json(jk[i], target.total_dim(), source.total_dim(),
                                          path + ".kraus[" + std::to_string(i) + "]"));
  return Channel(source, target, std::move(kraus));
}

// ---- 17-digit writer ---------------------------------------------------------

namespace {

void write_number(std::string& out, double v) {
  if (std::isinf(v)) {
    out += v > 0 ? "\"inf\"" : "\"-inf\"";
    return;
  }
  if (std::isnan(v)) {
    out += "null";
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

void write_value(std::string& out, const json& j, int indent, int depth) {
  const std::string pad(static_cast<size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<size_t>(indent * depth), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        out += json(it.key()).dump();
        out += ": ";
        write_value(out, it.value(), indent, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        write_value(out, v, indent, depth + 1);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case json::value_t::number_float:
      write_number(out, j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string dump_report(const json& j, int indent) {
  std::string out;
  write_value(out, j, indent, 0);
  out += "\n";
  return out;
}

json number_or_inf(double v) {
  if (std::isinf(v)) return json(v > 0 ? "inf" : "-inf");
  return json(v);
}

double parse_p(const std::string& text) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (...) {
    throw ValidationError("p must be a number or \"inf\"", "p");
  }
  if (used != text.size()) throw ValidationError("p must be a number or \"inf\"", "p");
  return v;
}

}  // namespace qig::cli

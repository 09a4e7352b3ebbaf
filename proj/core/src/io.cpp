// Copyright 2026 The qfdiv Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qfdiv/io.hpp"

#include <fstream>

namespace qfdiv::io {

namespace {

[[noreturn]] void parse_error(const std::string& msg) { throw Error(ErrorCode::ParseError, msg); }

json entries_to_json(const ComplexMatrix& m) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) entries.push_back({m(i, j).real(), m(i, j).imag()});
  }
  return entries;
}

ComplexMatrix entries_from_json(const json& entries, Eigen::Index rows, Eigen::Index cols) {
  if (!entries.is_array()) parse_error("\"entries\" must be an array");
  if (entries.size() != static_cast<std::size_t>(rows * cols)) {
    parse_error("entries length " + std::to_string(entries.size()) + " does not match " +
                std::to_string(rows) + "x" + std::to_string(cols));
  }
  ComplexMatrix m(rows, cols);
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j, ++k) {
      const json& e = entries[k];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        parse_error("each entry must be a [re, im] pair of numbers");
      }
      m(i, j) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

Eigen::Index positive_size(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 1) {
    parse_error(std::string("\"") + key + "\" must be a positive integer");
  }
  return static_cast<Eigen::Index>(j[key].get<long long>());
}

}  // namespace

json matrix_to_json(const ComplexMatrix& m) {
  json j;
  if (m.rows() == m.cols()) {
    j["dim"] = m.rows();
  } else {
    j["rows"] = m.rows();
    j["cols"] = m.cols();
  }
  j["entries"] = entries_to_json(m);
  return j;
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_object()) parse_error("matrix must be a JSON object");
  if (!j.contains("entries")) parse_error("matrix needs \"entries\"");
  if (j.contains("dim")) {
    const Eigen::Index n = positive_size(j, "dim");
    return entries_from_json(j["entries"], n, n);
  }
  return entries_from_json(j["entries"], positive_size(j, "rows"), positive_size(j, "cols"));
}

HermitianOperator hermitian_from_json(const json& j) {
  const ComplexMatrix m = matrix_from_json(j);
  if (m.rows() != m.cols()) parse_error("operator must be square");
  return HermitianOperator(m);
}

json channel_to_json(const KrausChannel& ch) {
  json ks = json::array();
  for (const auto& k : ch.kraus()) ks.push_back(matrix_to_json(k));
  return {{"dim_in", ch.dim_in()}, {"dim_out", ch.dim_out()}, {"kraus", ks}};
}

KrausChannel channel_from_json(const json& j) {
  if (!j.is_object()) parse_error("channel must be a JSON object");
  const Eigen::Index din = positive_size(j, "dim_in");
  const Eigen::Index dout = positive_size(j, "dim_out");
  if (!j.contains("kraus") || !j["kraus"].is_array() || j["kraus"].empty()) {
    parse_error("channel needs a nonempty \"kraus\" array");
  }
  std::vector<ComplexMatrix> ks;
  for (const json& kj : j["kraus"]) {
    ComplexMatrix k = matrix_from_json(kj);
    if (k.rows() != dout || k.cols() != din) parse_error("Kraus operator shape disagrees with dim_in/dim_out");
    ks.push_back(std::move(k));
  }
  return KrausChannel(std::move(ks));
}

json extended_to_json(ExtendedReal v) {
  if (v.is_infinite()) return "inf";
  return v.value();
}

json reverse_test_to_json(const ReverseTest& rt) {
  json atoms = json::array();
  for (const auto& a : rt.atoms) {
    json aj = {{"label", a.label}, {"p", a.p}, {"q", a.q}, {"output", matrix_to_json(a.output.matrix())}};
    aj["ratio"] = a.ratio ? json(*a.ratio) : json(nullptr);
    atoms.push_back(std::move(aj));
  }
  return {{"dim", rt.atoms.empty() ? 0 : rt.atoms.front().output.dim()}, {"atoms", atoms}};
}

json equality_report_to_json(const EqualityReport& rep) {
  json j;
  j["value_in"] = extended_to_json(rep.value_in);
  j["value_out"] = extended_to_json(rep.value_out);
  j["equal"] = rep.equal;
  j["multiplicative_domain_ok"] =
      rep.multiplicative_domain_applicable ? json(rep.multiplicative_domain_ok) : json(nullptr);
  j["multiplicative_domain_applicable"] = rep.multiplicative_domain_applicable;
  j["reverse_test_preserved"] = rep.reverse_test_preserved;
  j["p_match"] = rep.p_match;
  j["q_match"] = rep.q_match;
  j["sigma_singular"] = rep.sigma_singular;
  const auto num = [](double v) { return std::isfinite(v) ? json(v) : json("inf"); };
  j["defects"] = {{"multiplicative", num(rep.worst_multiplicative_defect)},
                  {"atom", num(rep.worst_atom_defect)},
                  {"p", num(rep.worst_p_defect)},
                  {"q", num(rep.worst_q_defect)}};
  return j;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    parse_error(path.string() + ": " + e.what());
  }
}

HermitianOperator read_operator(const std::filesystem::path& path) {
  return hermitian_from_json(read_json_file(path));
}

KrausChannel read_channel(const std::filesystem::path& path) {
  return channel_from_json(read_json_file(path));
}

}  // namespace qfdiv::io

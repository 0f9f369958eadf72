#include "qsd/io.hpp"

#include "qsd/bounds.hpp"
#include "qsd/channel.hpp"
#include "qsd/ensemble.hpp"
#include "qsd/measurement.hpp"
#include "qsd/oracle.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qsd {

json matrix_to_json(const cmat& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c)
      row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

cmat matrix_from_json(const json& j, const std::string& what,
                      int expected_rows, int expected_cols) {
  if (!j.is_array() || j.empty())
    throw ParseError(what + ": matrix must be a nonempty array of rows");
  const int rows = static_cast<int>(j.size());
  if (expected_rows >= 0 && rows != expected_rows)
    throw ParseError(what + ": has " + std::to_string(rows) +
                     " rows, expected " + std::to_string(expected_rows));
  const int want_cols = expected_cols >= 0 ? expected_cols : -1;

  int cols = -1;
  cmat m;
  for (int r = 0; r < rows; ++r) {
    const json& row = j.at(r);
    if (!row.is_array())
      throw ParseError(what + ": row " + std::to_string(r) + " is not an array");
    const int len = static_cast<int>(row.size());
    if (want_cols >= 0 && len != want_cols)
      throw ParseError(what + ": row " + std::to_string(r) + " length " +
                       std::to_string(len) + " != dim " +
                       std::to_string(want_cols));
    if (cols < 0) {
      cols = len;
      m.resize(rows, cols);
    } else if (len != cols) {
      throw ParseError(what + ": row " + std::to_string(r) + " length " +
                       std::to_string(len) + " != row 0 length " +
                       std::to_string(cols));
    }
    for (int c = 0; c < cols; ++c) {
      const json& entry = row.at(c);
      if (!entry.is_array() || entry.size() != 2 ||
          !entry.at(0).is_number() || !entry.at(1).is_number())
        throw ParseError(what + ": entry (" + std::to_string(r) + "," +
                         std::to_string(c) + ") is not a [re, im] pair");
      const double re = entry.at(0).get<double>();
      const double im = entry.at(1).get<double>();
      if (!std::isfinite(re) || !std::isfinite(im))
        throw ParseError(what + ": entry (" + std::to_string(r) + "," +
                         std::to_string(c) + ") is not finite");
      m(r, c) = cplx(re, im);
    }
  }
  return m;
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& err) {
    throw ParseError(what + ": " + err.what());
  }
}

namespace {

int get_positive_int(const json& j, const char* key, const std::string& what) {
  if (!j.contains(key) || !j.at(key).is_number_integer())
    throw ParseError(what + ": missing integer field \"" + key + "\"");
  const int v = j.at(key).get<int>();
  if (v <= 0) throw ParseError(what + ": \"" + key + "\" must be positive");
  return v;
}

}  // namespace

json ensemble_to_json(const WeightedEnsemble& e) {
  json j;
  j["dim"] = e.dim;
  j["priors"] = e.priors;
  json states = json::array();
  for (const cmat& rho : e.states) states.push_back(matrix_to_json(rho));
  j["states"] = std::move(states);
  return j;
}

WeightedEnsemble ensemble_from_json(const json& j) {
  const std::string what = "ensemble";
  WeightedEnsemble e;
  e.dim = get_positive_int(j, "dim", what);
  if (!j.contains("priors") || !j.at("priors").is_array())
    throw ParseError(what + ": missing array field \"priors\"");
  for (const json& p : j.at("priors")) {
    if (!p.is_number()) throw ParseError(what + ": prior is not a number");
    const double v = p.get<double>();
    if (!std::isfinite(v)) throw ParseError(what + ": prior is not finite");
    e.priors.push_back(v);
  }
  if (!j.contains("states") || !j.at("states").is_array())
    throw ParseError(what + ": missing array field \"states\"");
  int idx = 0;
  for (const json& s : j.at("states")) {
    e.states.push_back(matrix_from_json(s, what + " state " + std::to_string(idx),
                                        e.dim, e.dim));
    ++idx;
  }
  return e;
}

json povm_to_json(const Povm& p) {
  json j;
  j["dim"] = p.dim;
  json elements = json::array();
  for (const cmat& pi : p.elements) elements.push_back(matrix_to_json(pi));
  j["elements"] = std::move(elements);
  return j;
}

Povm povm_from_json(const json& j) {
  const std::string what = "povm";
  Povm p;
  p.dim = get_positive_int(j, "dim", what);
  if (!j.contains("elements") || !j.at("elements").is_array())
    throw ParseError(what + ": missing array field \"elements\"");
  int idx = 0;
  for (const json& el : j.at("elements")) {
    p.elements.push_back(matrix_from_json(
        el, what + " element " + std::to_string(idx), p.dim, p.dim));
    ++idx;
  }
  return p;
}

json channel_to_json(const QuantumChannel& c) {
  json j;
  j["dim_in"] = c.dim_in;
  j["dim_out"] = c.dim_out;
  json kraus = json::array();
  for (const cmat& k : c.kraus) kraus.push_back(matrix_to_json(k));
  j["kraus"] = std::move(kraus);
  return j;
}

QuantumChannel channel_from_json(const json& j) {
  const std::string what = "channel";
  QuantumChannel c;
  c.dim_in = get_positive_int(j, "dim_in", what);
  c.dim_out = get_positive_int(j, "dim_out", what);
  if (!j.contains("kraus") || !j.at("kraus").is_array())
    throw ParseError(what + ": missing array field \"kraus\"");
  int idx = 0;
  for (const json& k : j.at("kraus")) {
    c.kraus.push_back(matrix_from_json(
        k, what + " kraus " + std::to_string(idx), c.dim_out, c.dim_in));
    ++idx;
  }
  return c;
}

namespace {

json condition_check_to_json(const ConditionCheck& c) {
  return {{"holds", c.holds}, {"residual", c.residual}};
}

}  // namespace

json condition_report_to_json(const ConditionReport& r) {
  json j;
  j["cond_i"] = condition_check_to_json(r.cond_i);
  j["cond_ii"] = condition_check_to_json(r.cond_ii);
  j["cond_s1"] = condition_check_to_json(r.cond_s1);
  j["cond_eta"] = condition_check_to_json(r.cond_eta);
  j["tolerance"] = r.tolerance;
  j["theorem2_pass"] = r.theorem2_pass();
  j["theorem3_pass"] = r.theorem3_pass();
  j["corollary1_pass"] = r.corollary1_pass();
  return j;
}

json bounds_report_to_json(const BoundsReport& r) {
  json j;
  j["m"] = r.m;
  j["dim"] = r.dim;
  json norms = json::array();
  for (const PairValue& pv : r.pairwise_trace_norms)
    norms.push_back({{"i", pv.i}, {"j", pv.j}, {"value", pv.value}});
  j["pairwise_trace_norms"] = std::move(norms);
  j["q_lower"] = r.q_lower;
  j["helstrom"] = r.helstrom ? json(*r.helstrom) : json(nullptr);
  if (r.q_upper_t3) {
    j["q_upper_t3"] = {{"value", r.q_upper_t3->value},
                       {"certified", r.q_upper_t3->certified},
                       {"conditions",
                        condition_report_to_json(r.q_upper_t3->conditions)}};
  } else {
    j["q_upper_t3"] = nullptr;
  }
  j["qu_lower_feng"] = r.qu_lower_feng;
  j["qu_lower_pairwise"] = r.qu_lower_pairwise;
  j["ineq122_lhs"] = r.ineq122_lhs;
  j["attainment_gap"] =
      r.attainment_gap ? json(*r.attainment_gap) : json(nullptr);
  j["warnings"] = r.warnings;
  return j;
}

json oracle_result_to_json(const OracleResult& r) {
  json j;
  j["q_star"] = r.q_star;
  j["iterations"] = r.iterations;
  j["restarts_used"] = r.restarts_used;
  j["certificate"] = {{"optimal", r.certificate.optimal},
                      {"worst_min_eig", r.certificate.worst_min_eig},
                      {"asymmetry", r.certificate.asymmetry}};
  j["povm"] = povm_to_json(r.povm);
  return j;
}

json channel_result_to_json(const ChannelBoundResult& r) {
  json j;
  j["bound"] = r.bound;
  j["samples"] = r.samples;
  j["refined"] = r.refined;
  j["argmin_state"] = matrix_to_json(r.argmin_state);
  return j;
}

std::string csv_header() {
  return "id,m,dim,q_lower,helstrom,q_upper_t3,cond_pass,qu_feng,qu_pairwise,"
         "ineq122_lhs,oracle_q,attainment_gap";
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string csv_row(const std::string& id, const BoundsReport& r,
                    std::optional<double> oracle_q) {
  std::ostringstream os;
  os << id << ',' << r.m << ',' << r.dim << ',' << fmt(r.q_lower) << ',';
  if (r.helstrom) os << fmt(*r.helstrom);
  os << ',';
  if (r.q_upper_t3) os << fmt(r.q_upper_t3->value);
  os << ',';
  if (r.q_upper_t3) os << (r.q_upper_t3->certified ? "1" : "0");
  os << ',' << fmt(r.qu_lower_feng) << ',' << fmt(r.qu_lower_pairwise) << ','
     << fmt(r.ineq122_lhs) << ',';
  if (oracle_q) os << fmt(*oracle_q);
  os << ',';
  if (r.attainment_gap) os << fmt(*r.attainment_gap);
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write file: " + path);
  out << contents;
}

}  // namespace qsd

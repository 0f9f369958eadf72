#ifndef QSD_IO_HPP
#define QSD_IO_HPP

#include "qsd/types.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace qsd {

using json = nlohmann::json;

struct WeightedEnsemble;
struct Povm;
struct QuantumChannel;
struct ConditionReport;
struct BoundsReport;
struct OracleResult;
struct ChannelBoundResult;

// Shared matrix encoding: row-major array of rows, each entry [re, im] with
// finite doubles. Shape is implicit and validated on read.
json matrix_to_json(const cmat& m);

// expected_cols < 0 means "derive from the data"; when it is supplied the
// mismatch message names it, e.g. row 1 length 2 != dim 3.
cmat matrix_from_json(const json& j, const std::string& what,
                      int expected_rows = -1, int expected_cols = -1);

json parse_json(const std::string& text, const std::string& what);

json ensemble_to_json(const WeightedEnsemble& e);
WeightedEnsemble ensemble_from_json(const json& j);

json povm_to_json(const Povm& p);
Povm povm_from_json(const json& j);

json channel_to_json(const QuantumChannel& c);
QuantumChannel channel_from_json(const json& j);

json condition_report_to_json(const ConditionReport& r);
json bounds_report_to_json(const BoundsReport& r);
json oracle_result_to_json(const OracleResult& r);
json channel_result_to_json(const ChannelBoundResult& r);

// CSV flattening for sweeps; one row per ensemble, blank cells for values
// that were not computed.
std::string csv_header();
std::string csv_row(const std::string& id, const BoundsReport& r,
                    std::optional<double> oracle_q);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace qsd

#endif  // QSD_IO_HPP

#include "qsd/cli.hpp"

#include "qsd/bounds.hpp"
#include "qsd/channel.hpp"
#include "qsd/ensemble.hpp"
#include "qsd/io.hpp"
#include "qsd/measurement.hpp"
#include "qsd/oracle.hpp"

#include <algorithm>
#include <filesystem>
#include <future>
#include <iomanip>
#include <thread>

namespace qsd {

namespace fs = std::filesystem;

namespace {

struct RunState {
  std::ostream& out;
  std::ostream& err;
  std::vector<std::string> warnings;

  void warn(const std::string& msg) {
    warnings.push_back(msg);
    err << json{{"warning", msg}}.dump() << "\n";
  }
};

// sorted list of ensemble files: the path itself, or every *.ens.json inside
// a directory (sorted by name for stable output ordering)
std::vector<std::string> resolve_ensemble_inputs(
    const std::vector<std::string>& inputs) {
  std::vector<std::string> files;
  for (const std::string& in : inputs) {
    if (fs::is_directory(in)) {
      std::vector<std::string> found;
      for (const auto& entry : fs::directory_iterator(in)) {
        const std::string name = entry.path().filename().string();
        if (entry.is_regular_file() && name.size() > 9 &&
            name.substr(name.size() - 9) == ".ens.json")
          found.push_back(entry.path().string());
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.push_back(in);
    }
  }
  if (files.empty()) throw ValidationError("no ensemble inputs found");
  return files;
}

WeightedEnsemble load_ensemble(const std::string& path,
                               double psd_tol = tol::psd_scale) {
  const json j = parse_json(read_file(path), path);
  WeightedEnsemble e = ensemble_from_json(j);
  const ValidationReport rep = validate(e, psd_tol);
  if (!rep.ok())
    throw ValidationError(path + " fails validation:\n" + rep.summary());
  return e;
}

std::string stem_of(const std::string& path) {
  std::string name = fs::path(path).filename().string();
  const auto pos = name.find(".ens.json");
  if (pos != std::string::npos) name = name.substr(0, pos);
  return name;
}

void emit_json(const RunConfig& cfg, RunState& st, const json& j) {
  if (cfg.output.empty())
    st.out << j.dump(2) << "\n";
  else
    write_file(cfg.output, j.dump(2) + "\n");
}

// Runs fn over every file index in hardware-sized waves; results come back
// in input order, so emitted output is independent of completion order.
template <typename R, typename Fn>
std::vector<R> parallel_over_files(std::size_t count, Fn fn) {
  const std::size_t width =
      std::max<std::size_t>(1, std::thread::hardware_concurrency());
  std::vector<R> results(count);
  for (std::size_t base = 0; base < count; base += width) {
    const std::size_t end = std::min(base + width, count);
    std::vector<std::future<R>> wave;
    for (std::size_t i = base; i < end; ++i)
      wave.push_back(std::async(std::launch::async, fn, i));
    for (std::size_t i = base; i < end; ++i)
      results[i] = wave[i - base].get();
  }
  return results;
}

GeneratorSpec spec_from_config(const RunConfig& cfg) {
  const auto kind = ensemble_kind_from_string(cfg.kind);
  if (!kind) throw ValidationError("unknown ensemble kind: " + cfg.kind);
  GeneratorSpec spec;
  spec.kind = *kind;
  spec.dim = cfg.dim;
  spec.m = cfg.m;
  spec.rank = cfg.rank;
  spec.priors = cfg.priors;
  spec.seed = cfg.seed;
  return spec;
}

// relabel so that state `first` plays the distinguished role
WeightedEnsemble relabeled(const WeightedEnsemble& e, int first) {
  WeightedEnsemble out;
  out.dim = e.dim;
  out.priors.push_back(e.priors[first]);
  out.states.push_back(e.states[first]);
  for (int i = 0; i < e.size(); ++i) {
    if (i == first) continue;
    out.priors.push_back(e.priors[i]);
    out.states.push_back(e.states[i]);
  }
  return out;
}

// smallest certified Theorem-3 bound over the m relabelings (falls back to
// the smallest uncertified value when none certifies)
std::pair<int, Theorem3Result> best_first_upper_bound(const WeightedEnsemble& e,
                                                      double ortho_tol) {
  int best_idx = 0;
  Theorem3Result best = upper_bound_theorem3(e, ortho_tol);
  for (int k = 1; k < e.size(); ++k) {
    const Theorem3Result cand =
        upper_bound_theorem3(relabeled(e, k), ortho_tol);
    const bool better = (cand.certified && !best.certified) ||
                        (cand.certified == best.certified &&
                         cand.value < best.value);
    if (better) {
      best = cand;
      best_idx = k;
    }
  }
  return {best_idx, best};
}

int cmd_gen(const RunConfig& cfg, RunState& st) {
  const WeightedEnsemble e = generate(spec_from_config(cfg));
  if (cfg.output.empty())
    st.out << serialize(e);
  else
    write_file(cfg.output, serialize(e));
  for (const std::string& w : validate(e).warnings) st.warn(w);
  return 0;
}

struct BoundsRow {
  BoundsReport report;
  int distinguished = 0;
};

int cmd_bounds(const RunConfig& cfg, RunState& st) {
  const std::vector<std::string> files = resolve_ensemble_inputs(cfg.inputs);

  const std::vector<BoundsRow> rows = parallel_over_files<BoundsRow>(
      files.size(), [&files, &cfg](std::size_t i) {
        const WeightedEnsemble e = load_ensemble(files[i], cfg.tol_psd);
        BoundsRow row;
        if (cfg.best_first) {
          auto [idx, t3] = best_first_upper_bound(e, cfg.tol_ortho);
          row.distinguished = idx;
          row.report = full_report(relabeled(e, idx));
          row.report.q_upper_t3 = t3;
        } else {
          row.report = full_report(e);
        }
        return row;
      });

  std::string csv = csv_header() + "\n";
  for (std::size_t i = 0; i < files.size(); ++i) {
    const std::string& file = files[i];
    const BoundsReport& rep = rows[i].report;
    for (const std::string& w : rep.warnings) st.warn(file + ": " + w);

    json j = bounds_report_to_json(rep);
    if (cfg.best_first) j["distinguished_state"] = rows[i].distinguished;

    std::string out_path;
    if (files.size() == 1 && !cfg.output.empty()) {
      out_path = cfg.output;
    } else if (!cfg.output.empty()) {
      out_path = (fs::path(cfg.output) / (stem_of(file) + ".report.json")).string();
    } else if (fs::path(file).has_parent_path()) {
      out_path = (fs::path(file).parent_path() / (stem_of(file) + ".report.json")).string();
    } else {
      out_path = stem_of(file) + ".report.json";
    }
    write_file(out_path, j.dump(2) + "\n");

    st.out << stem_of(file) << "  m=" << rep.m << " dim=" << rep.dim
           << "  q_lower=" << std::setprecision(10) << rep.q_lower;
    if (rep.helstrom) st.out << "  helstrom=" << *rep.helstrom;
    if (rep.q_upper_t3)
      st.out << "  q_upper_t3=" << rep.q_upper_t3->value
             << (rep.q_upper_t3->certified ? " (certified)" : " (uncertified)");
    st.out << "\n";

    csv += csv_row(stem_of(file), rep, std::nullopt) + "\n";
  }
  if (!cfg.csv_path.empty()) write_file(cfg.csv_path, csv);
  return 0;
}

int cmd_check(const RunConfig& cfg, RunState& st) {
  const std::vector<std::string> files = resolve_ensemble_inputs(cfg.inputs);
  json all = json::array();
  for (const std::string& file : files) {
    const WeightedEnsemble e = load_ensemble(file, cfg.tol_psd);
    const ConditionReport rep = check_corollary1_conditions(e, cfg.tol_ortho);
    json j = condition_report_to_json(rep);
    j["id"] = stem_of(file);
    st.out << stem_of(file) << "  theorem2="
           << (rep.theorem2_pass() ? "pass" : "fail") << "  corollary1="
           << (rep.corollary1_pass() ? "pass" : "fail") << "\n";
    all.push_back(std::move(j));
  }
  emit_json(cfg, st, files.size() == 1 ? all.at(0) : all);
  return 0;
}

int cmd_construct_povm(const RunConfig& cfg, RunState& st) {
  const std::vector<std::string> files = resolve_ensemble_inputs(cfg.inputs);
  if (files.size() != 1)
    throw ValidationError("construct-povm expects exactly one ensemble");
  const WeightedEnsemble e = load_ensemble(files.front(), cfg.tol_psd);
  const Povm p = theorem2_povm(e, cfg.tol_ortho);
  const double gap = attainment_residual(e, p);
  json j = povm_to_json(p);
  j["attainment_gap"] = gap;
  emit_json(cfg, st, j);
  st.out << "attainment_gap=" << std::setprecision(10) << gap << "\n";
  return 0;
}

int cmd_optimize(const RunConfig& cfg, RunState& st) {
  const std::vector<std::string> files = resolve_ensemble_inputs(cfg.inputs);
  if (files.size() != 1)
    throw ValidationError("optimize expects exactly one ensemble");
  const WeightedEnsemble e = load_ensemble(files.front(), cfg.tol_psd);
  OracleOptions opts;
  opts.restarts = cfg.restarts;
  opts.seed = cfg.seed;
  opts.cert_tol = cfg.tol_cert;
  const OracleResult res = optimize_min_error(e, opts);
  emit_json(cfg, st, oracle_result_to_json(res));
  st.out << "q_star=" << std::setprecision(10) << res.q_star
         << "  certificate=" << (res.certificate.optimal ? "pass" : "fail")
         << "\n";
  if (!res.certificate.optimal)
    st.warn("optimizer certificate failed (worst min eig " +
            std::to_string(res.certificate.worst_min_eig) + ")");
  return 0;
}

int cmd_channels(const RunConfig& cfg, RunState& st) {
  if (cfg.inputs.empty()) throw EmptyChannelListError("no channel files given");
  std::vector<QuantumChannel> channels;
  for (const std::string& file : cfg.inputs)
    channels.push_back(channel_from_json(parse_json(read_file(file), file)));
  if (!cfg.priors)
    throw ValidationError("channels command requires --priors");
  ChannelBoundOptions opts;
  opts.samples = cfg.samples;
  opts.refine = cfg.refine;
  opts.seed = cfg.seed;
  const ChannelBoundResult res = channel_bound(channels, *cfg.priors, opts);
  emit_json(cfg, st, channel_result_to_json(res));
  st.out << "bound=" << std::setprecision(10) << res.bound << "\n";
  return 0;
}

struct CompareRow {
  BoundsReport report;
  double q_star = 0.0;
};

int cmd_compare(const RunConfig& cfg, RunState& st) {
  const std::vector<std::string> files = resolve_ensemble_inputs(cfg.inputs);

  const std::vector<CompareRow> rows = parallel_over_files<CompareRow>(
      files.size(), [&files, &cfg](std::size_t i) {
        const WeightedEnsemble e = load_ensemble(files[i], cfg.tol_psd);
        OracleOptions opts;
        opts.restarts = cfg.restarts;
        opts.seed = derive_seed(cfg.seed, "compare", i);
        opts.cert_tol = cfg.tol_cert;
        return CompareRow{full_report(e), optimize_min_error(e, opts).q_star};
      });

  std::string csv = csv_header() + "\n";
  st.out << std::left << std::setw(24) << "id" << std::right << std::setw(12)
         << "q_lower" << std::setw(12) << "q_star" << std::setw(12)
         << "2*q_lower" << std::setw(12) << "qu_feng" << std::setw(14)
         << "qu_pairwise" << std::setw(10) << "ineq122" << "\n";

  for (std::size_t i = 0; i < files.size(); ++i) {
    const std::string& file = files[i];
    const BoundsReport& rep = rows[i].report;
    for (const std::string& w : rep.warnings) st.warn(file + ": " + w);

    const bool ineq122 = rep.ineq122_lhs >= 1.0 - 1e-8;
    st.out << std::left << std::setw(24) << stem_of(file) << std::right
           << std::fixed << std::setprecision(6) << std::setw(12)
           << rep.q_lower << std::setw(12) << rows[i].q_star << std::setw(12)
           << 2.0 * rep.q_lower << std::setw(12) << rep.qu_lower_feng
           << std::setw(14) << rep.qu_lower_pairwise << std::setw(10)
           << (ineq122 ? "ok" : "VIOLATED") << "\n";
    st.out.unsetf(std::ios::fixed);

    csv += csv_row(stem_of(file), rep, rows[i].q_star) + "\n";
    if (!ineq122) st.warn(file + ": ineq122 violated");
  }
  if (!cfg.csv_path.empty()) write_file(cfg.csv_path, csv);
  return 0;
}

int cmd_search_cor1(const RunConfig& cfg, RunState& st) {
  const std::vector<Cor1Hit> hits = search_cor1(spec_from_config(cfg), cfg.trials);
  json j;
  j["trials"] = cfg.trials;
  j["hits"] = json::array();
  for (const Cor1Hit& h : hits) {
    json hj;
    hj["trial"] = h.trial;
    hj["seed"] = h.seed;
    hj["conditions"] = condition_report_to_json(h.report);
    hj["ensemble"] = ensemble_to_json(h.ensemble);
    j["hits"].push_back(std::move(hj));
  }
  emit_json(cfg, st, j);
  st.out << hits.size() << " / " << cfg.trials << " trials pass all conditions\n";
  return 0;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  RunState st{out, err, {}};
  runtime_psd_scale() = cfg.tol_psd;
  try {
    int rc = 0;
    switch (cfg.command) {
      case Command::gen: rc = cmd_gen(cfg, st); break;
      case Command::bounds: rc = cmd_bounds(cfg, st); break;
      case Command::check: rc = cmd_check(cfg, st); break;
      case Command::construct_povm: rc = cmd_construct_povm(cfg, st); break;
      case Command::optimize: rc = cmd_optimize(cfg, st); break;
      case Command::channels: rc = cmd_channels(cfg, st); break;
      case Command::compare: rc = cmd_compare(cfg, st); break;
      case Command::search_cor1: rc = cmd_search_cor1(cfg, st); break;
    }
    if (rc == 0 && cfg.strict && !st.warnings.empty()) return 2;
    return rc;
  } catch (const Error& e) {
    err << json{{"error", e.code()}, {"message", e.what()}}.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
}

}  // namespace qsd

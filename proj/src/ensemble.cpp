#include "qsd/ensemble.hpp"

#include "qsd/io.hpp"
#include "qsd/linalg.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace qsd {

const char* to_string(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::ginibre_full_rank: return "ginibre_full_rank";
    case EnsembleKind::ginibre_rank_r: return "ginibre_rank_r";
    case EnsembleKind::pure: return "pure";
    case EnsembleKind::block_orthogonal: return "block_orthogonal";
  }
  return "?";
}

std::optional<EnsembleKind> ensemble_kind_from_string(const std::string& name) {
  for (EnsembleKind k :
       {EnsembleKind::ginibre_full_rank, EnsembleKind::ginibre_rank_r,
        EnsembleKind::pure, EnsembleKind::block_orthogonal})
    if (name == to_string(k)) return k;
  return std::nullopt;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (const auto& i : issues)
    os << i.message << " (residual " << i.residual << ")\n";
  return os.str();
}

ValidationReport validate(const WeightedEnsemble& e, double psd_scale) {
  psd_scale = resolve_psd_scale(psd_scale);
  ValidationReport rep;
  auto add = [&rep](const std::string& msg, double res) {
    rep.issues.push_back({msg, res});
  };

  if (e.dim <= 0) add("dim must be positive", 0.0);
  if (e.priors.size() != e.states.size())
    add("priors count " + std::to_string(e.priors.size()) + " != states count " +
            std::to_string(e.states.size()),
        0.0);
  if (e.states.size() < 2) add("ensemble needs at least 2 states", 0.0);

  double prior_sum = 0.0;
  for (std::size_t i = 0; i < e.priors.size(); ++i) {
    prior_sum += e.priors[i];
    if (e.priors[i] < 0.0)
      add("prior " + std::to_string(i) + " is negative", -e.priors[i]);
  }
  if (!e.priors.empty() && std::abs(prior_sum - 1.0) > 1e-10) {
    std::ostringstream os;
    os << "priors sum " << prior_sum << " != 1";
    add(os.str(), std::abs(prior_sum - 1.0));
  }

  for (std::size_t i = 0; i < e.states.size(); ++i) {
    const cmat& rho = e.states[i];
    const std::string label = "state " + std::to_string(i);
    if (rho.rows() != e.dim || rho.cols() != e.dim) {
      add(label + " is " + std::to_string(rho.rows()) + "x" +
              std::to_string(rho.cols()) + ", expected dim " +
              std::to_string(e.dim),
          0.0);
      continue;
    }
    const double herm = hermiticity_residual(rho);
    if (herm > tol::hermiticity) {
      add(label + " not Hermitian", herm);
      continue;
    }
    const double mineig = min_eigenvalue(hermitian_part(rho));
    const double top = rho.norm();
    if (mineig < -psd_scale * std::max(1.0, top)) {
      std::ostringstream os;
      os << label << " not PSD, min eig " << mineig;
      add(os.str(), -mineig);
    }
    const double tr_res = std::abs(rho.trace().real() - 1.0);
    if (tr_res > 1e-9) add(label + " trace != 1", tr_res);
  }

  if (!e.states.empty() && static_cast<int>(e.states.size()) > e.dim)
    rep.warnings.push_back("m = " + std::to_string(e.states.size()) +
                           " exceeds dim = " + std::to_string(e.dim) +
                           "; bounds remain evaluable");
  return rep;
}

void require_valid(const WeightedEnsemble& e) {
  const ValidationReport rep = validate(e);
  if (!rep.ok()) throw ValidationError("invalid ensemble:\n" + rep.summary());
}

cmat random_density(int dim, int rank, Rng& rng) {
  if (rank < 1 || rank > dim)
    throw InvalidRankError("random_density: rank " + std::to_string(rank) +
                           " outside [1, " + std::to_string(dim) + "]");
  const cmat g = rng.ginibre(dim, rank);
  cmat rho = g * g.adjoint();
  rho /= rho.trace().real();
  return hermitian_part(rho);
}

cmat random_density(int dim, int rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_density(dim, rank, rng);
}

std::vector<double> resolve_priors(
    const std::optional<std::vector<double>>& priors, int m) {
  if (!priors) return std::vector<double>(m, 1.0 / m);
  if (static_cast<int>(priors->size()) != m)
    throw ValidationError("priors list has " + std::to_string(priors->size()) +
                          " entries, expected " + std::to_string(m));
  double sum = 0.0;
  for (double p : *priors) {
    if (p < 0.0) throw ValidationError("negative prior supplied");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    std::ostringstream os;
    os << "priors sum " << sum << " deviates from 1 by more than 1e-6";
    throw ValidationError(os.str());
  }
  std::vector<double> out = *priors;
  for (double& p : out) p /= sum;
  return out;
}

WeightedEnsemble generate(const GeneratorSpec& spec) {
  if (spec.m < 2) throw ValidationError("generate: m must be >= 2");
  if (spec.dim < 1) throw ValidationError("generate: dim must be >= 1");

  WeightedEnsemble e;
  e.dim = spec.dim;
  e.priors = resolve_priors(spec.priors, spec.m);
  Rng rng(spec.seed);

  switch (spec.kind) {
    case EnsembleKind::ginibre_full_rank:
      for (int i = 0; i < spec.m; ++i)
        e.states.push_back(random_density(spec.dim, spec.dim, rng));
      break;
    case EnsembleKind::ginibre_rank_r: {
      const int r = spec.rank.value_or(1);
      if (r < 1 || r > spec.dim)
        throw InvalidRankError("generate: rank " + std::to_string(r) +
                               " outside [1, " + std::to_string(spec.dim) + "]");
      for (int i = 0; i < spec.m; ++i)
        e.states.push_back(random_density(spec.dim, r, rng));
      break;
    }
    case EnsembleKind::pure:
      for (int i = 0; i < spec.m; ++i)
        e.states.push_back(random_density(spec.dim, 1, rng));
      break;
    case EnsembleKind::block_orthogonal: {
      if (spec.dim < spec.m)
        throw BlockTooSmallError("generate: block_orthogonal needs dim >= m (" +
                                 std::to_string(spec.dim) + " < " +
                                 std::to_string(spec.m) + ")");
      const int base = spec.dim / spec.m;
      int offset = 0;
      for (int i = 0; i < spec.m; ++i) {
        const int size = (i == spec.m - 1) ? spec.dim - offset : base;
        cmat rho = cmat::Zero(spec.dim, spec.dim);
        rho.block(offset, offset, size, size) = random_density(size, size, rng);
        e.states.push_back(std::move(rho));
        offset += size;
      }
      break;
    }
  }
  return e;
}

std::string serialize(const WeightedEnsemble& e) {
  require_valid(e);
  return ensemble_to_json(e).dump(2) + "\n";
}

WeightedEnsemble deserialize(const std::string& text) {
  const json j = parse_json(text, "ensemble");
  WeightedEnsemble e = ensemble_from_json(j);
  const ValidationReport rep = validate(e);
  if (!rep.ok()) throw ValidationError("ensemble fails validation:\n" + rep.summary());
  return e;
}

}  // namespace qsd

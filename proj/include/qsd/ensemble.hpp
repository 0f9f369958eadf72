#ifndef QSD_ENSEMBLE_HPP
#define QSD_ENSEMBLE_HPP

#include "qsd/rng.hpp"
#include "qsd/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qsd {

// m weighted states on a common d-dimensional space
struct WeightedEnsemble {
  int dim = 0;
  std::vector<double> priors;
  std::vector<cmat> states;

  int size() const { return static_cast<int>(states.size()); }

  // eta_j rho_j - eta_i rho_i
  cmat lambda(int i, int j) const {
    return priors[j] * states[j] - priors[i] * states[i];
  }
};

enum class EnsembleKind {
  ginibre_full_rank,
  ginibre_rank_r,
  pure,
  block_orthogonal,
};

const char* to_string(EnsembleKind kind);
std::optional<EnsembleKind> ensemble_kind_from_string(const std::string& name);

struct GeneratorSpec {
  EnsembleKind kind = EnsembleKind::ginibre_full_rank;
  int dim = 2;
  int m = 2;
  std::optional<int> rank;                   // ginibre_rank_r only
  std::optional<std::vector<double>> priors; // absent -> uniform
  std::uint64_t seed = 0;
};

struct ValidationIssue {
  std::string message;
  double residual = 0.0;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  std::vector<std::string> warnings;  // non-fatal, e.g. m > dim

  bool ok() const { return issues.empty(); }
  std::string summary() const;
};

// Reports every violated ensemble invariant with the measured residual.
// A negative psd_scale means "use runtime_psd_scale()".
ValidationReport validate(const WeightedEnsemble& e, double psd_scale = -1.0);

void require_valid(const WeightedEnsemble& e);

// G G^dag / Tr(G G^dag) with G a dim x rank complex Ginibre matrix
cmat random_density(int dim, int rank, Rng& rng);
cmat random_density(int dim, int rank, std::uint64_t seed);

// Pure function of the spec. block_orthogonal places state i on its own
// coordinate block of size floor(dim/m) (remainder appended to the last
// block), each block holding a seeded full-rank random density; such
// ensembles satisfy the exact-attainment conditions by construction.
WeightedEnsemble generate(const GeneratorSpec& spec);

// Explicit priors: nonnegative, length m; sums within 1e-6 of 1 are
// renormalized exactly, anything else is rejected.
std::vector<double> resolve_priors(const std::optional<std::vector<double>>& priors,
                                   int m);

std::string serialize(const WeightedEnsemble& e);
WeightedEnsemble deserialize(const std::string& text);

}  // namespace qsd

#endif  // QSD_ENSEMBLE_HPP

#pragma once

#include <functional>
#include <random>

#include "hcs/boundary.hpp"
#include "hcs/group_function.hpp"
#include "hcs/haar.hpp"
#include "hcs/opnorm.hpp"
#include "hcs/report.hpp"

namespace hcs {

// One configuration drives every statement of a verification run.
struct VerifyConfig {
  GroupPresentation group = GroupPresentation::sanov();
  double d = 2.0;              // decay exponent (0 = pick minimal admissible + 0.5)
  int radius = 4;              // Gamma ball radius for the sweeps
  int R = 10;                  // truncation radius for lambda estimates
  int grid_resolution = 1024;  // boundary grid (n = 2)
  double chamber_cutoff = 30.0;
  int corpus_size = 10;
  unsigned seed = 42;
  bool deterministic = false;
  ExecConfig exec = ExecConfig::parallel();

  double effective_d(const RootSystemData& roots) const;
};

// Seeded random test functions on a ball: uniform values on [-1,1] (complex:
// uniform disc), support the full ball or a sparse half-density subset; the
// positive subset takes absolute values.
struct TestCorpus {
  unsigned seed = 0;
  std::vector<GroupFunction> functions;
  std::vector<GroupFunction> positive;

  static TestCorpus generate(std::shared_ptr<const BallIndex> ball,
                             unsigned seed, int count);
  // nonnegative sparse corpus with bounded support size; every function
  // contains the identity and at least one element of the outer sphere
  static TestCorpus generate_sparse_positive(
      std::shared_ptr<const BallIndex> ball, unsigned seed, int count,
      std::size_t max_support);
};

// pi-periodic random trigonometric polynomial on the circle grid (smooth and
// M-invariant); optionally nonnegative or mean-zero.
BoundaryFunction random_boundary_function(
    std::shared_ptr<const KQuadrature> grid, std::mt19937_64& rng,
    int max_harmonic = 6, bool nonneg = false, bool mean_zero = false);

// L-radial compactly supported function for the radial pairing identity
struct RadialFunction {
  std::function<double(double)> of_length;  // f as a function of L(g)
  double support_length = 0.0;              // f = 0 past this L
};

// --- single-instance checks (spec operations) -------------------------------

VerificationReport check_radial_identity(const RadialFunction& fr,
                                         const BoundaryFunction& xi,
                                         const BoundaryFunction& eta,
                                         const ChamberQuadrature& quad,
                                         int k_average_count,
                                         const ExecConfig& exec = {});

VerificationReport check_cs_lemma(const GroupElement& g,
                                  const BoundaryFunction& xi,
                                  const BoundaryFunction& eta,
                                  const ExecConfig& exec = {});

VerificationReport check_stability(double d, const GroupPresentation& p,
                                   const BoundaryFunction& xi,
                                   double neighborhood_radius, int sample,
                                   int ball_radius, unsigned seed,
                                   const ExecConfig& exec = {});

struct DiscretizationResult {
  VerificationReport report;
  double cd_value = 0.0;
  double c_disc = 0.0;  // max over radii of LHS / (C_d ||xi||_1)
};
DiscretizationResult check_discretization(double d, const GroupPresentation& p,
                                          const BoundaryFunction& xi,
                                          int radius,
                                          const ChamberQuadrature& quad,
                                          const ExecConfig& exec = {});

VerificationReport check_convolution_bound(double d, const GroupPresentation& p,
                                           const TestCorpus& corpus, int radius,
                                           const ExecConfig& exec = {});

VerificationReport check_main_inequality(double d, const GroupPresentation& p,
                                         const TestCorpus& corpus, int R,
                                         const KQuadrature& grid,
                                         const ChamberQuadrature& quad,
                                         double c_disc,
                                         const ExecConfig& exec = {});

enum class SummabilityExpectation { Converge, Diverge };
VerificationReport check_summability(double d, const GroupPresentation& p,
                                     int radius, SummabilityExpectation expect,
                                     const ExecConfig& exec = {});

// --- statement runners (one report per paper statement) ---------------------

std::vector<std::string> statement_ids();
VerificationReport run_statement(const std::string& id, const VerifyConfig& cfg);
ReportBundle run_suite(const std::vector<std::string>& ids,
                       const VerifyConfig& cfg);

}  // namespace hcs
